// Runs the acceptance criteria at their stated sizes, one line per
// criterion.  With --criterion N only that criterion runs; the exit code
// is 0 when every gating criterion that ran passed, 2 on a guard abort.
#include <cstdio>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "bq/ints.hpp"
#include "bq/verify.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      ids.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
      return 1;
    }
  }
  if (ids.empty()) ids = bq::verify_criteria(bq::VerifyLevel::full);

  int exit_code = 0;
  double total = 0;
  for (int id : ids) {
    try {
      bq::CriterionResult res = bq::run_criterion(id, bq::VerifyLevel::full);
      std::printf("%s\n", bq::criterion_line(res).c_str());
      std::fflush(stdout);
      total += res.seconds;
      if (res.gating && !res.pass) exit_code = 1;
    } catch (const bq::GuardError& err) {
      std::printf("GUARD criterion %d: %s\n", id, err.what());
      return 2;
    } catch (const std::exception& err) {
      std::printf("ERROR criterion %d: %s\n", id, err.what());
      return 1;
    }
  }
  if (ids.size() > 1) std::printf("total %.2fs\n", total);
  return exit_code;
}
