#pragma once

#include <string>
#include <vector>

#include "bq/ints.hpp"

namespace bq {

// quick is a smoke pass with shrunk sample sizes and the slowest checks
// left out; full runs every criterion at its stated size.
enum class VerifyLevel { quick, full };

struct ClauseResult {
  std::string label;
  bool pass = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string label;
  // A non-gating criterion reports its clauses but never fails the suite.
  bool gating = true;
  bool pass = false;
  double seconds = 0;
  std::vector<ClauseResult> clauses;
};

// Criterion ids exercised at the given level, ascending.
std::vector<int> verify_criteria(VerifyLevel level);

// Runs one criterion; throws std::invalid_argument for an unknown id.
CriterionResult run_criterion(int id, VerifyLevel level);

std::vector<CriterionResult> run_verify(VerifyLevel level);

// 0 when every gating criterion passed.
int verify_exit_code(const std::vector<CriterionResult>& results);

// One line: status word, id, label, clause summaries, elapsed seconds.
std::string criterion_line(const CriterionResult& result);

}  // namespace bq
