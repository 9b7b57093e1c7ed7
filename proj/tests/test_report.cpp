#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "bq/report.hpp"

using namespace bq;

namespace {

RunConfig sample_config() {
  RunConfig config;
  config.subcommand = "density";
  config.params = {{"p", "5"}, {"k", "2"}};
  config.threads = 2;
  config.seed = 42;
  config.out_dir = "/tmp/out";
  return config;
}

}  // namespace

TEST_CASE("envelope payload and hash are reproducible, timestamp aside") {
  RunConfig config = sample_config();
  nlohmann::json payload;
  payload["value"] = dec(brat(156, 155));
  payload["p"] = 5;

  ResultEnvelope first = make_envelope(config, payload);
  ResultEnvelope second = make_envelope(config, payload);
  CHECK(first.payload.dump() == second.payload.dump());
  CHECK(first.content_hash == second.content_hash);
  CHECK(first.content_hash.size() == 16);
  CHECK(first.timestamp_utc.size() == 20);
  CHECK(first.timestamp_utc.back() == 'Z');

  nlohmann::json parsed = nlohmann::json::parse(envelope_line(first));
  CHECK(parsed["config"]["subcommand"] == "density");
  CHECK(parsed["config"]["format_version"] == "1");
  CHECK(parsed["config"]["params"]["p"] == "5");
  CHECK(parsed["payload"]["value"] == "156/155");
  CHECK(parsed["content_hash"] == first.content_hash);
  CHECK(envelope_line(first).find('\n') == std::string::npos);

  nlohmann::json other = payload;
  other["p"] = 7;
  CHECK(make_envelope(config, other).content_hash != first.content_hash);
  RunConfig reseeded = config;
  reseeded.seed = 43;
  CHECK(make_envelope(reseeded, payload).content_hash != first.content_hash);
}

TEST_CASE("decimal strings for exact scalars") {
  CHECK(dec(bint(-1234)) == "-1234");
  CHECK(dec(bint("123456789012345678901234567890")) == "123456789012345678901234567890");
  CHECK(dec(brat(9, 7)) == "9/7");
  CHECK(dec(brat(-9, 7)) == "-9/7");
  CHECK(dec(brat(14, 7)) == "2");
  CHECK(dec(brat(0, 3)) == "0");
}

TEST_CASE("fnv1a64 matches published test vectors") {
  CHECK(fnv1a64("") == 14695981039346656037ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("csv writer escapes and enforces arity") {
  CsvWriter csv({"lambda", "note"});
  csv.row({"10", "plain"});
  csv.row({"20", "with,comma"});
  csv.row({"30", "say \"hi\""});
  CHECK(csv.rows() == 3);
  CHECK(csv.text() ==
        "lambda,note\n"
        "10,plain\n"
        "20,\"with,comma\"\n"
        "30,\"say \"\"hi\"\"\"\n");
  CHECK_THROWS_AS(csv.row({"only one"}), std::invalid_argument);
  CHECK_THROWS_AS(CsvWriter({}), std::invalid_argument);
  CHECK(csv_escape("line\nbreak").front() == '"');
}

TEST_CASE("text files land on disk, directories included") {
  std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "bq_report_test" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  std::string path = (dir / "x.csv").string();
  write_text_file(path, "a,b\n1,2\n");
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text == "a,b\n1,2\n");
  std::filesystem::remove_all(dir.parent_path());
  CHECK_THROWS_AS(write_text_file("/proc/version/impossible/x", "y"), std::runtime_error);
}
