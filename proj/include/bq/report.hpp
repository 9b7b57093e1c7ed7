#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "bq/ints.hpp"

namespace bq {

// Everything a run needs to reproduce itself; serialized into every artifact.
struct RunConfig {
  std::string subcommand;
  std::map<std::string, std::string> params;
  int threads = 0;
  u64 seed = 0;
  std::string out_dir;
  std::string format_version = "1";
};

nlohmann::json config_json(const RunConfig& config);

// One output record: config snapshot, UTC timestamp, a content hash over
// config + payload, and the module-specific payload.  The timestamp is the
// only field allowed to differ between identical runs; the hash skips it.
struct ResultEnvelope {
  RunConfig config;
  std::string timestamp_utc;
  std::string content_hash;
  nlohmann::json payload;
};

ResultEnvelope make_envelope(const RunConfig& config, nlohmann::json payload);

// The envelope as a single JSON line, keys sorted, no trailing newline.
std::string envelope_line(const ResultEnvelope& envelope);

// 64-bit FNV-1a, printed as 16 hex digits elsewhere.
u64 fnv1a64(const std::string& text);

// Exact integers and rationals travel as decimal strings ("num/den").
std::string dec(const bint& value);
std::string dec(const brat& value);

// Fixed-arity CSV accumulator; the header row is written up front and every
// row must match its width.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns);
  void row(const std::vector<std::string>& cells);
  const std::string& text() const { return text_; }
  u64 rows() const { return rows_; }

 private:
  size_t arity_;
  u64 rows_ = 0;
  std::string text_;
};

std::string csv_escape(const std::string& cell);

// Creates parent directories as needed; throws std::runtime_error on failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace bq
