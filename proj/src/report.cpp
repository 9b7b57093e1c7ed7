#include "bq/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace bq {
namespace {

std::string hex16(u64 value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string utc_now() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

nlohmann::json config_json(const RunConfig& config) {
  nlohmann::json j;
  j["subcommand"] = config.subcommand;
  j["params"] = config.params;
  j["threads"] = config.threads;
  j["seed"] = config.seed;
  j["out_dir"] = config.out_dir;
  j["format_version"] = config.format_version;
  return j;
}

u64 fnv1a64(const std::string& text) {
  u64 h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

ResultEnvelope make_envelope(const RunConfig& config, nlohmann::json payload) {
  ResultEnvelope envelope;
  envelope.config = config;
  envelope.timestamp_utc = utc_now();
  envelope.payload = std::move(payload);
  envelope.content_hash =
      hex16(fnv1a64(config_json(config).dump() + "\n" + envelope.payload.dump()));
  return envelope;
}

std::string envelope_line(const ResultEnvelope& envelope) {
  nlohmann::json j;
  j["config"] = config_json(envelope.config);
  j["timestamp_utc"] = envelope.timestamp_utc;
  j["content_hash"] = envelope.content_hash;
  j["payload"] = envelope.payload;
  return j.dump();
}

std::string dec(const bint& value) { return value.str(); }

std::string dec(const brat& value) {
  bint num = numerator(value), den = denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : arity_(columns.size()) {
  if (columns.empty()) throw std::invalid_argument("CsvWriter: no columns");
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) text_ += ',';
    text_ += csv_escape(columns[i]);
  }
  text_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != arity_) throw std::invalid_argument("CsvWriter: row width mismatch");
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    text_ += csv_escape(cells[i]);
  }
  text_ += '\n';
  ++rows_;
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string out = "\"";
  for (char ch : cell) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw std::runtime_error("cannot create " + p.parent_path().string());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out.good()) throw std::runtime_error("cannot write " + path);
}

}  // namespace bq
