#pragma once

// JSON/CSV output plumbing shared by the CLI tools. Every artifact embeds
// the config it was produced from, a hash of that config, and the tool
// version; the timestamp lives in its own field so byte-comparisons can
// exclude it.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "basisforge/core.hpp"

namespace basisforge {

using json = nlohmann::json;

inline u64 fnv1a(const std::string& s) {
  u64 h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(u64 v) {
  std::ostringstream os;
  os << std::hex << std::setfill('0') << std::setw(16) << v;
  return os.str();
}

inline std::string iso8601_now() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

/// Wraps a result body with provenance: the verbatim config, its hash, the
/// tool version and a timestamp (the one field excluded from byte-identity).
inline json wrap_artifact(const json& config, json body) {
  json out;
  out["tool"] = "basisforge";
  out["version"] = kVersion;
  out["config"] = config;
  out["config_hash"] = hex64(fnv1a(config.dump()));
  out["generated_at"] = iso8601_now();
  out["result"] = std::move(body);
  return out;
}

inline void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

/// Provenance comment line for text artifacts: tool version + config hash.
inline std::string provenance_comment(const json& config) {
  return "# basisforge " + std::string(kVersion) + " config=" + hex64(fnv1a(config.dump()));
}

/// CSV with '.' decimal separator and no thousands grouping, independent of
/// locale. Doubles are shortest-round-trip. An optional leading '#' comment
/// carries the provenance stamp.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path, const std::string& comment = "")
      : out_(path) {
    if (!out_) throw std::runtime_error("cannot write " + path);
    out_.imbue(std::locale::classic());
    if (!comment.empty()) out_ << comment << "\n";
  }
  void header(const std::vector<std::string>& cols) { row_strings(cols); }
  void field(u64 v) { sep(); out_ << v; }
  void field(double v) {
    sep();
    char buf[32];
    auto n = std::snprintf(buf, sizeof buf, "%.17g", v);
    out_.write(buf, n);
  }
  void field(const std::string& v) { sep(); out_ << v; }
  void end_row() { out_ << "\n"; first_ = true; }

 private:
  void sep() {
    if (!first_) out_ << ",";
    first_ = false;
  }
  void row_strings(const std::vector<std::string>& cols) {
    for (const auto& c : cols) field(c);
    end_row();
  }
  std::ofstream out_;
  bool first_ = true;
};

}  // namespace basisforge
