// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Report records and their JSON-lines / CSV encodings.
//
// Field order is fixed: scenario, k, ratio, empirical_sup, pass, branch, seed.
// JSON numbers use the shortest round-trip form; CSV uses %.17g.

#ifndef SPECGEOM_REPORT_HPP_
#define SPECGEOM_REPORT_HPP_

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "specgeom/error.hpp"

namespace specgeom {

struct ReportRecord {
  std::string scenario;
  std::size_t k = 0;
  double ratio = 0.0;
  double empirical_sup = 0.0;
  bool pass = true;
  std::string branch;
  std::uint64_t seed = 0;
};

enum class ReportFormat { jsonl, csv };

inline ReportFormat parse_report_format(const std::string& s) {
  if (s == "jsonl") return ReportFormat::jsonl;
  if (s == "csv") return ReportFormat::csv;
  throw ConfigError("unknown report format '" + s + "' (jsonl | csv)");
}

inline nlohmann::ordered_json to_json(const ReportRecord& r) {
  nlohmann::ordered_json j;
  j["scenario"] = r.scenario;
  j["k"] = r.k;
  // Non-finite values have no JSON spelling; they become null.
  j["ratio"] = std::isfinite(r.ratio) ? nlohmann::ordered_json(r.ratio) : nlohmann::ordered_json();
  j["empirical_sup"] =
      std::isfinite(r.empirical_sup) ? nlohmann::ordered_json(r.empirical_sup) : nlohmann::ordered_json();
  j["pass"] = r.pass;
  j["branch"] = r.branch;
  j["seed"] = r.seed;
  return j;
}

inline ReportRecord record_from_json(const std::string& line) {
  const auto j = nlohmann::json::parse(line);
  ReportRecord r;
  r.scenario = j.at("scenario").get<std::string>();
  r.k = j.at("k").get<std::size_t>();
  r.ratio = j.at("ratio").is_null() ? NAN : j.at("ratio").get<double>();
  r.empirical_sup = j.at("empirical_sup").is_null() ? NAN : j.at("empirical_sup").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.branch = j.at("branch").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  return r;
}

inline const char* csv_header() { return "scenario,k,ratio,empirical_sup,pass,branch,seed"; }

namespace detail {
inline std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}
}  // namespace detail

inline std::string to_csv(const ReportRecord& r) {
  return detail::csv_field(r.scenario) + "," + std::to_string(r.k) + "," + detail::csv_number(r.ratio) + "," +
         detail::csv_number(r.empirical_sup) + "," + (r.pass ? "true" : "false") + "," +
         detail::csv_field(r.branch) + "," + std::to_string(r.seed);
}

// Append-only writer; the CSV header is written before the first record.
class ReportWriter {
 public:
  ReportWriter(std::ostream& os, ReportFormat format) : os_(os), format_(format) {}

  void write(const ReportRecord& r) {
    if (format_ == ReportFormat::csv) {
      if (!header_done_) os_ << csv_header() << '\n';
      header_done_ = true;
      os_ << to_csv(r) << '\n';
    } else {
      os_ << to_json(r).dump() << '\n';
    }
  }

  void write_all(const std::vector<ReportRecord>& records) {
    for (const auto& r : records) write(r);
  }

 private:
  std::ostream& os_;
  ReportFormat format_;
  bool header_done_ = false;
};

}  // namespace specgeom

#endif  // SPECGEOM_REPORT_HPP_
