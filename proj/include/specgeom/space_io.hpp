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

// CSV import/export for finite metric-measure spaces.
//
// Layout:
//   # metric=<euclidean | torus:L1,..,Lm | sphere:R | precomputed>
//   id,x1,..,xd,weight
//   0,0.5,1.25,0.01
// A precomputed space has header "id,weight" and a companion dense distance
// matrix CSV (row-major, one row per line, zero diagonal).

#ifndef SPECGEOM_SPACE_IO_HPP_
#define SPECGEOM_SPACE_IO_HPP_

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "specgeom/error.hpp"
#include "specgeom/metric.hpp"
#include "specgeom/metric_space.hpp"

namespace specgeom {

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return out;
}

inline double parse_cell(const std::string& cell, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used == cell.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw ConfigError("line " + std::to_string(line_no) + ": bad number '" + cell + "'");
}

}  // namespace detail

inline void write_space_csv(std::ostream& os, const FiniteMetricMeasureSpace& space) {
  os.precision(17);
  os << "# metric=" << space.metric_name() << "\n";
  const std::size_t d = space.has_coordinates() && space.size() > 0 ? space.point(0).size() : 0;
  os << "id";
  for (std::size_t j = 0; j < d; ++j) os << ",x" << (j + 1);
  os << ",weight\n";
  for (PointId i = 0; i < space.size(); ++i) {
    os << i;
    for (std::size_t j = 0; j < d; ++j) os << "," << space.point(i)[j];
    os << "," << space.weight(i) << "\n";
  }
}

inline void write_distance_matrix_csv(std::ostream& os, const FiniteMetricMeasureSpace& space) {
  os.precision(17);
  for (PointId i = 0; i < space.size(); ++i) {
    for (PointId j = 0; j < space.size(); ++j) os << (j ? "," : "") << space.distance(i, j);
    os << "\n";
  }
}

inline std::vector<double> read_distance_matrix_csv(std::istream& is, std::size_t n) {
  std::vector<double> m;
  m.reserve(n * n);
  std::string line;
  std::size_t line_no = 0, rows = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != n) throw ConfigError("distance matrix row " + std::to_string(rows) + " has wrong width");
    for (const auto& c : cells) m.push_back(detail::parse_cell(c, line_no));
    ++rows;
  }
  if (rows != n) throw ConfigError("distance matrix has " + std::to_string(rows) + " rows, expected " + std::to_string(n));
  return m;
}

// `matrix` is required exactly when the metric tag is "precomputed".
inline FiniteMetricMeasureSpace read_space_csv(std::istream& is, std::istream* matrix = nullptr) {
  std::string line;
  std::optional<std::string> tag;
  std::vector<std::string> header;
  std::vector<Coords> points;
  std::vector<double> weights;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line[0] == '#') {
      const auto pos = line.find("metric=");
      if (pos != std::string::npos) {
        auto t = line.substr(pos + 7);
        t.erase(t.find_last_not_of(" \t\r") + 1);
        tag = t;
      }
      continue;
    }
    auto cells = detail::split_csv_line(line);
    if (header.empty()) {
      if (cells.size() < 2 || cells.front() != "id" || cells.back() != "weight") {
        throw ConfigError("space CSV header must be id,x1..xd,weight");
      }
      header = std::move(cells);
      continue;
    }
    if (cells.size() != header.size()) {
      throw ConfigError("line " + std::to_string(line_no) + ": wrong column count");
    }
    const auto id = static_cast<std::size_t>(detail::parse_cell(cells[0], line_no));
    if (id != points.size()) throw ConfigError("line " + std::to_string(line_no) + ": ids must be 0..n-1 in order");
    Coords x;
    for (std::size_t j = 1; j + 1 < cells.size(); ++j) x.push_back(detail::parse_cell(cells[j], line_no));
    points.push_back(std::move(x));
    weights.push_back(detail::parse_cell(cells.back(), line_no));
  }
  if (header.empty()) throw ConfigError("space CSV has no header");
  if (points.empty()) throw ConfigError("space CSV has no points");
  const std::string metric = tag.value_or("euclidean");
  if (metric == "precomputed") {
    if (matrix == nullptr) throw ConfigError("precomputed metric needs a distance matrix file");
    return FiniteMetricMeasureSpace::from_matrix(read_distance_matrix_csv(*matrix, points.size()),
                                                 std::move(weights));
  }
  if (header.size() == 2) throw ConfigError("metric '" + metric + "' needs coordinates");
  return FiniteMetricMeasureSpace::from_coordinates(std::move(points), std::move(weights),
                                                    parse_metric_tag(metric));
}

inline FiniteMetricMeasureSpace load_space(const std::string& path,
                                           const std::string& matrix_path = "") {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open " + path);
  if (matrix_path.empty()) return read_space_csv(is);
  std::ifstream ms(matrix_path);
  if (!ms) throw ConfigError("cannot open " + matrix_path);
  return read_space_csv(is, &ms);
}

}  // namespace specgeom

#endif  // SPECGEOM_SPACE_IO_HPP_
