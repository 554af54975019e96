// Copyright 2026 The noisymc Authors
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

#include "noisymc/design_set.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "noisymc/error.hpp"

namespace noisymc {

DesignSet::DesignSet(std::size_t dimension) : dim_(dimension) {
  if (dim_ == 0) throw DimensionError("design set dimension must be >= 1");
}

void DesignSet::add(PointView theta, double value) {
  require_dimension(theta, dim_);
  if (!(value >= 0.0) || !std::isfinite(value))
    throw DomainError("design values must be finite and >= 0");
  coords_.insert(coords_.end(), theta.begin(), theta.end());
  values_.push_back(value);
}

void DesignSet::reserve(std::size_t n) {
  coords_.reserve(n * dim_);
  values_.reserve(n);
}

void DesignSet::save(std::ostream& out) const {
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < size(); ++i) {
    for (double c : point(i)) out << c << ' ';
    out << values_[i] << '\n';
  }
  out.precision(old_precision);
}

DesignSet DesignSet::load(std::istream& in, std::size_t dimension) {
  DesignSet d(dimension);
  std::string line;
  std::size_t lineno = 0;
  std::vector<double> fields;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    fields.clear();
    double x;
    while (ls >> x) fields.push_back(x);
    if (!ls.eof() || fields.size() != dimension + 1) {
      throw IoError("design line " + std::to_string(lineno) + ": expected " +
                    std::to_string(dimension + 1) + " numbers");
    }
    d.add(std::span(fields).first(dimension), fields.back());
  }
  return d;
}

std::vector<std::size_t> nearest_k(const DesignSet& design, PointView theta,
                                   std::size_t k) {
  return nearest_k(design, theta, k, design.size());
}

std::vector<std::size_t> nearest_k(const DesignSet& design, PointView theta,
                                   std::size_t k, std::size_t prefix) {
  require_dimension(theta, design.dimension());
  if (prefix > design.size()) throw SizeError("prefix exceeds design size");
  if (k == 0 || k > prefix)
    throw SizeError("nearest_k needs 1 <= K <= design size (K=" +
                    std::to_string(k) + ", size=" + std::to_string(prefix) +
                    ")");
  std::vector<std::pair<double, std::size_t>> ranked(prefix);
  for (std::size_t i = 0; i < prefix; ++i)
    ranked[i] = {squared_distance(design.point(i), theta), i};
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<long>(k),
                    ranked.end());
  std::vector<std::size_t> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = ranked[i].second;
  return out;
}

}  // namespace noisymc
