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

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "noisymc/domain.hpp"

namespace noisymc {

/// Ordered collection of evaluated nodes (theta_i, m~(theta_i)).
/// Insertion order is preserved and doubles as the tie-break order.
class DesignSet {
 public:
  explicit DesignSet(std::size_t dimension);

  std::size_t dimension() const { return dim_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  /// Appends a node. Throws DimensionError / DomainError on bad input.
  void add(PointView theta, double value);

  PointView point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  double value(std::size_t i) const { return values_[i]; }
  std::span<const double> coords() const { return coords_; }
  std::span<const double> values() const { return values_; }

  void reserve(std::size_t n);

  /// One node per line: coordinates then value, whitespace separated,
  /// printed with 17 significant digits.
  void save(std::ostream& out) const;

  /// Inverse of save(). Blank lines and lines starting with '#' are skipped.
  /// Throws IoError on malformed lines.
  static DesignSet load(std::istream& in, std::size_t dimension);

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<double> values_;
};

/// Squared Euclidean distance; the single definition shared by all searches.
inline double squared_distance(PointView a, PointView b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

/// Exact K nearest nodes among the first `prefix` nodes by brute force.
/// Result is ordered by (distance, insertion index). Throws SizeError when
/// k == 0 or k > prefix.
std::vector<std::size_t> nearest_k(const DesignSet& design, PointView theta,
                                   std::size_t k);
std::vector<std::size_t> nearest_k(const DesignSet& design, PointView theta,
                                   std::size_t k, std::size_t prefix);

}  // namespace noisymc
