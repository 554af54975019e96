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
#include <span>
#include <vector>

namespace noisymc {

using Point = std::vector<double>;
using PointView = std::span<const double>;

/// Axis-aligned box [lower, upper] in R^d.
class BoundedDomain {
 public:
  BoundedDomain(std::vector<double> lower, std::vector<double> upper);

  /// The cube [lo, hi]^dim.
  static BoundedDomain Cube(std::size_t dim, double lo, double hi);

  std::size_t dimension() const { return lower_.size(); }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }

  /// Closed-box membership. Throws DimensionError on a size mismatch.
  bool contains(PointView theta) const;

  /// Product of side lengths.
  double volume() const;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

/// Throws DimensionError unless theta.size() == expected.
void require_dimension(PointView theta, std::size_t expected);

}  // namespace noisymc
