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

#include "noisymc/domain.hpp"

#include <string>

#include "noisymc/error.hpp"

namespace noisymc {

BoundedDomain::BoundedDomain(std::vector<double> lower,
                             std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) throw DimensionError("domain must have dimension >= 1");
  if (lower_.size() != upper_.size())
    throw DimensionError("domain bounds have different sizes");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i]))
      throw DomainError("domain bound " + std::to_string(i) +
                        " is empty: lower must be < upper");
  }
}

BoundedDomain BoundedDomain::Cube(std::size_t dim, double lo, double hi) {
  return BoundedDomain(std::vector<double>(dim, lo),
                       std::vector<double>(dim, hi));
}

bool BoundedDomain::contains(PointView theta) const {
  require_dimension(theta, dimension());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!(theta[i] >= lower_[i] && theta[i] <= upper_[i])) return false;
  }
  return true;
}

double BoundedDomain::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lower_.size(); ++i) v *= upper_[i] - lower_[i];
  return v;
}

void require_dimension(PointView theta, std::size_t expected) {
  if (theta.size() != expected) {
    throw DimensionError("expected a point of dimension " +
                         std::to_string(expected) + ", got " +
                         std::to_string(theta.size()));
  }
}

}  // namespace noisymc
