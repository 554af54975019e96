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
#include <optional>
#include <vector>

#include "noisymc/domain.hpp"
#include "noisymc/rng.hpp"

namespace noisymc {

/// Isotropic Gaussian random walk N(theta | current, scale^2 I). Symmetric,
/// so its density ratio never enters an acceptance probability.
class RandomWalkProposal {
 public:
  explicit RandomWalkProposal(double scale);

  double scale() const { return scale_; }
  Point propose(PointView current, Rng& rng) const;

 private:
  double scale_;
};

/// Independent proposal q(theta): uniform on a box, or a Gaussian with
/// per-coordinate standard deviations.
class IndependentProposal {
 public:
  enum class Kind { kUniform, kGaussian };

  static IndependentProposal Uniform(BoundedDomain domain);
  static IndependentProposal Gaussian(Point mean, std::vector<double> stddev);

  Kind kind() const { return kind_; }
  std::size_t dimension() const { return center_.size(); }

  Point sample(Rng& rng) const;
  double density(PointView theta) const;

 private:
  IndependentProposal(Kind kind, Point center, std::vector<double> spread,
                      std::optional<BoundedDomain> box);

  Kind kind_;
  // Uniform: center/spread are the lower corner and side lengths.
  Point center_;
  std::vector<double> spread_;
  std::optional<BoundedDomain> box_;
  double norm_;
};

}  // namespace noisymc
