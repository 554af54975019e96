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

#include <functional>
#include <string>

#include "noisymc/domain.hpp"

namespace noisymc {

/// Unnormalized, deterministic density restricted to a bounded domain.
///
/// Evaluation returns exactly 0 outside the domain and throws DimensionError
/// when the point has the wrong number of coordinates. Instances are
/// immutable and safe to share across threads.
class TargetDensity {
 public:
  using Fn = std::function<double(PointView)>;

  TargetDensity(std::string name, BoundedDomain domain, Fn fn);

  double operator()(PointView theta) const;

  const std::string& name() const { return name_; }
  const BoundedDomain& domain() const { return domain_; }
  std::size_t dimension() const { return domain_.dimension(); }

 private:
  std::string name_;
  BoundedDomain domain_;
  Fn fn_;
};

// Banana benchmark: B = 4, eta0 = 4, eta1 = eta2 = 3.5 on [-10, 10]^2.
inline constexpr double kBananaB = 4.0;
inline constexpr double kBananaEta0 = 4.0;
inline constexpr double kBananaEta = 3.5;

/// Banana density. `ridge_constant` is the constant inside the first
/// quadratic term (3.5 as printed; 4 is the alternative reading).
double eval_banana(PointView theta, double ridge_constant = kBananaEta);

/// Equal mixture of N([10,0], 9I) and N([-10,0], 9I) on [-20, 20]^2.
double eval_bimodal(PointView theta);

/// 0.5 N(-1, 1) + 0.5 N(5, 2) on [-8, 17]; second parameters are variances.
double eval_gaussmix_1d(double theta);

TargetDensity banana_target(double ridge_constant = kBananaEta);
TargetDensity bimodal_target();
TargetDensity gaussmix_1d_target();

/// Isotropic Gaussian kernel exp(-|theta - mean|^2 / (2 variance)) on a box.
/// Mostly useful in tests.
TargetDensity gaussian_target(Point mean, double variance,
                              BoundedDomain domain);

/// Constant density on a box.
TargetDensity flat_target(BoundedDomain domain, double level = 1.0);

}  // namespace noisymc
