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

#include "noisymc/targets.hpp"

#include <cmath>
#include <numbers>

#include "noisymc/normal.hpp"

namespace noisymc {

TargetDensity::TargetDensity(std::string name, BoundedDomain domain, Fn fn)
    : name_(std::move(name)), domain_(std::move(domain)), fn_(std::move(fn)) {}

double TargetDensity::operator()(PointView theta) const {
  if (!domain_.contains(theta)) return 0.0;
  return fn_(theta);
}

namespace {

const BoundedDomain& banana_domain() {
  static const BoundedDomain d = BoundedDomain::Cube(2, -10.0, 10.0);
  return d;
}

const BoundedDomain& bimodal_domain() {
  static const BoundedDomain d = BoundedDomain::Cube(2, -20.0, 20.0);
  return d;
}

double banana_kernel(double t1, double t2, double c) {
  const double ridge = c - kBananaB * t1 - t2 * t2;
  return std::exp(-ridge * ridge / (2.0 * kBananaEta0 * kBananaEta0) -
                  t1 * t1 / (2.0 * kBananaEta * kBananaEta) -
                  t2 * t2 / (2.0 * kBananaEta * kBananaEta));
}

double bimodal_kernel(double t1, double t2) {
  constexpr double var = 9.0;
  const double norm = 1.0 / (2.0 * std::numbers::pi * var);
  const double a = (t1 - 10.0) * (t1 - 10.0) + t2 * t2;
  const double b = (t1 + 10.0) * (t1 + 10.0) + t2 * t2;
  return 0.5 * norm * std::exp(-0.5 * a / var) +
         0.5 * norm * std::exp(-0.5 * b / var);
}

double gaussmix_kernel(double t) {
  return 0.5 * normal_pdf(t, -1.0, 1.0) + 0.5 * normal_pdf(t, 5.0, 2.0);
}

}  // namespace

double eval_banana(PointView theta, double ridge_constant) {
  if (!banana_domain().contains(theta)) return 0.0;
  return banana_kernel(theta[0], theta[1], ridge_constant);
}

double eval_bimodal(PointView theta) {
  if (!bimodal_domain().contains(theta)) return 0.0;
  return bimodal_kernel(theta[0], theta[1]);
}

double eval_gaussmix_1d(double theta) {
  if (!(theta >= -8.0 && theta <= 17.0)) return 0.0;
  return gaussmix_kernel(theta);
}

TargetDensity banana_target(double ridge_constant) {
  return TargetDensity("banana", banana_domain(), [ridge_constant](PointView t) {
    return banana_kernel(t[0], t[1], ridge_constant);
  });
}

TargetDensity bimodal_target() {
  return TargetDensity("bimodal", bimodal_domain(),
                       [](PointView t) { return bimodal_kernel(t[0], t[1]); });
}

TargetDensity gaussmix_1d_target() {
  return TargetDensity("gaussmix-1d", BoundedDomain({-8.0}, {17.0}),
                       [](PointView t) { return gaussmix_kernel(t[0]); });
}

TargetDensity gaussian_target(Point mean, double variance,
                              BoundedDomain domain) {
  require_dimension(mean, domain.dimension());
  return TargetDensity("gaussian", std::move(domain),
                       [mean = std::move(mean), variance](PointView t) {
                         double r2 = 0.0;
                         for (std::size_t i = 0; i < t.size(); ++i)
                           r2 += (t[i] - mean[i]) * (t[i] - mean[i]);
                         return std::exp(-0.5 * r2 / variance);
                       });
}

TargetDensity flat_target(BoundedDomain domain, double level) {
  return TargetDensity("flat", std::move(domain),
                       [level](PointView) { return level; });
}

}  // namespace noisymc
