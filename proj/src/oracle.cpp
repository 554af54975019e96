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

#include "noisymc/oracle.hpp"

#include "noisymc/error.hpp"

namespace noisymc {

SyntheticOracle::SyntheticOracle(TargetDensity target, NoiseModel noise,
                                 std::uint64_t seed)
    : target_(std::move(target)), noise_(noise), rng_(seed) {}

double SyntheticOracle::mean_function(PointView theta) const {
  return noise_mean(target_(theta), noise_);
}

double SyntheticOracle::draw(PointView theta) {
  const double p = target_(theta);
  // log-additive noise has the limit exp(-inf) = 0 where p vanishes
  if (p == 0.0 && noise_.kind == NoiseKind::kLogAdditiveGaussian) return 0.0;
  return perturb(p, noise_, rng_);
}

std::pair<double, double> empirical_mean_var(NoisyOracle& oracle,
                                             PointView theta,
                                             std::size_t draws) {
  if (draws < 2) throw SizeError("empirical_mean_var needs at least 2 draws");
  // Welford
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double x = oracle.evaluate(theta);
    const double delta = x - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (x - mean);
  }
  return {mean, m2 / static_cast<double>(draws - 1)};
}

}  // namespace noisymc
