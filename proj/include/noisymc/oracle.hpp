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

#include <cstdint>
#include <utility>

#include "noisymc/domain.hpp"
#include "noisymc/noise.hpp"
#include "noisymc/rng.hpp"
#include "noisymc/targets.hpp"

namespace noisymc {

/// Source of noisy realizations m~(theta).
///
/// Every call to evaluate() is one oracle unit and bumps eval_count() by one.
/// Oracles own mutable state (a random stream and counters) and must be
/// confined to a single thread.
class NoisyOracle {
 public:
  virtual ~NoisyOracle() = default;

  virtual const BoundedDomain& domain() const = 0;
  std::size_t dimension() const { return domain().dimension(); }

  double evaluate(PointView theta) {
    ++evals_;
    return draw(theta);
  }

  std::uint64_t eval_count() const { return evals_; }

  /// Work units behind the oracle units (simulator calls, episodes).
  /// Equals eval_count() for oracles with no inner simulation.
  virtual std::uint64_t inner_units() const { return evals_; }

 protected:
  virtual double draw(PointView theta) = 0;

 private:
  std::uint64_t evals_ = 0;
};

/// m~(theta) = H(p(theta), eps) for an analytic target and noise model.
class SyntheticOracle final : public NoisyOracle {
 public:
  SyntheticOracle(TargetDensity target, NoiseModel noise, std::uint64_t seed);

  const BoundedDomain& domain() const override { return target_.domain(); }
  const TargetDensity& target() const { return target_; }
  const NoiseModel& noise() const { return noise_; }

  /// Mean function m(theta) implied by the noise model.
  double mean_function(PointView theta) const;

 protected:
  double draw(PointView theta) override;

 private:
  TargetDensity target_;
  NoiseModel noise_;
  Rng rng_;
};

/// Sample mean and unbiased sample variance of `draws` fresh evaluations.
/// Requires draws >= 2.
std::pair<double, double> empirical_mean_var(NoisyOracle& oracle,
                                             PointView theta,
                                             std::size_t draws);

}  // namespace noisymc
