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
#include <cstdint>
#include <utility>
#include <vector>

#include "noisymc/domain.hpp"
#include "noisymc/oracle.hpp"
#include "noisymc/proposals.hpp"
#include "noisymc/rng.hpp"

namespace noisymc {

/// Likelihood-free model: pseudo-data draws y ~ l(y | theta) and a prior g.
class Simulator {
 public:
  virtual ~Simulator() = default;

  virtual std::size_t parameter_dimension() const = 0;
  virtual std::size_t data_dimension() const = 0;

  /// Writes one pseudo-dataset into `y` (resized by the caller).
  virtual void simulate(PointView theta, Rng& rng, std::vector<double>& y)
      const = 0;
  virtual double prior_density(PointView theta) const = 0;
  virtual Point sample_prior(Rng& rng) const = 0;
};

/// y | theta ~ N(theta, noise_var I), prior N(prior_mean, prior_var I).
class GaussianToySimulator final : public Simulator {
 public:
  GaussianToySimulator(std::size_t dim, double noise_var, double prior_mean,
                       double prior_var);

  std::size_t parameter_dimension() const override { return dim_; }
  std::size_t data_dimension() const override { return dim_; }
  void simulate(PointView theta, Rng& rng,
                std::vector<double>& y) const override;
  double prior_density(PointView theta) const override;
  Point sample_prior(Rng& rng) const override;

  double noise_var() const { return noise_var_; }
  double prior_mean() const { return prior_mean_; }
  double prior_var() const { return prior_var_; }

 private:
  std::size_t dim_;
  double noise_var_;
  double prior_mean_;
  double prior_var_;
};

/// Discrepancy kernel h(y_true | y, eps). The Gaussian kernel omits its
/// normalizing constant.
struct AbcKernel {
  enum class Kind { kIndicator, kGaussian };

  Kind kind;
  double epsilon;

  static AbcKernel Indicator(double eps);
  static AbcKernel Gaussian(double eps);

  double operator()(PointView y_true, PointView y) const;
};

/// (1/N) sum_n h(y_true | y_n, eps) over N pseudo-datasets at theta, times
/// g(theta)/q(theta) when `q` is given.
double abc_noisy_eval(const Simulator& sim, const AbcKernel& kernel,
                      PointView y_true, PointView theta, std::size_t n,
                      const IndependentProposal* q, Rng& rng);

/// T pairs (theta_t, m~_eps(theta_t)) with theta_t ~ q and the g/q
/// correction applied.
std::vector<std::pair<Point, double>> abc_target_pairs(
    const Simulator& sim, const AbcKernel& kernel, PointView y_true,
    std::size_t t, std::size_t n, const IndependentProposal& q, Rng& rng);

/// Noisy oracle for the ABC posterior: m~(theta) = g(theta) (1/N) sum h.
/// One evaluation is one oracle unit and N simulator units.
class AbcOracle final : public NoisyOracle {
 public:
  AbcOracle(const Simulator& sim, AbcKernel kernel, Point y_true,
            std::size_t n, BoundedDomain domain, std::uint64_t seed);

  const BoundedDomain& domain() const override { return domain_; }
  std::uint64_t inner_units() const override { return sim_calls_; }
  std::size_t pseudo_datasets() const { return n_; }

 protected:
  double draw(PointView theta) override;

 private:
  const Simulator& sim_;
  AbcKernel kernel_;
  Point y_true_;
  std::size_t n_;
  BoundedDomain domain_;
  Rng rng_;
  std::uint64_t sim_calls_ = 0;
};

}  // namespace noisymc
