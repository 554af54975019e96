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

#include "noisymc/abc.hpp"

#include <cmath>

#include "noisymc/error.hpp"
#include "noisymc/normal.hpp"

namespace noisymc {

GaussianToySimulator::GaussianToySimulator(std::size_t dim, double noise_var,
                                           double prior_mean, double prior_var)
    : dim_(dim),
      noise_var_(noise_var),
      prior_mean_(prior_mean),
      prior_var_(prior_var) {
  if (dim == 0) throw DimensionError("simulator dimension must be >= 1");
  if (!(noise_var > 0.0) || !(prior_var > 0.0))
    throw DomainError("simulator variances must be > 0");
}

void GaussianToySimulator::simulate(PointView theta, Rng& rng,
                                    std::vector<double>& y) const {
  require_dimension(theta, dim_);
  std::normal_distribution<double> eps(0.0, std::sqrt(noise_var_));
  y.resize(dim_);
  for (std::size_t i = 0; i < dim_; ++i) y[i] = theta[i] + eps(rng);
}

double GaussianToySimulator::prior_density(PointView theta) const {
  require_dimension(theta, dim_);
  double g = 1.0;
  for (double x : theta) g *= normal_pdf(x, prior_mean_, prior_var_);
  return g;
}

Point GaussianToySimulator::sample_prior(Rng& rng) const {
  std::normal_distribution<double> d(prior_mean_, std::sqrt(prior_var_));
  Point out(dim_);
  for (double& x : out) x = d(rng);
  return out;
}

AbcKernel AbcKernel::Indicator(double eps) {
  if (!(eps > 0.0)) throw DomainError("ABC epsilon must be > 0");
  return {Kind::kIndicator, eps};
}

AbcKernel AbcKernel::Gaussian(double eps) {
  if (!(eps > 0.0)) throw DomainError("ABC epsilon must be > 0");
  return {Kind::kGaussian, eps};
}

double AbcKernel::operator()(PointView y_true, PointView y) const {
  require_dimension(y, y_true.size());
  double d2 = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = y_true[i] - y[i];
    d2 += d * d;
  }
  if (kind == Kind::kIndicator) return d2 < epsilon * epsilon ? 1.0 : 0.0;
  return std::exp(-d2 / (2.0 * epsilon * epsilon));
}

double abc_noisy_eval(const Simulator& sim, const AbcKernel& kernel,
                      PointView y_true, PointView theta, std::size_t n,
                      const IndependentProposal* q, Rng& rng) {
  if (n == 0) throw SizeError("ABC evaluation needs N >= 1");
  require_dimension(y_true, sim.data_dimension());
  std::vector<double> y(sim.data_dimension());
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sim.simulate(theta, rng, y);
    sum += kernel(y_true, y);
  }
  double m = sum / static_cast<double>(n);
  if (q != nullptr) {
    const double qd = q->density(theta);
    if (!(qd > 0.0)) throw DomainError("proposal density vanishes at theta");
    m *= sim.prior_density(theta) / qd;
  }
  return m;
}

std::vector<std::pair<Point, double>> abc_target_pairs(
    const Simulator& sim, const AbcKernel& kernel, PointView y_true,
    std::size_t t, std::size_t n, const IndependentProposal& q, Rng& rng) {
  if (t == 0) throw SizeError("ABC pairs need T >= 1");
  std::vector<std::pair<Point, double>> out;
  out.reserve(t);
  for (std::size_t i = 0; i < t; ++i) {
    Point theta = q.sample(rng);
    const double m = abc_noisy_eval(sim, kernel, y_true, theta, n, &q, rng);
    out.emplace_back(std::move(theta), m);
  }
  return out;
}

AbcOracle::AbcOracle(const Simulator& sim, AbcKernel kernel, Point y_true,
                     std::size_t n, BoundedDomain domain, std::uint64_t seed)
    : sim_(sim),
      kernel_(kernel),
      y_true_(std::move(y_true)),
      n_(n),
      domain_(std::move(domain)),
      rng_(seed) {
  if (n_ == 0) throw SizeError("ABC oracle needs N >= 1");
  if (domain_.dimension() != sim_.parameter_dimension())
    throw DimensionError("ABC domain and simulator dimensions differ");
  require_dimension(y_true_, sim_.data_dimension());
}

double AbcOracle::draw(PointView theta) {
  if (!domain_.contains(theta)) return 0.0;
  sim_calls_ += n_;
  return sim_.prior_density(theta) *
         abc_noisy_eval(sim_, kernel_, y_true_, theta, n_, nullptr, rng_);
}

}  // namespace noisymc
