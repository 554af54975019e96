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

#include "noisymc/noise.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "noisymc/error.hpp"
#include "noisymc/normal.hpp"

namespace noisymc {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw DomainError(std::string(what) + " must be positive and finite");
}

}  // namespace

NoiseModel NoiseModel::MultiplicativeExponential(double rate) {
  require_positive(rate, "exponential rate");
  return {NoiseKind::kMultiplicativeExponential, rate};
}

NoiseModel NoiseModel::RectifiedGaussian(double sigma) {
  require_positive(sigma, "noise sigma");
  return {NoiseKind::kRectifiedGaussian, sigma};
}

NoiseModel NoiseModel::FoldedGaussian(double sigma) {
  require_positive(sigma, "noise sigma");
  return {NoiseKind::kFoldedGaussian, sigma};
}

NoiseModel NoiseModel::LogAdditiveGaussian(double sigma) {
  require_positive(sigma, "noise sigma");
  return {NoiseKind::kLogAdditiveGaussian, sigma};
}

std::string NoiseModel::describe() const {
  std::ostringstream os;
  switch (kind) {
    case NoiseKind::kNone: return "none";
    case NoiseKind::kMultiplicativeExponential: os << "exp(" << param << ")"; break;
    case NoiseKind::kRectifiedGaussian: os << "rectified(" << param << ")"; break;
    case NoiseKind::kFoldedGaussian: os << "folded(" << param << ")"; break;
    case NoiseKind::kLogAdditiveGaussian: os << "logadd(" << param << ")"; break;
  }
  return os.str();
}

double perturb(double p_val, const NoiseModel& noise, Rng& rng) {
  if (!(p_val >= 0.0)) throw DomainError("perturb requires p_val >= 0");
  switch (noise.kind) {
    case NoiseKind::kNone:
      return p_val;
    case NoiseKind::kMultiplicativeExponential:
      return p_val * std::exponential_distribution<double>(noise.param)(rng);
    case NoiseKind::kRectifiedGaussian:
      return std::max(
          0.0, p_val + std::normal_distribution<double>(0.0, noise.param)(rng));
    case NoiseKind::kFoldedGaussian:
      return std::abs(p_val +
                      std::normal_distribution<double>(0.0, noise.param)(rng));
    case NoiseKind::kLogAdditiveGaussian:
      if (p_val == 0.0) return 0.0;  // log 0 = -inf
      return std::exp(std::log(p_val) +
                      std::normal_distribution<double>(0.0, noise.param)(rng));
  }
  return p_val;
}

// p Phi(p/s) + s phi(p/s); algebraically the same as the textbook
// [p + s phi(-p/s) / (1 - Phi(-p/s))] [1 - Phi(-p/s)] without the division.
double rectified_mean(double p_val, double sigma) {
  const double z = p_val / sigma;
  return p_val * std_normal_cdf(z) + sigma * std_normal_pdf(z);
}

double folded_mean(double p_val, double sigma) {
  const double z = p_val / sigma;
  return sigma * std::sqrt(2.0 / std::numbers::pi) * std::exp(-0.5 * z * z) +
         p_val * (1.0 - 2.0 * std_normal_cdf(-z));
}

double rectified_second_moment(double p_val, double sigma) {
  const double z = p_val / sigma;
  return (p_val * p_val + sigma * sigma) * std_normal_cdf(z) +
         p_val * sigma * std_normal_pdf(z);
}

double noise_mean(double p_val, const NoiseModel& noise) {
  switch (noise.kind) {
    case NoiseKind::kNone: return p_val;
    case NoiseKind::kMultiplicativeExponential: return p_val / noise.param;
    case NoiseKind::kRectifiedGaussian: return rectified_mean(p_val, noise.param);
    case NoiseKind::kFoldedGaussian: return folded_mean(p_val, noise.param);
    case NoiseKind::kLogAdditiveGaussian:
      return p_val * std::exp(0.5 * noise.param * noise.param);
  }
  return p_val;
}

double noise_variance(double p_val, const NoiseModel& noise) {
  const double s = noise.param;
  switch (noise.kind) {
    case NoiseKind::kNone: return 0.0;
    case NoiseKind::kMultiplicativeExponential: return p_val * p_val / (s * s);
    case NoiseKind::kRectifiedGaussian: {
      const double m = rectified_mean(p_val, s);
      return std::max(0.0, rectified_second_moment(p_val, s) - m * m);
    }
    case NoiseKind::kFoldedGaussian: {
      const double m = folded_mean(p_val, s);
      return std::max(0.0, p_val * p_val + s * s - m * m);
    }
    case NoiseKind::kLogAdditiveGaussian:
      // lognormal: p^2 e^{s^2} (e^{s^2} - 1)
      return p_val * p_val * std::exp(s * s) * std::expm1(s * s);
  }
  return 0.0;
}

}  // namespace noisymc
