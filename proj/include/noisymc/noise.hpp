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

#include <string>

#include "noisymc/rng.hpp"

namespace noisymc {

enum class NoiseKind {
  kNone,
  kMultiplicativeExponential,  // eps * p, eps ~ Exp(rate)
  kRectifiedGaussian,          // max(0, p + eps), eps ~ N(0, sigma^2)
  kFoldedGaussian,             // |p + eps|
  kLogAdditiveGaussian,        // exp(log p + eps)
};

/// Perturbation H(p, eps). `param` is the rate for the exponential kind and
/// the standard deviation for the Gaussian kinds; unused for kNone.
struct NoiseModel {
  NoiseKind kind = NoiseKind::kNone;
  double param = 0.0;

  static NoiseModel None() { return {}; }
  static NoiseModel MultiplicativeExponential(double rate);
  static NoiseModel RectifiedGaussian(double sigma);
  static NoiseModel FoldedGaussian(double sigma);
  static NoiseModel LogAdditiveGaussian(double sigma);

  std::string describe() const;
};

/// One noisy realization of p_val. Output is always >= 0.
/// Throws DomainError for the log-additive kind at p_val == 0.
double perturb(double p_val, const NoiseModel& noise, Rng& rng);

/// E[max(0, p + eps)], eps ~ N(0, sigma^2).
double rectified_mean(double p_val, double sigma);

/// E[|p + eps|], eps ~ N(0, sigma^2).
double folded_mean(double p_val, double sigma);

/// E[max(0, p + eps)^2].
double rectified_second_moment(double p_val, double sigma);

/// Mean function m = E[H(p, eps)] for any noise kind.
double noise_mean(double p_val, const NoiseModel& noise);

/// Variance function s^2 = var[H(p, eps)] for any noise kind.
double noise_variance(double p_val, const NoiseModel& noise);

}  // namespace noisymc
