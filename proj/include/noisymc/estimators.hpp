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
#include <functional>
#include <string>
#include <vector>

#include "noisymc/domain.hpp"
#include "noisymc/sample_sets.hpp"

namespace noisymc {

struct MomentEstimate {
  std::vector<double> mean;
  std::vector<double> var;  // diagonal of the covariance
};

enum class TruthSource { kPublished, kQuadrature };

struct GroundTruth {
  std::vector<double> mean;
  std::vector<double> var;
  TruthSource source = TruthSource::kQuadrature;
};

/// Sample mean and unbiased per-coordinate variance of the states after
/// dropping the first floor(burn_in_fraction * size) states.
MomentEstimate chain_moments(const Chain& chain, double burn_in_fraction);

/// Self-normalized mean and variance. Normalizes the raw weights itself.
MomentEstimate weighted_moments(const WeightedSampleSet& ws);

using DensityFn = std::function<double(PointView)>;

/// Normalized mean and diagonal covariance by the midpoint rule on a
/// points_per_dim^d tensor grid (d <= 2, points_per_dim >= 64). Mean
/// components below 1e-12 of the domain scale are reported as exactly 0.
GroundTruth quadrature_moments(const DensityFn& density,
                               const BoundedDomain& domain,
                               std::size_t points_per_dim);

/// Midpoint-rule integral of `density` on the same grid.
double quadrature_mass(const DensityFn& density, const BoundedDomain& domain,
                       std::size_t points_per_dim);

struct ErrorSummary {
  double mean_error = 0.0;
  double var_error = 0.0;
  bool mean_unnormalized = false;  // truth mean has zero norm
  bool var_unnormalized = false;
};

/// Median over runs of |est - truth|^2 / |truth|^2, separately for the mean
/// and the variance blocks. A block whose truth is the zero vector falls
/// back to the plain median squared error and is flagged.
ErrorSummary rel_median_sq_error(const std::vector<MomentEstimate>& runs,
                                 const GroundTruth& truth);

/// Text cache of quadrature truths, one "key d mean.. var.." per line.
/// Returns the cached entry for `key` or computes, appends and returns it.
GroundTruth cached_truth(const std::string& path, const std::string& key,
                         const std::function<GroundTruth()>& compute);

}  // namespace noisymc
