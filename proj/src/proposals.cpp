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

#include "noisymc/proposals.hpp"

#include <cmath>
#include <numbers>

#include "noisymc/error.hpp"

namespace noisymc {

RandomWalkProposal::RandomWalkProposal(double scale) : scale_(scale) {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw DomainError("random-walk scale must be positive");
}

Point RandomWalkProposal::propose(PointView current, Rng& rng) const {
  std::normal_distribution<double> step(0.0, scale_);
  Point out(current.begin(), current.end());
  for (double& x : out) x += step(rng);
  return out;
}

IndependentProposal::IndependentProposal(Kind kind, Point center,
                                         std::vector<double> spread,
                                         std::optional<BoundedDomain> box)
    : kind_(kind),
      center_(std::move(center)),
      spread_(std::move(spread)),
      box_(std::move(box)),
      norm_(1.0) {
  if (kind_ == Kind::kUniform) {
    norm_ = 1.0 / box_->volume();
  } else {
    for (double s : spread_) {
      if (!(s > 0.0)) throw DomainError("Gaussian proposal stddev must be > 0");
      norm_ /= std::sqrt(2.0 * std::numbers::pi) * s;
    }
  }
}

IndependentProposal IndependentProposal::Uniform(BoundedDomain domain) {
  Point lo = domain.lower();
  std::vector<double> side(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i)
    side[i] = domain.upper()[i] - lo[i];
  return IndependentProposal(Kind::kUniform, std::move(lo), std::move(side),
                             std::move(domain));
}

IndependentProposal IndependentProposal::Gaussian(Point mean,
                                                  std::vector<double> stddev) {
  if (mean.empty() || mean.size() != stddev.size())
    throw DimensionError("Gaussian proposal mean/stddev size mismatch");
  return IndependentProposal(Kind::kGaussian, std::move(mean),
                             std::move(stddev), std::nullopt);
}

Point IndependentProposal::sample(Rng& rng) const {
  Point out(center_.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (kind_ == Kind::kUniform) {
      out[i] = center_[i] + spread_[i] * uniform01(rng);
    } else {
      out[i] = std::normal_distribution<double>(center_[i], spread_[i])(rng);
    }
  }
  return out;
}

double IndependentProposal::density(PointView theta) const {
  require_dimension(theta, center_.size());
  if (kind_ == Kind::kUniform) return box_->contains(theta) ? norm_ : 0.0;
  double q = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double z = (theta[i] - center_[i]) / spread_[i];
    q += z * z;
  }
  return norm_ * std::exp(-0.5 * q);
}

}  // namespace noisymc
