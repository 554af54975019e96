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

#include "noisymc/sample_sets.hpp"

#include <cmath>
#include <numeric>

#include "noisymc/error.hpp"

namespace noisymc {

double BudgetLedger::evaluate(NoisyOracle& oracle, PointView theta) {
  if (spent_ >= budget_) throw ConfigError("oracle budget exhausted");
  ++spent_;
  return oracle.evaluate(theta);
}

double WeightedSampleSet::mean_raw_weight() const {
  if (raw.empty()) throw SizeError("empty sample set");
  return std::accumulate(raw.begin(), raw.end(), 0.0) /
         static_cast<double>(raw.size());
}

void WeightedSampleSet::normalize() { normalized = normalize_weights(raw); }

std::vector<double> normalize_weights(const std::vector<double>& raw) {
  double sum = 0.0;
  for (double w : raw) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw DomainError("weights must be finite and nonnegative");
    sum += w;
  }
  if (!(sum > 0.0)) throw DegenerateWeightsError("all weights are zero");
  std::vector<double> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) out[i] = raw[i] / sum;
  return out;
}

std::vector<std::size_t> sir_resample(const std::vector<double>& weights,
                                      std::size_t n, Rng& rng) {
  // validates and rejects the all-zero case
  (void)normalize_weights(weights);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::vector<std::size_t> out(n);
  for (auto& i : out) i = pick(rng);
  return out;
}

std::vector<Point> sir_resample(const std::vector<Point>& candidates,
                                const std::vector<double>& weights,
                                std::size_t n, Rng& rng) {
  if (candidates.size() != weights.size())
    throw SizeError("candidate and weight counts differ");
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i : sir_resample(weights, n, rng))
    out.push_back(candidates[i]);
  return out;
}

}  // namespace noisymc
