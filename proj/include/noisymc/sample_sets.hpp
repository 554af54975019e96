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
#include <vector>

#include "noisymc/domain.hpp"
#include "noisymc/oracle.hpp"
#include "noisymc/rng.hpp"

namespace noisymc {

/// Budget of oracle units E and the running tally.
class BudgetLedger {
 public:
  explicit BudgetLedger(std::uint64_t budget) : budget_(budget) {}

  std::uint64_t budget() const { return budget_; }
  std::uint64_t spent() const { return spent_; }
  std::uint64_t remaining() const { return budget_ - spent_; }
  bool can_spend(std::uint64_t units) const { return units <= remaining(); }

  /// One charged oracle call. Throws ConfigError when the budget is spent.
  double evaluate(NoisyOracle& oracle, PointView theta);

 private:
  std::uint64_t budget_;
  std::uint64_t spent_ = 0;
};

/// States of a Markov chain, stored row-major, plus the value recycled at
/// each state (noisy realization or surrogate value depending on the
/// sampler).
struct Chain {
  explicit Chain(std::size_t dim) : dim(dim) {}

  std::size_t dim;
  std::vector<double> flat;
  std::vector<double> values;
  std::size_t accepted = 0;
  std::size_t out_of_domain = 0;
  std::size_t free_iterations = 0;  // iterations that made no oracle call
  std::uint64_t oracle_calls = 0;
  bool budget_exhausted = false;

  std::size_t size() const { return values.size(); }
  std::size_t iterations() const { return size() == 0 ? 0 : size() - 1; }
  PointView state(std::size_t i) const {
    return {flat.data() + i * dim, dim};
  }
  void push(PointView theta, double value) {
    flat.insert(flat.end(), theta.begin(), theta.end());
    values.push_back(value);
  }
  double acceptance_rate() const {
    return iterations() == 0 ? 0.0
                             : static_cast<double>(accepted) / iterations();
  }
};

/// Samples with raw importance weights; normalized weights are filled by
/// normalize().
struct WeightedSampleSet {
  explicit WeightedSampleSet(std::size_t dim) : dim(dim) {}

  std::size_t dim;
  std::vector<double> flat;
  std::vector<double> raw;
  std::vector<double> normalized;
  std::uint64_t oracle_calls = 0;
  bool degenerate_resampling = false;

  std::size_t size() const { return raw.size(); }
  PointView sample(std::size_t i) const {
    return {flat.data() + i * dim, dim};
  }
  void push(PointView theta, double weight) {
    flat.insert(flat.end(), theta.begin(), theta.end());
    raw.push_back(weight);
  }
  /// Mean raw weight, the estimate of the normalizing constant.
  double mean_raw_weight() const;
  /// Throws DegenerateWeightsError if every raw weight is zero.
  void normalize();
};

/// w_n / sum_j w_j. Throws DegenerateWeightsError on a zero sum and
/// DomainError on negative or non-finite input.
std::vector<double> normalize_weights(const std::vector<double>& raw);

/// N multinomial draws of candidate indices with probabilities proportional
/// to `weights`. Throws DegenerateWeightsError if all weights are zero.
std::vector<std::size_t> sir_resample(const std::vector<double>& weights,
                                      std::size_t n, Rng& rng);

/// Same draws, returning copies of the selected candidates.
std::vector<Point> sir_resample(const std::vector<Point>& candidates,
                                const std::vector<double>& weights,
                                std::size_t n, Rng& rng);

}  // namespace noisymc
