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
#include <iosfwd>

#include "noisymc/knn_surrogate.hpp"
#include "noisymc/oracle.hpp"
#include "noisymc/proposals.hpp"
#include "noisymc/rng.hpp"
#include "noisymc/sample_sets.hpp"

namespace noisymc {

/// Iteration control shared by the MCMC samplers.
///
/// With max_iterations == 0 a sampler runs until `budget` oracle units are
/// spent (or `iteration_cap` iterations pass without spending them). With
/// max_iterations > 0 it stops after that many iterations and sets
/// Chain::budget_exhausted if the budget ran out first.
struct ChainControl {
  std::uint64_t budget = 5000;
  std::size_t max_iterations = 0;
  std::size_t iteration_cap = 0;  // 0: 100 * budget + 1000
  /// Per-iteration trace: t, state, proposal, log-ratio, accepted, calls.
  std::ostream* trace = nullptr;
};

enum class NoisyMhMode { kPseudoMarginal, kMcWithinMh };

/// Noisy Metropolis-Hastings. Pseudo-marginal mode recycles the value of the
/// current state; MC-within-MH redraws it every iteration (two oracle calls).
/// Proposals outside the domain are rejected without an oracle call.
/// Pseudo-marginal mode charges one extra call for m~(theta0).
Chain noisy_mh(NoisyOracle& oracle, const RandomWalkProposal& proposal,
               PointView theta0, const ChainControl& control, NoisyMhMode mode,
               Rng& rng);

/// Noisy importance sampling: N draws from q with raw weights m~/q.
/// Normalizes the weights before returning.
WeightedSampleSet noisy_is(NoisyOracle& oracle, const IndependentProposal& q,
                           std::size_t n, Rng& rng);

enum class UpdateRule {
  kAlways,      // evaluate and insert the proposed point every iteration
  kAcceptProb,  // evaluate and insert with the MH acceptance probability
};

struct MhsOptions {
  UpdateRule rule = UpdateRule::kAlways;
  /// kAcceptProb only: draw the update event with its own uniform instead of
  /// reusing the accept decision.
  bool independent_update_draw = false;
};

/// MH on an iteratively refined surrogate. The initial state is evaluated
/// and inserted into the design set. With kAlways the new node is inserted
/// before the MH test, so the test sees the refined surrogate; with
/// kAcceptProb the test runs on the current surrogate and the node is
/// inserted on acceptance.
Chain mh_s(NoisyOracle& oracle, KnnSurrogate& surrogate,
           const RandomWalkProposal& proposal, PointView theta0,
           const ChainControl& control, const MhsOptions& options, Rng& rng);

struct DaOptions {
  std::size_t inner_steps = 1;  // T_surr
  double update_probability = 1.0;
};

/// Delayed-acceptance pseudo-marginal MH with T_surr inner steps on the
/// surrogate. An iteration whose inner chain never moves is accepted
/// without an oracle call. Surrogate refinement reuses the outer-test
/// evaluation, so it costs no extra oracle units.
Chain da_pm_mh(NoisyOracle& oracle, KnnSurrogate& surrogate,
               const RandomWalkProposal& proposal, PointView theta0,
               const ChainControl& control, const DaOptions& options,
               Rng& rng);

struct NdisOptions {
  std::size_t iterations = 5;   // T
  std::size_t per_iteration = 1000;  // N
  std::size_t candidates = 0;   // L; 0 means 10 * N
  /// Divide each past surrogate by its SIR estimate of its own mass before
  /// mixing them in the weight denominator.
  bool normalize_mixture = true;
};

/// Noisy deep importance sampling. Costs exactly T * N oracle units; the
/// returned weights are normalized jointly over all T * N samples.
WeightedSampleSet n_dis(NoisyOracle& oracle, KnnSurrogate& surrogate,
                        const IndependentProposal& q,
                        const NdisOptions& options, Rng& rng);

/// Shared MH decision: accepts without drawing when log_ratio >= 0,
/// otherwise draws u and accepts iff log u < log_ratio.
bool mh_accept(double log_ratio, Rng& rng);

/// log(num / den) with the conventions used by the samplers: a zero
/// denominator gives +inf, a zero numerator -inf.
double log_ratio(double num, double den);

}  // namespace noisymc
