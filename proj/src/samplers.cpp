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

#include "noisymc/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <utility>

#include "noisymc/error.hpp"

namespace noisymc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t iteration_cap(const ChainControl& c) {
  return c.iteration_cap > 0 ? c.iteration_cap : 100 * c.budget + 1000;
}

// Decides whether iteration t (1-based) may start when it can cost up to
// `cost` oracle units.
bool may_continue(const ChainControl& c, std::size_t t,
                  const BudgetLedger& ledger, std::uint64_t cost,
                  Chain& chain) {
  if (c.max_iterations > 0) {
    if (t > c.max_iterations) return false;
    if (!ledger.can_spend(cost)) {
      chain.budget_exhausted = true;
      return false;
    }
    return true;
  }
  return ledger.can_spend(cost) && t <= iteration_cap(c);
}

void check_start(const NoisyOracle& oracle, PointView theta0,
                 const ChainControl& control) {
  require_dimension(theta0, oracle.dimension());
  if (!oracle.domain().contains(theta0))
    throw DomainError("initial state outside the domain");
  if (control.budget < 1)
    throw ConfigError("budget must cover the initial evaluation");
}

void trace_line(std::ostream* os, std::size_t t, PointView state,
                PointView prop, double lr, bool accepted,
                std::uint64_t calls) {
  if (os == nullptr) return;
  *os << t;
  for (double x : state) *os << ' ' << x;
  for (double x : prop) *os << ' ' << x;
  *os << ' ' << lr << ' ' << (accepted ? 1 : 0) << ' ' << calls << '\n';
}

void prepare_trace(std::ostream* os) {
  if (os != nullptr) os->precision(17);
}

}  // namespace

double log_ratio(double num, double den) {
  if (den == 0.0) return kInf;
  if (num == 0.0) return -kInf;
  return std::log(num) - std::log(den);
}

bool mh_accept(double lr, Rng& rng) {
  if (lr >= 0.0) return true;
  return std::log(uniform01(rng)) < lr;
}

Chain noisy_mh(NoisyOracle& oracle, const RandomWalkProposal& proposal,
               PointView theta0, const ChainControl& control, NoisyMhMode mode,
               Rng& rng) {
  check_start(oracle, theta0, control);
  prepare_trace(control.trace);
  const BoundedDomain& dom = oracle.domain();
  BudgetLedger ledger(control.budget);
  Chain chain(theta0.size());
  const std::uint64_t cost = mode == NoisyMhMode::kPseudoMarginal ? 1 : 2;

  Point cur(theta0.begin(), theta0.end());
  // MC-within-MH redraws m~(cur) every step, so the start costs nothing.
  double m_cur = mode == NoisyMhMode::kPseudoMarginal
                     ? ledger.evaluate(oracle, cur)
                     : std::numeric_limits<double>::quiet_NaN();
  chain.push(cur, m_cur);

  for (std::size_t t = 1; may_continue(control, t, ledger, cost, chain); ++t) {
    Point prop = proposal.propose(cur, rng);
    double lr = -kInf;
    bool accepted = false;
    if (!dom.contains(prop)) {
      ++chain.out_of_domain;
      ++chain.free_iterations;
    } else {
      if (mode == NoisyMhMode::kMcWithinMh) m_cur = ledger.evaluate(oracle, cur);
      const double m_prop = ledger.evaluate(oracle, prop);
      lr = log_ratio(m_prop, m_cur);
      accepted = mh_accept(lr, rng);
      if (accepted) {
        cur = prop;
        m_cur = m_prop;
        ++chain.accepted;
      }
    }
    chain.push(cur, m_cur);
    trace_line(control.trace, t, cur, prop, lr, accepted, ledger.spent());
  }
  chain.oracle_calls = ledger.spent();
  return chain;
}

WeightedSampleSet noisy_is(NoisyOracle& oracle, const IndependentProposal& q,
                           std::size_t n, Rng& rng) {
  if (n == 0) throw SizeError("noisy_is needs N >= 1");
  if (q.dimension() != oracle.dimension())
    throw DimensionError("proposal and oracle dimensions differ");
  WeightedSampleSet ws(oracle.dimension());
  ws.flat.reserve(n * ws.dim);
  ws.raw.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point theta = q.sample(rng);
    double w = 0.0;
    if (oracle.domain().contains(theta)) {
      w = oracle.evaluate(theta) / q.density(theta);
      ++ws.oracle_calls;
    }
    ws.push(theta, w);
  }
  ws.normalize();
  return ws;
}

Chain mh_s(NoisyOracle& oracle, KnnSurrogate& surrogate,
           const RandomWalkProposal& proposal, PointView theta0,
           const ChainControl& control, const MhsOptions& options, Rng& rng) {
  check_start(oracle, theta0, control);
  prepare_trace(control.trace);
  const BoundedDomain& dom = oracle.domain();
  BudgetLedger ledger(control.budget);
  Chain chain(theta0.size());

  Point cur(theta0.begin(), theta0.end());
  surrogate.insert(cur, ledger.evaluate(oracle, cur));
  double s_cur = surrogate.predict(cur);
  chain.push(cur, s_cur);

  for (std::size_t t = 1; may_continue(control, t, ledger, 1, chain); ++t) {
    Point prop = proposal.propose(cur, rng);
    double lr = -kInf;
    bool accepted = false;
    bool inserted = false;
    if (!dom.contains(prop)) {
      ++chain.out_of_domain;
    } else if (options.rule == UpdateRule::kAlways) {
      surrogate.insert(prop, ledger.evaluate(oracle, prop));
      inserted = true;
      s_cur = surrogate.predict(cur);
      lr = log_ratio(surrogate.predict(prop), s_cur);
      accepted = mh_accept(lr, rng);
    } else {
      lr = log_ratio(surrogate.predict(prop), s_cur);
      accepted = mh_accept(lr, rng);
      const bool update = options.independent_update_draw
                              ? mh_accept(lr, rng)
                              : accepted;
      if (update) {
        surrogate.insert(prop, ledger.evaluate(oracle, prop));
        inserted = true;
      }
    }
    if (!inserted) ++chain.free_iterations;
    if (accepted) {
      cur = prop;
      ++chain.accepted;
    }
    if (inserted || accepted) s_cur = surrogate.predict(cur);
    chain.push(cur, s_cur);
    trace_line(control.trace, t, cur, prop, lr, accepted, ledger.spent());
  }
  chain.oracle_calls = ledger.spent();
  return chain;
}

Chain da_pm_mh(NoisyOracle& oracle, KnnSurrogate& surrogate,
               const RandomWalkProposal& proposal, PointView theta0,
               const ChainControl& control, const DaOptions& options,
               Rng& rng) {
  check_start(oracle, theta0, control);
  if (options.inner_steps < 1) throw ConfigError("T_surr must be >= 1");
  if (!(options.update_probability >= 0.0 && options.update_probability <= 1.0))
    throw ConfigError("update probability must lie in [0, 1]");
  prepare_trace(control.trace);
  const BoundedDomain& dom = oracle.domain();
  BudgetLedger ledger(control.budget);
  Chain chain(theta0.size());

  Point cur(theta0.begin(), theta0.end());
  double m_cur = ledger.evaluate(oracle, cur);
  surrogate.insert(cur, m_cur);
  chain.push(cur, m_cur);

  for (std::size_t t = 1; may_continue(control, t, ledger, 1, chain); ++t) {
    const double s_start = surrogate.predict(cur);
    Point xi = cur;
    double s_xi = s_start;
    bool moved = false;
    for (std::size_t k = 0; k < options.inner_steps; ++k) {
      Point cand = proposal.propose(xi, rng);
      if (!dom.contains(cand)) {
        ++chain.out_of_domain;
        continue;
      }
      const double s_cand = surrogate.predict(cand);
      if (mh_accept(log_ratio(s_cand, s_xi), rng)) {
        xi = std::move(cand);
        s_xi = s_cand;
        moved = true;
      }
    }

    double lr = kInf;
    bool accepted = true;
    if (!moved) {
      ++chain.free_iterations;
    } else {
      const double m_prop = ledger.evaluate(oracle, xi);
      lr = log_ratio(m_prop, m_cur) + std::log(s_start) - std::log(s_xi);
      accepted = mh_accept(lr, rng);
      if (options.update_probability >= 1.0 ||
          uniform01(rng) < options.update_probability)
        surrogate.insert(xi, m_prop);
      if (accepted) {
        cur = xi;
        m_cur = m_prop;
        ++chain.accepted;
      }
    }
    chain.push(cur, m_cur);
    trace_line(control.trace, t, cur, xi, lr, accepted, ledger.spent());
  }
  chain.oracle_calls = ledger.spent();
  return chain;
}

WeightedSampleSet n_dis(NoisyOracle& oracle, KnnSurrogate& surrogate,
                        const IndependentProposal& q,
                        const NdisOptions& options, Rng& rng) {
  const std::size_t T = options.iterations;
  const std::size_t N = options.per_iteration;
  const std::size_t L = options.candidates > 0 ? options.candidates : 10 * N;
  if (T < 1 || N < 1) throw ConfigError("N-DIS needs T >= 1 and N >= 1");
  if (10 * N > L) throw ConfigError("N-DIS needs N <= L / 10");
  if (q.dimension() != oracle.dimension())
    throw DimensionError("proposal and oracle dimensions differ");
  const BoundedDomain& dom = oracle.domain();
  BudgetLedger ledger(static_cast<std::uint64_t>(T) * N);

  WeightedSampleSet ws(oracle.dimension());
  std::vector<std::size_t> snapshots;
  std::vector<double> masses;
  std::vector<Point> cand(L);
  std::vector<double> gamma(L);

  for (std::size_t t = 1; t <= T; ++t) {
    snapshots.push_back(surrogate.mark_snapshot());
    double gamma_sum = 0.0;
    for (std::size_t l = 0; l < L; ++l) {
      cand[l] = q.sample(rng);
      gamma[l] = dom.contains(cand[l])
                     ? surrogate.predict(cand[l]) / q.density(cand[l])
                     : 0.0;
      gamma_sum += gamma[l];
    }
    masses.push_back(options.normalize_mixture
                         ? gamma_sum / static_cast<double>(L)
                         : 1.0);
    if (!(gamma_sum > 0.0)) {
      ws.degenerate_resampling = true;
      std::fill(gamma.begin(), gamma.end(), 1.0);
      masses.back() = 1.0;
    }

    std::vector<std::pair<std::size_t, double>> fresh;
    fresh.reserve(N);
    for (std::size_t idx : sir_resample(gamma, N, rng)) {
      const Point& theta = cand[idx];
      double w = 0.0;
      if (dom.contains(theta)) {
        const double m = ledger.evaluate(oracle, theta);
        double mix = 0.0;
        for (std::size_t tau = 0; tau < t; ++tau)
          mix += surrogate.predict_snapshot(theta, snapshots[tau]) /
                 masses[tau];
        w = m / (mix / static_cast<double>(t));
        fresh.emplace_back(idx, m);
      }
      ws.push(theta, w);
    }
    for (const auto& [idx, m] : fresh) surrogate.insert(cand[idx], m);
  }
  ws.oracle_calls = ledger.spent();
  ws.normalize();
  return ws;
}

}  // namespace noisymc
