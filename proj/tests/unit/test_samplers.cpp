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
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "noisymc/error.hpp"
#include "noisymc/estimators.hpp"
#include "noisymc/oracle.hpp"
#include "noisymc/samplers.hpp"
#include "noisymc/targets.hpp"

using namespace noisymc;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ChainControl budget(std::uint64_t e) {
  ChainControl c;
  c.budget = e;
  return c;
}

KnnSurrogate make_surrogate(const BoundedDomain& d, std::size_t k) {
  KnnSurrogate::Options o;
  o.k = k;
  return KnnSurrogate(d, o);
}

bool same_states(const Chain& a, const Chain& b) {
  return a.size() == b.size() && a.flat == b.flat;
}

// Batch-means standard error of a scalar series.
double batch_se(const std::vector<double>& x, std::size_t batches) {
  const std::size_t len = x.size() / batches;
  std::vector<double> means;
  for (std::size_t b = 0; b < batches; ++b) {
    double s = 0.0;
    for (std::size_t i = 0; i < len; ++i) s += x[b * len + i];
    means.push_back(s / len);
  }
  const double m = std::accumulate(means.begin(), means.end(), 0.0) / batches;
  double v = 0.0;
  for (double y : means) v += (y - m) * (y - m);
  return std::sqrt(v / (batches - 1) / batches);
}

}  // namespace

TEST_CASE("accept helper and log ratios") {
  Rng a(1), b(1);
  CHECK(mh_accept(0.0, a));
  CHECK(mh_accept(kInf, a));
  CHECK(a() == b());  // no draw when lr >= 0
  CHECK_FALSE(mh_accept(-kInf, a));
  CHECK(log_ratio(1.0, 0.0) == kInf);
  CHECK(log_ratio(0.0, 1.0) == -kInf);
  CHECK(log_ratio(std::exp(1.0), 1.0) == doctest::Approx(1.0));
}

TEST_CASE("flat noiseless target accepts every in-domain proposal") {
  SyntheticOracle o(flat_target(BoundedDomain::Cube(2, -5, 5)),
                    NoiseModel::None(), 1);
  Rng rng(2);
  const Chain c = noisy_mh(o, RandomWalkProposal(1.0), Point{0, 0},
                           budget(2000), NoisyMhMode::kPseudoMarginal, rng);
  CHECK(c.accepted + c.out_of_domain == c.iterations());
  CHECK(c.accepted > 0);
}

TEST_CASE("budget exactness for every chain sampler") {
  const auto target = banana_target();
  const auto noise = NoiseModel::MultiplicativeExponential(1.0);
  const RandomWalkProposal prop(3.0);
  const Point x0{0.0, 0.0};
  const std::uint64_t E = 1500;

  SUBCASE("pseudo-marginal: one initial call plus one per in-domain step") {
    SyntheticOracle o(target, noise, 3);
    Rng rng(4);
    const Chain c = noisy_mh(o, prop, x0, budget(E), NoisyMhMode::kPseudoMarginal, rng);
    CHECK(c.oracle_calls == E);
    CHECK(o.eval_count() == E);
    CHECK(1 + c.iterations() - c.free_iterations == E);
  }
  SUBCASE("MC within MH: two calls per in-domain step") {
    SyntheticOracle o(target, noise, 3);
    Rng rng(4);
    const Chain c = noisy_mh(o, prop, x0, budget(E), NoisyMhMode::kMcWithinMh, rng);
    CHECK(o.eval_count() == E);
    CHECK(2 * (c.iterations() - c.free_iterations) == E);
  }
  SUBCASE("MH-S: one call per update event") {
    for (auto rule : {UpdateRule::kAlways, UpdateRule::kAcceptProb}) {
      SyntheticOracle o(target, noise, 3);
      auto s = make_surrogate(target.domain(), 10);
      Rng rng(4);
      const Chain c = mh_s(o, s, prop, x0, budget(E), {rule, false}, rng);
      CHECK(o.eval_count() == E);
      CHECK(s.design().size() == E);
      CHECK(1 + c.iterations() - c.free_iterations == E);
    }
  }
  SUBCASE("DA: one call per non-trivial outer test") {
    SyntheticOracle o(target, noise, 3);
    auto s = make_surrogate(target.domain(), 10);
    Rng rng(4);
    const Chain c = da_pm_mh(o, s, prop, x0, budget(E), {5, 1.0}, rng);
    CHECK(o.eval_count() == E);
    CHECK(1 + c.iterations() - c.free_iterations == E);
    CHECK(c.free_iterations > 0);
  }
  SUBCASE("N-DIS: N times T") {
    SyntheticOracle o(target, noise, 3);
    auto s = make_surrogate(target.domain(), 10);
    Rng rng(4);
    const auto ws = n_dis(o, s, IndependentProposal::Uniform(target.domain()),
                          {3, 500, 0, true}, rng);
    CHECK(ws.oracle_calls == 1500);
    CHECK(o.eval_count() == 1500);
    CHECK(ws.size() == 1500);
  }
}

TEST_CASE("iteration limit with too little budget sets the exhausted flag") {
  SyntheticOracle o(banana_target(), NoiseModel::None(), 1);
  Rng rng(1);
  ChainControl c;
  c.budget = 10;
  c.max_iterations = 1000;
  const Chain ch = noisy_mh(o, RandomWalkProposal(1.0), Point{0, 0}, c,
                            NoisyMhMode::kPseudoMarginal, rng);
  CHECK(ch.budget_exhausted);
  CHECK(ch.oracle_calls == 10);
}

TEST_CASE("fixed seeds give bit-identical chains and weight sets") {
  const auto target = bimodal_target();
  const auto noise = NoiseModel::MultiplicativeExponential(1.0);
  auto run = [&](int algo) {
    SyntheticOracle o(target, noise, 77);
    auto s = make_surrogate(target.domain(), 5);
    Rng rng(78);
    const RandomWalkProposal p(2.0);
    switch (algo) {
      case 0: return noisy_mh(o, p, Point{1, 1}, budget(800), NoisyMhMode::kPseudoMarginal, rng).flat;
      case 1: return mh_s(o, s, p, Point{1, 1}, budget(800), {UpdateRule::kAcceptProb, false}, rng).flat;
      case 2: return da_pm_mh(o, s, p, Point{1, 1}, budget(800), {5, 1.0}, rng).flat;
      default: {
        const auto ws = n_dis(o, s, IndependentProposal::Uniform(target.domain()), {4, 200, 0, true}, rng);
        std::vector<double> v = ws.flat;
        v.insert(v.end(), ws.raw.begin(), ws.raw.end());
        return v;
      }
    }
  };
  for (int a = 0; a < 4; ++a) CHECK(run(a) == run(a));
}

TEST_CASE("trace has one line per iteration") {
  SyntheticOracle o(banana_target(), NoiseModel::None(), 1);
  Rng rng(1);
  std::ostringstream os;
  ChainControl c = budget(200);
  c.trace = &os;
  const Chain ch = noisy_mh(o, RandomWalkProposal(2.0), Point{0, 0}, c,
                            NoisyMhMode::kPseudoMarginal, rng);
  const std::string s = os.str();
  CHECK(static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')) == ch.iterations());
  std::istringstream first(s.substr(0, s.find('\n')));
  std::vector<double> cols;
  for (double x; first >> x;) cols.push_back(x);
  CHECK(cols.size() == 1 + 2 + 2 + 3);
}

TEST_CASE("pseudo-marginal chain targets the mean function") {
  SyntheticOracle o(gaussian_target(Point{0.0}, 1.0, BoundedDomain::Cube(1, -10, 10)),
                    NoiseModel::MultiplicativeExponential(1.0), 5);
  Rng rng(6);
  const Chain c = noisy_mh(o, RandomWalkProposal(2.5), Point{0.0}, budget(1000000),
                           NoisyMhMode::kPseudoMarginal, rng);
  const std::size_t burn = c.size() / 5;
  std::vector<double> xs(c.flat.begin() + burn, c.flat.end());
  const auto m = chain_moments(c, 0.2);
  CHECK(std::abs(m.mean[0]) < 3 * batch_se(xs, 50));
  CHECK(m.var[0] == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("noisy IS with a noiseless target equal to the proposal") {
  const auto dom = BoundedDomain::Cube(2, -1, 1);
  SyntheticOracle o(flat_target(dom, 0.25), NoiseModel::None(), 1);
  Rng rng(3);
  const auto ws = noisy_is(o, IndependentProposal::Uniform(dom), 100, rng);
  for (double w : ws.raw) CHECK(w == doctest::Approx(1.0));
  for (double w : ws.normalized) CHECK(w == doctest::Approx(0.01));
}

TEST_CASE("MH-S always with K=1 reproduces PM-MH") {
  const auto target = banana_target();
  const auto noise = NoiseModel::MultiplicativeExponential(1.0);
  for (std::uint64_t seed : {1, 2, 3}) {
    SyntheticOracle o1(target, noise, seed), o2(target, noise, seed);
    Rng r1(seed + 10), r2(seed + 10);
    auto s = make_surrogate(target.domain(), 1);
    const Chain pm = noisy_mh(o1, RandomWalkProposal(3.0), Point{0, 0}, budget(3000),
                              NoisyMhMode::kPseudoMarginal, r1);
    const Chain ms = mh_s(o2, s, RandomWalkProposal(3.0), Point{0, 0}, budget(3000),
                          {UpdateRule::kAlways, false}, r2);
    CHECK(same_states(pm, ms));
  }
}

TEST_CASE("MH-S accept rule grows the design exactly on acceptance") {
  const auto target = banana_target();
  SyntheticOracle o(target, NoiseModel::MultiplicativeExponential(1.0), 8);
  auto s = make_surrogate(target.domain(), 3);
  Rng rng(9);
  const Chain c = mh_s(o, s, RandomWalkProposal(3.0), Point{0, 0}, budget(1000),
                       {UpdateRule::kAcceptProb, false}, rng);
  CHECK(s.design().size() == 1 + c.accepted);
}

TEST_CASE("MH-S accept rule with only rejections never grows the design") {
  const auto dom = BoundedDomain::Cube(1, 0, 1);
  SyntheticOracle o(flat_target(dom), NoiseModel::None(), 1);
  auto s = make_surrogate(dom, 1);
  Rng rng(1);
  ChainControl c;
  c.budget = 10;
  c.max_iterations = 500;
  const Chain ch = mh_s(o, s, RandomWalkProposal(1e6), Point{0.5}, c,
                        {UpdateRule::kAcceptProb, false}, rng);
  CHECK(ch.accepted == 0);
  CHECK(s.design().size() == 1);
  CHECK(o.eval_count() == 1);
}

TEST_CASE("larger K flattens the surrogate and raises acceptance") {
  const auto target = banana_target();
  auto rate = [&](std::size_t k) {
    SyntheticOracle o(target, NoiseModel::None(), 1);
    auto s = make_surrogate(target.domain(), k);
    Rng rng(2);
    return mh_s(o, s, RandomWalkProposal(3.0), Point{0, 0}, budget(3000),
                {UpdateRule::kAlways, false}, rng)
        .acceptance_rate();
  };
  CHECK(rate(1) < rate(100));
}

TEST_CASE("DA with a constant surrogate and one inner step equals PM-MH") {
  const auto target = banana_target();
  const auto noise = NoiseModel::MultiplicativeExponential(1.0);
  for (std::uint64_t seed : {4, 5}) {
    SyntheticOracle o1(target, noise, seed), o2(target, noise, seed);
    Rng r1(seed), r2(seed);
    // K beyond any design size keeps the surrogate at its uniform level.
    auto s = make_surrogate(target.domain(), SIZE_MAX);
    const Chain pm = noisy_mh(o1, RandomWalkProposal(3.0), Point{0, 0}, budget(3000),
                              NoisyMhMode::kPseudoMarginal, r1);
    const Chain da = da_pm_mh(o2, s, RandomWalkProposal(3.0), Point{0, 0}, budget(3000),
                              {1, 1.0}, r2);
    CHECK(same_states(pm, da));
    CHECK(pm.values == da.values);
    CHECK(pm.accepted == da.accepted);
  }
}

TEST_CASE("DA iterations whose inner chain never moves cost nothing") {
  const auto dom = BoundedDomain::Cube(1, 0, 1);
  SyntheticOracle o(flat_target(dom), NoiseModel::None(), 1);
  auto s = make_surrogate(dom, 1);
  Rng rng(1);
  ChainControl c;
  c.budget = 5;
  c.max_iterations = 300;
  const Chain ch = da_pm_mh(o, s, RandomWalkProposal(1e6), Point{0.5}, c, {3, 1.0}, rng);
  CHECK(ch.free_iterations == 300);
  CHECK(o.eval_count() == 1);
  CHECK(ch.iterations() == 300);
}

TEST_CASE("DA rejects invalid options") {
  const auto target = banana_target();
  SyntheticOracle o(target, NoiseModel::None(), 1);
  auto s = make_surrogate(target.domain(), 1);
  Rng rng(1);
  CHECK_THROWS_AS(da_pm_mh(o, s, RandomWalkProposal(1.0), Point{0, 0}, budget(10), {0, 1.0}, rng),
                  ConfigError);
  CHECK_THROWS_AS(da_pm_mh(o, s, RandomWalkProposal(1.0), Point{0, 0}, budget(10), {1, 1.5}, rng),
                  ConfigError);
  CHECK_THROWS_AS(da_pm_mh(o, s, RandomWalkProposal(1.0), Point{20, 0}, budget(10), {1, 1.0}, rng),
                  DomainError);
}

TEST_CASE("N-DIS with one iteration is importance sampling against q") {
  const auto target = banana_target();
  SyntheticOracle o(target, NoiseModel::None(), 1);
  auto s = make_surrogate(target.domain(), 5);
  Rng rng(3);
  const auto q = IndependentProposal::Uniform(target.domain());
  const auto ws = n_dis(o, s, q, {1, 300, 0, true}, rng);
  for (std::size_t i = 0; i < ws.size(); ++i)
    CHECK(ws.raw[i] == doctest::Approx(target(ws.sample(i)) / q.density(ws.sample(i))));
  CHECK(std::accumulate(ws.normalized.begin(), ws.normalized.end(), 0.0) ==
        doctest::Approx(1.0));
  CHECK(s.design().size() == 300);
}

TEST_CASE("N-DIS rejects N above L/10") {
  const auto target = banana_target();
  SyntheticOracle o(target, NoiseModel::None(), 1);
  auto s = make_surrogate(target.domain(), 5);
  Rng rng(3);
  CHECK_THROWS_AS(n_dis(o, s, IndependentProposal::Uniform(target.domain()),
                        {2, 100, 500, true}, rng),
                  ConfigError);
}

TEST_CASE("weight normalization") {
  CHECK(normalize_weights({1, 1, 1, 1}) == std::vector<double>{0.25, 0.25, 0.25, 0.25});
  CHECK(normalize_weights({0, 3}) == std::vector<double>{0, 1});
  CHECK(normalize_weights({2, 1, 1}) == std::vector<double>{0.5, 0.25, 0.25});
  CHECK_THROWS_AS(normalize_weights({0, 0}), DegenerateWeightsError);
  CHECK_THROWS_AS(normalize_weights({1, -1}), DomainError);
}

TEST_CASE("SIR resampling follows the multinomial law") {
  Rng rng(12);
  const std::vector<Point> cands{{0.0}, {1.0}, {2.0}};
  for (const auto& p : sir_resample(cands, {0, 1, 0}, 50, rng)) CHECK(p[0] == 1.0);
  CHECK_THROWS_AS(sir_resample(cands, {0, 0, 0}, 5, rng), DegenerateWeightsError);

  const std::size_t n = 100000;
  std::vector<double> counts(4, 0.0);
  for (std::size_t i : sir_resample({1, 1, 1, 1}, n, rng)) counts[i] += 1;
  const double se = std::sqrt(n * 0.25 * 0.75);
  for (double c : counts) CHECK(std::abs(c - n / 4.0) < 3 * se);

  std::size_t first = 0;
  for (std::size_t i : sir_resample({2, 1}, n, rng)) first += i == 0;
  CHECK(std::abs(first - n * 2.0 / 3.0) < 3 * std::sqrt(n * 2.0 / 9.0));
}
