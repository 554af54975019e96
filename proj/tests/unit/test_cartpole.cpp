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
#include <limits>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "noisymc/cartpole.hpp"
#include "noisymc/error.hpp"

using namespace noisymc;

namespace {

double max_abs_diff(const CartPoleState& a, const CartPoleState& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::pair<double, double> mean_var(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m += v;
  m /= x.size();
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return {m, s / (x.size() - 1)};
}

}  // namespace

TEST_CASE("upright rest is an equilibrium") {
  const CartPoleParams p;
  const CartPoleState zero{};
  CHECK(cartpole_step(zero, 0.0, p) == zero);
}

TEST_CASE("dynamics are odd under mirroring") {
  const CartPoleParams p;
  const CartPoleState s{0.3, -0.2, 0.05, 0.1, -0.08, 0.3};
  CartPoleState m;
  for (std::size_t i = 0; i < 6; ++i) m[i] = -s[i];
  const auto a = cartpole_step(s, 4.0, p);
  const auto b = cartpole_step(m, -4.0, p);
  for (std::size_t i = 0; i < 6; ++i) CHECK(b[i] == doctest::Approx(-a[i]).epsilon(1e-12));
}

TEST_CASE("unforced energy drift stays below 0.1 percent") {
  const CartPoleParams p;
  CartPoleState s{0.0, 0.0, 0.02, 0.0, -0.03, 0.0};
  const double e0 = cartpole_energy(s, p);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    s = cartpole_step(s, 0.0, p);
    worst = std::max(worst, std::abs(cartpole_energy(s, p) - e0));
  }
  CHECK(worst < 1e-3 * std::abs(e0));
}

TEST_CASE("a step followed by a reversed step returns to the start") {
  const CartPoleParams p;
  const CartPoleState s{0.1, 0.05, 0.01, -0.02, 0.015, 0.01};
  const auto fwd = cartpole_step_dt(s, 0.0, p.dt, p);
  const auto back = cartpole_step_dt(fwd, 0.0, -p.dt, p);
  CHECK(max_abs_diff(s, back) < 1e-6);
}

TEST_CASE("non-finite input is rejected") {
  const CartPoleParams p;
  CartPoleState s{};
  s[2] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(cartpole_step(s, 0.0, p), NumericError);
}

TEST_CASE("initial states are centred and within the intervals") {
  const CartPoleParams p;
  Rng rng(1);
  const std::size_t n = 100000;
  std::vector<std::vector<double>> cols(6);
  bool within = true;
  for (std::size_t i = 0; i < n; ++i) {
    const auto s = sample_initial_state(rng, p);
    for (std::size_t j = 0; j < 6; ++j) {
      within = within && std::abs(s[j]) <= p.init_half_width[j];
      cols[j].push_back(s[j]);
    }
  }
  CHECK(within);
  for (const auto& c : cols) {
    const auto [m, v] = mean_var(c);
    CHECK(std::abs(m) < 3 * std::sqrt(v / n));
  }
  Rng a(5), b(5);
  CHECK(sample_initial_state(a, p) == sample_initial_state(b, p));
}

TEST_CASE("policy force is linear and clamped") {
  const CartPoleParams p;
  const CartPoleState s{1, 2, 3, 4, 5, 6};
  CHECK(linear_policy_force(Point{0.1, 0, 0, 0, 0, 0}, s, p) == doctest::Approx(0.1));
  CHECK(linear_policy_force(Point{60, 0, 0, 0, 0, 0}, s, p) == p.max_force);
  CHECK(linear_policy_force(Point{-60, 0, 0, 0, 0, 0}, s, p) == -p.max_force);
  CHECK_THROWS_AS(linear_policy_force(Point{1, 2}, s, p), DimensionError);
}

TEST_CASE("zero policy drops the poles") {
  const CartPoleParams p;
  Rng rng(2);
  bool all_short = true;
  bool bounded = true;
  for (int i = 0; i < 100; ++i) {
    const int r = run_episode(Point(6, 0.0), rng, p).episode_return;
    all_short = all_short && r < 1000;
    bounded = bounded && r >= 0 && r <= 1000;
  }
  CHECK(all_short);
  CHECK(bounded);
}

TEST_CASE("returns are bounded for random policies") {
  const CartPoleParams p;
  Rng rng(3);
  std::uniform_real_distribution<double> u(-60.0, 60.0);
  bool bounded = true;
  for (int i = 0; i < 300; ++i) {
    Point th(6);
    for (auto& x : th) x = u(rng);
    const int r = run_episode(th, rng, p).episode_return;
    bounded = bounded && r >= 0 && r <= p.max_steps;
  }
  CHECK(bounded);
}

TEST_CASE("episodes are deterministic given the seed") {
  const CartPoleParams p;
  const Point th{-0.44, -3.2, -37.9, -29.6, 38.6, 12.0};
  Rng a(9), b(9);
  std::ostringstream ta, tb;
  CHECK(run_episode(th, a, p, &ta).episode_return ==
        run_episode(th, b, p, &tb).episode_return);
  CHECK(ta.str() == tb.str());
  CHECK_FALSE(ta.str().empty());
}

TEST_CASE("widening the bounds never shortens an episode") {
  const CartPoleParams p;
  CartPoleParams wide = p;
  wide.track_limit = 3.0;
  wide.angle_limit = 0.8;
  Rng rng(4);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  bool monotone = true;
  for (int i = 0; i < 200; ++i) {
    Point th(6);
    for (auto& x : th) x = u(rng);
    const auto start = sample_initial_state(rng, p);
    monotone = monotone && run_episode_from(th, start, wide).episode_return >=
                               run_episode_from(th, start, p).episode_return;
  }
  CHECK(monotone);
}

TEST_CASE("symmetric angle option widens only the first pole interval") {
  const CartPoleParams p;
  const auto q = p.with_symmetric_angles();
  CHECK(q.init_half_width[2] == p.init_half_width[4]);
  CHECK(q.init_half_width[4] == p.init_half_width[4]);
  CHECK(q.init_half_width[0] == p.init_half_width[0]);
}

TEST_CASE("return oracle: single episode, unbiasedness and 1/N variance") {
  const CartPoleParams p;
  const Point th(6, 0.0);
  ReturnOracle one(p, 1, 21);
  Rng rng(21);
  CHECK(one.evaluate(th) == run_episode(th, rng, p).episode_return);
  CHECK(one.inner_units() == 1);

  std::vector<double> lx, ly;
  std::vector<std::pair<double, double>> stats;
  for (std::size_t n : {1, 4, 16, 64}) {
    ReturnOracle o(p, n, 100 + n);
    std::vector<double> draws;
    for (int r = 0; r < 400; ++r) draws.push_back(o.evaluate(th));
    const auto mv = mean_var(draws);
    stats.push_back(mv);
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(mv.second));
    CHECK(o.inner_units() == 400 * n);
  }
  double mx = 0, my = 0;
  for (int i = 0; i < 4; ++i) { mx += lx[i] / 4; my += ly[i] / 4; }
  double sxy = 0, sxx = 0;
  for (int i = 0; i < 4; ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  CHECK(sxy / sxx == doctest::Approx(-1.0).epsilon(0.15));
  const double diff = stats[0].first - stats[2].first;
  const double se = std::sqrt(stats[0].second / 400 + stats[2].second / 400);
  CHECK(std::abs(diff) < 3 * se);
}
