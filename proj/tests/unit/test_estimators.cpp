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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "noisymc/error.hpp"
#include "noisymc/estimators.hpp"
#include "noisymc/targets.hpp"

using namespace noisymc;

namespace {

Chain chain_of(const std::vector<double>& xs) {
  Chain c(1);
  for (double x : xs) c.push(Point{x}, 1.0);
  return c;
}

}  // namespace

TEST_CASE("chain moments: constant chain and burn-in") {
  const auto m = chain_moments(chain_of({2, 2, 2, 2}), 0.0);
  CHECK(m.mean[0] == 2.0);
  CHECK(m.var[0] == 0.0);
  const auto all = chain_moments(chain_of({1, 2, 3}), 0.0);
  CHECK(all.mean[0] == doctest::Approx(2.0));
  CHECK(all.var[0] == doctest::Approx(1.0));
  const auto burned = chain_moments(chain_of({100, 1, 2, 3, 4}), 0.2);
  CHECK(burned.mean[0] == doctest::Approx(2.5));
  CHECK_THROWS_AS(chain_moments(chain_of({1, 2}), 1.0), ConfigError);
  CHECK_THROWS_AS(chain_moments(chain_of({1}), 0.0), SizeError);
}

TEST_CASE("chain moments of an iid normal stream") {
  Rng rng(1);
  std::normal_distribution<double> z(0.0, 1.0);
  Chain c(1);
  const std::size_t n = 1000000;
  for (std::size_t i = 0; i < n; ++i) c.push(Point{z(rng)}, 1.0);
  const auto m = chain_moments(c, 0.0);
  CHECK(std::abs(m.mean[0]) < 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(m.var[0] == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("weighted moments") {
  WeightedSampleSet ws(1);
  for (double x : {1.0, 2.0, 3.0, 6.0}) ws.push(Point{x}, 5.0);
  const auto u = weighted_moments(ws);
  Chain c(1);
  for (double x : {1.0, 2.0, 3.0, 6.0}) c.push(Point{x}, 1.0);
  const auto plain = chain_moments(c, 0.0);
  CHECK(u.mean[0] == doctest::Approx(plain.mean[0]));
  CHECK(u.var[0] == doctest::Approx(plain.var[0] * 3.0 / 4.0));

  WeightedSampleSet one(2);
  one.push(Point{1.0, 2.0}, 0.0);
  one.push(Point{-3.0, 4.0}, 2.5);
  one.push(Point{5.0, 5.0}, 0.0);
  const auto s = weighted_moments(one);
  CHECK(s.mean == std::vector<double>{-3.0, 4.0});
  CHECK(s.var == std::vector<double>{0.0, 0.0});
}

TEST_CASE("quadrature of a uniform box") {
  const auto g = quadrature_moments([](PointView) { return 1.0; },
                                    BoundedDomain::Cube(2, -1, 1), 2000);
  for (int j = 0; j < 2; ++j) {
    CHECK(std::abs(g.mean[j]) < 1e-12);
    CHECK(std::abs(g.var[j] - 1.0 / 3.0) < 1e-6);
  }
  CHECK(quadrature_mass([](PointView) { return 1.0; }, BoundedDomain::Cube(2, -1, 1), 100) ==
        doctest::Approx(4.0));
  CHECK_THROWS_AS(quadrature_moments([](PointView) { return 1.0; },
                                     BoundedDomain::Cube(3, 0, 1), 100),
                  DimensionError);
  CHECK_THROWS_AS(quadrature_moments([](PointView) { return 0.0; },
                                     BoundedDomain::Cube(1, 0, 1), 100),
                  DegenerateWeightsError);
}

TEST_CASE("quadrature of a one-dimensional Gaussian") {
  const auto g = quadrature_moments(
      [](PointView t) { return std::exp(-0.5 * (t[0] - 1.0) * (t[0] - 1.0) / 4.0); },
      BoundedDomain({-30.0}, {30.0}), 4000);
  CHECK(g.mean[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(g.var[0] == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("banana quadrature is grid independent") {
  const DensityFn f = [](PointView t) { return eval_banana(t); };
  const auto dom = BoundedDomain::Cube(2, -10, 10);
  const auto a = quadrature_moments(f, dom, 2000);
  const auto b = quadrature_moments(f, dom, 4000);
  for (int j = 0; j < 2; ++j) {
    CHECK(std::abs(a.mean[j] - b.mean[j]) < 1e-3);
    CHECK(std::abs(a.var[j] - b.var[j]) < 1e-3);
  }
}

TEST_CASE("bimodal quadrature lands on the truncated variance") {
  const auto g = quadrature_moments([](PointView t) { return eval_bimodal(t); },
                                    BoundedDomain::Cube(2, -20, 20), 2000);
  CHECK(g.mean[0] == 0.0);
  CHECK(g.var[0] == doctest::Approx(108.87).epsilon(0.005));
  CHECK(g.var[1] == doctest::Approx(9.0).epsilon(0.005));
  CHECK(g.var[0] < 109.0);
}

TEST_CASE("grid-weighted samples reproduce quadrature moments") {
  const auto dom = BoundedDomain::Cube(2, -10, 10);
  const std::size_t n = 200;
  WeightedSampleSet ws(2);
  const double h = 20.0 / n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Point t{-10 + (i + 0.5) * h, -10 + (k + 0.5) * h};
      ws.push(t, eval_banana(t));
    }
  const auto w = weighted_moments(ws);
  const auto q = quadrature_moments([](PointView t) { return eval_banana(t); }, dom, n);
  for (int j = 0; j < 2; ++j) {
    CHECK(w.mean[j] == doctest::Approx(q.mean[j]).epsilon(1e-9));
    CHECK(w.var[j] == doctest::Approx(q.var[j]).epsilon(1e-9));
  }
}

TEST_CASE("relative median squared error") {
  const GroundTruth truth{{1.0, 2.0}, {3.0, 4.0}, TruthSource::kQuadrature};
  const MomentEstimate exact{truth.mean, truth.var};
  auto e = rel_median_sq_error({exact, exact, exact}, truth);
  CHECK(e.mean_error == 0.0);
  CHECK(e.var_error == 0.0);

  const MomentEstimate doubled{{2.0, 4.0}, {6.0, 8.0}};
  e = rel_median_sq_error({doubled}, truth);
  CHECK(e.mean_error == doctest::Approx(1.0));
  CHECK(e.var_error == doctest::Approx(1.0));

  const MomentEstimate outlier{{1e6, 0.0}, {3.0, 4.0}};
  e = rel_median_sq_error({exact, outlier, exact}, truth);
  CHECK(e.mean_error == 0.0);

  const GroundTruth zero{{0.0, 0.0}, {1.0, 1.0}, TruthSource::kQuadrature};
  e = rel_median_sq_error({MomentEstimate{{0.5, 0.0}, {1.0, 1.0}}}, zero);
  CHECK(e.mean_unnormalized);
  CHECK_FALSE(e.var_unnormalized);
  CHECK(e.mean_error == doctest::Approx(0.25));
  CHECK_THROWS_AS(rel_median_sq_error({}, truth), SizeError);
}

TEST_CASE("truth cache computes once and reloads") {
  const auto path = std::filesystem::temp_directory_path() / "noisymc_truth_cache_test.txt";
  std::filesystem::remove(path);
  int calls = 0;
  auto compute = [&] {
    ++calls;
    return GroundTruth{{0.1, 1.0 / 3.0}, {2.0, 5.5}, TruthSource::kQuadrature};
  };
  const auto a = cached_truth(path.string(), "demo", compute);
  const auto b = cached_truth(path.string(), "demo", compute);
  CHECK(calls == 1);
  CHECK(a.mean == b.mean);
  CHECK(a.var == b.var);
  cached_truth(path.string(), "other", compute);
  CHECK(calls == 2);
  CHECK_THROWS_AS(cached_truth(path.string(), "bad key", compute), ConfigError);
  std::filesystem::remove(path);
}
