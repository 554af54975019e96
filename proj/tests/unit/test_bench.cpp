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
#include <string>
#include <vector>

#include "doctest.h"
#include "noisymc/bench.hpp"
#include "noisymc/error.hpp"

using namespace noisymc;

namespace {

ExperimentConfig small(const std::string& experiment, const std::string& algorithm) {
  ExperimentConfig c = preset_config(experiment);
  c.algorithm = algorithm;
  c.budget = 600;
  c.reps = 3;
  c.quad_points = 200;
  if (algorithm == "n-dis") {
    c.ndis_t = 3;
    c.ndis_n = 200;
  }
  return c;
}

std::string csv_of(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

}  // namespace

TEST_CASE("six presets with their published settings") {
  CHECK(presets().size() == 6);
  const auto banana = preset_config("banana-exp");
  CHECK(banana.budget == 5000);
  CHECK(banana.proposal_scale == 3.0);
  CHECK(preset_config("bimodal-exp").proposal_scale == 2.0);
  const auto cart = preset_config("cartpole");
  CHECK(cart.budget == 100000);
  CHECK(cart.k == 100);
  CHECK_THROWS_AS(preset_config("nope"), ConfigError);
}

TEST_CASE("config text: presets first, then overrides") {
  std::istringstream in("# comment\nexperiment=bimodal-exp\nk=3\nseed=9\n");
  const auto c = load_config(in, {{"k", "7"}});
  CHECK(c.experiment == "bimodal-exp");
  CHECK(c.proposal_scale == 2.0);
  CHECK(c.k == 7);
  CHECK(c.seed == 9);
  std::istringstream again(config_to_text(c));
  const auto d = load_config(again);
  CHECK(config_to_text(d) == config_to_text(c));
  ExperimentConfig e;
  CHECK_THROWS_AS(apply_setting(e, "unknown", "1"), ConfigError);
  CHECK_THROWS_AS(apply_setting(e, "budget", "abc"), ConfigError);
}

TEST_CASE("validation catches unrunnable configs") {
  auto c = preset_config("banana-exp");
  c.algorithm = "nope";
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = preset_config("banana-exp");
  c.algorithm = "mc-within-mh";
  c.budget = 5001;
  CHECK_THROWS_AS(validate(c), ConfigError);  // two units per step
  c.budget = 5000;
  CHECK_NOTHROW(validate(c));
  c = preset_config("banana-exp");
  c.algorithm = "n-dis";
  c.ndis_n = 999;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = preset_config("cartpole");
  c.algorithm = "noisy-is";
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = preset_config("banana-exp");
  c.k = 0;
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("budget parity across algorithms") {
  for (const auto& algo : algorithm_names()) {
    auto c = small("banana-exp", algo);
    const auto rows = run_experiment(c);
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) CHECK(r.oracle_units == c.budget);
    CHECK(rows.back().kind == "aggregate");
    CHECK(std::isfinite(rows.back().mean_error));
  }
}

TEST_CASE("run rows are deterministic and independent of thread count") {
  auto c = small("bimodal-exp", "da-pm-mh");
  const std::string a = csv_of(run_experiment(c));
  const std::string b = csv_of(run_experiment(c));
  c.threads = 3;
  const std::string t = csv_of(run_experiment(c));
  CHECK(a == b);
  CHECK(a == t);
  c.seed += 1;
  CHECK(csv_of(run_experiment(c)) != a);
}

TEST_CASE("CSV round trip") {
  auto c = small("banana-exp", "mh-s-accept");
  const auto rows = run_experiment(c);
  std::stringstream ss;
  write_csv(ss, rows);
  const auto back = read_csv(ss);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].kind == rows[i].kind);
    CHECK(back[i].run == rows[i].run);
    CHECK(back[i].oracle_units == rows[i].oracle_units);
    CHECK(back[i].mean == rows[i].mean);
    CHECK(back[i].var == rows[i].var);
    CHECK((back[i].mean_error == rows[i].mean_error ||
           (std::isnan(back[i].mean_error) && std::isnan(rows[i].mean_error))));
    CHECK(back[i].acceptance == rows[i].acceptance);
  }
  CHECK(csv_of(back) == csv_of(rows));

  std::stringstream empty;
  write_csv(empty, {});
  const std::string header = empty.str();
  CHECK(std::count(header.begin(), header.end(), '\n') == 1);
  CHECK(read_csv(empty).empty());
}

TEST_CASE("summary is sorted by mean error") {
  ResultRow a, b, n;
  a.kind = b.kind = n.kind = "aggregate";
  a.algorithm = "worse";
  a.mean_error = 0.5;
  b.algorithm = "better";
  b.mean_error = 0.1;
  n.algorithm = "unscored";
  n.mean_error = std::numeric_limits<double>::quiet_NaN();
  const std::string s = summarize({n, a, b});
  CHECK(s.find("better") < s.find("worse"));
  CHECK(s.find("worse") < s.find("unscored"));
  const std::string one = summarize({a});
  CHECK(std::count(one.begin(), one.end(), '\n') == 2);  // header + row
  CHECK_THROWS_AS(summarize({}), SizeError);
}

TEST_CASE("cart-pole summary carries the policy and return columns") {
  auto c = preset_config("cartpole");
  c.budget = 300;
  c.reps = 2;
  c.return_episodes = 20;
  const auto rows = run_experiment(c);
  const std::string s = summarize(rows);
  CHECK(s.find("theta6") != std::string::npos);
  CHECK(s.find("exp-return") != std::string::npos);
  CHECK(rows.back().mean.size() == 6);
  CHECK(rows.back().expected_return >= 0.0);
}

TEST_CASE("ABC experiment reports simulator units separately") {
  auto c = preset_config("abc-toy");
  c.budget = 200;
  c.reps = 2;
  c.abc_n = 50;
  c.quad_points = 500;
  const auto rows = run_experiment(c);
  std::uint64_t total = 0;
  for (const auto& r : rows) {
    CHECK(r.oracle_units == 200);
    if (r.kind != "run") continue;
    CHECK(r.inner_units == 200 * 50);
    total += r.inner_units;
  }
  CHECK(rows.back().inner_units == total);
}
