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
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "noisymc/estimators.hpp"

namespace noisymc {

/// Flat experiment configuration. Every field has a key of the same name in
/// the key=value format.
struct ExperimentConfig {
  std::string experiment = "banana-exp";
  std::string algorithm = "pm-mh";
  std::uint64_t budget = 5000;
  std::size_t k = 1;
  std::size_t t_surr = 1;
  double rho_update = 1.0;
  std::size_t ndis_t = 5;
  std::size_t ndis_n = 0;  // 0: budget / ndis_t
  std::size_t ndis_l = 0;  // 0: 10 * ndis_n
  double proposal_scale = 3.0;
  std::uint64_t seed = 1;
  std::size_t reps = 50;
  double burn_in = 0.2;
  double floor = 1e-300;
  std::size_t episodes = 1;
  double abc_epsilon = 0.05;
  std::size_t abc_n = 10000;
  std::string abc_kernel = "gaussian";
  double y_true = 25.0;
  bool symmetric_angles = false;
  std::size_t return_episodes = 200;
  std::size_t threads = 1;
  std::size_t quad_points = 2000;
  std::string truth_cache;
  bool wall_time = false;
};

struct Preset {
  std::string name;
  std::string description;
  std::string settings;  // key=value lines applied over the defaults
};

const std::vector<Preset>& presets();
const std::vector<std::string>& algorithm_names();

/// Defaults overlaid with the named preset. Throws ConfigError for an
/// unknown name.
ExperimentConfig preset_config(const std::string& experiment);

/// Applies one key=value setting. Throws ConfigError on an unknown key or
/// an unparsable value.
void apply_setting(ExperimentConfig& cfg, const std::string& key,
                   const std::string& value);

/// Builds a config from key=value lines ('#' comments allowed) and then
/// `overrides`. The experiment key selects the preset first.
ExperimentConfig load_config(std::istream& in,
                             const std::map<std::string, std::string>&
                                 overrides = {});
ExperimentConfig load_config(const std::map<std::string, std::string>& kv);

/// Throws ConfigError unless the config is runnable.
void validate(const ExperimentConfig& cfg);

std::string config_to_text(const ExperimentConfig& cfg);

struct ResultRow {
  std::string kind;  // "run" or "aggregate"
  std::string experiment;
  std::string algorithm;
  std::uint64_t budget = 0;
  std::size_t k = 0;
  std::size_t t_surr = 0;
  std::size_t ndis_t = 0;
  std::size_t ndis_n = 0;
  std::uint64_t seed = 0;
  long run = -1;  // -1 on aggregate rows
  std::uint64_t oracle_units = 0;  // aggregate: minimum over runs
  std::uint64_t inner_units = 0;   // aggregate: total over runs
  double acceptance = 0.0;
  std::vector<double> mean;
  std::vector<double> var;
  double mean_error = 0.0;  // aggregate: relative median squared error
  double var_error = 0.0;
  double expected_return = 0.0;  // cart-pole only
  double wall_seconds = 0.0;
};

/// Ground truth used to score an experiment, or an empty optional-like
/// truth (no mean) when none is defined.
GroundTruth experiment_truth(const ExperimentConfig& cfg);

/// R seeded repetitions followed by one aggregate row. Rows are ordered by
/// run index whatever the number of worker threads.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

/// CSV with a header and one line per row; vectors are ';'-joined and reals
/// use 17 significant digits. The wall-time column is present only when
/// `with_wall_time` is set.
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows,
               bool with_wall_time = false);
void write_csv_file(const std::string& path, const std::vector<ResultRow>& rows,
                    bool with_wall_time = false);
std::vector<ResultRow> read_csv(std::istream& in);

/// Aligned table of the aggregate rows (all rows if there is none), sorted
/// by mean error ascending.
std::string summarize(const std::vector<ResultRow>& rows);

struct CartPoleGroundTruth {
  std::uint64_t iterations = 0;
  std::vector<double> mmse;
  std::vector<double> bin_edges;             // shared by all marginals
  std::vector<std::vector<double>> density;  // one histogram per coordinate
  double expected_return = 0.0;
  double acceptance = 0.0;
};

/// Long PM-MH run on the single-episode return oracle; marginal histograms
/// use `bins` equal bins over the policy domain.
CartPoleGroundTruth cartpole_groundtruth(const ExperimentConfig& cfg,
                                         std::uint64_t iterations,
                                         std::size_t bins = 120);
void write_groundtruth(std::ostream& out, const CartPoleGroundTruth& gt);

}  // namespace noisymc
