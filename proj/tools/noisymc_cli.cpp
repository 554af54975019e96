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
// Command-line runner. Uses only the public C API.

#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "noisymc/nmc.h"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

int exit_code(nmc_status s) {
  if (s == NMC_OK) return 0;
  if (s == NMC_ERR_CONFIG || s == NMC_ERR_INVALID_ARGUMENT) return kExitConfig;
  return kExitRuntime;
}

// Throws the status so main can map it to an exit code in one place.
struct Failure {
  nmc_status status;
};

void check(nmc_status s) {
  if (s != NMC_OK) {
    std::cerr << "error (" << nmc_status_name(s) << "): " << nmc_last_error()
              << "\n";
    throw Failure{s};
  }
}

std::string fetch_text(
    const std::function<nmc_status(char*, size_t, size_t*)>& fn) {
  size_t needed = 0;
  check(fn(nullptr, 0, &needed));
  std::string buf(needed, '\0');
  check(fn(buf.data(), buf.size(), &needed));
  buf.resize(needed > 0 ? needed - 1 : 0);
  return buf;
}

struct ConfigHandle {
  nmc_config* cfg = nullptr;
  ~ConfigHandle() { nmc_config_destroy(cfg); }
};

struct ResultsHandle {
  nmc_results* res = nullptr;
  ~ResultsHandle() { nmc_results_destroy(res); }
};

struct RunArgs {
  std::string config_path;
  std::string experiment;
  std::string algorithm;
  std::string budget;
  std::string k;
  std::string seed;
  std::string reps;
  std::string threads;
  std::string out;
  std::vector<std::string> sets;
  bool wall_time = false;
  bool print_config = false;
};

void build_config(ConfigHandle& h, const std::string& config_path,
                  const std::string& experiment,
                  const std::vector<std::pair<std::string, std::string>>& kv) {
  if (!config_path.empty()) {
    check(nmc_config_load_file(config_path.c_str(), &h.cfg));
    if (!experiment.empty())
      check(nmc_config_set(h.cfg, "experiment", experiment.c_str()));
  } else {
    const std::string name = experiment.empty() ? "banana-exp" : experiment;
    check(nmc_config_create(name.c_str(), &h.cfg));
  }
  for (const auto& [key, value] : kv)
    check(nmc_config_set(h.cfg, key.c_str(), value.c_str()));
}

std::vector<std::pair<std::string, std::string>> collect_settings(
    const RunArgs& a) {
  std::vector<std::pair<std::string, std::string>> kv;
  auto add = [&](const char* key, const std::string& v) {
    if (!v.empty()) kv.emplace_back(key, v);
  };
  add("algorithm", a.algorithm);
  add("budget", a.budget);
  add("k", a.k);
  add("seed", a.seed);
  add("reps", a.reps);
  add("threads", a.threads);
  for (const auto& s : a.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "error: --set expects key=value, got '" << s << "'\n";
      throw Failure{NMC_ERR_CONFIG};
    }
    kv.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  return kv;
}

void cmd_run(const RunArgs& a) {
  ConfigHandle cfg;
  build_config(cfg, a.config_path, a.experiment, collect_settings(a));
  check(nmc_config_validate(cfg.cfg));
  if (a.print_config) {
    std::cout << fetch_text([&](char* b, size_t c, size_t* n) {
      return nmc_config_to_text(cfg.cfg, b, c, n);
    });
  }
  ResultsHandle res;
  check(nmc_run_experiment(cfg.cfg, &res.res));
  if (!a.out.empty()) {
    check(nmc_results_write_csv(res.res, a.out.c_str(), a.wall_time ? 1 : 0));
  }
  std::cout << fetch_text([&](char* b, size_t c, size_t* n) {
    return nmc_results_summary(res.res, b, c, n);
  });
}

struct GroundTruthArgs {
  std::string config_path;
  std::string experiment = "cartpole";
  std::uint64_t iterations = 1000000;
  std::string out = "cartpole_groundtruth.txt";
  std::vector<std::string> sets;
};

void cmd_groundtruth(const GroundTruthArgs& a) {
  if (a.experiment != "cartpole") {
    std::cerr << "error: groundtruth is defined for the cartpole experiment "
                 "only\n";
    throw Failure{NMC_ERR_CONFIG};
  }
  RunArgs ra;
  ra.sets = a.sets;
  ConfigHandle cfg;
  build_config(cfg, a.config_path, a.experiment, collect_settings(ra));
  // One call: a size query would repeat the whole run.
  std::string buf(4096, '\0');
  size_t needed = 0;
  check(nmc_groundtruth_cartpole(cfg.cfg, a.iterations, a.out.c_str(),
                                 buf.data(), buf.size(), &needed));
  std::cout << buf.c_str() << "histograms written to " << a.out << "\n";
}

void cmd_list() {
  std::cout << fetch_text([](char* b, size_t c, size_t* n) {
    return nmc_list_presets(b, c, n);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noisy Monte Carlo benchmark runner"};
  app.set_version_flag("--version", std::string(nmc_version()));
  bool list = false;
  app.add_flag("--list", list, "List the experiment presets and exit");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run R seeded repetitions");
  run_cmd->add_option("--config", run.config_path, "key=value config file")
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--experiment", run.experiment, "Preset name");
  run_cmd->add_option("--algorithm", run.algorithm,
                      "pm-mh, mc-within-mh, mh-s-always, mh-s-accept, "
                      "da-pm-mh, noisy-is or n-dis");
  run_cmd->add_option("--budget", run.budget, "Oracle budget E");
  run_cmd->add_option("--k", run.k, "Surrogate neighbors K");
  run_cmd->add_option("--seed", run.seed, "Base seed");
  run_cmd->add_option("--reps", run.reps, "Repetitions R");
  run_cmd->add_option("--threads", run.threads, "Worker threads");
  run_cmd->add_option("--out", run.out, "CSV output path");
  run_cmd->add_option("--set", run.sets, "Extra key=value setting")
      ->allow_extra_args(false);
  run_cmd->add_flag("--wall-time", run.wall_time,
                    "Add a wall-time column to the CSV");
  run_cmd->add_flag("--print-config", run.print_config,
                    "Echo the resolved config before running");

  GroundTruthArgs gt;
  auto* gt_cmd = app.add_subcommand(
      "groundtruth", "Long PM-MH reference run with marginal histograms");
  gt_cmd->add_option("--config", gt.config_path, "key=value config file")
      ->check(CLI::ExistingFile);
  gt_cmd->add_option("--experiment", gt.experiment, "Must be cartpole");
  gt_cmd->add_option("--iters", gt.iterations, "Chain iterations");
  gt_cmd->add_option("--out", gt.out, "Histogram output path");
  gt_cmd->add_option("--set", gt.sets, "Extra key=value setting")
      ->allow_extra_args(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (list) {
      cmd_list();
    } else if (*run_cmd) {
      cmd_run(run);
    } else if (*gt_cmd) {
      cmd_groundtruth(gt);
    } else {
      std::cerr << app.help();
      return kExitConfig;
    }
  } catch (const Failure& f) {
    return exit_code(f.status);
  }
  return 0;
}
