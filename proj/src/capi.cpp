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

#include "noisymc/nmc.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <fstream>
#include <limits>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "noisymc/bench.hpp"
#include "noisymc/cartpole.hpp"
#include "noisymc/design_set.hpp"
#include "noisymc/error.hpp"
#include "noisymc/knn_surrogate.hpp"
#include "noisymc/noise.hpp"
#include "noisymc/oracle.hpp"
#include "noisymc/targets.hpp"

struct nmc_config {
  noisymc::ExperimentConfig cfg;
};

struct nmc_results {
  std::vector<noisymc::ResultRow> rows;
};

struct nmc_oracle {
  std::unique_ptr<noisymc::SyntheticOracle> oracle;
};

struct nmc_surrogate {
  std::unique_ptr<noisymc::KnnSurrogate> s;
};

namespace {

thread_local std::string g_last_error;

nmc_status status_of(noisymc::ErrorKind k) {
  using noisymc::ErrorKind;
  switch (k) {
    case ErrorKind::kDimension: return NMC_ERR_DIMENSION;
    case ErrorKind::kDomain: return NMC_ERR_DOMAIN;
    case ErrorKind::kSize: return NMC_ERR_SIZE;
    case ErrorKind::kDegenerateWeights: return NMC_ERR_DEGENERATE_WEIGHTS;
    case ErrorKind::kConfig: return NMC_ERR_CONFIG;
    case ErrorKind::kNumeric: return NMC_ERR_NUMERIC;
    case ErrorKind::kIo: return NMC_ERR_IO;
    case ErrorKind::kInvalidArgument: return NMC_ERR_INVALID_ARGUMENT;
  }
  return NMC_ERR_INTERNAL;
}

nmc_status fail(nmc_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs `f`, translating exceptions into status codes.
template <class F>
nmc_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const noisymc::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(NMC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(NMC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(NMC_ERR_INTERNAL, "unknown failure");
  }
}

nmc_status copy_out(const std::string& text, char* buf, std::size_t cap,
                    std::size_t* needed) {
  if (needed != nullptr) *needed = text.size() + 1;
  if (buf == nullptr && cap == 0) return NMC_OK;
  if (buf == nullptr) return fail(NMC_ERR_INVALID_ARGUMENT, "null buffer");
  if (cap == 0) return fail(NMC_ERR_SIZE, "buffer too small");
  const std::size_t n = std::min(cap - 1, text.size());
  std::memcpy(buf, text.data(), n);
  buf[n] = '\0';
  if (n < text.size()) return fail(NMC_ERR_SIZE, "buffer too small");
  return NMC_OK;
}

#define NMC_REQUIRE(cond, what)                           \
  do {                                                    \
    if (!(cond)) return fail(NMC_ERR_INVALID_ARGUMENT, what); \
  } while (0)

noisymc::PointView view(const double* theta, std::size_t dim) {
  return {theta, dim};
}

}  // namespace

extern "C" {

const char* nmc_version(void) { return "0.1.0"; }

const char* nmc_status_name(nmc_status s) {
  switch (s) {
    case NMC_OK: return "ok";
    case NMC_ERR_DIMENSION: return "dimension error";
    case NMC_ERR_DOMAIN: return "domain error";
    case NMC_ERR_SIZE: return "size error";
    case NMC_ERR_DEGENERATE_WEIGHTS: return "degenerate weights";
    case NMC_ERR_CONFIG: return "configuration error";
    case NMC_ERR_NUMERIC: return "numeric error";
    case NMC_ERR_IO: return "i/o error";
    case NMC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case NMC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* nmc_last_error(void) { return g_last_error.c_str(); }

nmc_status nmc_config_create(const char* experiment, nmc_config** out) {
  NMC_REQUIRE(experiment != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    *out = new nmc_config{noisymc::preset_config(experiment)};
    return NMC_OK;
  });
}

nmc_status nmc_config_load_file(const char* path, nmc_config** out) {
  NMC_REQUIRE(path != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    std::ifstream in(path);
    if (!in) throw noisymc::IoError(std::string("cannot open ") + path);
    *out = new nmc_config{noisymc::load_config(in)};
    return NMC_OK;
  });
}

nmc_status nmc_config_set(nmc_config* cfg, const char* key,
                          const char* value) {
  NMC_REQUIRE(cfg != nullptr && key != nullptr && value != nullptr,
              "null argument");
  return guarded([&] {
    if (std::string(key) == "experiment") {
      // switching experiment restarts from that preset
      noisymc::ExperimentConfig next = noisymc::preset_config(value);
      next.algorithm = cfg->cfg.algorithm;
      next.seed = cfg->cfg.seed;
      cfg->cfg = next;
    } else {
      noisymc::apply_setting(cfg->cfg, key, value);
    }
    return NMC_OK;
  });
}

nmc_status nmc_config_validate(const nmc_config* cfg) {
  NMC_REQUIRE(cfg != nullptr, "null config");
  return guarded([&] {
    noisymc::validate(cfg->cfg);
    return NMC_OK;
  });
}

nmc_status nmc_config_to_text(const nmc_config* cfg, char* buf, size_t cap,
                              size_t* needed) {
  NMC_REQUIRE(cfg != nullptr, "null config");
  return guarded(
      [&] { return copy_out(noisymc::config_to_text(cfg->cfg), buf, cap, needed); });
}

void nmc_config_destroy(nmc_config* cfg) { delete cfg; }

nmc_status nmc_list_presets(char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    std::string text;
    for (const auto& p : noisymc::presets())
      text += p.name + "\t" + p.description + "\n";
    return copy_out(text, buf, cap, needed);
  });
}

nmc_status nmc_run_experiment(const nmc_config* cfg, nmc_results** out) {
  NMC_REQUIRE(cfg != nullptr && out != nullptr, "null argument");
  return guarded([&] {
    auto res = std::make_unique<nmc_results>();
    res->rows = noisymc::run_experiment(cfg->cfg);
    *out = res.release();
    return NMC_OK;
  });
}

nmc_status nmc_results_row_count(const nmc_results* res, size_t* out) {
  NMC_REQUIRE(res != nullptr && out != nullptr, "null argument");
  *out = res->rows.size();
  return NMC_OK;
}

nmc_status nmc_results_oracle_units(const nmc_results* res, size_t row,
                                    uint64_t* out) {
  NMC_REQUIRE(res != nullptr && out != nullptr, "null argument");
  if (row >= res->rows.size()) return fail(NMC_ERR_SIZE, "row out of range");
  *out = res->rows[row].oracle_units;
  return NMC_OK;
}

nmc_status nmc_results_errors(const nmc_results* res, double* mean_error,
                              double* var_error) {
  NMC_REQUIRE(res != nullptr && mean_error != nullptr && var_error != nullptr,
              "null argument");
  if (res->rows.empty()) return fail(NMC_ERR_SIZE, "no rows");
  *mean_error = res->rows.back().mean_error;
  *var_error = res->rows.back().var_error;
  return NMC_OK;
}

nmc_status nmc_results_moments(const nmc_results* res, size_t row,
                               double* mean, double* var, size_t dim) {
  NMC_REQUIRE(res != nullptr && mean != nullptr && var != nullptr,
              "null argument");
  if (row >= res->rows.size()) return fail(NMC_ERR_SIZE, "row out of range");
  const auto& r = res->rows[row];
  if (dim != r.mean.size())
    return fail(NMC_ERR_DIMENSION, "moment buffer has the wrong length");
  std::copy(r.mean.begin(), r.mean.end(), mean);
  std::copy(r.var.begin(), r.var.end(), var);
  return NMC_OK;
}

nmc_status nmc_results_write_csv(const nmc_results* res, const char* path,
                                 int with_wall_time) {
  NMC_REQUIRE(res != nullptr && path != nullptr, "null argument");
  return guarded([&] {
    noisymc::write_csv_file(path, res->rows, with_wall_time != 0);
    return NMC_OK;
  });
}

nmc_status nmc_results_csv(const nmc_results* res, char* buf, size_t cap,
                           size_t* needed) {
  NMC_REQUIRE(res != nullptr, "null results");
  return guarded([&] {
    std::ostringstream os;
    noisymc::write_csv(os, res->rows);
    return copy_out(os.str(), buf, cap, needed);
  });
}

nmc_status nmc_results_summary(const nmc_results* res, char* buf, size_t cap,
                               size_t* needed) {
  NMC_REQUIRE(res != nullptr, "null results");
  return guarded(
      [&] { return copy_out(noisymc::summarize(res->rows), buf, cap, needed); });
}

void nmc_results_destroy(nmc_results* res) { delete res; }

nmc_status nmc_groundtruth_cartpole(const nmc_config* cfg, uint64_t iterations,
                                    const char* out_path, char* summary,
                                    size_t cap, size_t* needed) {
  NMC_REQUIRE(cfg != nullptr && out_path != nullptr, "null argument");
  return guarded([&] {
    const auto gt = noisymc::cartpole_groundtruth(cfg->cfg, iterations);
    std::ofstream out(out_path);
    if (!out) throw noisymc::IoError(std::string("cannot open ") + out_path);
    noisymc::write_groundtruth(out, gt);
    if (!out) throw noisymc::IoError(std::string("write failed: ") + out_path);
    std::ostringstream os;
    os.precision(6);
    os << "iterations " << gt.iterations << "\nacceptance " << gt.acceptance
       << "\nmmse";
    for (double x : gt.mmse) os << ' ' << x;
    os << "\nexpected_return " << gt.expected_return << '\n';
    return copy_out(os.str(), summary, cap, needed);
  });
}

nmc_status nmc_oracle_create(const char* target, const char* noise,
                             double param, uint64_t seed, nmc_oracle** out) {
  NMC_REQUIRE(target != nullptr && noise != nullptr && out != nullptr,
              "null argument");
  return guarded([&] {
    const std::string t = target;
    const std::string n = noise;
    noisymc::TargetDensity td =
        t == "banana"        ? noisymc::banana_target()
        : t == "bimodal"     ? noisymc::bimodal_target()
        : t == "gaussmix-1d" ? noisymc::gaussmix_1d_target()
                             : throw noisymc::ConfigError("unknown target '" +
                                                          t + "'");
    noisymc::NoiseModel nm =
        n == "none"           ? noisymc::NoiseModel::None()
        : n == "exp"          ? noisymc::NoiseModel::MultiplicativeExponential(param)
        : n == "rectified"    ? noisymc::NoiseModel::RectifiedGaussian(param)
        : n == "folded"       ? noisymc::NoiseModel::FoldedGaussian(param)
        : n == "log-additive" ? noisymc::NoiseModel::LogAdditiveGaussian(param)
                              : throw noisymc::ConfigError("unknown noise '" +
                                                           n + "'");
    *out = new nmc_oracle{
        std::make_unique<noisymc::SyntheticOracle>(std::move(td), nm, seed)};
    return NMC_OK;
  });
}

nmc_status nmc_oracle_dimension(const nmc_oracle* o, size_t* out) {
  NMC_REQUIRE(o != nullptr && out != nullptr, "null argument");
  *out = o->oracle->dimension();
  return NMC_OK;
}

nmc_status nmc_oracle_evaluate(nmc_oracle* o, const double* theta, size_t dim,
                               double* out) {
  NMC_REQUIRE(o != nullptr && theta != nullptr && out != nullptr,
              "null argument");
  return guarded([&] {
    noisymc::require_dimension(view(theta, dim), o->oracle->dimension());
    *out = o->oracle->evaluate(view(theta, dim));
    return NMC_OK;
  });
}

nmc_status nmc_oracle_density(const nmc_oracle* o, const double* theta,
                              size_t dim, double* out) {
  NMC_REQUIRE(o != nullptr && theta != nullptr && out != nullptr,
              "null argument");
  return guarded([&] {
    *out = o->oracle->target()(view(theta, dim));
    return NMC_OK;
  });
}

nmc_status nmc_oracle_mean(const nmc_oracle* o, const double* theta,
                           size_t dim, double* out) {
  NMC_REQUIRE(o != nullptr && theta != nullptr && out != nullptr,
              "null argument");
  return guarded([&] {
    *out = o->oracle->mean_function(view(theta, dim));
    return NMC_OK;
  });
}

nmc_status nmc_oracle_eval_count(const nmc_oracle* o, uint64_t* out) {
  NMC_REQUIRE(o != nullptr && out != nullptr, "null argument");
  *out = o->oracle->eval_count();
  return NMC_OK;
}

void nmc_oracle_destroy(nmc_oracle* o) { delete o; }

nmc_status nmc_rectified_mean(double p, double sigma, double* out) {
  NMC_REQUIRE(out != nullptr, "null output");
  if (!(sigma > 0.0)) return fail(NMC_ERR_DOMAIN, "sigma must be > 0");
  *out = noisymc::rectified_mean(p, sigma);
  return NMC_OK;
}

nmc_status nmc_folded_mean(double p, double sigma, double* out) {
  NMC_REQUIRE(out != nullptr, "null output");
  if (!(sigma > 0.0)) return fail(NMC_ERR_DOMAIN, "sigma must be > 0");
  *out = noisymc::folded_mean(p, sigma);
  return NMC_OK;
}

nmc_status nmc_surrogate_create(size_t dim, const double* lower,
                                const double* upper, size_t k, double floor,
                                nmc_surrogate** out) {
  NMC_REQUIRE(lower != nullptr && upper != nullptr && out != nullptr,
              "null argument");
  return guarded([&] {
    noisymc::BoundedDomain dom(std::vector<double>(lower, lower + dim),
                               std::vector<double>(upper, upper + dim));
    noisymc::KnnSurrogate::Options opts;
    opts.k = k;
    opts.floor = floor;
    *out = new nmc_surrogate{
        std::make_unique<noisymc::KnnSurrogate>(std::move(dom), opts)};
    return NMC_OK;
  });
}

nmc_status nmc_surrogate_insert(nmc_surrogate* s, const double* theta,
                                size_t dim, double value) {
  NMC_REQUIRE(s != nullptr && theta != nullptr, "null argument");
  return guarded([&] {
    s->s->insert(view(theta, dim), value);
    return NMC_OK;
  });
}

nmc_status nmc_surrogate_predict(const nmc_surrogate* s, const double* theta,
                                 size_t dim, double* out) {
  NMC_REQUIRE(s != nullptr && theta != nullptr && out != nullptr,
              "null argument");
  return guarded([&] {
    *out = s->s->predict(view(theta, dim));
    return NMC_OK;
  });
}

nmc_status nmc_surrogate_size(const nmc_surrogate* s, size_t* out) {
  NMC_REQUIRE(s != nullptr && out != nullptr, "null argument");
  *out = s->s->design().size();
  return NMC_OK;
}

nmc_status nmc_surrogate_save(const nmc_surrogate* s, const char* path) {
  NMC_REQUIRE(s != nullptr && path != nullptr, "null argument");
  return guarded([&] {
    std::ofstream out(path);
    if (!out) throw noisymc::IoError(std::string("cannot open ") + path);
    s->s->design().save(out);
    if (!out) throw noisymc::IoError(std::string("write failed: ") + path);
    return NMC_OK;
  });
}

nmc_status nmc_surrogate_load(nmc_surrogate* s, const char* path) {
  NMC_REQUIRE(s != nullptr && path != nullptr, "null argument");
  return guarded([&] {
    std::ifstream in(path);
    if (!in) throw noisymc::IoError(std::string("cannot open ") + path);
    const auto design =
        noisymc::DesignSet::load(in, s->s->domain().dimension());
    for (std::size_t i = 0; i < design.size(); ++i)
      s->s->insert(design.point(i), design.value(i));
    return NMC_OK;
  });
}

void nmc_surrogate_destroy(nmc_surrogate* s) { delete s; }

nmc_status nmc_cartpole_episode(const double* theta, uint64_t seed,
                                int symmetric_angles,
                                const char* trajectory_path,
                                int* episode_return) {
  NMC_REQUIRE(theta != nullptr && episode_return != nullptr, "null argument");
  return guarded([&] {
    noisymc::CartPoleParams p;
    if (symmetric_angles != 0) p = p.with_symmetric_angles();
    noisymc::Rng rng(seed);
    std::ofstream traj;
    if (trajectory_path != nullptr) {
      traj.open(trajectory_path);
      if (!traj)
        throw noisymc::IoError(std::string("cannot open ") + trajectory_path);
    }
    const auto r = noisymc::run_episode(view(theta, 6), rng, p,
                                        trajectory_path != nullptr ? &traj
                                                                   : nullptr);
    *episode_return = r.episode_return;
    return NMC_OK;
  });
}

}  // extern "C"
