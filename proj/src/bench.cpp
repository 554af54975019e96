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

#include "noisymc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <sstream>
#include <thread>

#include "noisymc/abc.hpp"
#include "noisymc/cartpole.hpp"
#include "noisymc/error.hpp"
#include "noisymc/knn_surrogate.hpp"
#include "noisymc/noise.hpp"
#include "noisymc/normal.hpp"
#include "noisymc/oracle.hpp"
#include "noisymc/samplers.hpp"
#include "noisymc/targets.hpp"

namespace noisymc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> kPresets = {
      {"banana-exp",
       "banana on [-10,10]^2, m~ = eps p with eps ~ Exp(1); random walk "
       "N(theta', 3^2 I); E = 5000; N-DIS T=5, N=1000 (or T=10, N=500)",
       "budget=5000\nproposal_scale=3\nk=1\nndis_t=5\n"},
      {"banana-max",
       "banana on [-10,10]^2, m~ = max(0, p + eps) with eps ~ N(0, 0.01^2); "
       "random walk N(theta', 3^2 I); E = 5000",
       "budget=5000\nproposal_scale=3\nk=1\nndis_t=5\n"},
      {"bimodal-exp",
       "0.5 N([10,0], 9I) + 0.5 N([-10,0], 9I) on [-20,20]^2, Exp(1) "
       "multiplicative noise; random walk N(theta', 2^2 I); E = 5000",
       "budget=5000\nproposal_scale=2\nk=10\nt_surr=5\n"},
      {"cartpole",
       "double pole on a cart, linear policy theta in [-60,60]^6, m~ = return "
       "of one episode (T_max = 1000); E = 1e5; K = 100",
       "budget=100000\nk=100\nproposal_scale=5\nepisodes=1\nreps=5\n"
       "burn_in=0.2\n"},
      {"abc-toy",
       "y | theta ~ N(theta, 1), prior N(0, 10^2), y_true = 25, Gaussian "
       "kernel eps = 0.05, N = 1e4 pseudo-datasets per evaluation",
       "budget=20000\nproposal_scale=1.5\nabc_epsilon=0.05\nabc_n=10000\n"
       "abc_kernel=gaussian\ny_true=25\nreps=5\n"},
      {"illustrative-1d",
       "0.5 N(-1, 1) + 0.5 N(5, 2) on [-8,17], m~ = max(0, p + eps) with "
       "eps ~ N(0, 0.05^2); 5e5 post-burn-in PM-MH steps",
       "budget=625000\nproposal_scale=3\nreps=1\n"},
  };
  return kPresets;
}

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> kNames = {
      "pm-mh", "mc-within-mh", "mh-s-always", "mh-s-accept",
      "da-pm-mh", "noisy-is", "n-dis"};
  return kNames;
}

namespace {

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream is(value);
  T out{};
  if (!(is >> out) || !(is >> std::ws).eof())
    throw ConfigError("bad value for " + key + ": '" + value + "'");
  if constexpr (std::is_unsigned_v<T>) {
    if (value.find('-') != std::string::npos)
      throw ConfigError("negative value for " + key);
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("bad boolean for " + key + ": '" + v + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void read_settings(std::istream& in,
                   std::vector<std::pair<std::string, std::string>>& out) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key=value");
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

}  // namespace

void apply_setting(ExperimentConfig& c, const std::string& key,
                   const std::string& v) {
  if (key == "experiment") c.experiment = v;
  else if (key == "algorithm") c.algorithm = v;
  else if (key == "budget") c.budget = parse_number<std::uint64_t>(key, v);
  else if (key == "k") c.k = parse_number<std::size_t>(key, v);
  else if (key == "t_surr") c.t_surr = parse_number<std::size_t>(key, v);
  else if (key == "rho_update") c.rho_update = parse_number<double>(key, v);
  else if (key == "ndis_t") c.ndis_t = parse_number<std::size_t>(key, v);
  else if (key == "ndis_n") c.ndis_n = parse_number<std::size_t>(key, v);
  else if (key == "ndis_l") c.ndis_l = parse_number<std::size_t>(key, v);
  else if (key == "proposal_scale")
    c.proposal_scale = parse_number<double>(key, v);
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, v);
  else if (key == "reps") c.reps = parse_number<std::size_t>(key, v);
  else if (key == "burn_in") c.burn_in = parse_number<double>(key, v);
  else if (key == "floor") c.floor = parse_number<double>(key, v);
  else if (key == "episodes") c.episodes = parse_number<std::size_t>(key, v);
  else if (key == "abc_epsilon") c.abc_epsilon = parse_number<double>(key, v);
  else if (key == "abc_n") c.abc_n = parse_number<std::size_t>(key, v);
  else if (key == "abc_kernel") c.abc_kernel = v;
  else if (key == "y_true") c.y_true = parse_number<double>(key, v);
  else if (key == "symmetric_angles") c.symmetric_angles = parse_bool(key, v);
  else if (key == "return_episodes")
    c.return_episodes = parse_number<std::size_t>(key, v);
  else if (key == "threads") c.threads = parse_number<std::size_t>(key, v);
  else if (key == "quad_points")
    c.quad_points = parse_number<std::size_t>(key, v);
  else if (key == "truth_cache") c.truth_cache = v;
  else if (key == "wall_time") c.wall_time = parse_bool(key, v);
  else throw ConfigError("unknown config key '" + key + "'");
}

ExperimentConfig preset_config(const std::string& experiment) {
  for (const auto& p : presets()) {
    if (p.name != experiment) continue;
    ExperimentConfig cfg;
    cfg.experiment = experiment;
    std::istringstream in(p.settings);
    std::vector<std::pair<std::string, std::string>> kv;
    read_settings(in, kv);
    for (const auto& [k, v] : kv) apply_setting(cfg, k, v);
    return cfg;
  }
  std::string names;
  for (const auto& p : presets()) names += " " + p.name;
  throw ConfigError("unknown experiment '" + experiment + "'; known:" + names);
}

ExperimentConfig load_config(const std::map<std::string, std::string>& kv) {
  std::string experiment = "banana-exp";
  if (auto it = kv.find("experiment"); it != kv.end()) experiment = it->second;
  ExperimentConfig cfg = preset_config(experiment);
  for (const auto& [k, v] : kv)
    if (k != "experiment") apply_setting(cfg, k, v);
  return cfg;
}

ExperimentConfig load_config(
    std::istream& in, const std::map<std::string, std::string>& overrides) {
  std::vector<std::pair<std::string, std::string>> kv;
  read_settings(in, kv);
  std::map<std::string, std::string> merged;
  for (const auto& [k, v] : kv) merged[k] = v;
  for (const auto& [k, v] : overrides) merged[k] = v;
  return load_config(merged);
}

void validate(const ExperimentConfig& c) {
  (void)preset_config(c.experiment);
  const auto& algs = algorithm_names();
  if (std::find(algs.begin(), algs.end(), c.algorithm) == algs.end()) {
    std::string names;
    for (const auto& a : algs) names += " " + a;
    throw ConfigError("unknown algorithm '" + c.algorithm + "'; known:" +
                      names);
  }
  if (c.budget == 0) throw ConfigError("budget must be > 0");
  if (c.k == 0) throw ConfigError("k must be >= 1");
  if (c.reps == 0) throw ConfigError("reps must be >= 1");
  if (c.t_surr == 0) throw ConfigError("t_surr must be >= 1");
  if (!(c.proposal_scale > 0.0))
    throw ConfigError("proposal_scale must be > 0");
  if (!(c.burn_in >= 0.0 && c.burn_in < 1.0))
    throw ConfigError("burn_in must lie in [0, 1)");
  if (!(c.floor > 0.0)) throw ConfigError("floor must be > 0");
  if (!(c.rho_update >= 0.0 && c.rho_update <= 1.0))
    throw ConfigError("rho_update must lie in [0, 1]");
  if (c.algorithm == "mc-within-mh" && c.budget % 2 != 0)
    throw ConfigError("mc-within-mh spends 2 units per iteration; use an "
                      "even budget");
  if (c.algorithm == "n-dis") {
    if (c.ndis_t == 0) throw ConfigError("ndis_t must be >= 1");
    const std::size_t n = c.ndis_n > 0 ? c.ndis_n : c.budget / c.ndis_t;
    if (n == 0 || n * c.ndis_t != c.budget)
      throw ConfigError("n-dis needs ndis_t * ndis_n == budget");
    if (c.ndis_l > 0 && 10 * n > c.ndis_l)
      throw ConfigError("n-dis needs ndis_n <= ndis_l / 10");
  }
  if (c.experiment == "abc-toy") {
    if (c.abc_kernel != "gaussian" && c.abc_kernel != "indicator")
      throw ConfigError("abc_kernel must be gaussian or indicator");
    if (!(c.abc_epsilon > 0.0)) throw ConfigError("abc_epsilon must be > 0");
    if (c.abc_n == 0) throw ConfigError("abc_n must be >= 1");
  }
  if (c.experiment == "cartpole") {
    if (c.episodes == 0) throw ConfigError("episodes must be >= 1");
    if (c.algorithm == "noisy-is" || c.algorithm == "n-dis")
      throw ConfigError("cartpole supports the MCMC algorithms only");
  }
}

std::string config_to_text(const ExperimentConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << "experiment=" << c.experiment << "\nalgorithm=" << c.algorithm
     << "\nbudget=" << c.budget << "\nk=" << c.k << "\nt_surr=" << c.t_surr
     << "\nrho_update=" << c.rho_update << "\nndis_t=" << c.ndis_t
     << "\nndis_n=" << c.ndis_n << "\nndis_l=" << c.ndis_l
     << "\nproposal_scale=" << c.proposal_scale << "\nseed=" << c.seed
     << "\nreps=" << c.reps << "\nburn_in=" << c.burn_in
     << "\nfloor=" << c.floor << "\nepisodes=" << c.episodes
     << "\nabc_epsilon=" << c.abc_epsilon << "\nabc_n=" << c.abc_n
     << "\nabc_kernel=" << c.abc_kernel << "\ny_true=" << c.y_true
     << "\nsymmetric_angles=" << (c.symmetric_angles ? 1 : 0)
     << "\nreturn_episodes=" << c.return_episodes
     << "\nthreads=" << c.threads << "\nquad_points=" << c.quad_points
     << "\ntruth_cache=" << c.truth_cache
     << "\nwall_time=" << (c.wall_time ? 1 : 0) << "\n";
  return os.str();
}

namespace {

CartPoleParams cartpole_params(const ExperimentConfig& c) {
  CartPoleParams p;
  return c.symmetric_angles ? p.with_symmetric_angles() : p;
}

GaussianToySimulator abc_simulator() {
  return GaussianToySimulator(1, 1.0, 0.0, 100.0);
}

BoundedDomain abc_domain() { return BoundedDomain({10.0}, {40.0}); }

AbcKernel abc_kernel(const ExperimentConfig& c) {
  return c.abc_kernel == "indicator" ? AbcKernel::Indicator(c.abc_epsilon)
                                     : AbcKernel::Gaussian(c.abc_epsilon);
}

struct Setup {
  std::unique_ptr<Simulator> sim;
  std::unique_ptr<NoisyOracle> oracle;
};

Setup make_setup(const ExperimentConfig& c, std::uint64_t seed) {
  Setup s;
  const std::string& e = c.experiment;
  if (e == "banana-exp") {
    s.oracle = std::make_unique<SyntheticOracle>(
        banana_target(), NoiseModel::MultiplicativeExponential(1.0), seed);
  } else if (e == "banana-max") {
    s.oracle = std::make_unique<SyntheticOracle>(
        banana_target(), NoiseModel::RectifiedGaussian(0.01), seed);
  } else if (e == "bimodal-exp") {
    s.oracle = std::make_unique<SyntheticOracle>(
        bimodal_target(), NoiseModel::MultiplicativeExponential(1.0), seed);
  } else if (e == "illustrative-1d") {
    s.oracle = std::make_unique<SyntheticOracle>(
        gaussmix_1d_target(), NoiseModel::RectifiedGaussian(0.05), seed);
  } else if (e == "cartpole") {
    s.oracle = std::make_unique<ReturnOracle>(cartpole_params(c), c.episodes,
                                              seed);
  } else if (e == "abc-toy") {
    s.sim = std::make_unique<GaussianToySimulator>(abc_simulator());
    s.oracle = std::make_unique<AbcOracle>(*s.sim, abc_kernel(c),
                                           Point{c.y_true}, c.abc_n,
                                           abc_domain(), seed);
  } else {
    throw ConfigError("unknown experiment '" + e + "'");
  }
  return s;
}

GroundTruth compute_truth(const ExperimentConfig& c) {
  const std::size_t n = c.quad_points;
  const std::string& e = c.experiment;
  if (e == "banana-exp") {
    return quadrature_moments([](PointView t) { return eval_banana(t); },
                              BoundedDomain::Cube(2, -10, 10), n);
  }
  if (e == "banana-max") {
    return quadrature_moments(
        [](PointView t) { return rectified_mean(eval_banana(t), 0.01); },
        BoundedDomain::Cube(2, -10, 10), n);
  }
  if (e == "bimodal-exp") {
    return quadrature_moments([](PointView t) { return eval_bimodal(t); },
                              BoundedDomain::Cube(2, -20, 20), n);
  }
  if (e == "illustrative-1d") {
    return quadrature_moments(
        [](PointView t) { return rectified_mean(eval_gaussmix_1d(t[0]), 0.05); },
        BoundedDomain({-8.0}, {17.0}), n);
  }
  if (e == "abc-toy") {
    // exact kernel-smoothed likelihood times the prior
    const GaussianToySimulator sim = abc_simulator();
    const double eps = c.abc_epsilon;
    const double y = c.y_true;
    const double sd = std::sqrt(sim.noise_var());
    const bool gaussian = c.abc_kernel != "indicator";
    return quadrature_moments(
        [&](PointView t) {
          const double like =
              gaussian
                  ? normal_pdf(y, t[0], sim.noise_var() + eps * eps)
                  : std_normal_cdf((y - t[0] + eps) / sd) -
                        std_normal_cdf((y - t[0] - eps) / sd);
          return like * sim.prior_density(t);
        },
        abc_domain(), n);
  }
  throw ConfigError("experiment '" + e + "' has no quadrature truth");
}

std::string truth_key(const ExperimentConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << c.experiment << "-q" << c.quad_points;
  if (c.experiment == "abc-toy")
    os << '-' << c.abc_kernel << "-eps" << c.abc_epsilon << "-y" << c.y_true;
  if (c.experiment == "cartpole")
    os.str("cartpole" + std::string(c.symmetric_angles ? "-sym" : ""));
  return os.str();
}

struct RunOutcome {
  MomentEstimate est;
  std::uint64_t oracle_units = 0;
  std::uint64_t inner_units = 0;
  double acceptance = kNaN;
  double expected_return = kNaN;
  double seconds = 0.0;
};

RunOutcome run_once(const ExperimentConfig& c, std::size_t run) {
  const auto t0 = std::chrono::steady_clock::now();
  Setup s = make_setup(c, derive_seed(c.seed, run, 1));
  NoisyOracle& oracle = *s.oracle;
  Rng rng(derive_seed(c.seed, run, 0));
  Rng init(derive_seed(c.seed, run, 2));
  const BoundedDomain& dom = oracle.domain();
  const Point theta0 = IndependentProposal::Uniform(dom).sample(init);

  KnnSurrogate::Options so;
  so.k = c.k;
  so.floor = c.floor;
  KnnSurrogate surrogate(dom, so);
  const RandomWalkProposal prop(c.proposal_scale);
  ChainControl ctl;
  ctl.budget = c.budget;

  RunOutcome out;
  const std::string& a = c.algorithm;
  if (a == "noisy-is" || a == "n-dis") {
    const IndependentProposal q = IndependentProposal::Uniform(dom);
    WeightedSampleSet ws(dom.dimension());
    if (a == "noisy-is") {
      ws = noisy_is(oracle, q, c.budget, rng);
    } else {
      NdisOptions no;
      no.iterations = c.ndis_t;
      no.per_iteration = c.ndis_n > 0 ? c.ndis_n : c.budget / c.ndis_t;
      no.candidates = c.ndis_l;
      ws = n_dis(oracle, surrogate, q, no, rng);
    }
    out.est = weighted_moments(ws);
  } else {
    Chain chain(dom.dimension());
    if (a == "pm-mh") {
      chain = noisy_mh(oracle, prop, theta0, ctl, NoisyMhMode::kPseudoMarginal,
                       rng);
    } else if (a == "mc-within-mh") {
      chain = noisy_mh(oracle, prop, theta0, ctl, NoisyMhMode::kMcWithinMh,
                       rng);
    } else if (a == "mh-s-always" || a == "mh-s-accept") {
      MhsOptions mo;
      mo.rule = a == "mh-s-always" ? UpdateRule::kAlways
                                   : UpdateRule::kAcceptProb;
      chain = mh_s(oracle, surrogate, prop, theta0, ctl, mo, rng);
    } else if (a == "da-pm-mh") {
      DaOptions dopt;
      dopt.inner_steps = c.t_surr;
      dopt.update_probability = c.rho_update;
      chain = da_pm_mh(oracle, surrogate, prop, theta0, ctl, dopt, rng);
    } else {
      throw ConfigError("unknown algorithm '" + a + "'");
    }
    out.est = chain_moments(chain, c.burn_in);
    out.acceptance = chain.acceptance_rate();
  }
  out.oracle_units = oracle.eval_count();
  out.inner_units = oracle.inner_units();

  if (c.experiment == "cartpole") {
    Rng eval_rng(derive_seed(c.seed, run, 3));
    const CartPoleParams p = cartpole_params(c);
    double sum = 0.0;
    for (std::size_t i = 0; i < c.return_episodes; ++i)
      sum += run_episode(out.est.mean, eval_rng, p).episode_return;
    out.expected_return =
        c.return_episodes > 0 ? sum / static_cast<double>(c.return_episodes)
                              : kNaN;
  }
  out.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return out;
}

ResultRow base_row(const ExperimentConfig& c) {
  ResultRow r;
  r.experiment = c.experiment;
  r.algorithm = c.algorithm;
  r.budget = c.budget;
  r.k = c.k;
  r.t_surr = c.t_surr;
  r.ndis_t = c.ndis_t;
  r.ndis_n = c.ndis_n > 0 ? c.ndis_n : c.budget / std::max<std::size_t>(1, c.ndis_t);
  r.seed = c.seed;
  return r;
}

}  // namespace

GroundTruth experiment_truth(const ExperimentConfig& c) {
  if (c.experiment == "cartpole") {
    if (c.truth_cache.empty()) return {};
    return cached_truth(c.truth_cache, truth_key(c), []() -> GroundTruth {
      throw ConfigError(
          "no cart-pole ground truth cached; run the groundtruth command");
    });
  }
  if (c.truth_cache.empty()) return compute_truth(c);
  return cached_truth(c.truth_cache, truth_key(c),
                      [&] { return compute_truth(c); });
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& c) {
  validate(c);
  const GroundTruth truth = experiment_truth(c);
  const bool scored = !truth.mean.empty();

  std::vector<RunOutcome> outcomes(c.reps);
  std::vector<std::string> failures(c.reps);
  std::size_t workers = c.threads > 0 ? c.threads
                                      : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, c.reps);
  if (workers == 1) {
    for (std::size_t r = 0; r < c.reps; ++r) outcomes[r] = run_once(c, r);
  } else {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t r = next++; r < c.reps; r = next++) {
        try {
          outcomes[r] = run_once(c, r);
        } catch (const std::exception& e) {
          failures[r] = e.what();
        }
      }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    for (const auto& f : failures)
      if (!f.empty()) throw NumericError("repetition failed: " + f);
  }

  std::vector<ResultRow> rows;
  std::vector<MomentEstimate> ests;
  ResultRow agg = base_row(c);
  agg.kind = "aggregate";
  agg.oracle_units = std::numeric_limits<std::uint64_t>::max();
  const std::size_t d = outcomes.front().est.mean.size();
  agg.mean.assign(d, 0.0);
  agg.var.assign(d, 0.0);
  double acc = 0.0, ret = 0.0, secs = 0.0;
  for (std::size_t r = 0; r < c.reps; ++r) {
    const RunOutcome& o = outcomes[r];
    ResultRow row = base_row(c);
    row.kind = "run";
    row.run = static_cast<long>(r);
    row.oracle_units = o.oracle_units;
    row.inner_units = o.inner_units;
    row.acceptance = o.acceptance;
    row.mean = o.est.mean;
    row.var = o.est.var;
    row.expected_return = o.expected_return;
    row.wall_seconds = o.seconds;
    if (scored) {
      const ErrorSummary e = rel_median_sq_error({o.est}, truth);
      row.mean_error = e.mean_error;
      row.var_error = e.var_error;
    } else {
      row.mean_error = row.var_error = kNaN;
    }
    rows.push_back(row);
    ests.push_back(o.est);
    agg.oracle_units = std::min(agg.oracle_units, o.oracle_units);
    agg.inner_units += o.inner_units;
    for (std::size_t j = 0; j < d; ++j) {
      agg.mean[j] += o.est.mean[j] / static_cast<double>(c.reps);
      agg.var[j] += o.est.var[j] / static_cast<double>(c.reps);
    }
    acc += o.acceptance;
    ret += o.expected_return;
    secs += o.seconds;
  }
  agg.acceptance = acc / static_cast<double>(c.reps);
  agg.expected_return = ret / static_cast<double>(c.reps);
  agg.wall_seconds = secs;
  if (scored) {
    const ErrorSummary e = rel_median_sq_error(ests, truth);
    agg.mean_error = e.mean_error;
    agg.var_error = e.var_error;
  } else {
    agg.mean_error = agg.var_error = kNaN;
  }
  rows.push_back(agg);
  return rows;
}

namespace {

const char* const kColumns[] = {
    "kind",   "experiment",   "algorithm",    "budget",     "k",
    "t_surr", "ndis_t",       "ndis_n",       "seed",       "run",
    "oracle_units", "inner_units", "acceptance", "mean",    "var",
    "mean_error",   "var_error",   "expected_return"};

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ';';
    s += fmt(v[i]);
  }
  return s;
}

double parse_real(const std::string& s) {
  if (s == "nan") return kNaN;
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw IoError("bad number '" + s + "'");
  return x;
}

std::vector<double> split_reals(const std::string& s) {
  std::vector<double> out;
  if (s.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const auto semi = s.find(';', pos);
    out.push_back(parse_real(s.substr(pos, semi - pos)));
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  return out;
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

template <class T>
T parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw IoError("bad integer '" + s + "'");
    return static_cast<T>(v);
  } catch (const IoError&) {
    throw;
  } catch (const std::exception&) {
    throw IoError("bad integer '" + s + "'");
  }
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows,
               bool with_wall_time) {
  bool first = true;
  for (const char* c : kColumns) {
    out << (first ? "" : ",") << c;
    first = false;
  }
  if (with_wall_time) out << ",wall_seconds";
  out << '\n';
  for (const auto& r : rows) {
    out << r.kind << ',' << r.experiment << ',' << r.algorithm << ','
        << r.budget << ',' << r.k << ',' << r.t_surr << ',' << r.ndis_t << ','
        << r.ndis_n << ',' << r.seed << ',' << r.run << ',' << r.oracle_units
        << ',' << r.inner_units << ',' << fmt(r.acceptance) << ','
        << join(r.mean) << ',' << join(r.var) << ',' << fmt(r.mean_error)
        << ',' << fmt(r.var_error) << ',' << fmt(r.expected_return);
    if (with_wall_time) out << ',' << fmt(r.wall_seconds);
    out << '\n';
  }
}

void write_csv_file(const std::string& path, const std::vector<ResultRow>& rows,
                    bool with_wall_time) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_csv(out, rows, with_wall_time);
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty CSV");
  const auto header = split_commas(line);
  const std::size_t ncol = std::size(kColumns);
  bool wall = false;
  if (header.size() == ncol + 1 && header.back() == "wall_seconds") {
    wall = true;
  } else if (header.size() != ncol) {
    throw IoError("unexpected CSV header");
  }
  for (std::size_t i = 0; i < ncol; ++i)
    if (header[i] != kColumns[i]) throw IoError("unexpected CSV header");

  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_commas(line);
    if (f.size() != header.size()) throw IoError("bad CSV field count");
    ResultRow r;
    r.kind = f[0];
    r.experiment = f[1];
    r.algorithm = f[2];
    r.budget = parse_int<std::uint64_t>(f[3]);
    r.k = parse_int<std::size_t>(f[4]);
    r.t_surr = parse_int<std::size_t>(f[5]);
    r.ndis_t = parse_int<std::size_t>(f[6]);
    r.ndis_n = parse_int<std::size_t>(f[7]);
    r.seed = parse_int<std::uint64_t>(f[8]);
    r.run = parse_int<long>(f[9]);
    r.oracle_units = parse_int<std::uint64_t>(f[10]);
    r.inner_units = parse_int<std::uint64_t>(f[11]);
    r.acceptance = parse_real(f[12]);
    r.mean = split_reals(f[13]);
    r.var = split_reals(f[14]);
    r.mean_error = parse_real(f[15]);
    r.var_error = parse_real(f[16]);
    r.expected_return = parse_real(f[17]);
    if (wall) r.wall_seconds = parse_real(f[18]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string summarize(const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw SizeError("nothing to summarize");
  std::vector<ResultRow> sel;
  for (const auto& r : rows)
    if (r.kind == "aggregate") sel.push_back(r);
  if (sel.empty()) sel = rows;
  std::stable_sort(sel.begin(), sel.end(),
                   [](const ResultRow& a, const ResultRow& b) {
                     if (std::isnan(a.mean_error)) return false;
                     if (std::isnan(b.mean_error)) return true;
                     return a.mean_error < b.mean_error;
                   });
  const bool cart = std::any_of(sel.begin(), sel.end(), [](const auto& r) {
    return r.experiment == "cartpole";
  });

  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head = {"algorithm", "K", "T_surr", "mean-error",
                                   "var-error", "oracle-units"};
  if (cart) {
    for (int i = 1; i <= 6; ++i) head.push_back("theta" + std::to_string(i));
    head.push_back("exp-return");
  }
  cells.push_back(head);
  auto sci = [](double x) {
    if (std::isnan(x)) return std::string("-");
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << x;
    return os.str();
  };
  auto fix = [](double x, int p) {
    if (std::isnan(x)) return std::string("-");
    std::ostringstream os;
    os << std::fixed << std::setprecision(p) << x;
    return os.str();
  };
  for (const auto& r : sel) {
    std::vector<std::string> line = {
        r.algorithm, std::to_string(r.k), std::to_string(r.t_surr),
        sci(r.mean_error), sci(r.var_error), std::to_string(r.oracle_units)};
    if (cart) {
      for (std::size_t i = 0; i < 6; ++i)
        line.push_back(i < r.mean.size() ? fix(r.mean[i], 4) : "-");
      line.push_back(fix(r.expected_return, 1));
    }
    cells.push_back(line);
  }
  std::vector<std::size_t> width(head.size(), 0);
  for (const auto& l : cells)
    for (std::size_t i = 0; i < l.size(); ++i)
      width[i] = std::max(width[i], l[i].size());
  std::ostringstream os;
  for (const auto& l : cells) {
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (i > 0) os << "  ";
      if (i == 0)
        os << std::left << std::setw(static_cast<int>(width[i])) << l[i];
      else
        os << std::right << std::setw(static_cast<int>(width[i])) << l[i];
    }
    os << '\n';
  }
  return os.str();
}

CartPoleGroundTruth cartpole_groundtruth(const ExperimentConfig& c,
                                         std::uint64_t iterations,
                                         std::size_t bins) {
  if (c.experiment != "cartpole")
    throw ConfigError("groundtruth is defined for the cartpole experiment");
  if (iterations == 0 || bins == 0)
    throw ConfigError("groundtruth needs iterations >= 1 and bins >= 1");
  const CartPoleParams params = cartpole_params(c);
  ReturnOracle oracle(params, c.episodes, derive_seed(c.seed, 0, 1));
  Rng rng(derive_seed(c.seed, 0, 0));
  Rng init(derive_seed(c.seed, 0, 2));
  const BoundedDomain& dom = oracle.domain();
  const Point theta0 = IndependentProposal::Uniform(dom).sample(init);
  ChainControl ctl;
  ctl.budget = iterations + 1;
  ctl.max_iterations = static_cast<std::size_t>(iterations);
  const Chain chain = noisy_mh(oracle, RandomWalkProposal(c.proposal_scale),
                               theta0, ctl, NoisyMhMode::kPseudoMarginal, rng);
  const MomentEstimate est = chain_moments(chain, c.burn_in);

  CartPoleGroundTruth gt;
  gt.iterations = chain.iterations();
  gt.mmse = est.mean;
  gt.acceptance = chain.acceptance_rate();
  const double lo = dom.lower()[0];
  const double hi = dom.upper()[0];
  const double h = (hi - lo) / static_cast<double>(bins);
  for (std::size_t b = 0; b <= bins; ++b)
    gt.bin_edges.push_back(lo + h * static_cast<double>(b));
  gt.density.assign(6, std::vector<double>(bins, 0.0));
  const auto skip = static_cast<std::size_t>(
      std::floor(c.burn_in * static_cast<double>(chain.size())));
  const double count = static_cast<double>(chain.size() - skip);
  for (std::size_t i = skip; i < chain.size(); ++i) {
    PointView s = chain.state(i);
    for (std::size_t j = 0; j < 6; ++j) {
      auto b = static_cast<std::size_t>((s[j] - lo) / h);
      b = std::min(b, bins - 1);
      gt.density[j][b] += 1.0 / (count * h);
    }
  }
  Rng eval_rng(derive_seed(c.seed, 0, 3));
  double sum = 0.0;
  const std::size_t episodes = std::max<std::size_t>(1, c.return_episodes);
  for (std::size_t i = 0; i < episodes; ++i)
    sum += run_episode(gt.mmse, eval_rng, params).episode_return;
  gt.expected_return = sum / static_cast<double>(episodes);

  if (!c.truth_cache.empty()) {
    GroundTruth t{est.mean, est.var, TruthSource::kQuadrature};
    std::ofstream out(c.truth_cache, std::ios::app);
    if (!out) throw IoError("cannot write truth cache " + c.truth_cache);
    out.precision(17);
    out << truth_key(c) << ' ' << t.mean.size();
    for (double x : t.mean) out << ' ' << x;
    for (double x : t.var) out << ' ' << x;
    out << '\n';
  }
  return gt;
}

void write_groundtruth(std::ostream& out, const CartPoleGroundTruth& gt) {
  out.precision(17);
  out << "# iterations " << gt.iterations << "\n# acceptance "
      << gt.acceptance << "\n# expected_return " << gt.expected_return
      << "\n# mmse";
  for (double x : gt.mmse) out << ' ' << x;
  out << "\n# columns: bin_lo bin_hi density_theta1..density_theta6\n";
  for (std::size_t b = 0; b + 1 < gt.bin_edges.size(); ++b) {
    out << gt.bin_edges[b] << ' ' << gt.bin_edges[b + 1];
    for (const auto& d : gt.density) out << ' ' << d[b];
    out << '\n';
  }
}

}  // namespace noisymc
