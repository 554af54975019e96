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

#include "noisymc/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "noisymc/error.hpp"

namespace noisymc {

MomentEstimate chain_moments(const Chain& chain, double burn_in_fraction) {
  if (!(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0))
    throw ConfigError("burn-in fraction must lie in [0, 1)");
  const std::size_t n = chain.size();
  const auto skip = static_cast<std::size_t>(
      std::floor(burn_in_fraction * static_cast<double>(n)));
  if (n - skip < 2) throw SizeError("fewer than 2 states after burn-in");
  const std::size_t d = chain.dim;
  MomentEstimate est{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
  // Welford per coordinate
  double count = 0.0;
  std::vector<double> m2(d, 0.0);
  for (std::size_t i = skip; i < n; ++i) {
    count += 1.0;
    PointView s = chain.state(i);
    for (std::size_t j = 0; j < d; ++j) {
      const double delta = s[j] - est.mean[j];
      est.mean[j] += delta / count;
      m2[j] += delta * (s[j] - est.mean[j]);
    }
  }
  for (std::size_t j = 0; j < d; ++j) est.var[j] = m2[j] / (count - 1.0);
  return est;
}

MomentEstimate weighted_moments(const WeightedSampleSet& ws) {
  const std::vector<double> w = normalize_weights(ws.raw);
  const std::size_t d = ws.dim;
  MomentEstimate est{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
  for (std::size_t i = 0; i < w.size(); ++i) {
    PointView s = ws.sample(i);
    for (std::size_t j = 0; j < d; ++j) est.mean[j] += w[i] * s[j];
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    PointView s = ws.sample(i);
    for (std::size_t j = 0; j < d; ++j) {
      const double c = s[j] - est.mean[j];
      est.var[j] += w[i] * c * c;
    }
  }
  return est;
}

namespace {

// Visits every midpoint of the tensor grid with its cell volume.
template <class F>
void for_each_midpoint(const BoundedDomain& domain, std::size_t n, F&& f) {
  const std::size_t d = domain.dimension();
  if (d > 2) throw DimensionError("tensor quadrature supports d <= 2");
  if (n < 64) throw SizeError("quadrature needs >= 64 points per dimension");
  std::vector<double> h(d);
  double cell = 1.0;
  for (std::size_t j = 0; j < d; ++j) {
    h[j] = (domain.upper()[j] - domain.lower()[j]) / static_cast<double>(n);
    cell *= h[j];
  }
  Point theta(d);
  auto mid = [&](std::size_t j, std::size_t i) {
    return domain.lower()[j] + (static_cast<double>(i) + 0.5) * h[j];
  };
  if (d == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      theta[0] = mid(0, i);
      f(theta, cell);
    }
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    theta[0] = mid(0, i);
    for (std::size_t k = 0; k < n; ++k) {
      theta[1] = mid(1, k);
      f(theta, cell);
    }
  }
}

}  // namespace

double quadrature_mass(const DensityFn& density, const BoundedDomain& domain,
                       std::size_t points_per_dim) {
  double mass = 0.0;
  for_each_midpoint(domain, points_per_dim,
                    [&](const Point& t, double cell) {
                      mass += density(t) * cell;
                    });
  return mass;
}

GroundTruth quadrature_moments(const DensityFn& density,
                               const BoundedDomain& domain,
                               std::size_t points_per_dim) {
  const std::size_t d = domain.dimension();
  double mass = 0.0;
  std::vector<double> s1(d, 0.0);
  for_each_midpoint(domain, points_per_dim, [&](const Point& t, double cell) {
    const double w = density(t) * cell;
    mass += w;
    for (std::size_t j = 0; j < d; ++j) s1[j] += w * t[j];
  });
  if (!(mass > 0.0)) throw DegenerateWeightsError("density has zero mass");
  GroundTruth g;
  g.mean.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    g.mean[j] = s1[j] / mass;
    // symmetric targets: clear summation roundoff so a zero mean is exact
    const double scale =
        std::max(std::abs(domain.lower()[j]), std::abs(domain.upper()[j]));
    if (std::abs(g.mean[j]) < 1e-12 * scale) g.mean[j] = 0.0;
  }
  // second pass around the mean for accuracy
  std::vector<double> s2(d, 0.0);
  for_each_midpoint(domain, points_per_dim, [&](const Point& t, double cell) {
    const double w = density(t) * cell;
    for (std::size_t j = 0; j < d; ++j) {
      const double c = t[j] - g.mean[j];
      s2[j] += w * c * c;
    }
  });
  g.var.resize(d);
  for (std::size_t j = 0; j < d; ++j) g.var[j] = s2[j] / mass;
  g.source = TruthSource::kQuadrature;
  return g;
}

namespace {

double sq_norm_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    throw DimensionError("estimate and truth dimensions differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

double median(std::vector<double> v) {
  const std::size_t n = v.size();
  std::sort(v.begin(), v.end());
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

ErrorSummary rel_median_sq_error(const std::vector<MomentEstimate>& runs,
                                 const GroundTruth& truth) {
  if (runs.empty()) throw SizeError("error metric needs at least one run");
  const std::vector<double> zero_m(truth.mean.size(), 0.0);
  const std::vector<double> zero_v(truth.var.size(), 0.0);
  const double nm = sq_norm_diff(truth.mean, zero_m);
  const double nv = sq_norm_diff(truth.var, zero_v);
  std::vector<double> em, ev;
  for (const auto& r : runs) {
    em.push_back(sq_norm_diff(r.mean, truth.mean));
    ev.push_back(sq_norm_diff(r.var, truth.var));
  }
  ErrorSummary out;
  out.mean_unnormalized = nm == 0.0;
  out.var_unnormalized = nv == 0.0;
  out.mean_error = median(em) / (out.mean_unnormalized ? 1.0 : nm);
  out.var_error = median(ev) / (out.var_unnormalized ? 1.0 : nv);
  return out;
}

GroundTruth cached_truth(const std::string& path, const std::string& key,
                         const std::function<GroundTruth()>& compute) {
  if (key.empty() || key.find_first_of(" \t\n") != std::string::npos)
    throw ConfigError("truth cache keys must be non-empty words");
  {
    std::ifstream in(path);
    std::string line;
    while (in && std::getline(in, line)) {
      std::istringstream ls(line);
      std::string k;
      std::size_t d = 0;
      if (!(ls >> k >> d) || k != key) continue;
      GroundTruth g;
      g.mean.resize(d);
      g.var.resize(d);
      bool ok = true;
      for (double& x : g.mean) ok = ok && static_cast<bool>(ls >> x);
      for (double& x : g.var) ok = ok && static_cast<bool>(ls >> x);
      if (!ok) throw IoError("malformed truth cache line in " + path);
      return g;
    }
  }
  GroundTruth g = compute();
  std::ofstream out(path, std::ios::app);
  if (!out) throw IoError("cannot write truth cache " + path);
  out.precision(17);
  out << key << ' ' << g.mean.size();
  for (double x : g.mean) out << ' ' << x;
  for (double x : g.var) out << ' ' << x;
  out << '\n';
  if (!out) throw IoError("cannot write truth cache " + path);
  return g;
}

}  // namespace noisymc
