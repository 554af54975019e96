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

#include "noisymc/cartpole.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "noisymc/error.hpp"

namespace noisymc {

CartPoleParams CartPoleParams::with_symmetric_angles() const {
  CartPoleParams out = *this;
  out.init_half_width[2] = out.init_half_width[4];
  return out;
}

CartPoleState cartpole_derivative(const CartPoleState& s, double force,
                                  const CartPoleParams& p) {
  const double g = p.gravity;
  const double masses[2] = {p.pole1_mass, p.pole2_mass};
  const double halves[2] = {p.pole1_half_length, p.pole2_half_length};
  const double angles[2] = {s[2], s[4]};
  const double rates[2] = {s[3], s[5]};

  // Lagrangian of rods hinged on the cart, eliminated for x_ddot.
  double num = force;
  double den = p.cart_mass;
  for (int i = 0; i < 2; ++i) {
    const double sn = std::sin(angles[i]);
    const double cs = std::cos(angles[i]);
    num += masses[i] * halves[i] * rates[i] * rates[i] * sn -
           0.75 * masses[i] * g * sn * cs;
    den += masses[i] * (1.0 - 0.75 * cs * cs);
  }
  const double xdd = num / den;

  CartPoleState d{};
  d[0] = s[1];
  d[1] = xdd;
  for (int i = 0; i < 2; ++i) {
    d[2 + 2 * i] = rates[i];
    d[3 + 2 * i] = 0.75 / halves[i] *
                   (g * std::sin(angles[i]) - xdd * std::cos(angles[i]));
  }
  return d;
}

CartPoleState cartpole_step_dt(const CartPoleState& s, double force,
                               double dt, const CartPoleParams& p) {
  if (!std::isfinite(force))
    throw NumericError("cart-pole force is not finite");
  for (double v : s)
    if (!std::isfinite(v)) throw NumericError("cart-pole state is not finite");
  const double f = std::clamp(force, -p.max_force, p.max_force);
  auto axpy = [](const CartPoleState& a, double h, const CartPoleState& b) {
    CartPoleState r;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + h * b[i];
    return r;
  };
  const CartPoleState k1 = cartpole_derivative(s, f, p);
  const CartPoleState k2 = cartpole_derivative(axpy(s, 0.5 * dt, k1), f, p);
  const CartPoleState k3 = cartpole_derivative(axpy(s, 0.5 * dt, k2), f, p);
  const CartPoleState k4 = cartpole_derivative(axpy(s, dt, k3), f, p);
  CartPoleState out;
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = s[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

CartPoleState cartpole_step(const CartPoleState& s, double force,
                            const CartPoleParams& p) {
  return cartpole_step_dt(s, force, p.dt, p);
}

double cartpole_energy(const CartPoleState& s, const CartPoleParams& p) {
  const double masses[2] = {p.pole1_mass, p.pole2_mass};
  const double halves[2] = {p.pole1_half_length, p.pole2_half_length};
  double kinetic = 0.5 * p.cart_mass * s[1] * s[1];
  double potential = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double a = s[2 + 2 * i];
    const double w = s[3 + 2 * i];
    const double l = halves[i];
    const double vx = s[1] + l * std::cos(a) * w;
    const double vy = -l * std::sin(a) * w;
    kinetic += 0.5 * masses[i] * (vx * vx + vy * vy) +
               0.5 * (masses[i] * l * l / 3.0) * w * w;
    potential += masses[i] * p.gravity * l * std::cos(a);
  }
  return kinetic + potential;
}

bool cartpole_in_bounds(const CartPoleState& s, const CartPoleParams& p) {
  return std::abs(s[0]) <= p.track_limit && std::abs(s[2]) <= p.angle_limit &&
         std::abs(s[4]) <= p.angle_limit;
}

CartPoleState sample_initial_state(Rng& rng, const CartPoleParams& p) {
  CartPoleState s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double w = p.init_half_width[i];
    s[i] = -w + 2.0 * w * uniform01(rng);
  }
  return s;
}

double linear_policy_force(PointView theta, const CartPoleState& s,
                           const CartPoleParams& p) {
  require_dimension(theta, s.size());
  double f = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) f += theta[i] * s[i];
  return std::clamp(f, -p.max_force, p.max_force);
}

EpisodeResult run_episode_from(PointView theta, CartPoleState start,
                               const CartPoleParams& p,
                               std::ostream* trajectory) {
  require_dimension(theta, start.size());
  EpisodeResult r;
  CartPoleState s = start;
  if (trajectory != nullptr) trajectory->precision(17);
  for (int t = 1; t <= p.max_steps; ++t) {
    const double a = linear_policy_force(theta, s, p);
    s = cartpole_step(s, a, p);
    const bool alive = cartpole_in_bounds(s, p);
    if (trajectory != nullptr) {
      *trajectory << t;
      for (double v : s) *trajectory << ' ' << v;
      *trajectory << ' ' << a << ' ' << (alive ? 1 : 0) << '\n';
    }
    if (!alive) break;
    ++r.episode_return;
  }
  r.length = r.episode_return;
  return r;
}

EpisodeResult run_episode(PointView theta, Rng& rng, const CartPoleParams& p,
                          std::ostream* trajectory) {
  return run_episode_from(theta, sample_initial_state(rng, p), p, trajectory);
}

BoundedDomain cartpole_policy_domain() {
  return BoundedDomain::Cube(6, -60.0, 60.0);
}

ReturnOracle::ReturnOracle(CartPoleParams params, std::size_t episodes,
                           std::uint64_t seed, BoundedDomain domain)
    : params_(params),
      episodes_(episodes),
      domain_(std::move(domain)),
      rng_(seed) {
  if (episodes_ == 0) throw SizeError("return oracle needs N >= 1");
  if (domain_.dimension() != 6)
    throw DimensionError("policy domain must be 6-dimensional");
}

double ReturnOracle::draw(PointView theta) {
  double sum = 0.0;
  for (std::size_t i = 0; i < episodes_; ++i)
    sum += run_episode(theta, rng_, params_).episode_return;
  episodes_run_ += episodes_;
  return sum / static_cast<double>(episodes_);
}

}  // namespace noisymc
