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

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>

#include "noisymc/domain.hpp"
#include "noisymc/oracle.hpp"
#include "noisymc/rng.hpp"

namespace noisymc {

/// [x, x_dot, alpha1, alpha1_dot, alpha2, alpha2_dot]
using CartPoleState = std::array<double, 6>;

/// Double pole on a cart. Poles are uniform rods hinged on the cart; lengths
/// below are half-lengths. Angles are measured from upright.
struct CartPoleParams {
  double cart_mass = 1.0;
  double pole1_mass = 0.1;
  double pole1_half_length = 0.5;
  double pole2_mass = 0.01;
  double pole2_half_length = 0.05;
  double gravity = 9.8;
  double max_force = 10.0;
  double dt = 0.02;
  double track_limit = 2.4;
  double angle_limit = 0.628;  // 36 degrees
  int max_steps = 1000;
  /// Half-widths of the uniform initial-state box.
  std::array<double, 6> init_half_width = {1.944, 1.215,    0.0472,
                                           0.135088, 0.10472, 0.135088};

  /// Same parameters with the alpha1 interval widened to match alpha2.
  CartPoleParams with_symmetric_angles() const;
};

struct EpisodeResult {
  int length = 0;
  int episode_return = 0;
};

/// Time derivative of the state under force `force` (not saturated here).
CartPoleState cartpole_derivative(const CartPoleState& s, double force,
                                  const CartPoleParams& p);

/// One RK4 step of length p.dt with the force saturated to +-max_force and
/// held constant. Throws NumericError on non-finite input.
CartPoleState cartpole_step(const CartPoleState& s, double force,
                            const CartPoleParams& p);

/// Same integrator with an explicit (possibly negative) step length.
CartPoleState cartpole_step_dt(const CartPoleState& s, double force,
                               double dt, const CartPoleParams& p);

/// Total mechanical energy (kinetic + potential, zero at the hinge height).
double cartpole_energy(const CartPoleState& s, const CartPoleParams& p);

bool cartpole_in_bounds(const CartPoleState& s, const CartPoleParams& p);

CartPoleState sample_initial_state(Rng& rng, const CartPoleParams& p);

/// Saturated linear policy theta^T s.
double linear_policy_force(PointView theta, const CartPoleState& s,
                           const CartPoleParams& p);

/// Runs one episode from `start`. Reward is 1 per step that ends inside the
/// bounds. If `trajectory` is set, writes "t s0..s5 a r" per step.
EpisodeResult run_episode_from(PointView theta, CartPoleState start,
                               const CartPoleParams& p,
                               std::ostream* trajectory = nullptr);

/// run_episode_from with a sampled initial state.
EpisodeResult run_episode(PointView theta, Rng& rng, const CartPoleParams& p,
                          std::ostream* trajectory = nullptr);

/// Policy domain [-60, 60]^6.
BoundedDomain cartpole_policy_domain();

/// Noisy oracle m~(theta) = mean return over N episodes. One evaluation is
/// one oracle unit and N episode units.
class ReturnOracle final : public NoisyOracle {
 public:
  ReturnOracle(CartPoleParams params, std::size_t episodes,
               std::uint64_t seed, BoundedDomain domain =
                                       cartpole_policy_domain());

  const BoundedDomain& domain() const override { return domain_; }
  std::uint64_t inner_units() const override { return episodes_run_; }
  const CartPoleParams& params() const { return params_; }

 protected:
  double draw(PointView theta) override;

 private:
  CartPoleParams params_;
  std::size_t episodes_;
  BoundedDomain domain_;
  Rng rng_;
  std::uint64_t episodes_run_ = 0;
};

}  // namespace noisymc
