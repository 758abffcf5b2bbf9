// Copyright 2026 The wbidk Authors
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

#include <cmath>
#include <stdexcept>

#include "wbidk/types.hpp"

namespace wbidk {

// Virtual admittance M v̇_d + B v_d = f_h with diagonal mass and damping.
struct AdmittanceParams {
  Vector6d mass = Vector6d::Constant(4.0);      // kg / kg·m²
  Vector6d damping = Vector6d::Constant(75.0);  // N·s/m / N·m·s/rad

  void validate() const {
    if ((mass.array() <= 0.0).any() || !all_finite(mass))
      throw std::invalid_argument("admittance mass entries must be > 0");
    if ((damping.array() <= 0.0).any() || !all_finite(damping))
      throw std::invalid_argument("admittance damping entries must be > 0");
  }
};

// Advances the admittance state by one control period.
//
// Per axis the scalar ODE m v̇ + b v = f has the exact zero-order-hold
// discretization v⁺ = e^(−b·dt/m) v + (1 − e^(−b·dt/m)) f / b, so the update
// is stable for any dt and splitting a step in two reproduces the single step.
inline Twist admittance_step(const AdmittanceParams& params, const Wrench& f_h,
                             const Twist& v_prev, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("admittance_step: dt must be > 0");
  const Vector6d f = f_h.vector();
  const Vector6d v = v_prev.vector();
  Vector6d out;
  for (int i = 0; i < 6; ++i) {
    const double decay = std::exp(-params.damping[i] * dt / params.mass[i]);
    out[i] = decay * v[i] + (1.0 - decay) * f[i] / params.damping[i];
  }
  return Twist::from_vector(out, v_prev.frame);
}

}  // namespace wbidk
