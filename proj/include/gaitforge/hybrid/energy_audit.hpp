// Copyright 2026 The gaitforge Authors
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

#include <vector>

#include "gaitforge/hybrid/hybrid.hpp"
#include "gaitforge/models/model.hpp"
#include "gaitforge/simulate/trajectory.hpp"

namespace gaitforge::hybrid {

struct EnergyAudit {
  double injected = 0.0;     // integral of (1 - eps) grad(E) . f_E
  double dissipated = 0.0;   // integral of sum_s d_s (c_s . qdot)^2
  double actuator = 0.0;     // integral of qdot . (F(u) - F(0))
  double impact_loss = 0.0;  // sum of E(pre) - E(post) over events
  double energy_start = 0.0;
  double energy_end = 0.0;
  double constraint_drift = 0.0;  // max |W^T qdot| over stance samples
  bool simpson = true;             // every segment integrated with Simpson

  // Zero for an exact trajectory.
  double balance() const {
    return (energy_end - energy_start) - (injected - dissipated + actuator - impact_loss);
  }
};

EnergyAudit stride_energy_audit(const models::ModelSpec& model,
                                const simulate::HybridTrajectory& traj, double gamma,
                                double eps, InjectionKind kind,
                                const std::vector<double>& free);

}  // namespace gaitforge::hybrid
