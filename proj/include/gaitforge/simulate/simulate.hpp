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

#include <optional>
#include <vector>

#include "gaitforge/hybrid/hybrid.hpp"
#include "gaitforge/models/model.hpp"
#include "gaitforge/simulate/trajectory.hpp"

namespace gaitforge::simulate {

// Piecewise-constant input: values[k] is held on [k*interval, (k+1)*interval).
// Times past the last interval keep the last value. Empty means zero input.
struct ControlSchedule {
  double interval = 0.0;
  std::vector<std::vector<double>> values;

  const std::vector<double>& at(double t) const;
  bool empty() const { return values.empty(); }
};

struct IntegratorOptions {
  double step = 1e-3;
  double event_tolerance = 1e-10;
  // A guard can fire only after it has been below -guard_arm once, so a
  // foot that just lifted off does not re-trigger on round-off.
  double guard_arm = 1e-9;
  double t_max = 20.0;  // per phase
};

struct HomotopySetting {
  double gamma = 0.0;
  double eps = 1.0;
  hybrid::InjectionKind kind = hybrid::InjectionKind::kMassProportional;
};

struct PhaseResult {
  Segment segment;
  bool event_hit = false;
  int target = 0;           // phase entered by the event
  double t_event = 0.0;     // relative to the phase start
  std::vector<double> pre;  // state at the event, before the impact map
};

// Classic RK4 with steps split at input-interval boundaries. Guard functions
// of the phase are monitored at step ends; a negative-to-non-negative sign
// change of an armed guard is localized by bisection on the step length.
PhaseResult integrate_phase(const models::ModelSpec& model, int phase, const std::vector<double>& x0,
                            const ControlSchedule& controls, const HomotopySetting& homotopy,
                            const std::vector<double>& free, const IntegratorOptions& options = {});

// Runs the given phase sequence once, applying impact maps, and closes the
// stride with the event back into the first phase. Throws WrongSequenceError
// when an unexpected transition fires and DivergenceError on a timeout.
HybridTrajectory simulate_stride(const models::ModelSpec& model, const std::vector<int>& sequence,
                                 const std::vector<double>& x0,
                                 const std::vector<ControlSchedule>& controls,
                                 const HomotopySetting& homotopy, const std::vector<double>& free,
                                 const IntegratorOptions& options = {});

}  // namespace gaitforge::simulate
