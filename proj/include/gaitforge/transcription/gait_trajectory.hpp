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

// Views of a packed decision vector as a hybrid trajectory and as the
// piecewise-constant input schedule it encodes.

#include <vector>

#include "gaitforge/simulate/simulate.hpp"
#include "gaitforge/transcription/residuals.hpp"

namespace gaitforge::transcription {

// Nodes and Hermite-Simpson midpoints of every interval (2N+1 uniform samples
// per phase), with the impact at each phase end recorded as an event.
simulate::HybridTrajectory collocation_trajectory(const GaitProblem& p, const Vector& a, double eps);

// One schedule per phase; empty in quasi-passive mode.
std::vector<simulate::ControlSchedule> control_schedules(const GaitProblem& p, const Vector& a);

// gamma used by the vector field: the decision entry in quasi-passive mode,
// the frozen value otherwise.
double injection_gamma(const GaitProblem& p, const Vector& a);

}  // namespace gaitforge::transcription
