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

#include <string>
#include <vector>

namespace gaitforge::simulate {

// Samples of one phase. u[k] is the input held on [t[k], t[k+1]); the last
// entry repeats the final interval's input.
struct Segment {
  int phase = 0;
  std::vector<double> t;
  std::vector<std::vector<double>> x;
  std::vector<std::vector<double>> u;
};

struct EventRecord {
  double t = 0.0;
  int from = 0;
  int to = 0;
  std::vector<double> pre;
  std::vector<double> post;
};

// One stride. The last event is the closing transition back to the first
// phase, so `events.size() == segments.size()` for a complete stride.
struct HybridTrajectory {
  std::vector<Segment> segments;
  std::vector<EventRecord> events;

  double duration() const;
  std::vector<int> phase_sequence() const;
  // Columns t, phase, states, then one column per input name (zero when a
  // sample carries no input). Values at 17 significant digits. A complete
  // stride gets a final row with the state after the closing impact.
  std::string to_csv(const std::vector<std::string>& state_names,
                     const std::vector<std::string>& input_names = {}) const;
};

}  // namespace gaitforge::simulate
