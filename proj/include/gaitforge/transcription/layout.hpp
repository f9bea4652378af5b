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

// Decision vector of the Hermite-Simpson transcription.
//
//   [ x0 | gamma (quasi-passive only) | T_1..T_m | free params | grid | xi ]
//
// Grid: phase 1 stores nodes 1..N (its node 0 is x0), later phases store
// nodes 0..N. xi holds n_active inputs per interval, phase-major, only in
// actuated mode; inputs whose leg is airborne in a phase are left out.

#include <string>
#include <vector>

#include "gaitforge/models/model.hpp"
#include "gaitforge/numerics/linalg.hpp"

namespace gaitforge::transcription {

enum class Mode { kQuasiPassive, kActuated };

std::string mode_name(Mode mode);
Mode parse_mode(const std::string& name);

struct DecisionLayout {
  Mode mode = Mode::kQuasiPassive;
  int m = 0;
  int N = 0;
  int n_q = 0;
  int n_u = 0;
  int n_free = 0;
  std::vector<int> sequence;              // phase ids, length m
  std::vector<std::vector<bool>> active;  // [phase position][input]

  int off_x0 = 0;
  int off_gamma = -1;
  int off_T = 0;
  int off_free = 0;
  int off_grid = 0;
  int off_xi = 0;
  int size = 0;
  std::vector<int> xi_phase_offset;

  int n_x() const { return 2 * n_q; }
  int node(int k, int i) const;           // first index of grid node i in phase k
  int xi(int k, int interval, int j) const;  // -1 when frozen or quasi-passive
  int n_active(int k) const;
  int n_xi() const { return size - off_xi; }
  int n_h() const { return 2 * n_q * N * m + 2 * n_q * m + m + 1; }
  std::string describe() const;
};

// Validates the sequence against the model's declared transitions.
DecisionLayout make_layout(const models::ModelSpec& model, const std::vector<int>& sequence, int N,
                           Mode mode);

// Structured view of a decision vector.
struct DecisionComponents {
  std::vector<double> x0;
  double gamma = 0.0;
  std::vector<double> durations;
  std::vector<double> free;
  // grid[k][i] for i = 0..N; grid[0][0] equals x0
  std::vector<std::vector<std::vector<double>>> grid;
  // xi[k][interval][input], zeros for frozen entries
  std::vector<std::vector<std::vector<double>>> xi;
};

numerics::Vector pack(const DecisionLayout& layout, const DecisionComponents& c);
DecisionComponents unpack(const DecisionLayout& layout, const numerics::Vector& a);

// Moves a quasi-passive vector into the actuated layout with xi = 0.
numerics::Vector to_actuated(const DecisionLayout& qp, const DecisionLayout& act,
                             const numerics::Vector& a_qp);

}  // namespace gaitforge::transcription
