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

// Planar hybrid mechanical models described as data.
//
// Every material point lives on a planar chain hanging off the main body:
//   r = (x, z) + sum_t Rot(theta_t) * a_t,   theta_t = c_t . q,
// where the local offset a_t is affine in q (the prismatic leg length is a
// coordinate). Masses, inertias, springs and contacts reference these points,
// and the templated evaluators in dynamics.hpp derive M(q), the generalized
// forces and the contact kinematics from the description for any scalar type.

#include <map>
#include <string>
#include <vector>

namespace gaitforge::models {

// Named reals in normalized units (m0 = l0 = g = 1).
using ParamSet = std::map<std::string, double>;

struct ChainTerm {
  std::vector<double> angle;      // rotation angle coefficients over q
  double local_x = 0.0;           // constant part of the local offset
  double local_z = 0.0;
  std::vector<double> local_x_q;  // linear dependence of the offset on q
  std::vector<double> local_z_q;  // (empty = constant)
};

struct PointSpec {
  std::string name;
  std::vector<ChainTerm> terms;
};

struct BodySpec {
  std::string name;
  double mass = 0.0;
  double inertia = 0.0;
  int point = -1;              // index into ModelSpec::points (CoM)
  std::vector<double> angle;   // absolute orientation coefficients over q
};

// V = 1/2 k (u_s + rest - c.q)^2 with damping force -d (b.qdot) b, where b
// is damping_coord (the spring's own c when empty).
struct SpringSpec {
  std::string name;
  std::vector<double> coord;
  double stiffness = 0.0;
  double damping = 0.0;
  double rest = 0.0;
  int rest_free_param = -1;  // rest angle supplied by a free parameter
  int series_input = -1;     // input index shifting the rest position
  std::vector<double> damping_coord;
  const std::vector<double>& damper() const { return damping_coord.empty() ? coord : damping_coord; }
};

enum class ActuationKind { kParallelTorque, kSeriesElasticPosition };
enum class EventKind { kTouchDown, kLiftOff };

struct Transition {
  int target = 0;  // phase id
  EventKind kind = EventKind::kTouchDown;
  int foot = 0;    // index into ModelSpec::feet
};

struct PhaseSpec {
  int id = 0;
  std::string name;
  std::vector<int> contacts;  // feet held on the ground, constraint order
  std::vector<Transition> events;
};

struct FreeParam {
  std::string name;
  double initial = 0.0;
};

struct ModelSpec {
  std::string name;
  int n_q = 0;
  int n_u = 0;
  std::vector<std::string> coord_names;
  std::vector<std::string> input_names;
  ActuationKind actuation = ActuationKind::kParallelTorque;
  double gravity = 1.0;

  std::vector<PointSpec> points;
  std::vector<BodySpec> bodies;
  std::vector<int> feet;  // point indices
  std::vector<SpringSpec> springs;
  // Parallel actuation: generalized force sum_j u_j * input_coord[j].
  std::vector<std::vector<double>> input_coord;
  // Foot whose leg an input drives; the input is frozen at zero in phases
  // where that foot is airborne. Empty or -1 means always active.
  std::vector<int> input_foot;

  std::vector<PhaseSpec> phases;
  std::vector<bool> periodic;  // 2 n_q entries; diagonal of P
  std::vector<FreeParam> free_params;
  ParamSet params;

  int n_x() const { return 2 * n_q; }
  const PhaseSpec& phase(int id) const;
  bool has_phase(int id) const;
  std::vector<std::string> state_names() const;
  std::vector<double> free_param_defaults() const;
};

// Factories; `overrides` replace the defaults (unknown names are rejected).
ModelSpec make_prismatic_monopod(const ParamSet& overrides = {});
ModelSpec make_segmented_monopod(const ParamSet& overrides = {});
ModelSpec make_sagittal_quadruped(const ParamSet& overrides = {});
ModelSpec make_model(const std::string& name, const ParamSet& overrides = {});

ParamSet prismatic_monopod_defaults();
ParamSet segmented_monopod_defaults();
ParamSet sagittal_quadruped_defaults();

}  // namespace gaitforge::models
