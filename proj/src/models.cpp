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

#include <algorithm>
#include <string>
#include <utility>

#include "gaitforge/models/model.hpp"
#include "gaitforge/numerics/errors.hpp"

namespace gaitforge::models {

const PhaseSpec& ModelSpec::phase(int id) const {
  for (const auto& p : phases)
    if (p.id == id) return p;
  throw DomainError("model " + name + " has no phase " + std::to_string(id));
}

bool ModelSpec::has_phase(int id) const {
  return std::any_of(phases.begin(), phases.end(), [&](const PhaseSpec& p) { return p.id == id; });
}

std::vector<std::string> ModelSpec::state_names() const {
  std::vector<std::string> out = coord_names;
  for (const auto& c : coord_names) out.push_back("d" + c);
  return out;
}

std::vector<double> ModelSpec::free_param_defaults() const {
  std::vector<double> out;
  for (const auto& f : free_params) out.push_back(f.initial);
  return out;
}

namespace {

ParamSet merge(ParamSet defaults, const ParamSet& overrides, const std::string& model) {
  for (const auto& [key, value] : overrides) {
    auto it = defaults.find(key);
    if (it == defaults.end()) throw ConfigError("unknown parameter '" + key + "' for " + model);
    it->second = value;
  }
  for (const auto& [key, value] : defaults) {
    const bool non_negative = key.rfind("m_", 0) == 0 || key.rfind("j_", 0) == 0 ||
                              key.rfind("k_", 0) == 0 || key.rfind("d_", 0) == 0;
    if (non_negative && value < 0.0)
      throw ConfigError("parameter '" + key + "' must be non-negative");
  }
  return defaults;
}

std::vector<double> unit(int n, int i, double s = 1.0) {
  std::vector<double> v(static_cast<size_t>(n), 0.0);
  v[static_cast<size_t>(i)] = s;
  return v;
}

std::vector<double> sum_of(int n, std::initializer_list<int> idx) {
  std::vector<double> v(static_cast<size_t>(n), 0.0);
  for (int i : idx) v[static_cast<size_t>(i)] += 1.0;
  return v;
}

ChainTerm term(std::vector<double> angle, double lx, double lz) {
  ChainTerm t;
  t.angle = std::move(angle);
  t.local_x = lx;
  t.local_z = lz;
  return t;
}

// Periodic in everything except the horizontal position.
std::vector<bool> periodic_all_but_x(int n_q) {
  std::vector<bool> p(static_cast<size_t>(2 * n_q), true);
  p[0] = false;
  return p;
}

}  // namespace

ParamSet prismatic_monopod_defaults() {
  return {{"m_B", 0.7},  {"m_L", 0.2},  {"m_F", 0.1}, {"j_B", 0.4},  {"j_L", 0.004},
          {"k_H", 1.0},  {"d_H", 0.02}, {"k_L", 20.0}, {"d_L", 0.85}, {"l_0", 1.0},
          {"g", 1.0}};
}

ParamSet segmented_monopod_defaults() {
  return {{"m_B", 0.8399},   {"m_L1", 0.0821}, {"m_L2", 0.0780},     {"m_F", 1e-10},
          {"j_B", 0.0146},   {"j_L1", 0.0044}, {"j_L2", 1.759e-4},   {"k_1", 1.2695},
          {"d_1", 0.1390},   {"alpha_01", -0.2}, {"k_2", 1.3340},    {"d_2", 0.0360},
          {"alpha_02", 0.35}, {"l_1", 0.5},     {"l_2", 0.5},         {"x_J", 0.0},
          {"z_J", 0.0},      {"x_L1", 0.0},    {"z_L1", -0.1375},    {"x_L2", -0.0833},
          {"z_L2", -0.1667}, {"g", 1.0}};
}

ParamSet sagittal_quadruped_defaults() {
  return {{"m_B", 0.8797},     {"m_u", 0.0430},    {"m_l", 0.0172},   {"m_F", 0.0},
          {"j_B", 0.7744},     {"j_r", 8.9826e-4}, {"j_l", 3.6201e-4}, {"k", 0.9472},
          {"d", 0.038},        {"alpha_0u", -0.4}, {"alpha_0l", 0.4}, {"l_u", 0.5},
          {"l_l", 0.5},        {"x_Jh", -0.9375},  {"x_Jf", 0.9375},  {"z_J", -0.2012},
          {"x_u", 0.0010},     {"z_u", -0.2110},   {"x_l", 0.0},      {"z_l", -0.2398},
          {"g", 1.0}};
}

ModelSpec make_prismatic_monopod(const ParamSet& overrides) {
  const ParamSet p = merge(prismatic_monopod_defaults(), overrides, "prismatic-monopod");
  constexpr int n = 5;  // x z phi alpha l
  ModelSpec m;
  m.name = "prismatic-monopod";
  m.n_q = n;
  m.n_u = 2;
  m.coord_names = {"x", "z", "phi", "alpha", "l"};
  m.input_names = {"u_alpha", "u_l"};
  m.actuation = ActuationKind::kParallelTorque;
  m.gravity = p.at("g");
  m.params = p;

  m.points.push_back({"base", {}});
  ChainTerm foot = term(sum_of(n, {2, 3}), 0.0, 0.0);
  foot.local_z_q = unit(n, 4, -1.0);  // (0, -l) along the leg
  m.points.push_back({"foot", {foot}});

  m.bodies.push_back({"body", p.at("m_B"), p.at("j_B"), 0, unit(n, 2)});
  m.bodies.push_back({"leg", p.at("m_L"), p.at("j_L"), 0, sum_of(n, {2, 3})});
  m.bodies.push_back({"foot", p.at("m_F"), 0.0, 1, std::vector<double>(n, 0.0)});
  m.feet = {1};

  m.springs.push_back({"hip", unit(n, 3), p.at("k_H"), p.at("d_H"), 0.0, -1, -1, {}});
  m.springs.push_back({"leg", unit(n, 4), p.at("k_L"), p.at("d_L"), p.at("l_0"), -1, -1, {}});
  m.input_coord = {unit(n, 3), unit(n, 4)};

  m.phases.push_back({1, "flight", {}, {{2, EventKind::kTouchDown, 0}}});
  m.phases.push_back({2, "stance", {0}, {{1, EventKind::kLiftOff, 0}}});
  m.periodic = periodic_all_but_x(n);
  return m;
}

ModelSpec make_segmented_monopod(const ParamSet& overrides) {
  const ParamSet p = merge(segmented_monopod_defaults(), overrides, "segmented-monopod");
  constexpr int n = 5;  // x z phi alpha1 alpha2
  ModelSpec m;
  m.name = "segmented-monopod";
  m.n_q = n;
  m.n_u = 2;
  m.coord_names = {"x", "z", "phi", "alpha1", "alpha2"};
  m.input_names = {"u_alpha1", "u_alpha2"};
  m.actuation = ActuationKind::kSeriesElasticPosition;
  m.gravity = p.at("g");
  m.params = p;

  const auto phi = unit(n, 2);
  const auto upper = sum_of(n, {2, 3});
  const auto lower = sum_of(n, {2, 3, 4});
  const ChainTerm joint = term(phi, p.at("x_J"), p.at("z_J"));
  m.points.push_back({"base", {}});
  m.points.push_back({"upper_leg", {joint, term(upper, p.at("x_L1"), p.at("z_L1"))}});
  m.points.push_back({"lower_leg",
                      {joint, term(upper, 0.0, -p.at("l_1")), term(lower, p.at("x_L2"), p.at("z_L2"))}});
  m.points.push_back({"foot", {joint, term(upper, 0.0, -p.at("l_1")), term(lower, 0.0, -p.at("l_2"))}});

  m.bodies.push_back({"body", p.at("m_B"), p.at("j_B"), 0, phi});
  m.bodies.push_back({"upper_leg", p.at("m_L1"), p.at("j_L1"), 1, upper});
  m.bodies.push_back({"lower_leg", p.at("m_L2"), p.at("j_L2"), 2, lower});
  m.bodies.push_back({"foot", p.at("m_F"), 0.0, 3, std::vector<double>(n, 0.0)});
  m.feet = {3};

  m.free_params.push_back({"alpha_01", p.at("alpha_01")});
  m.springs.push_back({"joint1", unit(n, 3), p.at("k_1"), p.at("d_1"), p.at("alpha_01"), 0, 0, {}});
  // Both dampers act on their own joint rate; spring 2 deflects with alpha1 + alpha2.
  m.springs.push_back({"joint2", sum_of(n, {3, 4}), p.at("k_2"), p.at("d_2"), p.at("alpha_02"), -1, 1,
                       unit(n, 4)});

  m.phases.push_back({1, "flight", {}, {{2, EventKind::kTouchDown, 0}}});
  m.phases.push_back({2, "stance", {0}, {{1, EventKind::kLiftOff, 0}}});
  m.periodic = periodic_all_but_x(n);
  return m;
}

ModelSpec make_sagittal_quadruped(const ParamSet& overrides) {
  const ParamSet p = merge(sagittal_quadruped_defaults(), overrides, "sagittal-quadruped");
  constexpr int n = 7;  // x z phi hu hl fu fl
  ModelSpec m;
  m.name = "sagittal-quadruped";
  m.n_q = n;
  m.n_u = 4;
  m.coord_names = {"x", "z", "phi", "alpha_hu", "alpha_hl", "alpha_fu", "alpha_fl"};
  m.input_names = {"u_hu", "u_hl", "u_fu", "u_fl"};
  m.actuation = ActuationKind::kSeriesElasticPosition;
  m.gravity = p.at("g");
  m.params = p;

  const auto phi = unit(n, 2);
  m.points.push_back({"base", {}});
  m.bodies.push_back({"body", p.at("m_B"), p.at("j_B"), 0, phi});

  struct Leg {
    const char* tag;
    double x_joint;
    int upper_coord;
  };
  const Leg legs[] = {{"h", p.at("x_Jh"), 3}, {"f", p.at("x_Jf"), 5}};
  for (const Leg& leg : legs) {
    const int iu = leg.upper_coord, il = leg.upper_coord + 1;
    const auto upper = sum_of(n, {2, iu});
    const auto lower = sum_of(n, {2, iu, il});
    const ChainTerm joint = term(phi, leg.x_joint, p.at("z_J"));
    const std::string tag = leg.tag;
    const int pu = static_cast<int>(m.points.size());
    m.points.push_back({tag + "u", {joint, term(upper, p.at("x_u"), p.at("z_u"))}});
    m.points.push_back(
        {tag + "l", {joint, term(upper, 0.0, -p.at("l_u")), term(lower, p.at("x_l"), p.at("z_l"))}});
    m.points.push_back(
        {tag + "f", {joint, term(upper, 0.0, -p.at("l_u")), term(lower, 0.0, -p.at("l_l"))}});
    m.bodies.push_back({tag + "u", p.at("m_u"), p.at("j_r"), pu, upper});
    m.bodies.push_back({tag + "l", p.at("m_l"), p.at("j_l"), pu + 1, lower});
    if (p.at("m_F") != 0.0)
      m.bodies.push_back({tag + "f", p.at("m_F"), 0.0, pu + 2, std::vector<double>(n, 0.0)});
    m.feet.push_back(pu + 2);
    const int input_u = leg.upper_coord - 3;
    m.springs.push_back({tag + "u", unit(n, iu), p.at("k"), p.at("d"), p.at("alpha_0u"), -1, input_u, {}});
    m.springs.push_back({tag + "l", sum_of(n, {iu, il}), p.at("k"), p.at("d"), p.at("alpha_0l"), -1,
                         input_u + 1, unit(n, il)});
  }

  // Feet: 0 hind, 1 front.
  constexpr int kHind = 0, kFront = 1;
  m.phases.push_back({1, "flight", {},
                      {{2, EventKind::kTouchDown, kHind}, {3, EventKind::kTouchDown, kFront}}});
  m.phases.push_back({2, "hind-stance", {kHind},
                      {{4, EventKind::kTouchDown, kFront}, {1, EventKind::kLiftOff, kHind}}});
  m.phases.push_back({3, "front-stance", {kFront},
                      {{4, EventKind::kTouchDown, kHind}, {1, EventKind::kLiftOff, kFront}}});
  m.phases.push_back({4, "double-stance", {kHind, kFront},
                      {{3, EventKind::kLiftOff, kHind}, {2, EventKind::kLiftOff, kFront}}});
  m.input_foot = {0, 0, 1, 1};
  m.periodic = periodic_all_but_x(n);
  return m;
}

ModelSpec make_model(const std::string& name, const ParamSet& overrides) {
  if (name == "prismatic-monopod") return make_prismatic_monopod(overrides);
  if (name == "segmented-monopod") return make_segmented_monopod(overrides);
  if (name == "sagittal-quadruped") return make_sagittal_quadruped(overrides);
  throw ConfigError("unknown model '" + name + "'");
}

}  // namespace gaitforge::models
