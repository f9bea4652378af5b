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

// Run configuration: flat key = value text with [section] headers.
//
//   [model]           name, plus any model parameter as an override
//   [gait]            sequence, n, injection, gamma_init, cost
//   [operating_point] kind (speed | energy), value
//   [guess]           candidate, candidate2, ... (start states)
//   [rootsearch]      tol, max_iters
//   [continuation]    delta, tol, min_step, max_steps
//   [simulate]        x0, gamma, eps, step, t_max
//   [output]          dir
//
// Every key has a default, so an empty file runs the prismatic monopod at
// average speed 0.3 from the default initial guess.

#include <optional>
#include <string>
#include <vector>

#include "gaitforge/continuation/continuation.hpp"
#include "gaitforge/hybrid/hybrid.hpp"
#include "gaitforge/models/model.hpp"
#include "gaitforge/rootsearch/rootsearch.hpp"
#include "gaitforge/simulate/simulate.hpp"
#include "gaitforge/transcription/residuals.hpp"

namespace gaitforge::io {

struct SimulateSettings {
  std::vector<double> x0;  // empty: first guess candidate
  std::optional<double> gamma;  // unset: gamma_init
  double eps = 0.0;
  simulate::IntegratorOptions integrator;
};

struct RunConfig {
  std::string model = "prismatic-monopod";
  models::ParamSet params;  // overrides only
  std::vector<int> sequence;
  int N = 10;
  transcription::OperatingPoint op;
  hybrid::InjectionKind injection = hybrid::InjectionKind::kMassProportional;
  transcription::CostSpec cost;
  rootsearch::RootSearchConfig rootsearch;
  continuation::ContinuationConfig continuation;
  std::vector<std::vector<double>> candidates;
  SimulateSettings simulate;
  std::string out_dir = "out";

  models::ModelSpec build_model() const;
  transcription::GaitProblem quasi_passive_problem() const;
};

// Defaults of one model: phase sequence, grid size, operating point and the
// default initial guess.
RunConfig default_config(const std::string& model);

// Parses configuration text on top of the defaults of the model it names
// (or `model_override`). Errors carry the offending line and field.
RunConfig parse_config(const std::string& text, const std::optional<std::string>& model_override = {});
RunConfig load_config(const std::string& path, const std::optional<std::string>& model_override = {});

// Referenced phases exist, the sequence closes, N >= 2, guess sizes match.
void validate(const RunConfig& config);

std::vector<double> parse_reals(const std::string& text);

}  // namespace gaitforge::io
