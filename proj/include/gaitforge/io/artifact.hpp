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

// Gait artifact: a JSON document carrying everything needed to rebuild the
// problem (model, overrides, sequence, grid, mode, operating point,
// injection, frozen gamma), the packed decision vector and, for actuated
// gaits, the multipliers. A 64-bit FNV-1a checksum over the canonical dump
// of the other fields guards against corruption.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gaitforge/io/config.hpp"
#include "gaitforge/transcription/residuals.hpp"

namespace gaitforge::io {

// Corrupted or inconsistent artifact.
class ArtifactError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

std::uint64_t fnv1a64(std::string_view data);

struct GaitArtifact {
  std::string model;
  models::ParamSet params;
  std::vector<int> sequence;
  int N = 0;
  transcription::Mode mode = transcription::Mode::kQuasiPassive;
  transcription::OperatingPoint op;
  hybrid::InjectionKind injection = hybrid::InjectionKind::kMassProportional;
  std::string cost = "xi-squared";
  double gamma = 0.0;  // injection parameter of the gait
  double eps = 0.0;
  std::string layout;  // DecisionLayout::describe() of the rebuilt problem
  std::vector<double> a;
  std::vector<double> lambda;  // empty for quasi-passive gaits

  transcription::GaitProblem problem() const;
};

GaitArtifact make_artifact(const RunConfig& config, const transcription::GaitProblem& p,
                           const numerics::Vector& a, double eps, const numerics::Vector& lambda = {});

std::string to_text(const GaitArtifact& g);
GaitArtifact from_text(const std::string& text);

void save_artifact(const GaitArtifact& g, const std::string& path);
GaitArtifact load_artifact(const std::string& path);

}  // namespace gaitforge::io
