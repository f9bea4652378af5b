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

#include "gaitforge/numerics/linalg.hpp"
#include "gaitforge/transcription/residuals.hpp"

namespace gaitforge::rootsearch {

using numerics::Vector;
using transcription::GaitProblem;

struct RootSearchConfig {
  double tol = 1e-8;         // on ||h||_inf
  int max_iters = 200;
  double backtrack = 0.5;
  double min_step = 9.5367431640625e-07;  // 2^-20
  double gamma_init = 0.01;
  int N = 10;
  double rank_threshold = 1e-12;
};

struct NewtonRecord {
  int iteration = 0;
  double norm_inf = 0.0;
  double norm_2 = 0.0;  // line-search merit
  double step = 0.0;  // accepted line-search factor
  int rank = 0;
  std::vector<double> block_norms;
  std::string to_text() const;
};

struct RootSearchResult {
  Vector a;
  double gamma = 0.0;
  transcription::ResidualReport report;
  int iterations = 0;
  std::vector<NewtonRecord> log;
  std::vector<std::string> warnings;
};

// Damped Newton on h(a, eps = 0) = 0 in quasi-passive mode. Steps are
// minimum-norm least-squares solutions, so a non-square system (free model
// parameters) is handled the same way.
RootSearchResult find_quasi_passive_gait(const GaitProblem& problem, const Vector& guess,
                                         const RootSearchConfig& config = {});

// Simulates each candidate start state at gamma_init (eps = 0, no input) and
// resamples the first stride that follows the problem's phase sequence onto
// the collocation grid.
Vector build_guess_from_simulation(const GaitProblem& problem,
                                   const std::vector<std::vector<double>>& candidates,
                                   double gamma_init);

}  // namespace gaitforge::rootsearch
