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

#include "gaitforge/rootsearch/rootsearch.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "gaitforge/io/log.hpp"
#include "gaitforge/numerics/errors.hpp"
#include "gaitforge/simulate/simulate.hpp"

namespace gaitforge::rootsearch {

using transcription::DecisionComponents;

std::string NewtonRecord::to_text() const {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << "iter=" << iteration << " res_inf=" << norm_inf
     << " step=" << step << " rank=" << rank << " blocks=";
  for (size_t i = 0; i < block_norms.size(); ++i) os << (i ? "," : "") << block_norms[i];
  return os.str();
}

RootSearchResult find_quasi_passive_gait(const GaitProblem& problem, const Vector& guess,
                                         const RootSearchConfig& config) {
  if (problem.layout.mode != transcription::Mode::kQuasiPassive)
    throw DomainError("find_quasi_passive_gait needs a quasi-passive layout");
  if (!(config.tol > 0.0)) throw ConfigError("root-search tolerance must be positive");
  const int na = problem.layout.size, nh = problem.layout.n_h();
  RootSearchResult res;
  if (na != nh) {
    std::ostringstream os;
    os << "system is " << nh << " x " << na << "; using minimum-norm least-squares steps";
    res.warnings.push_back(os.str());
    io::log_info("rootsearch", os.str());
  }

  Vector a = guess;
  double step = 0.0;
  for (int it = 0;; ++it) {
    const auto jr = transcription::residual_jacobian(problem, a, 0.0);
    const auto report = transcription::make_report(problem, jr.h);
    NewtonRecord rec;
    rec.iteration = it;
    rec.norm_inf = report.norm_inf;
    rec.norm_2 = jr.h.norm();
    rec.step = step;
    for (const auto& b : report.blocks) rec.block_norms.push_back(b.norm_inf);

    if (report.norm_inf < config.tol) {
      res.log.push_back(rec);
      io::log_info("rootsearch", rec.to_text() + " converged");
      res.a = a;
      res.gamma = a(problem.layout.off_gamma);
      res.report = report;
      res.iterations = it;
      if (!(res.gamma > 0.0)) {
        res.warnings.push_back("gamma* <= 0: degenerate conservative solution");
        io::log_info("rootsearch", "warning gamma*=" + std::to_string(res.gamma) + " <= 0");
      }
      return res;
    }
    if (it >= config.max_iters)
      throw ConvergenceError("root search did not converge in " + std::to_string(config.max_iters) +
                                 " iterations (res_inf=" + std::to_string(report.norm_inf) + ")",
                             report.to_text());

    const auto ls = numerics::solve_least_squares(jr.J, -jr.h, config.rank_threshold, true);
    rec.rank = ls.rank;
    res.log.push_back(rec);
    io::log_info("rootsearch", rec.to_text());

    const double norm0 = jr.h.norm();
    double alpha = 1.0;
    bool accepted = false;
    while (alpha >= config.min_step) {
      const Vector trial = a + alpha * ls.x;
      try {
        const Vector ht = transcription::residuals(problem, trial, 0.0);
        if (ht.allFinite() && ht.norm() < norm0) {
          a = trial;
          accepted = true;
          break;
        }
      } catch (const GaitError&) {
        // infeasible trial (e.g. non-positive duration): shorten the step
      }
      alpha *= config.backtrack;
    }
    if (!accepted)
      throw ConvergenceError("line search failed at iteration " + std::to_string(it) +
                                 " (res_inf=" + std::to_string(report.norm_inf) + ")",
                             report.to_text());
    step = alpha;
  }
}

namespace {

std::vector<double> interpolate(const simulate::Segment& seg, double t) {
  const auto& ts = seg.t;
  if (t <= ts.front()) return seg.x.front();
  if (t >= ts.back()) return seg.x.back();
  const auto it = std::upper_bound(ts.begin(), ts.end(), t);
  const size_t k = static_cast<size_t>(it - ts.begin());
  const double w = (t - ts[k - 1]) / (ts[k] - ts[k - 1]);
  std::vector<double> x(seg.x[k].size());
  for (size_t i = 0; i < x.size(); ++i) x[i] = (1.0 - w) * seg.x[k - 1][i] + w * seg.x[k][i];
  return x;
}

}  // namespace

Vector build_guess_from_simulation(const GaitProblem& problem,
                                   const std::vector<std::vector<double>>& candidates,
                                   double gamma_init) {
  if (candidates.empty()) throw GuessError("no guess candidates given");
  const auto& L = problem.layout;
  const simulate::HomotopySetting hom{gamma_init, 0.0, problem.injection};
  const auto free = problem.model.free_param_defaults();
  std::ostringstream failures;
  for (size_t c = 0; c < candidates.size(); ++c) {
    simulate::HybridTrajectory traj;
    try {
      traj = simulate::simulate_stride(problem.model, L.sequence, candidates[c], {}, hom, free);
    } catch (const GaitError& e) {
      failures << "\n  candidate " << c << ": " << e.what();
      continue;
    }
    DecisionComponents comp;
    comp.x0 = candidates[c];
    comp.gamma = gamma_init;
    comp.free = free;
    for (int k = 0; k < L.m; ++k) {
      const auto& seg = traj.segments[static_cast<size_t>(k)];
      const double t0 = seg.t.front(), T = seg.t.back() - seg.t.front();
      comp.durations.push_back(T);
      std::vector<std::vector<double>> nodes;
      for (int i = 0; i <= L.N; ++i) nodes.push_back(interpolate(seg, t0 + T * i / L.N));
      comp.grid.push_back(std::move(nodes));
    }
    comp.grid[0][0] = comp.x0;
    io::log_info("rootsearch", "guess from candidate " + std::to_string(c) + " stride T=" +
                                   std::to_string(traj.duration()));
    return transcription::pack(L, comp);
  }
  throw GuessError("no candidate produced the phase sequence:" + failures.str());
}

}  // namespace gaitforge::rootsearch
