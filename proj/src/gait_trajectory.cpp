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

#include "gaitforge/transcription/gait_trajectory.hpp"

#include "gaitforge/hybrid/hybrid.hpp"

namespace gaitforge::transcription {

double injection_gamma(const GaitProblem& p, const Vector& a) {
  return p.layout.off_gamma >= 0 ? a(p.layout.off_gamma) : p.gamma;
}

std::vector<simulate::ControlSchedule> control_schedules(const GaitProblem& p, const Vector& a) {
  std::vector<simulate::ControlSchedule> out;
  if (p.layout.mode != Mode::kActuated) return out;
  const DecisionComponents c = unpack(p.layout, a);
  for (int k = 0; k < p.layout.m; ++k) {
    simulate::ControlSchedule s;
    s.interval = c.durations[static_cast<size_t>(k)] / p.layout.N;
    s.values = c.xi[static_cast<size_t>(k)];
    out.push_back(std::move(s));
  }
  return out;
}

simulate::HybridTrajectory collocation_trajectory(const GaitProblem& p, const Vector& a, double eps) {
  const DecisionLayout& L = p.layout;
  const DecisionComponents c = unpack(L, a);
  const double gamma = injection_gamma(p, a);
  const size_t nx = static_cast<size_t>(L.n_x());
  const std::vector<double> zero_u(static_cast<size_t>(L.n_u), 0.0);

  simulate::HybridTrajectory traj;
  double t0 = 0.0;
  for (int k = 0; k < L.m; ++k) {
    const size_t kk = static_cast<size_t>(k);
    const int phase = L.sequence[kk];
    const double T = c.durations[kk];
    const double h = T / L.N;
    simulate::Segment seg;
    seg.phase = phase;
    for (int i = 0; i < L.N; ++i) {
      const auto& xa = c.grid[kk][static_cast<size_t>(i)];
      const auto& xb = c.grid[kk][static_cast<size_t>(i + 1)];
      const std::vector<double>& u = L.mode == Mode::kActuated ? c.xi[kk][static_cast<size_t>(i)] : zero_u;
      const auto fa = hybrid::homotopy_field(p.model, phase, xa, u, gamma, eps, p.injection, c.free);
      const auto fb = hybrid::homotopy_field(p.model, phase, xb, u, gamma, eps, p.injection, c.free);
      std::vector<double> xm(nx);
      for (size_t s = 0; s < nx; ++s) xm[s] = 0.5 * (xa[s] + xb[s]) + h / 8.0 * (fa[s] - fb[s]);
      seg.t.push_back(t0 + i * h);
      seg.x.push_back(xa);
      seg.u.push_back(u);
      seg.t.push_back(t0 + (i + 0.5) * h);
      seg.x.push_back(std::move(xm));
      seg.u.push_back(u);
    }
    seg.t.push_back(t0 + T);
    seg.x.push_back(c.grid[kk][static_cast<size_t>(L.N)]);
    seg.u.push_back(seg.u.back());
    t0 += T;

    simulate::EventRecord ev;
    ev.t = t0;
    ev.from = phase;
    ev.to = L.sequence[static_cast<size_t>((k + 1) % L.m)];
    ev.pre = seg.x.back();
    ev.post = hybrid::impact_map(p.model, ev.from, ev.to, ev.pre);
    traj.segments.push_back(std::move(seg));
    traj.events.push_back(std::move(ev));
  }
  return traj;
}

}  // namespace gaitforge::transcription
