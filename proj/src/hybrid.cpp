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
#include <cmath>
#include <string>

#include "gaitforge/hybrid/energy_audit.hpp"
#include "gaitforge/hybrid/hybrid.hpp"

namespace gaitforge::hybrid {

InjectionKind parse_injection(const std::string& name) {
  if (name == "energy-gradient" || name == "energy-grad") return InjectionKind::kEnergyGradient;
  if (name == "negative-damping" || name == "neg-damping") return InjectionKind::kNegativeDamping;
  if (name == "mass-proportional" || name == "mass-prop") return InjectionKind::kMassProportional;
  throw ConfigError("unknown injection kind '" + name + "' (mass-prop, neg-damping, energy-grad)");
}

std::string injection_name(InjectionKind kind) {
  switch (kind) {
    case InjectionKind::kEnergyGradient: return "energy-gradient";
    case InjectionKind::kNegativeDamping: return "negative-damping";
    case InjectionKind::kMassProportional: return "mass-proportional";
  }
  return "unknown";
}

namespace {

struct Powers {
  double injected = 0.0;
  double dissipated = 0.0;
  double actuator = 0.0;
};

Powers powers_at(const ModelSpec& model, const std::vector<double>& x, const std::vector<double>& u,
                 double gamma, double eps, InjectionKind kind, const std::vector<double>& free) {
  const size_t n = static_cast<size_t>(model.n_q);
  const std::vector<double> qd(x.begin() + static_cast<std::ptrdiff_t>(n), x.end());
  Powers p;
  if (eps != 1.0 && gamma != 0.0) p.injected = (1.0 - eps) * injected_power(model, x, gamma, kind, free);
  for (const auto& sp : model.springs) {
    double rate = 0.0;
    for (size_t i = 0; i < n; ++i) rate += sp.damper()[i] * qd[i];
    p.dissipated += sp.damping * rate * rate;
  }
  if (!u.empty()) {
    const std::vector<double> fa = models::actuation_forces(model, u);
    for (size_t i = 0; i < n; ++i) p.actuator += qd[i] * fa[i];
  }
  return p;
}

bool uniform(const std::vector<double>& t) {
  if (t.size() < 3) return false;
  const double h = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  const double tol = 1e-9 * std::max(1.0, std::abs(t.back() - t.front()));
  for (size_t k = 1; k < t.size(); ++k)
    if (std::abs((t[k] - t[k - 1]) - h) > tol) return false;
  return true;
}

}  // namespace

EnergyAudit stride_energy_audit(const ModelSpec& model, const simulate::HybridTrajectory& traj,
                                double gamma, double eps, InjectionKind kind,
                                const std::vector<double>& free) {
  EnergyAudit a;
  if (traj.segments.empty()) return a;
  a.energy_start = models::total_energy(model, traj.segments.front().x.front(), free);
  const size_t n = static_cast<size_t>(model.n_q);
  const std::vector<double> none;

  for (const auto& seg : traj.segments) {
    const size_t ns = seg.t.size();
    if (ns < 2) continue;
    auto input = [&](size_t k) -> const std::vector<double>& {
      return seg.u.empty() ? none : seg.u[std::min(k, seg.u.size() - 1)];
    };
    // Simpson panels need constant input across both halves.
    bool simpson = ns % 2 == 1 && uniform(seg.t);
    for (size_t k = 0; simpson && k + 2 < ns; k += 2)
      simpson = input(k) == input(k + 1);
    a.simpson = a.simpson && simpson;

    auto accumulate = [&](const Powers& p, double w) {
      a.injected += w * p.injected;
      a.dissipated += w * p.dissipated;
      a.actuator += w * p.actuator;
    };
    if (simpson) {
      for (size_t k = 0; k + 2 < ns; k += 2) {
        const double h = seg.t[k + 2] - seg.t[k];
        const auto& u = input(k);
        accumulate(powers_at(model, seg.x[k], u, gamma, eps, kind, free), h / 6.0);
        accumulate(powers_at(model, seg.x[k + 1], u, gamma, eps, kind, free), 4.0 * h / 6.0);
        accumulate(powers_at(model, seg.x[k + 2], u, gamma, eps, kind, free), h / 6.0);
      }
    } else {
      for (size_t k = 0; k + 1 < ns; ++k) {
        const double h = seg.t[k + 1] - seg.t[k];
        const auto& u = input(k);
        accumulate(powers_at(model, seg.x[k], u, gamma, eps, kind, free), 0.5 * h);
        accumulate(powers_at(model, seg.x[k + 1], u, gamma, eps, kind, free), 0.5 * h);
      }
    }

    if (!model.phase(seg.phase).contacts.empty()) {
      for (const auto& x : seg.x) {
        const std::vector<double> q(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
        const std::vector<double> qd(x.begin() + static_cast<std::ptrdiff_t>(n), x.end());
        const auto c = models::constraint_and_jacobian(model, seg.phase, q, qd);
        for (double v : numerics::matvec(c.Wt, qd)) a.constraint_drift = std::max(a.constraint_drift, std::abs(v));
      }
    }
  }

  for (const auto& ev : traj.events)
    a.impact_loss += models::total_energy(model, ev.pre, free) - models::total_energy(model, ev.post, free);
  const auto& last = traj.events.size() >= traj.segments.size() && !traj.events.empty()
                         ? traj.events.back().post
                         : traj.segments.back().x.back();
  a.energy_end = models::total_energy(model, last, free);
  return a;
}

}  // namespace gaitforge::hybrid
