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

#include "gaitforge/simulate/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gaitforge/numerics/errors.hpp"

namespace gaitforge::simulate {

namespace {

const std::vector<double> kNoInput;

using State = std::vector<double>;

State axpy(const State& x, double a, const State& k) {
  State out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] + a * k[i];
  return out;
}

struct Stepper {
  const models::ModelSpec& model;
  int phase;
  const HomotopySetting& hom;
  const std::vector<double>& free;

  State field(const State& x, const std::vector<double>& u) const {
    return hybrid::homotopy_field(model, phase, x, u, hom.gamma, hom.eps, hom.kind, free);
  }

  State rk4(const State& x, const std::vector<double>& u, double h) const {
    const State k1 = field(x, u);
    const State k2 = field(axpy(x, 0.5 * h, k1), u);
    const State k3 = field(axpy(x, 0.5 * h, k2), u);
    const State k4 = field(axpy(x, h, k3), u);
    State out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
  }
};

bool all_finite(const State& x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

const std::vector<double>& ControlSchedule::at(double t) const {
  if (values.empty()) return kNoInput;
  if (interval <= 0.0) return values.front();
  const auto k = static_cast<long>(std::floor(t / interval));
  const long last = static_cast<long>(values.size()) - 1;
  return values[static_cast<size_t>(std::clamp(k, 0L, last))];
}

PhaseResult integrate_phase(const models::ModelSpec& model, int phase, const std::vector<double>& x0,
                            const ControlSchedule& controls, const HomotopySetting& homotopy,
                            const std::vector<double>& free, const IntegratorOptions& options) {
  if (static_cast<int>(x0.size()) != model.n_x()) throw DomainError("integrate_phase: state size mismatch");
  if (options.step <= 0.0) throw DomainError("integrate_phase: step must be positive");
  const auto& spec = model.phase(phase);
  const Stepper stepper{model, phase, homotopy, free};

  PhaseResult res;
  res.segment.phase = phase;
  State x = x0;
  double t = 0.0;
  size_t interval = 0;  // active input interval
  const size_t n_intervals = controls.values.size();
  auto input = [&]() -> const std::vector<double>& {
    return n_intervals == 0 ? kNoInput : controls.values[std::min(interval, n_intervals - 1)];
  };
  auto guards = [&](const State& s, const std::vector<double>& u) {
    std::vector<double> e;
    for (const auto& tr : spec.events) e.push_back(hybrid::event_value_at(model, phase, tr.target, s, u, free));
    return e;
  };
  auto record = [&](double tt, const State& s) {
    res.segment.t.push_back(tt);
    res.segment.x.push_back(s);
    res.segment.u.push_back(input());
  };

  record(t, x);
  std::vector<double> e_prev = guards(x, input());
  std::vector<bool> armed(e_prev.size());
  auto arm = [&](const std::vector<double>& e) {
    for (size_t g = 0; g < e.size(); ++g) armed[g] = armed[g] || e[g] < -options.guard_arm;
  };
  arm(e_prev);
  while (t < options.t_max) {
    double h = std::min(options.step, options.t_max - t);
    bool at_boundary = false;
    if (n_intervals > 1 && interval + 1 < n_intervals) {
      const double boundary = static_cast<double>(interval + 1) * controls.interval;
      if (boundary - t <= h) {
        h = boundary - t;
        at_boundary = true;
      }
    }
    const std::vector<double>& u = input();
    State x_new = stepper.rk4(x, u, h);
    if (!all_finite(x_new))
      throw DivergenceError("non-finite state in phase " + std::to_string(phase) + " at t=" + std::to_string(t));
    const std::vector<double> e_new = guards(x_new, u);

    // earliest sign change among the guards
    double best = std::numeric_limits<double>::infinity();
    int best_target = 0;
    State best_state;
    for (size_t g = 0; g < e_new.size(); ++g) {
      if (!(armed[g] && e_prev[g] < 0.0 && e_new[g] >= 0.0)) continue;
      double lo = 0.0, hi = h;
      State x_hi = x_new;
      while (hi - lo > options.event_tolerance) {
        const double mid = 0.5 * (lo + hi);
        const State xm = stepper.rk4(x, u, mid);
        if (hybrid::event_value_at(model, phase, spec.events[g].target, xm, u, free) >= 0.0) {
          hi = mid;
          x_hi = xm;
        } else {
          lo = mid;
        }
      }
      if (hi < best) {
        best = hi;
        best_target = spec.events[g].target;
        best_state = x_hi;
      }
    }
    if (std::isfinite(best)) {
      res.event_hit = true;
      res.target = best_target;
      res.t_event = t + best;
      res.pre = best_state;
      record(res.t_event, best_state);
      return res;
    }

    t = at_boundary ? static_cast<double>(interval + 1) * controls.interval : t + h;
    if (at_boundary) ++interval;
    x = std::move(x_new);
    e_prev = e_new;
    arm(e_prev);
    record(t, x);
  }
  return res;
}

HybridTrajectory simulate_stride(const models::ModelSpec& model, const std::vector<int>& sequence,
                                 const std::vector<double>& x0,
                                 const std::vector<ControlSchedule>& controls,
                                 const HomotopySetting& homotopy, const std::vector<double>& free,
                                 const IntegratorOptions& options) {
  if (sequence.empty()) throw DomainError("simulate_stride: empty phase sequence");
  const ControlSchedule none;
  HybridTrajectory traj;
  State x = x0;
  double offset = 0.0;
  for (size_t k = 0; k < sequence.size(); ++k) {
    const int phase = sequence[k];
    const int expected = sequence[(k + 1) % sequence.size()];
    const ControlSchedule& cs = k < controls.size() ? controls[k] : none;
    PhaseResult pr = integrate_phase(model, phase, x, cs, homotopy, free, options);
    if (!pr.event_hit)
      throw DivergenceError("no event within t_max=" + std::to_string(options.t_max) + " in phase " +
                            std::to_string(phase));
    if (pr.target != expected)
      throw WrongSequenceError("phase " + std::to_string(phase) + " ended with transition to " +
                               std::to_string(pr.target) + ", expected " + std::to_string(expected));
    for (double& tt : pr.segment.t) tt += offset;
    offset += pr.t_event;

    EventRecord ev;
    ev.t = offset;
    ev.from = phase;
    ev.to = pr.target;
    ev.pre = pr.pre;
    ev.post = hybrid::impact_map(model, phase, pr.target, pr.pre);
    const std::vector<double> q(ev.post.begin(), ev.post.begin() + model.n_q);
    // Feet already in stance keep whatever height they started with.
    const auto& tr = hybrid::find_transition(model, phase, pr.target);
    if (tr.kind == models::EventKind::kTouchDown) {
      const double height = models::foot_height(model, tr.foot, q);
      if (std::abs(height) > 1e-6)
        throw DegeneracyError("foot " + std::to_string(tr.foot) + " is " + std::to_string(height) +
                              " off the ground entering phase " + std::to_string(pr.target));
    }
    x = ev.post;
    traj.segments.push_back(std::move(pr.segment));
    traj.events.push_back(std::move(ev));
  }
  return traj;
}

}  // namespace gaitforge::simulate
