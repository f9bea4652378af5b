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

// Constrained phase dynamics, impact maps, virtual energy injection and the
// homotopy vector field
//   xdot = f_i(x, u) + (1 - eps) * f_E(x, gamma).
// All functions are generic in the scalar type and take the model's free
// parameters (e.g. a spring rest angle promoted to an unknown) explicitly.

#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include "gaitforge/models/dynamics.hpp"
#include "gaitforge/models/model.hpp"
#include "gaitforge/numerics/errors.hpp"
#include "gaitforge/numerics/small_matrix.hpp"

namespace gaitforge::hybrid {

using models::ModelSpec;
using numerics::Mat;
using numerics::Vec;

enum class InjectionKind { kEnergyGradient, kNegativeDamping, kMassProportional };

InjectionKind parse_injection(const std::string& name);
std::string injection_name(InjectionKind kind);

template <class S>
void split_state(const ModelSpec& model, const Vec<S>& x, Vec<S>& q, Vec<S>& qd) {
  const auto n = static_cast<std::ptrdiff_t>(model.n_q);
  q.assign(x.begin(), x.begin() + n);
  qd.assign(x.begin() + n, x.begin() + 2 * n);
}

template <class S>
struct PhaseAcceleration {
  Vec<S> qdd;
  Vec<S> lambda;  // contact forces, 2 per contact foot (x, z)
};

// Solves M qdd = n + J^T u + W lambda subject to W^T qdd + Wdot^T qdot = 0.
template <class S>
PhaseAcceleration<S> constrained_acceleration(const ModelSpec& model, const models::PhaseSpec& phase,
                                              const Vec<S>& q, const Vec<S>& qd, const Vec<S>& u,
                                              const Vec<S>& free) {
  const auto kin = models::all_point_kinematics(model, q, qd);
  const Mat<S> M = models::mass_matrix_from(model, kin);
  const Vec<S> f = models::generalized_forces_from(model, kin, q, qd, u, free);
  const Mat<S> L = numerics::cholesky(M, "mass matrix");
  PhaseAcceleration<S> out;
  out.qdd = numerics::cholesky_solve(L, f);
  if (phase.contacts.empty()) return out;

  const auto c = models::constraint_from(model, phase, kin);
  const int nc = c.Wt.rows;
  Mat<S> MinvW = numerics::transpose(c.Wt);
  numerics::cholesky_solve_in_place(L, MinvW);
  const Mat<S> A = numerics::matmul(c.Wt, MinvW);
  Vec<S> rhs = numerics::matvec(c.Wt, out.qdd);
  for (int i = 0; i < nc; ++i) rhs[static_cast<size_t>(i)] = -rhs[static_cast<size_t>(i)] - c.bias[static_cast<size_t>(i)];
  Mat<S> LA;
  try {
    LA = numerics::cholesky(A, "contact operator W^T M^-1 W");
  } catch (const ModelSingularityError& e) {
    throw DegeneracyError(std::string("contact constraints degenerate: ") + e.what());
  }
  out.lambda = numerics::cholesky_solve(LA, rhs);
  const Vec<S> corr = numerics::matvec(MinvW, out.lambda);
  for (int i = 0; i < model.n_q; ++i) out.qdd[static_cast<size_t>(i)] += corr[static_cast<size_t>(i)];
  return out;
}

template <class S>
Vec<S> contact_forces(const ModelSpec& model, int phase_id, const Vec<S>& x, const Vec<S>& u,
                      const Vec<S>& free) {
  Vec<S> q, qd;
  split_state(model, x, q, qd);
  return constrained_acceleration(model, model.phase(phase_id), q, qd, u, free).lambda;
}

// f_i(x, u) = (qdot, qdd).
template <class S>
Vec<S> vector_field(const ModelSpec& model, int phase_id, const Vec<S>& x, const Vec<S>& u,
                    const Vec<S>& free) {
  Vec<S> q, qd;
  split_state(model, x, q, qd);
  const auto acc = constrained_acceleration(model, model.phase(phase_id), q, qd, u, free);
  Vec<S> xd = qd;
  xd.insert(xd.end(), acc.qdd.begin(), acc.qdd.end());
  return xd;
}

template <class S>
Vec<S> virtual_injection(const ModelSpec& model, const Vec<S>& x, const S& gamma,
                         InjectionKind kind, const Vec<S>& free) {
  if (numerics::value_of(gamma) < 0.0) throw DomainError("injection parameter gamma must be >= 0");
  const size_t n = static_cast<size_t>(model.n_q);
  Vec<S> q, qd;
  split_state(model, x, q, qd);
  Vec<S> inc(2 * n, S(0.0));
  switch (kind) {
    case InjectionKind::kMassProportional:
      for (size_t i = 0; i < n; ++i) inc[n + i] = gamma * qd[i];
      break;
    case InjectionKind::kNegativeDamping: {
      const Mat<S> L = numerics::cholesky(models::mass_matrix(model, q), "mass matrix");
      const Vec<S> a = numerics::cholesky_solve(L, qd);
      for (size_t i = 0; i < n; ++i) inc[n + i] = gamma * a[i];
      break;
    }
    case InjectionKind::kEnergyGradient: {
      const Vec<S> dq = models::energy_gradient_q(model, q, qd, free);
      const Vec<S> p = numerics::matvec(models::mass_matrix(model, q), qd);
      for (size_t i = 0; i < n; ++i) {
        inc[i] = gamma * dq[i];
        inc[n + i] = gamma * p[i];
      }
      break;
    }
  }
  return inc;
}

// Power the injection inserts: grad(E) . f_E.
template <class S>
S injected_power(const ModelSpec& model, const Vec<S>& x, const S& gamma, InjectionKind kind,
                 const Vec<S>& free) {
  const size_t n = static_cast<size_t>(model.n_q);
  Vec<S> q, qd;
  split_state(model, x, q, qd);
  S p(0.0);
  switch (kind) {
    case InjectionKind::kMassProportional: {
      const Vec<S> Mqd = numerics::matvec(models::mass_matrix(model, q), qd);
      for (size_t i = 0; i < n; ++i) p += qd[i] * Mqd[i];
      break;
    }
    case InjectionKind::kNegativeDamping:
      for (size_t i = 0; i < n; ++i) p += qd[i] * qd[i];
      break;
    case InjectionKind::kEnergyGradient: {
      const Vec<S> dq = models::energy_gradient_q(model, q, qd, free);
      const Vec<S> Mqd = numerics::matvec(models::mass_matrix(model, q), qd);
      for (size_t i = 0; i < n; ++i) p += dq[i] * dq[i] + Mqd[i] * Mqd[i];
      break;
    }
  }
  return gamma * p;
}

template <class S>
Vec<S> homotopy_field(const ModelSpec& model, int phase_id, const Vec<S>& x, const Vec<S>& u,
                      const S& gamma, const S& eps, InjectionKind kind, const Vec<S>& free) {
  Vec<S> xd = vector_field(model, phase_id, x, u, free);
  if constexpr (std::is_same_v<S, double>) {
    if (eps == 1.0) return xd;
  }
  const Vec<S> inc = virtual_injection(model, x, gamma, kind, free);
  const S scale = 1.0 - eps;
  for (size_t i = 0; i < xd.size(); ++i) xd[i] += scale * inc[i];
  return xd;
}

// Delta_i^j: positions kept, velocities projected onto ker(W_j^T) in the
// M-metric. Identity when phase j has no contacts.
template <class S>
Vec<S> impact_map(const ModelSpec& model, int from_phase, int to_phase, const Vec<S>& x) {
  const auto& from = model.phase(from_phase);
  bool declared = false;
  for (const auto& t : from.events) declared = declared || t.target == to_phase;
  if (!declared)
    throw UnknownEventError("no transition " + std::to_string(from_phase) + " -> " +
                            std::to_string(to_phase) + " in " + model.name);
  const auto& to = model.phase(to_phase);
  if (to.contacts.empty()) return x;
  Vec<S> q, qd;
  split_state(model, x, q, qd);
  const auto kin = models::all_point_kinematics(model, q, qd);
  const Mat<S> M = models::mass_matrix_from(model, kin);
  const auto c = models::constraint_from(model, to, kin);
  const Mat<S> L = numerics::cholesky(M, "mass matrix");
  Mat<S> MinvW = numerics::transpose(c.Wt);
  numerics::cholesky_solve_in_place(L, MinvW);
  const Mat<S> A = numerics::matmul(c.Wt, MinvW);
  Mat<S> LA;
  try {
    LA = numerics::cholesky(A, "impact operator W^T M^-1 W");
  } catch (const ModelSingularityError& e) {
    throw DegeneracyError(std::string("impact map degenerate: ") + e.what());
  }
  const Vec<S> mu = numerics::cholesky_solve(LA, numerics::matvec(c.Wt, qd));
  const Vec<S> dv = numerics::matvec(MinvW, mu);
  Vec<S> out = x;
  const size_t n = static_cast<size_t>(model.n_q);
  for (size_t i = 0; i < n; ++i) out[n + i] = qd[i] - dv[i];
  return out;
}

inline const models::Transition& find_transition(const ModelSpec& model, int from_phase, int to_phase) {
  for (const auto& t : model.phase(from_phase).events)
    if (t.target == to_phase) return t;
  throw UnknownEventError("no transition " + std::to_string(from_phase) + " -> " +
                          std::to_string(to_phase) + " in " + model.name);
}

// e_i^j(x): positive-going zero crossing triggers i -> j. Touch-down uses
// minus the foot height, lift-off minus the vertical contact force of that
// foot in phase i (lambda ordered as returned by contact_forces).
template <class S>
S event_value(const ModelSpec& model, int from_phase, int to_phase, const Vec<S>& x,
              const Vec<S>& lambda) {
  const auto& t = find_transition(model, from_phase, to_phase);
  if (t.kind == models::EventKind::kTouchDown) {
    Vec<S> q, qd;
    split_state(model, x, q, qd);
    return -models::foot_height(model, t.foot, q);
  }
  const auto& contacts = model.phase(from_phase).contacts;
  for (size_t k = 0; k < contacts.size(); ++k) {
    if (contacts[k] == t.foot) {
      if (lambda.size() < 2 * k + 2) throw DomainError("lift-off event needs contact forces");
      return -lambda[2 * k + 1];
    }
  }
  throw UnknownEventError("lift-off foot not in contact in phase " + std::to_string(from_phase));
}

// Same, computing the contact forces from (x, u) when the event needs them.
template <class S>
S event_value_at(const ModelSpec& model, int from_phase, int to_phase, const Vec<S>& x,
                 const Vec<S>& u, const Vec<S>& free) {
  const auto& t = find_transition(model, from_phase, to_phase);
  if (t.kind == models::EventKind::kTouchDown) return event_value(model, from_phase, to_phase, x, Vec<S>{});
  return event_value(model, from_phase, to_phase, x, contact_forces(model, from_phase, x, u, free));
}

}  // namespace gaitforge::hybrid
