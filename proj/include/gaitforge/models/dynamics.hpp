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

// Scalar-generic evaluation of a ModelSpec: kinematics, M(q), generalized
// forces, contact constraints and energies. S is double, Dual<N> or Dual2<N>.

#include <cstddef>
#include <vector>

#include "gaitforge/models/model.hpp"
#include "gaitforge/numerics/dual.hpp"
#include "gaitforge/numerics/small_matrix.hpp"

namespace gaitforge::models {

using numerics::Mat;
using numerics::Vec;

template <class S>
struct PointKinematics {
  S px{0.0}, pz{0.0};
  Mat<S> J;          // 2 x n_q, d(position)/dq
  S bias_x{0.0}, bias_z{0.0};  // Jdot * qdot
};

namespace detail {

template <class S>
S dot(const std::vector<double>& c, const Vec<S>& v) {
  S s(0.0);
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0.0) s += c[i] * v[i];
  return s;
}

}  // namespace detail

template <class S>
PointKinematics<S> point_kinematics(const ModelSpec& model, int point, const Vec<S>& q,
                                    const Vec<S>& qd) {
  const int n = model.n_q;
  PointKinematics<S> k;
  k.J = Mat<S>(2, n);
  k.px = q[0];
  k.pz = q[1];
  k.J(0, 0) = S(1.0);
  k.J(1, 1) = S(1.0);
  for (const ChainTerm& t : model.points[static_cast<size_t>(point)].terms) {
    const S theta = detail::dot(t.angle, q);
    const S theta_d = detail::dot(t.angle, qd);
    S ax(t.local_x), az(t.local_z), axd(0.0), azd(0.0);
    if (!t.local_x_q.empty()) {
      ax += detail::dot(t.local_x_q, q);
      axd = detail::dot(t.local_x_q, qd);
    }
    if (!t.local_z_q.empty()) {
      az += detail::dot(t.local_z_q, q);
      azd = detail::dot(t.local_z_q, qd);
    }
    const S c = cos(theta);
    const S s = sin(theta);
    k.px += c * ax - s * az;
    k.pz += s * ax + c * az;
    // d/dq_j: Rot * (Skew(a) c_j + A_j), Skew(a) = (-a_z, a_x).
    for (int j = 0; j < n; ++j) {
      const double cj = t.angle[static_cast<size_t>(j)];
      const double axj = t.local_x_q.empty() ? 0.0 : t.local_x_q[static_cast<size_t>(j)];
      const double azj = t.local_z_q.empty() ? 0.0 : t.local_z_q[static_cast<size_t>(j)];
      if (cj == 0.0 && axj == 0.0 && azj == 0.0) continue;
      const S lx = -az * cj + axj;
      const S lz = ax * cj + azj;
      k.J(0, j) += c * lx - s * lz;
      k.J(1, j) += s * lx + c * lz;
    }
    // Rot * (-a thetad^2 + 2 Skew(adot) thetad)
    const S td2 = theta_d * theta_d;
    const S bx = -ax * td2 - 2.0 * azd * theta_d;
    const S bz = -az * td2 + 2.0 * axd * theta_d;
    k.bias_x += c * bx - s * bz;
    k.bias_z += s * bx + c * bz;
  }
  return k;
}

template <class S>
std::vector<PointKinematics<S>> all_point_kinematics(const ModelSpec& model, const Vec<S>& q,
                                                     const Vec<S>& qd) {
  std::vector<PointKinematics<S>> out;
  out.reserve(model.points.size());
  for (size_t p = 0; p < model.points.size(); ++p)
    out.push_back(point_kinematics(model, static_cast<int>(p), q, qd));
  return out;
}

template <class S>
S spring_rest(const SpringSpec& sp, const Vec<S>& free) {
  if (sp.rest_free_param >= 0) return free[static_cast<size_t>(sp.rest_free_param)];
  return S(sp.rest);
}

template <class S>
Mat<S> mass_matrix_from(const ModelSpec& model, const std::vector<PointKinematics<S>>& kin) {
  const int n = model.n_q;
  Mat<S> M(n, n);
  for (const BodySpec& b : model.bodies) {
    const Mat<S>& J = kin[static_cast<size_t>(b.point)].J;
    if (b.mass != 0.0) {
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          const S v = b.mass * (J(0, i) * J(0, j) + J(1, i) * J(1, j));
          M(i, j) += v;
        }
      }
    }
    if (b.inertia != 0.0) {
      for (int i = 0; i < n; ++i) {
        const double ci = b.angle[static_cast<size_t>(i)];
        if (ci == 0.0) continue;
        for (int j = i; j < n; ++j) {
          const double cj = b.angle[static_cast<size_t>(j)];
          if (cj != 0.0) M(i, j) += b.inertia * ci * cj;
        }
      }
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) M(i, j) = M(j, i);
  return M;
}

template <class S>
Mat<S> mass_matrix(const ModelSpec& model, const Vec<S>& q) {
  const Vec<S> qd(static_cast<size_t>(model.n_q), S(0.0));
  return mass_matrix_from(model, all_point_kinematics(model, q, qd));
}

// Generalized force of the inputs alone: J^T u for parallel torques,
// k u c for series-elastic springs (the u-dependent part of -dV_S/dq).
template <class S>
Vec<S> actuation_forces(const ModelSpec& model, const Vec<S>& u) {
  Vec<S> f(static_cast<size_t>(model.n_q), S(0.0));
  if (u.empty()) return f;
  if (model.actuation == ActuationKind::kParallelTorque) {
    for (int j = 0; j < model.n_u; ++j) {
      const auto& c = model.input_coord[static_cast<size_t>(j)];
      for (int i = 0; i < model.n_q; ++i)
        if (c[static_cast<size_t>(i)] != 0.0) f[static_cast<size_t>(i)] += c[static_cast<size_t>(i)] * u[static_cast<size_t>(j)];
    }
  } else {
    for (const SpringSpec& sp : model.springs) {
      if (sp.series_input < 0) continue;
      const S tau = sp.stiffness * u[static_cast<size_t>(sp.series_input)];
      for (int i = 0; i < model.n_q; ++i)
        if (sp.coord[static_cast<size_t>(i)] != 0.0) f[static_cast<size_t>(i)] += sp.coord[static_cast<size_t>(i)] * tau;
    }
  }
  return f;
}

// n(q, qdot) + J^T u: Coriolis/centrifugal, gravity, springs, dampers and
// actuation. Empty u means zero input.
template <class S>
Vec<S> generalized_forces_from(const ModelSpec& model, const std::vector<PointKinematics<S>>& kin,
                               const Vec<S>& q, const Vec<S>& qd, const Vec<S>& u,
                               const Vec<S>& free) {
  const int n = model.n_q;
  Vec<S> f(static_cast<size_t>(n), S(0.0));
  for (const BodySpec& b : model.bodies) {
    if (b.mass == 0.0) continue;
    const PointKinematics<S>& k = kin[static_cast<size_t>(b.point)];
    const S bx = b.mass * k.bias_x;
    const S bz = b.mass * (k.bias_z + model.gravity);
    for (int i = 0; i < n; ++i) f[static_cast<size_t>(i)] -= k.J(0, i) * bx + k.J(1, i) * bz;
  }
  for (const SpringSpec& sp : model.springs) {
    const S tau = sp.stiffness * (spring_rest(sp, free) - detail::dot(sp.coord, q));
    const std::vector<double>& b = sp.damper();
    const S damp = sp.damping * detail::dot(b, qd);
    for (int i = 0; i < n; ++i) {
      const auto ii = static_cast<size_t>(i);
      if (sp.coord[ii] != 0.0) f[ii] += sp.coord[ii] * tau;
      if (b[ii] != 0.0) f[ii] -= b[ii] * damp;
    }
  }
  const Vec<S> fa = actuation_forces(model, u);
  for (int i = 0; i < n; ++i) f[static_cast<size_t>(i)] += fa[static_cast<size_t>(i)];
  return f;
}

template <class S>
Vec<S> generalized_forces(const ModelSpec& model, const Vec<S>& q, const Vec<S>& qd,
                          const Vec<S>& u, const Vec<S>& free) {
  return generalized_forces_from(model, all_point_kinematics(model, q, qd), q, qd, u, free);
}

// Holonomic contact constraint of a phase: g (2 per contact foot, x then z),
// W^T = dg/dq and the velocity-product term Wdot^T qdot.
template <class S>
struct Constraint {
  Vec<S> g;
  Mat<S> Wt;  // n_c x n_q
  Vec<S> bias;
};

template <class S>
Constraint<S> constraint_from(const ModelSpec& model, const PhaseSpec& phase,
                              const std::vector<PointKinematics<S>>& kin) {
  const int nc = 2 * static_cast<int>(phase.contacts.size());
  Constraint<S> c;
  c.g.resize(static_cast<size_t>(nc));
  c.bias.resize(static_cast<size_t>(nc));
  c.Wt = Mat<S>(nc, model.n_q);
  for (size_t f = 0; f < phase.contacts.size(); ++f) {
    const auto& k = kin[static_cast<size_t>(model.feet[static_cast<size_t>(phase.contacts[f])])];
    const int r = 2 * static_cast<int>(f);
    c.g[static_cast<size_t>(r)] = k.px;
    c.g[static_cast<size_t>(r + 1)] = k.pz;
    c.bias[static_cast<size_t>(r)] = k.bias_x;
    c.bias[static_cast<size_t>(r + 1)] = k.bias_z;
    for (int j = 0; j < model.n_q; ++j) {
      c.Wt(r, j) = k.J(0, j);
      c.Wt(r + 1, j) = k.J(1, j);
    }
  }
  return c;
}

template <class S>
Constraint<S> constraint_and_jacobian(const ModelSpec& model, int phase_id, const Vec<S>& q,
                                      const Vec<S>& qd) {
  return constraint_from(model, model.phase(phase_id), all_point_kinematics(model, q, qd));
}

template <class S>
S foot_height(const ModelSpec& model, int foot, const Vec<S>& q) {
  const Vec<S> qd(static_cast<size_t>(model.n_q), S(0.0));
  return point_kinematics(model, model.feet[static_cast<size_t>(foot)], q, qd).pz;
}

// ---- energies (springs evaluated with zero input) -------------------------

template <class S>
S kinetic_energy(const ModelSpec& model, const Vec<S>& q, const Vec<S>& qd) {
  const Mat<S> M = mass_matrix(model, q);
  const Vec<S> Mqd = numerics::matvec(M, qd);
  S t(0.0);
  for (int i = 0; i < model.n_q; ++i) t += qd[static_cast<size_t>(i)] * Mqd[static_cast<size_t>(i)];
  return 0.5 * t;
}

template <class S>
S potential_energy(const ModelSpec& model, const Vec<S>& q, const Vec<S>& free) {
  const Vec<S> qd(static_cast<size_t>(model.n_q), S(0.0));
  S v(0.0);
  for (const BodySpec& b : model.bodies) {
    if (b.mass == 0.0) continue;
    v += b.mass * model.gravity * point_kinematics(model, b.point, q, qd).pz;
  }
  for (const SpringSpec& sp : model.springs) {
    const S d = spring_rest(sp, free) - detail::dot(sp.coord, q);
    v += 0.5 * sp.stiffness * d * d;
  }
  return v;
}

template <class S>
S total_energy(const ModelSpec& model, const Vec<S>& x, const Vec<S>& free) {
  const size_t n = static_cast<size_t>(model.n_q);
  const Vec<S> q(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
  const Vec<S> qd(x.begin() + static_cast<std::ptrdiff_t>(n), x.end());
  return kinetic_energy(model, q, qd) + potential_energy(model, q, free);
}

// dE/dq at fixed qdot (used by the gradient-of-energy injection).
template <class S>
Vec<S> energy_gradient_q(const ModelSpec& model, const Vec<S>& q, const Vec<S>& qd,
                         const Vec<S>& free) {
  const int n = model.n_q;
  Vec<S> grad(static_cast<size_t>(n), S(0.0));
  for (const BodySpec& b : model.bodies) {
    if (b.mass == 0.0) continue;
    const PointKinematics<S> k = point_kinematics(model, b.point, q, qd);
    // velocity of the point
    S vx(0.0), vz(0.0);
    for (int j = 0; j < n; ++j) {
      vx += k.J(0, j) * qd[static_cast<size_t>(j)];
      vz += k.J(1, j) * qd[static_cast<size_t>(j)];
    }
    // dv/dq_j accumulated per chain term
    for (const ChainTerm& t : model.points[static_cast<size_t>(b.point)].terms) {
      const S theta = detail::dot(t.angle, q);
      const S theta_d = detail::dot(t.angle, qd);
      S ax(t.local_x), az(t.local_z), axd(0.0), azd(0.0);
      if (!t.local_x_q.empty()) {
        ax += detail::dot(t.local_x_q, q);
        axd = detail::dot(t.local_x_q, qd);
      }
      if (!t.local_z_q.empty()) {
        az += detail::dot(t.local_z_q, q);
        azd = detail::dot(t.local_z_q, qd);
      }
      const S c = cos(theta);
      const S s = sin(theta);
      // local velocity l = Skew(a) thetad + adot
      const S lx = -az * theta_d + axd;
      const S lz = ax * theta_d + azd;
      for (int j = 0; j < n; ++j) {
        const double cj = t.angle[static_cast<size_t>(j)];
        const double axj = t.local_x_q.empty() ? 0.0 : t.local_x_q[static_cast<size_t>(j)];
        const double azj = t.local_z_q.empty() ? 0.0 : t.local_z_q[static_cast<size_t>(j)];
        if (cj == 0.0 && axj == 0.0 && azj == 0.0) continue;
        const S mx = -lz * cj - azj * theta_d;
        const S mz = lx * cj + axj * theta_d;
        const S dvx = c * mx - s * mz;
        const S dvz = s * mx + c * mz;
        grad[static_cast<size_t>(j)] += b.mass * (vx * dvx + vz * dvz);
      }
    }
    for (int j = 0; j < n; ++j)
      grad[static_cast<size_t>(j)] += b.mass * model.gravity * k.J(1, j);
  }
  for (const SpringSpec& sp : model.springs) {
    const S d = spring_rest(sp, free) - detail::dot(sp.coord, q);
    for (int j = 0; j < n; ++j)
      if (sp.coord[static_cast<size_t>(j)] != 0.0)
        grad[static_cast<size_t>(j)] -= sp.stiffness * d * sp.coord[static_cast<size_t>(j)];
  }
  return grad;
}

}  // namespace gaitforge::models
