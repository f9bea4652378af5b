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

#include "gaitforge/continuation/continuation.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include <Eigen/LU>

#include "gaitforge/io/log.hpp"
#include "gaitforge/numerics/errors.hpp"

namespace gaitforge::continuation {

namespace {

int n_zeta(const GaitProblem& p) { return p.layout.size + p.layout.n_h(); }

Vector solve_square(const DenseMatrix& A, const Vector& b, const char* what) {
  Eigen::PartialPivLU<DenseMatrix> lu(A);
  const double rc = lu.rcond();
  if (!(rc > 1e-15)) {
    std::ostringstream os;
    os << what << " is singular (rcond " << rc << ")";
    throw FoldError(os.str());
  }
  return lu.solve(b);
}

std::vector<double> durations_of(const GaitProblem& p, const Vector& a) {
  std::vector<double> d;
  for (int k = 0; k < p.layout.m; ++k) d.push_back(a(p.layout.off_T + k));
  return d;
}

HomotopyPoint split(const GaitProblem& p, const Vector& psi) {
  HomotopyPoint pt;
  const int na = p.layout.size;
  pt.a = psi.head(na);
  pt.lambda = psi.segment(na, p.layout.n_h());
  pt.eps = psi(psi.size() - 1);
  return pt;
}

}  // namespace

Vector HomotopyPoint::psi() const {
  Vector v(a.size() + lambda.size() + 1);
  v << a, lambda, eps;
  return v;
}

HomotopySystem homotopy_system(const GaitProblem& p, const Vector& a, const Vector& lambda, double eps,
                               const transcription::AssemblyOptions& opt) {
  const int na = p.layout.size, nh = p.layout.n_h();
  if (lambda.size() != nh) throw DomainError("homotopy_system: multiplier length mismatch");
  const auto jr = transcription::residual_jacobian(p, a, eps, opt);
  const DenseMatrix Hh = transcription::constraint_hessian(p, a, lambda, eps, opt);

  HomotopySystem s;
  s.J = jr.J;
  s.hessian = transcription::cost_hessian(p, a) + Hh.topLeftCorner(na, na);
  s.r.resize(na + nh);
  s.r.head(na) = transcription::cost_gradient(p, a) + jr.J.transpose() * lambda;
  s.r.tail(nh) = jr.h;
  s.R = DenseMatrix::Zero(na + nh, na + nh + 1);
  s.R.topLeftCorner(na, na) = s.hessian;
  s.R.block(0, na, na, nh) = jr.J.transpose();
  s.R.block(0, na + nh, na, 1) = Hh.block(0, na, na, 1);
  s.R.block(na, 0, nh, na) = jr.J;
  s.R.block(na, na + nh, nh, 1) = jr.h_eps;
  return s;
}

Vector homotopy_map(const GaitProblem& p, const Vector& a, const Vector& lambda, double eps) {
  const int na = p.layout.size, nh = p.layout.n_h();
  if (lambda.size() != nh) throw DomainError("homotopy_map: multiplier length mismatch");
  const auto jr = transcription::residual_jacobian(p, a, eps);
  Vector r(na + nh);
  r.head(na) = transcription::cost_gradient(p, a) + jr.J.transpose() * lambda;
  r.tail(nh) = jr.h;
  return r;
}

HomotopyPoint init_from_quasi_passive(const GaitProblem& actuated, const GaitProblem& qp,
                                      const Vector& a_qp) {
  if (actuated.layout.mode != transcription::Mode::kActuated)
    throw DomainError("init_from_quasi_passive: target problem must be in actuated mode");
  HomotopyPoint pt;
  pt.a = transcription::to_actuated(qp.layout, actuated.layout, a_qp);
  pt.eps = 0.0;
  const auto jr = transcription::residual_jacobian(actuated, pt.a, 0.0);
  const Vector g = transcription::cost_gradient(actuated, pt.a);
  pt.lambda = numerics::solve_least_squares(jr.J.transpose(), -g, 1e-12, true).x;
  pt.r_norm = homotopy_map(actuated, pt.a, pt.lambda, 0.0).lpNorm<Eigen::Infinity>();
  return pt;
}

Vector tangent(const DenseMatrix& R, const Vector* previous) {
  Vector p = numerics::null_tangent(R);
  if (previous != nullptr) {
    if (p.dot(*previous) < 0.0) p = -p;
  } else if (p(p.size() - 1) < 0.0) {
    p = -p;
  }
  return p;
}

double reduced_min_eig(const DenseMatrix& H, const DenseMatrix& J) {
  const DenseMatrix Z = numerics::null_space_basis(J);
  if (Z.cols() == 0) return std::numeric_limits<double>::infinity();
  return numerics::min_eig_symmetric(Z.transpose() * H * Z);
}

double second_order_check(const GaitProblem& p, const Vector& a, const Vector& lambda, double eps) {
  const auto s = homotopy_system(p, a, lambda, eps);
  return reduced_min_eig(s.hessian, s.J);
}

CorrectorResult corrector(const GaitProblem& p, const Vector& psi_pred, const Vector& direction,
                          const ContinuationConfig& config) {
  const int nz = n_zeta(p);
  if (psi_pred.size() != nz + 1 || direction.size() != nz + 1)
    throw DomainError("corrector: psi / tangent length mismatch");
  CorrectorResult res;
  Vector psi = psi_pred;
  for (int it = 0;; ++it) {
    HomotopyPoint pt = split(p, psi);
    HomotopySystem sys = homotopy_system(p, pt.a, pt.lambda, pt.eps);
    const double rn = sys.r.lpNorm<Eigen::Infinity>();
    res.norms.push_back(rn);
    if (!std::isfinite(rn)) throw ConvergenceError("corrector diverged (non-finite residual)", "");
    if (rn < config.tol) {
      pt.r_norm = rn;
      res.point = std::move(pt);
      res.system = std::move(sys);
      res.iterations = it;
      return res;
    }
    if (it >= config.max_corrector_iters) {
      std::ostringstream os;
      os << "corrector stopped after " << it << " iterations at ||r||_inf=" << rn;
      throw ConvergenceError(os.str(), "");
    }
    DenseMatrix B(nz + 1, nz + 1);
    B << sys.R, direction.transpose();
    Vector rhs = Vector::Zero(nz + 1);
    rhs.head(nz) = sys.r;
    psi -= solve_square(B, rhs, "bordered corrector matrix");
  }
}

namespace {

// Newton in zeta with eps held fixed (used to land exactly on eps = 1).
CorrectorResult fixed_eps_newton(const GaitProblem& p, const Vector& psi_start, const ContinuationConfig& config) {
  const int nz = n_zeta(p);
  CorrectorResult res;
  Vector psi = psi_start;
  for (int it = 0;; ++it) {
    HomotopyPoint pt = split(p, psi);
    HomotopySystem sys = homotopy_system(p, pt.a, pt.lambda, pt.eps);
    const double rn = sys.r.lpNorm<Eigen::Infinity>();
    res.norms.push_back(rn);
    if (!std::isfinite(rn)) throw ConvergenceError("final Newton diverged (non-finite residual)", "");
    if (rn < config.tol) {
      pt.r_norm = rn;
      res.point = std::move(pt);
      res.system = std::move(sys);
      res.iterations = it;
      return res;
    }
    if (it >= config.max_corrector_iters) {
      std::ostringstream os;
      os << "final Newton stopped after " << it << " iterations at ||r||_inf=" << rn;
      throw ConvergenceError(os.str(), "");
    }
    psi.head(nz) -= solve_square(sys.R.leftCols(nz), sys.r, "homotopy Jacobian at fixed eps");
  }
}

}  // namespace

std::string PathLog::record_text(const PathRecord& r) const {
  std::ostringstream os;
  os << std::scientific << std::setprecision(6) << "step=" << r.step << " eps=" << r.eps
     << " delta=" << r.delta << " r_inf=" << r.r_norm << " cost=" << r.cost << " mu_min=" << r.mu_min
     << " corrector_iters=" << r.corrector_iters;
  for (size_t k = 0; k < r.durations.size(); ++k)
    os << " t_" << (k < phase_names.size() ? phase_names[k] : std::to_string(k)) << "=" << r.durations[k];
  return os.str();
}

std::string PathLog::to_csv() const {
  std::ostringstream os;
  os << "step,eps,delta,r_norm,cost,mu_min,tangent_residual,corrector_iters";
  for (const auto& n : phase_names) os << ",t_" << n;
  os << "\n" << std::setprecision(17);
  for (const auto& r : records) {
    os << r.step << "," << r.eps << "," << r.delta << "," << r.r_norm << "," << r.cost << "," << r.mu_min
       << "," << r.tangent_residual << "," << r.corrector_iters;
    for (double d : r.durations) os << "," << d;
    os << "\n";
  }
  return os.str();
}

ContinuationResult continue_to_actuated(const GaitProblem& p, const HomotopyPoint& start,
                                        const ContinuationConfig& config) {
  if (!(config.delta > 0.0) || !(config.min_step > 0.0) || config.min_step > config.delta)
    throw ConfigError("continuation step sizes must satisfy 0 < min_step <= delta");
  const int nz = n_zeta(p);
  ContinuationResult out;
  PathLog& log = out.log;
  for (int ph : p.layout.sequence) log.phase_names.push_back(p.model.phase(ph).name);

  auto record = [&](const HomotopyPoint& pt, const HomotopySystem& sys, int step, double delta, int iters,
                    double dot) {
    PathRecord r;
    r.step = step;
    r.eps = pt.eps;
    r.delta = delta;
    r.r_norm = pt.r_norm;
    r.cost = transcription::cost(p, pt.a);
    r.mu_min = pt.mu_min;
    r.tangent_residual = (sys.R * pt.p).norm();
    r.tangent_norm = pt.p.norm();
    r.tangent_dot = dot;
    r.corrector_iters = iters;
    r.durations = durations_of(p, pt.a);
    log.records.push_back(r);
    io::log_info("continuation", log.record_text(r));
  };

  // start point
  HomotopyPoint cur = start;
  HomotopySystem sys = homotopy_system(p, cur.a, cur.lambda, cur.eps);
  cur.r_norm = sys.r.lpNorm<Eigen::Infinity>();
  if (!(cur.r_norm < config.tol)) {
    std::ostringstream os;
    os << "start point is not on the solution curve (||r||_inf=" << cur.r_norm << ")";
    throw ConvergenceError(os.str(), "");
  }
  {
    const Vector p0 = numerics::null_tangent(sys.R, config.rank_threshold);
    const double pe = p0(nz);
    if (!(std::abs(pe) > 1e-12))
      throw FoldError("initial tangent has no eps component; the start point is not regular in eps");
    log.initial_determinant_sign = pe > 0.0 ? 1 : -1;
    if (pe < 0.0) {
      log.notes.push_back("determinant orientation points to decreasing eps; following increasing eps");
      io::log_info("continuation", log.notes.back());
    }
    cur.p = pe > 0.0 ? p0 : Vector(-p0);
  }
  cur.mu_min = reduced_min_eig(sys.hessian, sys.J);
  record(cur, sys, 0, 0.0, 0, 1.0);

  double delta = config.delta;
  int successes = 0;
  int step = 0;
  while (cur.eps < 1.0) {
    if (++step > config.max_steps) throw ContinuationStuckError("continuation exceeded max_steps\n" + log.to_csv());
    const Vector psi = cur.psi();
    const double pe = cur.p(nz);
    const bool snap = pe > 0.0 && cur.eps + delta * pe >= 1.0;
    double taken = delta;
    CorrectorResult cr;
    try {
      if (snap) {
        taken = (1.0 - cur.eps) / pe;
        Vector pred = psi + taken * cur.p;
        pred(nz) = 1.0;
        cr = fixed_eps_newton(p, pred, config);
      } else {
        cr = corrector(p, psi + delta * cur.p, cur.p, config);
        if (cr.point.eps > 1.0) {
          Vector landed = cr.point.psi();
          landed(nz) = 1.0;
          cr = fixed_eps_newton(p, landed, config);
        }
      }
    } catch (const GaitError& e) {
      delta = 0.5 * std::min(delta, taken);
      successes = 0;
      io::log_debug("continuation", std::string("step rejected (") + e.what() + "), delta=" + std::to_string(delta));
      if (delta < config.min_step) {
        throw ContinuationStuckError("continuation step fell below " + std::to_string(config.min_step) +
                                     " at eps=" + std::to_string(cur.eps) + ": " + e.what() + "\n" +
                                     log.to_csv());
      }
      continue;
    }

    HomotopyPoint next = std::move(cr.point);
    next.p = tangent(cr.system.R, &cur.p);
    const double dot = next.p.dot(cur.p);
    next.mu_min = reduced_min_eig(cr.system.hessian, cr.system.J);
    if (next.eps < cur.eps) {
      ++log.folds;
      log.notes.push_back("eps decreased at step " + std::to_string(step));
      io::log_info("continuation", "fold: " + log.notes.back());
    }
    const double moved = (next.psi().head(nz) - psi.head(nz)).norm();
    if (moved > 2.0 * taken && !snap) {
      log.notes.push_back("step " + std::to_string(step) + " moved " + std::to_string(moved) + " > 2 delta");
      io::log_debug("continuation", log.notes.back());
    }
    cur = std::move(next);
    record(cur, cr.system, step, taken, cr.iterations, dot);
    if (++successes >= config.grow_after) {
      delta = std::min(delta * config.grow, config.delta);
      successes = 0;
    }
  }
  out.final_point = cur;
  return out;
}

}  // namespace gaitforge::continuation
