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

// Acceptance suite. Prints one PASS/FAIL line per criterion.
//
//   gaitforge_acceptance [--criterion N]... [--known-red N]...
//
// Without --criterion every criterion runs. The exit status is non-zero when
// a criterion fails, unless it was listed with --known-red.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gaitforge/continuation/continuation.hpp"
#include "gaitforge/hybrid/energy_audit.hpp"
#include "gaitforge/hybrid/hybrid.hpp"
#include "gaitforge/io/config.hpp"
#include "gaitforge/models/dynamics.hpp"
#include "gaitforge/numerics/derivatives.hpp"
#include "gaitforge/rootsearch/rootsearch.hpp"
#include "gaitforge/simulate/simulate.hpp"
#include "gaitforge/transcription/gait_trajectory.hpp"
#include "gaitforge/transcription/layout.hpp"
#include "gaitforge/transcription/residuals.hpp"

namespace gf = gaitforge;
using gf::numerics::DenseMatrix;
using gf::numerics::Vector;
using gf::transcription::GaitProblem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

struct Verdict {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "!") + what;
  }
};

// ---------------------------------------------------------------------------
// Converged gaits, cached per (model, N).

struct Gait {
  gf::io::RunConfig cfg;
  GaitProblem p;
  gf::rootsearch::RootSearchResult r;
  double seconds = 0.0;
};

const Gait& gait(const std::string& model, int N = 0) {
  static std::map<std::pair<std::string, int>, Gait> cache;
  auto cfg = gf::io::default_config(model);
  if (N > 0) cfg.N = N;
  const auto key = std::make_pair(model, cfg.N);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Gait g;
  g.cfg = cfg;
  const auto t0 = Clock::now();
  g.p = cfg.quasi_passive_problem();
  const Vector a0 = gf::rootsearch::build_guess_from_simulation(g.p, cfg.candidates, cfg.rootsearch.gamma_init);
  g.r = gf::rootsearch::find_quasi_passive_gait(g.p, a0, cfg.rootsearch);
  g.seconds = seconds_since(t0);
  return cache.emplace(key, std::move(g)).first->second;
}

struct Path {
  GaitProblem act;
  gf::continuation::ContinuationResult res;
  double seconds = 0.0;
};

// Prismatic continuation at delta 0.5 from the N=10 quasi-passive gait.
const Path& prismatic_path() {
  static const Path path = [] {
    Path out;
    const auto t0 = Clock::now();
    const Gait& g = gait("prismatic-monopod");
    out.act = gf::transcription::actuated_problem(g.p, g.r.gamma);
    const auto start = gf::continuation::init_from_quasi_passive(out.act, g.p, g.r.a);
    auto cfg = g.cfg.continuation;
    cfg.delta = 0.5;
    out.res = gf::continuation::continue_to_actuated(out.act, start, cfg);
    out.seconds = seconds_since(t0);
    return out;
  }();
  return path;
}

// ---------------------------------------------------------------------------
// 1-3: quasi-passive reproduction

Verdict criterion_1() {
  const Gait& g = gait("prismatic-monopod");
  const auto& L = g.p.layout;
  const double z0 = g.r.a[L.off_x0 + 1], xd0 = g.r.a[L.off_x0 + 5];
  Verdict v;
  v.require(g.r.report.norm_inf < 1e-8, "|h|inf=" + num(g.r.report.norm_inf, 3));
  v.require(g.r.gamma >= 0.4266 && g.r.gamma <= 0.4666, "gamma=" + num(g.r.gamma, 5) + " in [0.4266,0.4666]");
  v.require(z0 >= 0.9613 && z0 <= 0.9813, "z0=" + num(z0, 5) + " in [0.9613,0.9813]");
  v.require(xd0 >= 0.3635 && xd0 <= 0.4035, "xd0=" + num(xd0, 5) + " in [0.3635,0.4035]");
  v.require(g.seconds < 60.0, "t=" + num(g.seconds, 3) + "s < 60s");
  return v;
}

Verdict criterion_2() {
  const Gait& g = gait("segmented-monopod");
  const double a01 = g.r.a[g.p.layout.off_free];
  Verdict v;
  v.require(g.r.report.norm_inf < 1e-8, "|h|inf=" + num(g.r.report.norm_inf, 3));
  v.require(g.r.gamma >= 0.8056 && g.r.gamma <= 0.8656, "gamma=" + num(g.r.gamma, 5) + " in [0.8056,0.8656]");
  v.require(a01 >= -0.1861 && a01 <= -0.1661, "alpha01=" + num(a01, 5) + " in [-0.1861,-0.1661]");
  v.require(g.seconds < 180.0, "t=" + num(g.seconds, 3) + "s < 180s");
  return v;
}

Verdict criterion_3() {
  const Gait& g = gait("sagittal-quadruped");
  Verdict v;
  v.require(g.r.report.norm_inf < 1e-8, "|h|inf=" + num(g.r.report.norm_inf, 3));
  v.require(g.r.gamma >= 0.6610 && g.r.gamma <= 0.7210, "gamma=" + num(g.r.gamma, 5) + " in [0.6610,0.7210]");
  v.require(g.seconds < 600.0, "t=" + num(g.seconds, 3) + "s < 600s");
  return v;
}

// ---------------------------------------------------------------------------
// 4: continuation

Verdict criterion_4() {
  const Path& path = prismatic_path();
  const auto& recs = path.res.log.records;
  const auto& fin = path.res.final_point;
  double mu = std::numeric_limits<double>::infinity();
  for (const auto& r : recs) mu = std::min(mu, r.mu_min);
  const double c1 = gf::transcription::cost(path.act, fin.a);
  Verdict v;
  v.require(fin.eps == 1.0, "eps_end=" + num(fin.eps, 17));
  v.require(fin.r_norm < 1e-6, "|r|inf=" + num(fin.r_norm, 3));
  v.require(!recs.empty() && recs.front().cost == 0.0, "c(0)=" + num(recs.empty() ? -1 : recs.front().cost));
  v.require(c1 > 0.0, "c(1)=" + num(c1, 5));
  v.require(mu > 0.0, "min mu_min=" + num(mu, 3) + " over " + std::to_string(recs.size()) + " points");
  v.require(path.seconds < 600.0, "t=" + num(path.seconds, 3) + "s < 600s");
  return v;
}

// ---------------------------------------------------------------------------
// 5: energy balance

gf::hybrid::EnergyAudit audit(const GaitProblem& p, const Vector& a, double eps) {
  const auto traj = gf::transcription::collocation_trajectory(p, a, eps);
  const auto c = gf::transcription::unpack(p.layout, a);
  return gf::hybrid::stride_energy_audit(p.model, traj, gf::transcription::injection_gamma(p, a), eps,
                                         p.injection, c.free);
}

Verdict criterion_5() {
  Verdict v;
  for (const std::string m : {"prismatic-monopod", "segmented-monopod", "sagittal-quadruped"}) {
    const Gait& g = gait(m);
    const auto au = audit(g.p, g.r.a, 0.0);
    const double gap = au.injected - au.dissipated - au.impact_loss;
    v.require(std::abs(gap) < 1e-3, m + " qp |Einj-Ediss-Eimp|=" + num(std::abs(gap), 3));
  }
  const Path& path = prismatic_path();
  const auto au = audit(path.act, path.res.final_point.a, 1.0);
  const double gap = au.actuator - au.dissipated - au.impact_loss;
  v.require(au.injected == 0.0, "prismatic eps=1 Einj=" + num(au.injected, 3));
  v.require(std::abs(gap) < 1e-3, "prismatic eps=1 |Eact-losses|=" + num(std::abs(gap), 3));
  return v;
}

// ---------------------------------------------------------------------------
// 6: grid vs. RK4 simulation

// Largest node mismatch relative to the bound 10 (T_k/N)^4, and the largest
// absolute mismatch.
struct NodeMismatch {
  double worst_ratio = 0.0;
  double worst = 0.0;
};

NodeMismatch node_mismatch(const GaitProblem& p, const Vector& a) {
  const auto& L = p.layout;
  const auto c = gf::transcription::unpack(L, a);
  // Zero-input schedules with one interval per grid interval make the
  // integrator land on every node time exactly.
  std::vector<gf::simulate::ControlSchedule> cs(static_cast<size_t>(L.m));
  double h = std::numeric_limits<double>::infinity();
  for (int k = 0; k < L.m; ++k) {
    cs[k].interval = c.durations[k] / L.N;
    cs[k].values.assign(static_cast<size_t>(L.N), std::vector<double>(static_cast<size_t>(p.model.n_u), 0.0));
    h = std::min(h, cs[k].interval / 8.0);
  }
  gf::simulate::IntegratorOptions opt;
  opt.step = h;
  opt.event_tolerance = 1e-13;
  const gf::simulate::HomotopySetting hs{c.gamma, 0.0, p.injection};
  const auto traj = gf::simulate::simulate_stride(p.model, L.sequence, c.x0, cs, hs, c.free, opt);

  NodeMismatch out;
  for (int k = 0; k < L.m; ++k) {
    const auto& seg = traj.segments[k];
    const double t0 = seg.t.front(), dt = cs[k].interval;
    const double bound = 10.0 * std::pow(dt, 4);
    for (int i = 0; i <= L.N; ++i) {
      const std::vector<double>* sim = nullptr;
      if (i == L.N) {
        sim = &traj.events[k].pre;
      } else {
        for (size_t s = 0; s < seg.t.size(); ++s)
          if (std::abs(seg.t[s] - t0 - i * dt) < 1e-12 * std::max(1.0, seg.t[s])) sim = &seg.x[s];
      }
      if (!sim) throw gf::DomainError("node time not sampled");
      double d = 0.0;
      for (size_t j = 0; j < sim->size(); ++j) d = std::max(d, std::abs((*sim)[j] - c.grid[k][i][j]));
      out.worst = std::max(out.worst, d);
      out.worst_ratio = std::max(out.worst_ratio, d / bound);
    }
  }
  return out;
}

// The coarse gait re-solved on a grid twice as fine, starting from its own
// nodes and Hermite-Simpson midpoints, so both grids describe the same gait
// (the segmented model has a one-parameter family of them).
gf::rootsearch::RootSearchResult refine(const Gait& g, GaitProblem& fine) {
  auto cfg = g.cfg;
  cfg.N = 2 * g.cfg.N;
  fine = cfg.quasi_passive_problem();
  auto c = gf::transcription::unpack(g.p.layout, g.r.a);
  const auto traj = gf::transcription::collocation_trajectory(g.p, g.r.a, 0.0);
  for (int k = 0; k < g.p.layout.m; ++k) c.grid[k] = traj.segments[k].x;
  return gf::rootsearch::find_quasi_passive_gait(fine, gf::transcription::pack(fine.layout, c), cfg.rootsearch);
}

Verdict criterion_6() {
  Verdict v;
  for (const std::string m : {"prismatic-monopod", "segmented-monopod", "sagittal-quadruped"}) {
    const Gait& coarse = gait(m);
    const std::string tag = m + " N=" + std::to_string(coarse.cfg.N) + "/" + std::to_string(2 * coarse.cfg.N);
    try {
      GaitProblem fp;
      const auto fine = refine(coarse, fp);
      const auto mc = node_mismatch(coarse.p, coarse.r.a);
      const auto mf = node_mismatch(fp, fine.a);
      const double shrink = mc.worst / mf.worst;
      v.require(mc.worst_ratio <= 1.0 && mf.worst_ratio <= 1.0, tag + " err=" + num(mc.worst, 3) + "/" +
                                                                    num(mf.worst, 3) + " err/bound=" +
                                                                    num(mc.worst_ratio, 3) + "/" + num(mf.worst_ratio, 3));
      v.require(shrink >= 16.0 * 0.7 && shrink <= 16.0 * 1.3, m + " shrink=" + num(shrink, 4));
    } catch (const std::exception& e) {
      v.require(false, tag + " " + e.what());
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// 7: derivatives vs. finite differences

constexpr double kFdStep = 1e-6;

// max over entries of |J - FD| / max(1, |FD|)
double fd_mismatch(const DenseMatrix& J, const DenseMatrix& fd) {
  return ((J - fd).array().abs() / fd.array().abs().max(1.0)).maxCoeff();
}

template <class F>
DenseMatrix fd_jacobian(const F& f, const Vector& x) {
  const Vector f0 = f(x);
  DenseMatrix J(f0.size(), x.size());
  for (int j = 0; j < x.size(); ++j) {
    Vector xp = x, xm = x;
    xp[j] += kFdStep;
    xm[j] -= kFdStep;
    J.col(j) = (f(xp) - f(xm)) / (2 * kFdStep);
  }
  return J;
}

Vector to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}
std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

// Jacobian and Hessian stack of a generic vector function vs. central
// differences of the value and of the Jacobian.
template <class F>
double generic_mismatch(const F& f, const std::vector<double>& x) {
  const auto value = [&](const Vector& y) { return to_eigen(f(to_std(y))); };
  const DenseMatrix J = gf::numerics::jacobian(f, x);
  double worst = fd_mismatch(J, fd_jacobian(value, to_eigen(x)));
  const auto H = gf::numerics::hessian_stack(f, x);
  for (size_t i = 0; i < H.size(); ++i) {
    const auto grad = [&](const Vector& y) -> Vector {
      return gf::numerics::jacobian(f, to_std(y)).row(static_cast<Eigen::Index>(i)).transpose();
    };
    worst = std::max(worst, fd_mismatch(H[i], fd_jacobian(grad, to_eigen(x))));
  }
  return worst;
}

struct Sampler {
  std::mt19937 rng{20240917};
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  // Near a nominal state: positions +-0.1, rates +-0.5.
  std::vector<double> state(const std::vector<double>& nominal, int n_q) {
    std::vector<double> x = nominal;
    for (int i = 0; i < 2 * n_q; ++i) x[i] += i < n_q ? uniform(-0.1, 0.1) : uniform(-0.5, 0.5);
    return x;
  }
};

constexpr int kPoints = 20;

// Vector fields, homotopy field, impact maps, events and energy of one model.
double model_function_mismatch(const std::string& name, Sampler& rng) {
  const auto cfg = gf::io::default_config(name);
  const auto m = cfg.build_model();
  const auto& nominal = cfg.candidates.front();
  const int nx = m.n_x(), nu = m.n_u;
  const auto free0 = m.free_param_defaults();
  const int nf = static_cast<int>(free0.size());
  double worst = 0.0;
  for (int s = 0; s < kPoints; ++s) {
    std::vector<double> x = rng.state(nominal, m.n_q);
    for (int j = 0; j < nu; ++j) x.push_back(rng.uniform(-0.3, 0.3));
    for (double f : free0) x.push_back(f + rng.uniform(-0.05, 0.05));
    x.push_back(rng.uniform(0.1, 1.0));  // gamma
    x.push_back(rng.uniform(0.0, 1.0));  // eps
    auto split = [&](const auto& y) {
      using S = std::decay_t<decltype(y[0])>;
      struct {
        std::vector<S> x, u, f;
        S gamma, eps;
      } out{{y.begin(), y.begin() + nx},
            {y.begin() + nx, y.begin() + nx + nu},
            {y.begin() + nx + nu, y.begin() + nx + nu + nf},
            y[nx + nu + nf],
            y[nx + nu + nf + 1]};
      return out;
    };
    for (const auto& ph : m.phases) {
      worst = std::max(worst, generic_mismatch(
                                  [&](const auto& y) {
                                    const auto a = split(y);
                                    return gf::hybrid::homotopy_field(m, ph.id, a.x, a.u, a.gamma, a.eps,
                                                                      cfg.injection, a.f);
                                  },
                                  x));
      for (const auto& tr : ph.events) {
        worst = std::max(worst, generic_mismatch(
                                    [&](const auto& y) {
                                      using S = std::decay_t<decltype(y[0])>;
                                      const auto a = split(y);
                                      auto out = gf::hybrid::impact_map(m, ph.id, tr.target, a.x);
                                      out.push_back(gf::hybrid::event_value_at(m, ph.id, tr.target, a.x, a.u, a.f));
                                      return std::vector<S>(out);
                                    },
                                    x));
      }
    }
    worst = std::max(worst, generic_mismatch(
                                [&](const auto& y) {
                                  using S = std::decay_t<decltype(y[0])>;
                                  const auto a = split(y);
                                  return std::vector<S>{gf::models::total_energy(m, a.x, a.f)};
                                },
                                x));
  }
  return worst;
}

// Residual Jacobian, constraint Hessian and the homotopy Jacobian R of a
// coarse (N=4) transcription, near the simulation guess.
double pipeline_mismatch(const std::string& name, Sampler& rng) {
  auto cfg = gf::io::default_config(name);
  cfg.N = 4;
  const GaitProblem qp = cfg.quasi_passive_problem();
  const Vector a_guess = gf::rootsearch::build_guess_from_simulation(qp, cfg.candidates, 0.3);
  const GaitProblem act = gf::transcription::actuated_problem(qp, 0.3);
  const Vector b_guess = gf::transcription::to_actuated(qp.layout, act.layout, a_guess);
  const int na = act.layout.size, nh = act.layout.n_h();
  auto jitter = [&](Vector v, double scale) {
    for (auto& e : v) e += rng.uniform(-scale, scale);
    return v;
  };
  double worst = 0.0;
  for (int s = 0; s < kPoints; ++s) {
    // quasi-passive residual Jacobian
    Vector a = jitter(a_guess, 1e-3);
    a[qp.layout.off_gamma] = rng.uniform(0.1, 1.0);
    const double eps0 = rng.uniform(0.0, 1.0);
    const auto jr = gf::transcription::residual_jacobian(qp, a, eps0);
    worst = std::max(worst, fd_mismatch(jr.J, fd_jacobian([&](const Vector& y) {
                                          return gf::transcription::residuals(qp, y, eps0);
                                        }, a)));

    // actuated: constraint Hessian over (a, eps) and R over (a, lambda, eps)
    const Vector b = jitter(b_guess, 1e-3);
    const Vector lambda = jitter(Vector::Zero(nh), 1.0);
    const double eps = rng.uniform(0.0, 1.0);
    Vector ae(na + 1);
    ae << b, eps;
    const DenseMatrix Hc = gf::transcription::constraint_hessian(act, b, lambda, eps);
    worst = std::max(worst, fd_mismatch(Hc, fd_jacobian([&](const Vector& y) {
                                          const auto j = gf::transcription::residual_jacobian(act, y.head(na), y[na]);
                                          Vector g(na + 1);
                                          g << j.J.transpose() * lambda, j.h_eps.dot(lambda);
                                          return g;
                                        }, ae)));
    Vector psi(na + nh + 1);
    psi << b, lambda, eps;
    const auto sys = gf::continuation::homotopy_system(act, b, lambda, eps);
    worst = std::max(worst, fd_mismatch(sys.R, fd_jacobian([&](const Vector& y) {
                                          return gf::continuation::homotopy_map(act, y.head(na), y.segment(na, nh),
                                                                                y[na + nh]);
                                        }, psi)));
  }
  return worst;
}

Verdict criterion_7() {
  Verdict v;
  Sampler rng;
  for (const std::string m : {"prismatic-monopod", "segmented-monopod", "sagittal-quadruped"}) {
    const double dm = model_function_mismatch(m, rng);
    v.require(dm <= 1e-4, m + " dynamics rel=" + num(dm, 3));
    const double dp = pipeline_mismatch(m, rng);
    v.require(dp <= 1e-4, m + " transcription rel=" + num(dp, 3));
  }
  const auto& recs = prismatic_path().res.log.records;
  double rp = 0.0, pn = 0.0;
  for (const auto& r : recs) {
    rp = std::max(rp, r.tangent_residual);
    pn = std::max(pn, std::abs(r.tangent_norm - 1.0));
  }
  v.require(rp < 1e-9, "max |Rp|=" + num(rp, 3));
  v.require(pn < 1e-12, "max ||p|-1|=" + num(pn, 3));
  return v;
}

// ---------------------------------------------------------------------------
// 8: impact maps

Verdict criterion_8() {
  Verdict v;
  Sampler rng;
  for (const std::string name : {"prismatic-monopod", "segmented-monopod", "sagittal-quadruped"}) {
    const auto cfg = gf::io::default_config(name);
    const auto m = cfg.build_model();
    const auto free = m.free_param_defaults();
    const size_t nq = static_cast<size_t>(m.n_q);
    bool q_same = true;
    double wq = 0.0, gain = -std::numeric_limits<double>::infinity(), idem = 0.0;
    int maps = 0;
    for (const auto& ph : m.phases) {
      for (const auto& tr : ph.events) {
        ++maps;
        for (int s = 0; s < 100; ++s) {
          const auto x = rng.state(cfg.candidates.front(), m.n_q);
          const auto xp = gf::hybrid::impact_map(m, ph.id, tr.target, x);
          const auto xpp = gf::hybrid::impact_map(m, ph.id, tr.target, xp);
          for (size_t i = 0; i < nq; ++i) q_same = q_same && xp[i] == x[i];
          const std::vector<double> q(xp.begin(), xp.begin() + nq), qd(xp.begin() + nq, xp.end());
          const auto c = gf::models::constraint_and_jacobian(m, tr.target, q, qd);
          for (double w : gf::numerics::matvec(c.Wt, qd)) wq = std::max(wq, std::abs(w));
          gain = std::max(gain, gf::models::total_energy(m, xp, free) - gf::models::total_energy(m, x, free));
          for (size_t i = 0; i < x.size(); ++i) idem = std::max(idem, std::abs(xpp[i] - xp[i]));
        }
      }
    }
    std::string tag = name + " (" + std::to_string(maps) + " maps)";
    v.require(q_same, tag + " q bitwise");
    v.require(wq < 1e-10, tag + " |W^T qd+|=" + num(wq, 3));
    // E(x+) <= E(x-) up to the rounding of E itself
    v.require(gain <= 1e-12, tag + " max dE=" + num(gain, 3));
    v.require(idem < 1e-12, tag + " idempotence=" + num(idem, 3));
  }
  return v;
}

const std::map<int, std::pair<std::string, std::function<Verdict()>>>& criteria() {
  static const std::map<int, std::pair<std::string, std::function<Verdict()>>> c{
      {1, {"prismatic quasi-passive gait", criterion_1}},
      {2, {"segmented quasi-passive gait", criterion_2}},
      {3, {"quadruped quasi-passive gait", criterion_3}},
      {4, {"prismatic continuation", criterion_4}},
      {5, {"energy balance", criterion_5}},
      {6, {"grid vs simulation, 4th order", criterion_6}},
      {7, {"derivatives vs finite differences", criterion_7}},
      {8, {"impact map properties", criterion_8}},
  };
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gaitforge acceptance suite"};
  std::vector<int> which, known_red;
  app.add_option("--criterion", which, "criterion to run (repeatable, default all)")->check(CLI::Range(1, 8));
  app.add_option("--known-red", known_red, "criteria whose failure does not change the exit status")
      ->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);
  if (which.empty())
    for (const auto& [id, c] : criteria()) which.push_back(id);
  const std::set<int> red(known_red.begin(), known_red.end());

  int status = 0;
  for (int id : which) {
    const auto& [title, run] = criteria().at(id);
    Verdict v;
    const auto t0 = Clock::now();
    try {
      v = run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("error: ") + e.what();
    }
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " [" << v.detail << "] ("
              << num(seconds_since(t0), 3) << " s)";
    if (!v.pass && red.count(id)) std::cout << " (known red, see ledger)";
    std::cout << std::endl;
    if (!v.pass && !red.count(id)) status = 1;
  }
  return status;
}
