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

#include "gaitforge/transcription/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <sstream>

#include "gaitforge/models/dynamics.hpp"
#include "gaitforge/numerics/derivatives.hpp"
#include "gaitforge/numerics/errors.hpp"

namespace gaitforge::transcription {

OperatingPoint::Kind parse_op_kind(const std::string& name) {
  if (name == "speed" || name == "average-speed") return OperatingPoint::Kind::kAverageSpeed;
  if (name == "energy" || name == "energy-level") return OperatingPoint::Kind::kEnergyLevel;
  throw ConfigError("unknown operating point kind '" + name + "' (speed, energy)");
}

std::string op_kind_name(OperatingPoint::Kind kind) {
  return kind == OperatingPoint::Kind::kAverageSpeed ? "speed" : "energy";
}

namespace {

const models::Transition& closing_transition(const GaitProblem& p, int k) {
  const auto& L = p.layout;
  return hybrid::find_transition(p.model, L.sequence[static_cast<size_t>(k)],
                                 L.sequence[static_cast<size_t>((k + 1) % L.m)]);
}

void push_range(std::vector<int>& v, int start, int count) {
  for (int i = 0; i < count; ++i) v.push_back(start + i);
}

void push_inputs(std::vector<int>& v, const DecisionLayout& L, int k, int interval) {
  for (int j = 0; j < L.n_u; ++j) {
    const int idx = L.xi(k, interval, j);
    if (idx >= 0) v.push_back(idx);
  }
}

std::vector<ResidualBlock> build_blocks(const GaitProblem& p) {
  const DecisionLayout& L = p.layout;
  const int nx = L.n_x();
  std::vector<ResidualBlock> blocks;
  int row = 0;
  for (int k = 0; k < L.m; ++k) {
    for (int i = 0; i < L.N; ++i) {
      ResidualBlock b;
      b.kind = BlockKind::kCollocation;
      b.k = k;
      b.interval = i;
      b.row = row;
      b.rows = nx;
      b.has_eps = true;
      push_range(b.vars, L.node(k, i), nx);
      push_range(b.vars, L.node(k, i + 1), nx);
      b.vars.push_back(L.off_T + k);
      if (L.off_gamma >= 0) b.vars.push_back(L.off_gamma);
      push_inputs(b.vars, L, k, i);
      push_range(b.vars, L.off_free, L.n_free);
      blocks.push_back(std::move(b));
      row += nx;
    }
  }
  for (int k = 0; k + 1 < L.m; ++k) {
    ResidualBlock b;
    b.kind = BlockKind::kLinkage;
    b.k = k;
    b.row = row;
    b.rows = nx;
    push_range(b.vars, L.node(k, L.N), nx);
    push_range(b.vars, L.node(k + 1, 0), nx);
    blocks.push_back(std::move(b));
    row += nx;
  }
  {
    ResidualBlock b;
    b.kind = BlockKind::kClosing;
    b.k = L.m - 1;
    b.row = row;
    b.rows = nx;
    push_range(b.vars, L.node(L.m - 1, L.N), nx);
    push_range(b.vars, L.off_x0, nx);
    blocks.push_back(std::move(b));
    row += nx;
  }
  for (int k = 0; k < L.m; ++k) {
    ResidualBlock b;
    b.kind = BlockKind::kAnchor;
    b.k = k;
    b.row = row;
    b.rows = 1;
    push_range(b.vars, L.node(k, L.N), nx);
    if (closing_transition(p, k).kind == models::EventKind::kLiftOff) {
      push_inputs(b.vars, L, k, L.N - 1);
      push_range(b.vars, L.off_free, L.n_free);
    }
    blocks.push_back(std::move(b));
    row += 1;
  }
  {
    ResidualBlock b;
    b.kind = BlockKind::kOperatingPoint;
    b.row = row;
    b.rows = 1;
    if (p.op.kind == OperatingPoint::Kind::kAverageSpeed) {
      b.vars.push_back(L.off_x0);
      b.vars.push_back(L.node(L.m - 1, L.N));
      push_range(b.vars, L.off_T, L.m);
    } else {
      push_range(b.vars, L.off_x0, nx);
      push_range(b.vars, L.off_free, L.n_free);
    }
    blocks.push_back(std::move(b));
    row += 1;
  }
  if (row != L.n_h()) throw DomainError("internal: residual row count mismatch");
  return blocks;
}

template <class S>
struct Cursor {
  const std::vector<S>& v;
  size_t pos = 0;
  std::vector<S> take(size_t n) {
    std::vector<S> out(v.begin() + static_cast<std::ptrdiff_t>(pos), v.begin() + static_cast<std::ptrdiff_t>(pos + n));
    pos += n;
    return out;
  }
  S next() { return v[pos++]; }
};

template <class S>
std::vector<S> read_inputs(const GaitProblem& p, Cursor<S>& c, int k) {
  const DecisionLayout& L = p.layout;
  if (L.mode != Mode::kActuated) return {};
  std::vector<S> u(static_cast<size_t>(L.n_u), S(0.0));
  const auto& act = L.active[static_cast<size_t>(k)];
  for (int j = 0; j < L.n_u; ++j)
    if (act[static_cast<size_t>(j)]) u[static_cast<size_t>(j)] = c.next();
  return u;
}

// Residual of one block. `v` holds the block's local variables in the order
// of ResidualBlock::vars, followed by eps when the block depends on it.
template <class S>
std::vector<S> eval_block(const GaitProblem& p, const ResidualBlock& b, const std::vector<S>& v) {
  const DecisionLayout& L = p.layout;
  const models::ModelSpec& model = p.model;
  const size_t nx = static_cast<size_t>(L.n_x());
  Cursor<S> c{v};
  switch (b.kind) {
    case BlockKind::kCollocation: {
      const std::vector<S> xa = c.take(nx);
      const std::vector<S> xb = c.take(nx);
      const S T = c.next();
      if (!(numerics::value_of(T) > 0.0))
        throw DomainError("phase duration T_" + std::to_string(b.k + 1) + " must be positive");
      const S gamma = L.off_gamma >= 0 ? c.next() : S(p.gamma);
      const std::vector<S> u = read_inputs(p, c, b.k);
      const std::vector<S> free = c.take(static_cast<size_t>(L.n_free));
      const S eps = c.next();
      const int phase = L.sequence[static_cast<size_t>(b.k)];
      const S h = T / static_cast<double>(L.N);
      const auto fa = hybrid::homotopy_field(model, phase, xa, u, gamma, eps, p.injection, free);
      const auto fb = hybrid::homotopy_field(model, phase, xb, u, gamma, eps, p.injection, free);
      std::vector<S> xm(nx);
      for (size_t s = 0; s < nx; ++s) xm[s] = 0.5 * (xa[s] + xb[s]) + h / 8.0 * (fa[s] - fb[s]);
      const auto fm = hybrid::homotopy_field(model, phase, xm, u, gamma, eps, p.injection, free);
      std::vector<S> r(nx);
      for (size_t s = 0; s < nx; ++s) r[s] = xb[s] - xa[s] - h / 6.0 * (fa[s] + 4.0 * fm[s] + fb[s]);
      return r;
    }
    case BlockKind::kLinkage: {
      const std::vector<S> xe = c.take(nx);
      const std::vector<S> xn = c.take(nx);
      const auto xp = hybrid::impact_map(model, L.sequence[static_cast<size_t>(b.k)],
                                         L.sequence[static_cast<size_t>(b.k + 1)], xe);
      std::vector<S> r(nx);
      for (size_t s = 0; s < nx; ++s) r[s] = xn[s] - xp[s];
      return r;
    }
    case BlockKind::kClosing: {
      const std::vector<S> xe = c.take(nx);
      const std::vector<S> x0 = c.take(nx);
      const auto xp = hybrid::impact_map(model, L.sequence.back(), L.sequence.front(), xe);
      std::vector<S> r(nx);
      for (size_t s = 0; s < nx; ++s) r[s] = (model.periodic[s] ? xp[s] : S(0.0)) - x0[s];
      return r;
    }
    case BlockKind::kAnchor: {
      const std::vector<S> xe = c.take(nx);
      const int from = L.sequence[static_cast<size_t>(b.k)];
      const int to = L.sequence[static_cast<size_t>((b.k + 1) % L.m)];
      if (closing_transition(p, b.k).kind == models::EventKind::kTouchDown)
        return {hybrid::event_value(model, from, to, xe, std::vector<S>{})};
      const std::vector<S> u = read_inputs(p, c, b.k);
      const std::vector<S> free = c.take(static_cast<size_t>(L.n_free));
      return {hybrid::event_value_at(model, from, to, xe, u, free)};
    }
    case BlockKind::kOperatingPoint: {
      if (p.op.kind == OperatingPoint::Kind::kAverageSpeed) {
        const S xs = c.next();
        const S xe = c.next();
        S T(0.0);
        for (int k = 0; k < L.m; ++k) T += c.next();
        return {(xe - xs) / T - p.op.value};
      }
      const std::vector<S> x0 = c.take(nx);
      const std::vector<S> free = c.take(static_cast<size_t>(L.n_free));
      return {models::total_energy(model, x0, free) - p.op.value};
    }
  }
  return {};
}

std::vector<double> locals(const ResidualBlock& b, const Vector& a, double eps) {
  std::vector<double> v;
  v.reserve(b.vars.size() + 1);
  for (int idx : b.vars) v.push_back(a(idx));
  if (b.has_eps) v.push_back(eps);
  return v;
}

// Runs body(i) for every block, in parallel when requested, and rethrows the
// first failure in block order.
template <class Body>
void for_each_block(const GaitProblem& p, const AssemblyOptions& opt, Body body) {
  const int nb = static_cast<int>(p.blocks.size());
  std::vector<std::exception_ptr> errors(static_cast<size_t>(nb));
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
  for (int i = 0; i < nb; ++i) {
    try {
      body(i);
    } catch (...) {
      errors[static_cast<size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void check_size(const GaitProblem& p, const Vector& a) {
  if (a.size() != p.layout.size)
    throw DomainError("decision vector length " + std::to_string(a.size()) + " != layout size " +
                      std::to_string(p.layout.size));
}

}  // namespace

GaitProblem make_problem(models::ModelSpec model, const std::vector<int>& sequence, int N, Mode mode,
                         OperatingPoint op, hybrid::InjectionKind injection, double gamma, CostSpec cost) {
  if (!std::isfinite(op.value)) throw ConfigError("operating point value must be finite");
  if (cost.kind != "xi-squared") throw ConfigError("unknown cost '" + cost.kind + "'");
  GaitProblem p;
  p.layout = make_layout(model, sequence, N, mode);
  p.model = std::move(model);
  p.op = op;
  p.injection = injection;
  p.gamma = gamma;
  p.cost = cost;
  p.blocks = build_blocks(p);
  return p;
}

GaitProblem actuated_problem(const GaitProblem& qp, double gamma) {
  return make_problem(qp.model, qp.layout.sequence, qp.layout.N, Mode::kActuated, qp.op, qp.injection,
                      gamma, qp.cost);
}

Vector residuals(const GaitProblem& p, const Vector& a, double eps, const AssemblyOptions& opt) {
  check_size(p, a);
  Vector h(p.layout.n_h());
  for_each_block(p, opt, [&](int i) {
    const ResidualBlock& b = p.blocks[static_cast<size_t>(i)];
    const auto r = eval_block(p, b, locals(b, a, eps));
    for (int j = 0; j < b.rows; ++j) h(b.row + j) = r[static_cast<size_t>(j)];
  });
  return h;
}

Vector collocation_residuals(const GaitProblem& p, const Vector& a, double eps) {
  const Vector h = residuals(p, a, eps);
  return h.head(2 * p.layout.n_q * p.layout.N * p.layout.m);
}

JacobianResult residual_jacobian(const GaitProblem& p, const Vector& a, double eps,
                                 const AssemblyOptions& opt) {
  check_size(p, a);
  JacobianResult out;
  out.h.resize(p.layout.n_h());
  out.J = DenseMatrix::Zero(p.layout.n_h(), p.layout.size);
  out.h_eps = Vector::Zero(p.layout.n_h());
  // Blocks own disjoint rows, so writing in the loop is order independent.
  for_each_block(p, opt, [&](int i) {
    const ResidualBlock& b = p.blocks[static_cast<size_t>(i)];
    const auto f = [&](const auto& v) { return eval_block(p, b, v); };
    const auto fo = numerics::evaluate_first_order(f, locals(b, a, eps));
    const int nv = static_cast<int>(b.vars.size());
    for (int r = 0; r < b.rows; ++r) {
      out.h(b.row + r) = fo.value(r);
      for (int j = 0; j < nv; ++j) out.J(b.row + r, b.vars[static_cast<size_t>(j)]) += fo.jacobian(r, j);
      if (b.has_eps) out.h_eps(b.row + r) = fo.jacobian(r, nv);
    }
  });
  return out;
}

DenseMatrix constraint_hessian(const GaitProblem& p, const Vector& a, const Vector& lambda, double eps,
                               const AssemblyOptions& opt) {
  check_size(p, a);
  if (lambda.size() != p.layout.n_h()) throw DomainError("constraint_hessian: multiplier length mismatch");
  const int na = p.layout.size;
  const size_t nb = p.blocks.size();
  std::vector<DenseMatrix> local(nb);
  for_each_block(p, opt, [&](int i) {
    const ResidualBlock& b = p.blocks[static_cast<size_t>(i)];
    const Vector w = lambda.segment(b.row, b.rows);
    if (w.isZero(0.0)) return;
    const auto f = [&](const auto& v) {
      using S = std::decay_t<decltype(v[0])>;
      const auto r = eval_block(p, b, v);
      S s(0.0);
      for (int j = 0; j < b.rows; ++j) s += w(j) * r[static_cast<size_t>(j)];
      return std::vector<S>{s};
    };
    local[static_cast<size_t>(i)] = numerics::evaluate_second_order(f, locals(b, a, eps)).hessians[0];
  });
  DenseMatrix H = DenseMatrix::Zero(na + 1, na + 1);
  for (size_t i = 0; i < nb; ++i) {
    const DenseMatrix& Hl = local[i];
    if (Hl.size() == 0) continue;
    const ResidualBlock& b = p.blocks[i];
    std::vector<int> idx = b.vars;
    if (b.has_eps) idx.push_back(na);
    for (size_t r = 0; r < idx.size(); ++r)
      for (size_t c = 0; c < idx.size(); ++c)
        H(idx[r], idx[c]) += Hl(static_cast<int>(r), static_cast<int>(c));
  }
  return H;
}

double cost(const GaitProblem& p, const Vector& a) {
  check_size(p, a);
  const int n = p.layout.n_xi();
  return n == 0 ? 0.0 : p.cost.weight * a.tail(n).squaredNorm();
}

Vector cost_gradient(const GaitProblem& p, const Vector& a) {
  check_size(p, a);
  Vector g = Vector::Zero(a.size());
  const int n = p.layout.n_xi();
  if (n > 0) g.tail(n) = 2.0 * p.cost.weight * a.tail(n);
  return g;
}

DenseMatrix cost_hessian(const GaitProblem& p, const Vector& a) {
  check_size(p, a);
  DenseMatrix H = DenseMatrix::Zero(a.size(), a.size());
  const int n = p.layout.n_xi();
  for (int i = a.size() - n; i < a.size(); ++i) H(i, i) = 2.0 * p.cost.weight;
  return H;
}

// ---- report ---------------------------------------------------------------

const ResidualReport::Block& ResidualReport::block(const std::string& name) const {
  for (const auto& b : blocks)
    if (b.name == name) return b;
  throw DomainError("no residual block '" + name + "'");
}

ResidualReport make_report(const GaitProblem& p, const Vector& h) {
  const DecisionLayout& L = p.layout;
  const int nx = L.n_x();
  const int n_col = nx * L.N * L.m;
  const int n_link = nx * (L.m - 1);
  ResidualReport rep;
  auto add = [&](const char* name, int start, int len) {
    ResidualReport::Block b;
    b.name = name;
    b.values.assign(h.data() + start, h.data() + start + len);
    for (double v : b.values) {
      b.norm_inf = std::max(b.norm_inf, std::abs(v));
      b.norm_2 += v * v;
    }
    b.norm_2 = std::sqrt(b.norm_2);
    rep.norm_inf = std::max(rep.norm_inf, b.norm_inf);
    rep.blocks.push_back(std::move(b));
  };
  add("collocation", 0, n_col);
  add("linkage", n_col, n_link);
  add("periodicity", n_col + n_link, nx);
  add("anchor", n_col + n_link + nx, L.m);
  add("operating_point", n_col + n_link + nx + L.m, 1);
  return rep;
}

ResidualReport gait_residuals(const GaitProblem& p, const Vector& a, double eps) {
  return make_report(p, residuals(p, a, eps));
}

std::string ResidualReport::to_text() const {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3);
  for (const auto& b : blocks)
    os << "  " << std::left << std::setw(16) << b.name << " rows=" << std::setw(5) << b.values.size()
       << " inf=" << b.norm_inf << " l2=" << b.norm_2 << '\n';
  os << "  " << std::left << std::setw(16) << "total" << " inf=" << norm_inf << '\n';
  return os.str();
}

}  // namespace gaitforge::transcription
