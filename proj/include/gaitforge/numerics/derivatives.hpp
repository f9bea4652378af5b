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

// Strip-seeded forward-mode Jacobians and Hessian stacks.
//
// A vector function is any callable `f(const std::vector<S>&) ->
// std::vector<S>` that is generic in the scalar S (double, Dual, Dual2).
// Jacobians seed W directions per pass; Hessians seed pairs of strips
// (2W directions) so memory per number stays bounded for long inputs.

#include <Eigen/Dense>

#include <algorithm>
#include <string>
#include <vector>

#include "gaitforge/numerics/dual.hpp"
#include "gaitforge/numerics/errors.hpp"

namespace gaitforge::numerics {

using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr int kDefaultStrip = 8;

namespace detail {

[[noreturn]] inline void throw_non_finite(int component) {
  throw DifferentiationError(
      "non-finite derivative in output component " + std::to_string(component),
      component);
}

}  // namespace detail

// Values and first derivatives in one sweep; column j is df/dx_j.
struct FirstOrder {
  Vector value;
  DenseMatrix jacobian;
};

template <int W = kDefaultStrip, class F>
FirstOrder evaluate_first_order(const F& f, const std::vector<double>& x) {
  using S = Dual<W>;
  const int n = static_cast<int>(x.size());
  FirstOrder out;
  std::vector<S> xs(x.begin(), x.end());
  if (n == 0) {
    const auto y = f(std::vector<S>{});
    out.value.resize(static_cast<int>(y.size()));
    for (int i = 0; i < out.value.size(); ++i) out.value[i] = y[i].v;
    out.jacobian.setZero(out.value.size(), 0);
    return out;
  }
  for (int start = 0; start < n; start += W) {
    const int width = std::min(W, n - start);
    for (int k = 0; k < width; ++k) xs[start + k].g[k] = 1.0;
    const std::vector<S> y = f(xs);
    if (start == 0) {
      out.value.resize(static_cast<int>(y.size()));
      out.jacobian.setZero(static_cast<int>(y.size()), n);
      for (int i = 0; i < out.value.size(); ++i) out.value[i] = y[i].v;
    }
    for (int i = 0; i < static_cast<int>(y.size()); ++i) {
      if (!is_finite(y[i])) detail::throw_non_finite(i);
      for (int k = 0; k < width; ++k) out.jacobian(i, start + k) = y[i].g[k];
    }
    for (int k = 0; k < width; ++k) xs[start + k].g[k] = 0.0;
  }
  return out;
}

template <int W = kDefaultStrip, class F>
DenseMatrix jacobian(const F& f, const std::vector<double>& x) {
  return evaluate_first_order<W>(f, x).jacobian;
}

// Values, Jacobian and one symmetric Hessian per output.
struct SecondOrder {
  Vector value;
  DenseMatrix jacobian;
  std::vector<DenseMatrix> hessians;
};

template <int W = kDefaultStrip, class F>
SecondOrder evaluate_second_order(const F& f, const std::vector<double>& x) {
  using S = Dual2<2 * W>;
  const int n = static_cast<int>(x.size());
  const int strips = (n + W - 1) / W;
  SecondOrder out;
  std::vector<S> xs(x.begin(), x.end());
  bool sized = false;
  auto ensure_size = [&](const std::vector<S>& y) {
    if (sized) return;
    const int m = static_cast<int>(y.size());
    out.value.resize(m);
    for (int i = 0; i < m; ++i) out.value[i] = y[i].v;
    out.jacobian.setZero(m, n);
    out.hessians.assign(m, DenseMatrix::Zero(n, n));
    sized = true;
  };
  if (n == 0) {
    ensure_size(f(xs));
    return out;
  }
  if (n <= 2 * W) {
    // everything fits in one pass
    for (int k = 0; k < n; ++k) xs[k].g[k] = 1.0;
    const std::vector<S> y = f(xs);
    ensure_size(y);
    for (int i = 0; i < static_cast<int>(y.size()); ++i) {
      if (!is_finite(y[i])) detail::throw_non_finite(i);
      DenseMatrix& H = out.hessians[i];
      for (int k = 0; k < n; ++k) {
        out.jacobian(i, k) = y[i].g[k];
        for (int l = k; l < n; ++l) {
          const double v = y[i].hess(k, l);
          H(k, l) = v;
          H(l, k) = v;
        }
      }
    }
    return out;
  }
  for (int si = 0; si < strips; ++si) {
    for (int sj = si; sj < strips; ++sj) {
      const int a0 = si * W, aw = std::min(W, n - a0);
      const int b0 = sj * W, bw = std::min(W, n - b0);
      // Directions [0, aw) seed strip si, [W, W + bw) seed strip sj.
      for (int k = 0; k < aw; ++k) xs[a0 + k].g[k] = 1.0;
      if (sj != si)
        for (int k = 0; k < bw; ++k) xs[b0 + k].g[W + k] = 1.0;
      const std::vector<S> y = f(xs);
      ensure_size(y);
      for (int i = 0; i < static_cast<int>(y.size()); ++i) {
        if (!is_finite(y[i])) detail::throw_non_finite(i);
        DenseMatrix& H = out.hessians[i];
        if (si == sj) {
          for (int k = 0; k < aw; ++k) {
            out.jacobian(i, a0 + k) = y[i].g[k];
            for (int l = k; l < aw; ++l) {
              const double v = y[i].hess(k, l);
              H(a0 + k, a0 + l) = v;
              H(a0 + l, a0 + k) = v;
            }
          }
        } else {
          for (int k = 0; k < aw; ++k) {
            for (int l = 0; l < bw; ++l) {
              const double v = y[i].hess(k, W + l);
              H(a0 + k, b0 + l) = v;
              H(b0 + l, a0 + k) = v;
            }
          }
        }
      }
      for (int k = 0; k < aw; ++k) xs[a0 + k].g[k] = 0.0;
      if (sj != si)
        for (int k = 0; k < bw; ++k) xs[b0 + k].g[W + k] = 0.0;
    }
  }
  return out;
}

template <int W = kDefaultStrip, class F>
std::vector<DenseMatrix> hessian_stack(const F& f, const std::vector<double>& x) {
  return evaluate_second_order<W>(f, x).hessians;
}

}  // namespace gaitforge::numerics
