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

// Forward-mode differentiation numbers.
//
// Dual<N> carries a value and N directional first derivatives. Dual2<N> adds
// the symmetric matrix of second derivatives over the same N seed
// directions, stored packed (upper triangle, row-major). Both propagate
// derivatives exactly through arithmetic and the elementary functions the
// models use, so a single templated model definition serves plain
// simulation (double), Jacobians (Dual) and Hessians (Dual2).

#include <array>
#include <cmath>
#include <cstddef>

namespace gaitforge::numerics {

template <int N>
struct Dual {
  static constexpr int kDirections = N;

  double v = 0.0;
  std::array<double, N> g{};

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT: implicit by design of AD types

  static Dual seeded(double value, int direction) {
    Dual d(value);
    d.g[direction] = 1.0;
    return d;
  }

  Dual& operator+=(const Dual& o) {
    v += o.v;
    for (int i = 0; i < N; ++i) g[i] += o.g[i];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    for (int i = 0; i < N; ++i) g[i] -= o.g[i];
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    for (int i = 0; i < N; ++i) g[i] = g[i] * o.v + v * o.g[i];
    v *= o.v;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    const double inv = 1.0 / o.v;
    const double r = v * inv;
    for (int i = 0; i < N; ++i) g[i] = (g[i] - r * o.g[i]) * inv;
    v = r;
    return *this;
  }
  Dual& operator+=(double s) {
    v += s;
    return *this;
  }
  Dual& operator-=(double s) {
    v -= s;
    return *this;
  }
  Dual& operator*=(double s) {
    v *= s;
    for (auto& x : g) x *= s;
    return *this;
  }
  Dual& operator/=(double s) { return *this *= (1.0 / s); }
};

template <int N>
Dual<N> chain(const Dual<N>& f, double value, double d1) {
  Dual<N> r(value);
  for (int i = 0; i < N; ++i) r.g[i] = d1 * f.g[i];
  return r;
}

// Second-order forward-mode number.
template <int N>
struct Dual2 {
  static constexpr int kDirections = N;
  static constexpr int kPacked = N * (N + 1) / 2;

  double v = 0.0;
  std::array<double, N> g{};
  std::array<double, kPacked> h{};

  Dual2() = default;
  Dual2(double value) : v(value) {}  // NOLINT

  static Dual2 seeded(double value, int direction) {
    Dual2 d(value);
    d.g[direction] = 1.0;
    return d;
  }

  static constexpr int packed_index(int i, int j) {
    // i <= j
    return i * N - (i * (i - 1)) / 2 + (j - i);
  }
  double hess(int i, int j) const {
    return i <= j ? h[packed_index(i, j)] : h[packed_index(j, i)];
  }

  Dual2& operator+=(const Dual2& o) {
    v += o.v;
    for (int i = 0; i < N; ++i) g[i] += o.g[i];
    for (int k = 0; k < kPacked; ++k) h[k] += o.h[k];
    return *this;
  }
  Dual2& operator-=(const Dual2& o) {
    v -= o.v;
    for (int i = 0; i < N; ++i) g[i] -= o.g[i];
    for (int k = 0; k < kPacked; ++k) h[k] -= o.h[k];
    return *this;
  }
  Dual2& operator*=(const Dual2& o) {
    int k = 0;
    for (int i = 0; i < N; ++i) {
      for (int j = i; j < N; ++j, ++k) {
        h[k] = h[k] * o.v + v * o.h[k] + g[i] * o.g[j] + g[j] * o.g[i];
      }
    }
    for (int i = 0; i < N; ++i) g[i] = g[i] * o.v + v * o.g[i];
    v *= o.v;
    return *this;
  }
  Dual2& operator/=(const Dual2& o);
  Dual2& operator+=(double s) {
    v += s;
    return *this;
  }
  Dual2& operator-=(double s) {
    v -= s;
    return *this;
  }
  Dual2& operator*=(double s) {
    v *= s;
    for (auto& x : g) x *= s;
    for (auto& x : h) x *= s;
    return *this;
  }
  Dual2& operator/=(double s) { return *this *= (1.0 / s); }
};

// Applies a scalar function with derivatives d1, d2 at f.v.
template <int N>
Dual2<N> chain(const Dual2<N>& f, double value, double d1, double d2) {
  Dual2<N> r(value);
  for (int i = 0; i < N; ++i) r.g[i] = d1 * f.g[i];
  int k = 0;
  for (int i = 0; i < N; ++i) {
    for (int j = i; j < N; ++j, ++k) {
      r.h[k] = d1 * f.h[k] + d2 * f.g[i] * f.g[j];
    }
  }
  return r;
}

template <int N>
Dual2<N>& Dual2<N>::operator/=(const Dual2<N>& o) {
  const double inv = 1.0 / o.v;
  *this *= chain(o, inv, -inv * inv, 2.0 * inv * inv * inv);
  return *this;
}

// ---- traits --------------------------------------------------------------

inline double value_of(double x) { return x; }
template <int N>
double value_of(const Dual<N>& x) {
  return x.v;
}
template <int N>
double value_of(const Dual2<N>& x) {
  return x.v;
}

// ---- binary operators (shared by both number types) ----------------------

#define GAITFORGE_DUAL_BINOPS(T)                                        \
  template <int N>                                                      \
  T<N> operator+(T<N> a, const T<N>& b) { return a += b; }              \
  template <int N>                                                      \
  T<N> operator-(T<N> a, const T<N>& b) { return a -= b; }              \
  template <int N>                                                      \
  T<N> operator*(T<N> a, const T<N>& b) { return a *= b; }              \
  template <int N>                                                      \
  T<N> operator/(T<N> a, const T<N>& b) { return a /= b; }              \
  template <int N>                                                      \
  T<N> operator+(T<N> a, double b) { return a += b; }                   \
  template <int N>                                                      \
  T<N> operator-(T<N> a, double b) { return a -= b; }                   \
  template <int N>                                                      \
  T<N> operator*(T<N> a, double b) { return a *= b; }                   \
  template <int N>                                                      \
  T<N> operator/(T<N> a, double b) { return a /= b; }                   \
  template <int N>                                                      \
  T<N> operator+(double a, T<N> b) { return b += a; }                   \
  template <int N>                                                      \
  T<N> operator-(double a, const T<N>& b) { return T<N>(a) -= b; }      \
  template <int N>                                                      \
  T<N> operator*(double a, T<N> b) { return b *= a; }                   \
  template <int N>                                                      \
  T<N> operator/(double a, const T<N>& b) { return T<N>(a) /= b; }      \
  template <int N>                                                      \
  T<N> operator-(T<N> a) { return a *= -1.0; }                          \
  template <int N>                                                      \
  bool operator<(const T<N>& a, const T<N>& b) { return a.v < b.v; }    \
  template <int N>                                                      \
  bool operator>(const T<N>& a, const T<N>& b) { return a.v > b.v; }    \
  template <int N>                                                      \
  bool operator<(const T<N>& a, double b) { return a.v < b; }           \
  template <int N>                                                      \
  bool operator>(const T<N>& a, double b) { return a.v > b; }           \
  template <int N>                                                      \
  bool operator<=(const T<N>& a, double b) { return a.v <= b; }         \
  template <int N>                                                      \
  bool operator>=(const T<N>& a, double b) { return a.v >= b; }

GAITFORGE_DUAL_BINOPS(Dual)
GAITFORGE_DUAL_BINOPS(Dual2)
#undef GAITFORGE_DUAL_BINOPS

// ---- elementary functions -------------------------------------------------

using std::cos;
using std::sin;
using std::sqrt;

template <int N>
Dual<N> sin(const Dual<N>& x) {
  return chain(x, std::sin(x.v), std::cos(x.v));
}
template <int N>
Dual<N> cos(const Dual<N>& x) {
  return chain(x, std::cos(x.v), -std::sin(x.v));
}
template <int N>
Dual<N> sqrt(const Dual<N>& x) {
  const double s = std::sqrt(x.v);
  return chain(x, s, 0.5 / s);
}

template <int N>
Dual2<N> sin(const Dual2<N>& x) {
  const double s = std::sin(x.v);
  return chain(x, s, std::cos(x.v), -s);
}
template <int N>
Dual2<N> cos(const Dual2<N>& x) {
  const double c = std::cos(x.v);
  return chain(x, c, -std::sin(x.v), -c);
}
template <int N>
Dual2<N> sqrt(const Dual2<N>& x) {
  const double s = std::sqrt(x.v);
  return chain(x, s, 0.5 / s, -0.25 / (s * x.v));
}

inline bool is_finite(double x) { return std::isfinite(x); }
template <int N>
bool is_finite(const Dual<N>& x) {
  if (!std::isfinite(x.v)) return false;
  for (double d : x.g)
    if (!std::isfinite(d)) return false;
  return true;
}
template <int N>
bool is_finite(const Dual2<N>& x) {
  if (!std::isfinite(x.v)) return false;
  for (double d : x.g)
    if (!std::isfinite(d)) return false;
  for (double d : x.h)
    if (!std::isfinite(d)) return false;
  return true;
}

}  // namespace gaitforge::numerics
