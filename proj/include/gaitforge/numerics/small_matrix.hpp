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

// Tiny dense matrices over a generic scalar, sized for model-level algebra
// (n_q <= 7). Used where Eigen would need NumTraits for the dual types.

#include <string>
#include <vector>

#include "gaitforge/numerics/dual.hpp"
#include "gaitforge/numerics/errors.hpp"

namespace gaitforge::numerics {

template <class S>
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<S> data;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r * c), S(0.0)) {}

  S& operator()(int i, int j) { return data[static_cast<size_t>(i * cols + j)]; }
  const S& operator()(int i, int j) const {
    return data[static_cast<size_t>(i * cols + j)];
  }
};

template <class S>
using Vec = std::vector<S>;

// Lower Cholesky factor of a symmetric positive definite matrix.
template <class S>
Mat<S> cholesky(const Mat<S>& A, const char* what) {
  const int n = A.rows;
  Mat<S> L(n, n);
  for (int j = 0; j < n; ++j) {
    S d = A(j, j);
    for (int k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
    if (!(value_of(d) > 0.0)) {
      throw ModelSingularityError(std::string(what) +
                                  " is not positive definite (pivot " +
                                  std::to_string(j) + ")");
    }
    const S ljj = sqrt(d);
    L(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      S s = A(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s / ljj;
    }
  }
  return L;
}

// Solves (L L^T) X = B in place of B.
template <class S>
void cholesky_solve_in_place(const Mat<S>& L, Mat<S>& B) {
  const int n = L.rows;
  for (int c = 0; c < B.cols; ++c) {
    for (int i = 0; i < n; ++i) {
      S s = B(i, c);
      for (int k = 0; k < i; ++k) s -= L(i, k) * B(k, c);
      B(i, c) = s / L(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
      S s = B(i, c);
      for (int k = i + 1; k < n; ++k) s -= L(k, i) * B(k, c);
      B(i, c) = s / L(i, i);
    }
  }
}

template <class S>
Vec<S> cholesky_solve(const Mat<S>& L, const Vec<S>& b) {
  Mat<S> B(static_cast<int>(b.size()), 1);
  for (int i = 0; i < B.rows; ++i) B(i, 0) = b[static_cast<size_t>(i)];
  cholesky_solve_in_place(L, B);
  return B.data;
}

template <class S>
Mat<S> transpose(const Mat<S>& A) {
  Mat<S> T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
  return T;
}

template <class S>
Mat<S> matmul(const Mat<S>& A, const Mat<S>& B) {
  Mat<S> C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k)
      for (int j = 0; j < B.cols; ++j) C(i, j) += A(i, k) * B(k, j);
  return C;
}

template <class S>
Vec<S> matvec(const Mat<S>& A, const Vec<S>& x) {
  Vec<S> y(static_cast<size_t>(A.rows), S(0.0));
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) y[static_cast<size_t>(i)] += A(i, j) * x[static_cast<size_t>(j)];
  return y;
}

// A^T x
template <class S>
Vec<S> matvec_transposed(const Mat<S>& A, const Vec<S>& x) {
  Vec<S> y(static_cast<size_t>(A.cols), S(0.0));
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) y[static_cast<size_t>(j)] += A(i, j) * x[static_cast<size_t>(i)];
  return y;
}

}  // namespace gaitforge::numerics
