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

#include <Eigen/Dense>

namespace gaitforge::numerics {

using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct LeastSquaresResult {
  Vector x;
  int rank = 0;
};

// argmin ||A x - b||_2 via a complete orthogonal decomposition (column-pivoted
// QR followed by a QR of the leading block), so rank-deficient and
// underdetermined systems yield the minimum-norm solution. Singular values
// below rel_threshold * sigma_max are treated as zero. Unless
// allow_rank_deficient, a rank below min(rows, cols) raises
// RankDeficientError.
LeastSquaresResult solve_least_squares(const DenseMatrix& A, const Vector& b,
                                       double rel_threshold = 1e-10,
                                       bool allow_rank_deficient = false);

// Unit null vector p of an n x (n+1) matrix with det([R; p^T]) > 0.
// Raises FoldError if rank(R) < n.
Vector null_tangent(const DenseMatrix& R, double rel_threshold = 1e-10);

// Sign (+1, -1 or 0) of det(A) from an LU factorization.
int determinant_sign(const DenseMatrix& A);

// Orthonormal basis of ker(A) (columns).
DenseMatrix null_space_basis(const DenseMatrix& A, double rel_threshold = 1e-10);

// Smallest eigenvalue of the symmetric part of H.
double min_eig_symmetric(const DenseMatrix& H);

}  // namespace gaitforge::numerics
