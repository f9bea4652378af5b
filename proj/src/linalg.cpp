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

#include "gaitforge/numerics/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gaitforge/numerics/errors.hpp"

namespace gaitforge::numerics {

namespace {

void require_finite(const DenseMatrix& A, const char* what) {
  if (!A.allFinite()) throw DomainError(std::string(what) + " has non-finite entries");
}

}  // namespace

LeastSquaresResult solve_least_squares(const DenseMatrix& A, const Vector& b,
                                       double rel_threshold,
                                       bool allow_rank_deficient) {
  if (A.rows() != b.size()) throw DomainError("solve_least_squares: row mismatch");
  require_finite(A, "least-squares matrix");
  LeastSquaresResult out;
  if (A.cols() == 0) {
    out.x.resize(0);
    return out;
  }
  Eigen::CompleteOrthogonalDecomposition<DenseMatrix> cod;
  cod.setThreshold(rel_threshold);
  cod.compute(A);
  out.rank = static_cast<int>(cod.rank());
  const int full = static_cast<int>(std::min(A.rows(), A.cols()));
  if (out.rank < full && !allow_rank_deficient) {
    throw RankDeficientError("least-squares matrix rank " + std::to_string(out.rank) +
                                 " below " + std::to_string(full),
                             out.rank);
  }
  out.x = cod.solve(b);
  return out;
}

int determinant_sign(const DenseMatrix& A) {
  Eigen::PartialPivLU<DenseMatrix> lu(A);
  const auto& LU = lu.matrixLU();
  int sign = lu.permutationP().determinant() > 0 ? 1 : -1;
  for (Eigen::Index i = 0; i < LU.rows(); ++i) {
    const double d = LU(i, i);
    if (d == 0.0) return 0;
    if (d < 0.0) sign = -sign;
  }
  return sign;
}

Vector null_tangent(const DenseMatrix& R, double rel_threshold) {
  const Eigen::Index n = R.rows();
  if (R.cols() != n + 1) throw DomainError("null_tangent expects an n x (n+1) matrix");
  require_finite(R, "tangent matrix");
  Eigen::ColPivHouseholderQR<DenseMatrix> qr;
  qr.setThreshold(rel_threshold);
  qr.compute(R.transpose());
  if (qr.rank() < n) {
    throw FoldError("homotopy Jacobian has rank " + std::to_string(qr.rank()) +
                    " < " + std::to_string(n) + "; cannot orient the tangent");
  }
  const DenseMatrix Q = qr.householderQ();
  Vector p = Q.col(n);
  p /= p.norm();
  DenseMatrix bordered(n + 1, n + 1);
  bordered.topRows(n) = R;
  bordered.row(n) = p.transpose();
  if (determinant_sign(bordered) < 0) p = -p;
  return p;
}

DenseMatrix null_space_basis(const DenseMatrix& A, double rel_threshold) {
  const Eigen::Index n = A.cols();
  if (A.rows() == 0) return DenseMatrix::Identity(n, n);
  Eigen::ColPivHouseholderQR<DenseMatrix> qr;
  qr.setThreshold(rel_threshold);
  qr.compute(A.transpose());
  const Eigen::Index r = qr.rank();
  const DenseMatrix Q = qr.householderQ();
  return Q.rightCols(n - r);
}

double min_eig_symmetric(const DenseMatrix& H) {
  require_finite(H, "symmetric matrix");
  if (H.rows() == 0) return std::numeric_limits<double>::infinity();
  const DenseMatrix S = 0.5 * (H + H.transpose());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(S, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace gaitforge::numerics
