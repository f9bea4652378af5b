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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "gaitforge/numerics/derivatives.hpp"
#include "gaitforge/numerics/dual.hpp"
#include "gaitforge/numerics/errors.hpp"
#include "gaitforge/numerics/linalg.hpp"
#include "gaitforge/numerics/small_matrix.hpp"

namespace gf = gaitforge;
using gf::numerics::DenseMatrix;
using gf::numerics::Vector;

namespace {

// f_i = sin(x_i) * x_{i+1} + x_i^2 / (1 + x_{i+2}^2) + sqrt(2 + cos(x_0 x_i))
struct TestFn {
  template <class S>
  std::vector<S> operator()(const std::vector<S>& x) const {
    using std::cos;
    using std::sin;
    using std::sqrt;
    using gf::numerics::cos;
    using gf::numerics::sin;
    using gf::numerics::sqrt;
    const size_t n = x.size();
    std::vector<S> y(n);
    for (size_t i = 0; i < n; ++i) {
      const S& a = x[i];
      const S& b = x[(i + 1) % n];
      const S& c = x[(i + 2) % n];
      y[i] = sin(a) * b + a * a / (1.0 + c * c) + sqrt(2.0 + cos(x[0] * a));
    }
    return y;
  }
};

std::vector<double> sample(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> x(static_cast<size_t>(n));
  for (auto& v : x) v = d(rng);
  return x;
}

DenseMatrix fd_jacobian(const std::vector<double>& x, double h = 1e-6) {
  TestFn f;
  const auto y0 = f(x);
  DenseMatrix J(static_cast<int>(y0.size()), static_cast<int>(x.size()));
  for (size_t j = 0; j < x.size(); ++j) {
    auto xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const auto yp = f(xp), ym = f(xm);
    for (size_t i = 0; i < y0.size(); ++i) J(static_cast<int>(i), static_cast<int>(j)) = (yp[i] - ym[i]) / (2 * h);
  }
  return J;
}

}  // namespace

TEST(Dual, ProductAndQuotientRules) {
  using D = gf::numerics::Dual<2>;
  const D x = D::seeded(1.5, 0);
  const D y = D::seeded(-0.5, 1);
  const D z = x * y / (x + 2.0);
  // d/dx [xy/(x+2)] = 2y/(x+2)^2, d/dy = x/(x+2)
  EXPECT_NEAR(z.v, 1.5 * -0.5 / 3.5, 1e-15);
  EXPECT_NEAR(z.g[0], 2 * -0.5 / (3.5 * 3.5), 1e-15);
  EXPECT_NEAR(z.g[1], 1.5 / 3.5, 1e-15);
}

TEST(Dual2, SecondDerivativesOfSinProduct) {
  using D = gf::numerics::Dual2<2>;
  const D x = D::seeded(0.3, 0);
  const D y = D::seeded(0.7, 1);
  const D z = sin(x * y);
  const double c = std::cos(0.21), s = std::sin(0.21);
  EXPECT_NEAR(z.hess(0, 0), -s * 0.49, 1e-14);
  EXPECT_NEAR(z.hess(0, 1), c - s * 0.21, 1e-14);
  EXPECT_NEAR(z.hess(1, 1), -s * 0.09, 1e-14);
}

class JacobianWidth : public ::testing::TestWithParam<int> {};

TEST_P(JacobianWidth, MatchesCentralDifferences) {
  const auto x = sample(GetParam(), 11u + static_cast<unsigned>(GetParam()));
  const DenseMatrix J = gf::numerics::jacobian<4>(TestFn{}, x);
  const DenseMatrix Jfd = fd_jacobian(x);
  EXPECT_LT((J - Jfd).cwiseAbs().maxCoeff(), 1e-8);
}

INSTANTIATE_TEST_SUITE_P(Sizes, JacobianWidth, ::testing::Values(1, 3, 4, 5, 9, 17));

TEST(Hessian, StripPairsMatchSinglePass) {
  // 7 variables: one pass at W = 8, four strip pairs at W = 2.
  const auto x = sample(7, 5u);
  const auto a = gf::numerics::evaluate_second_order<8>(TestFn{}, x);
  const auto b = gf::numerics::evaluate_second_order<2>(TestFn{}, x);
  ASSERT_EQ(a.hessians.size(), b.hessians.size());
  for (size_t i = 0; i < a.hessians.size(); ++i) {
    EXPECT_LT((a.hessians[i] - b.hessians[i]).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_LT((a.hessians[i] - a.hessians[i].transpose()).cwiseAbs().maxCoeff(), 0.0 + 1e-300);
  }
  EXPECT_LT((a.jacobian - b.jacobian).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Hessian, MatchesDifferencedJacobian) {
  const auto x = sample(6, 9u);
  const auto so = gf::numerics::evaluate_second_order<2>(TestFn{}, x);
  const double h = 1e-6;
  for (size_t j = 0; j < x.size(); ++j) {
    auto xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const DenseMatrix d = (gf::numerics::jacobian(TestFn{}, xp) - gf::numerics::jacobian(TestFn{}, xm)) / (2 * h);
    for (size_t i = 0; i < so.hessians.size(); ++i)
      for (size_t k = 0; k < x.size(); ++k)
        EXPECT_NEAR(so.hessians[i](static_cast<int>(k), static_cast<int>(j)), d(static_cast<int>(i), static_cast<int>(k)), 1e-7);
  }
}

TEST(Jacobian, NonFiniteOutputNamesComponent) {
  auto f = [](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    return std::vector<S>{x[0], sqrt(x[1])};
  };
  try {
    gf::numerics::jacobian(f, {1.0, -1.0});
    FAIL() << "expected DifferentiationError";
  } catch (const gf::DifferentiationError& e) {
    EXPECT_EQ(e.component(), 1);
  }
}

TEST(Cholesky, RejectsIndefinite) {
  gf::numerics::Mat<double> A(2, 2);
  A(0, 0) = 1.0;
  A(0, 1) = A(1, 0) = 2.0;
  A(1, 1) = 1.0;
  EXPECT_THROW(gf::numerics::cholesky(A, "test"), gf::ModelSingularityError);
}

TEST(LeastSquares, RankDeficientIsReported) {
  DenseMatrix A(3, 3);
  A << 1, 2, 3, 2, 4, 6, 1, 0, 1;
  Vector b(3);
  b << 1, 2, 0;
  EXPECT_THROW(gf::numerics::solve_least_squares(A, b), gf::RankDeficientError);
  const auto r = gf::numerics::solve_least_squares(A, b, 1e-10, true);
  EXPECT_EQ(r.rank, 2);
  EXPECT_LT((A * r.x - b).norm(), 1e-12);
}

TEST(LeastSquares, WideSystemGivesMinimumNorm) {
  DenseMatrix A(1, 2);
  A << 1, 1;
  Vector b(1);
  b << 2;
  const auto r = gf::numerics::solve_least_squares(A, b);
  EXPECT_NEAR(r.x(0), 1.0, 1e-14);
  EXPECT_NEAR(r.x(1), 1.0, 1e-14);
}

TEST(NullTangent, SpansKernelWithPositiveOrientation) {
  DenseMatrix R(2, 3);
  R << 1, 0, -1, 0, 2, 1;
  const Vector p = gf::numerics::null_tangent(R);
  EXPECT_LT((R * p).norm(), 1e-14);
  EXPECT_NEAR(p.norm(), 1.0, 1e-14);
  DenseMatrix B(3, 3);
  B.topRows(2) = R;
  B.row(2) = p.transpose();
  EXPECT_GT(B.determinant(), 0.0);
}

TEST(NullTangent, FoldRaises) {
  DenseMatrix R(2, 3);
  R << 1, 2, 3, 2, 4, 6;
  EXPECT_THROW(gf::numerics::null_tangent(R), gf::FoldError);
}

TEST(NullSpace, BasisIsOrthonormalKernel) {
  DenseMatrix A(2, 4);
  A << 1, 2, 0, 1, 0, 1, 1, 0;
  const DenseMatrix Z = gf::numerics::null_space_basis(A);
  ASSERT_EQ(Z.cols(), 2);
  EXPECT_LT((A * Z).norm(), 1e-14);
  EXPECT_LT((Z.transpose() * Z - DenseMatrix::Identity(2, 2)).norm(), 1e-14);
}

TEST(MinEig, Diagonal) {
  DenseMatrix H = DenseMatrix::Zero(3, 3);
  H.diagonal() << 3, -2, 5;
  EXPECT_DOUBLE_EQ(gf::numerics::min_eig_symmetric(H), -2.0);
  EXPECT_EQ(gf::numerics::min_eig_symmetric(DenseMatrix(0, 0)), std::numeric_limits<double>::infinity());
}
