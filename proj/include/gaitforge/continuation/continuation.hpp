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

// Predictor-corrector continuation on the first-order optimality conditions
//   r(zeta, eps) = [dc/da^T + dh/da^T lambda; h(a, eps)] = 0,  zeta = (a, lambda),
// from the quasi-passive gait (eps = 0, xi = 0) to the actuated one (eps = 1).

#include <string>
#include <vector>

#include "gaitforge/numerics/linalg.hpp"
#include "gaitforge/transcription/residuals.hpp"

namespace gaitforge::continuation {

using numerics::DenseMatrix;
using numerics::Vector;
using transcription::GaitProblem;

struct HomotopyPoint {
  Vector a;       // actuated layout
  Vector lambda;  // one multiplier per row of h
  double eps = 0.0;
  Vector p;       // unit tangent over (a, lambda, eps)
  double mu_min = 0.0;
  double r_norm = 0.0;  // ||r||_inf

  Vector psi() const;
};

// r, its Jacobian R = dr/d(zeta, eps) (n_zeta x (n_zeta + 1)) and the pieces
// the second-order check reuses.
struct HomotopySystem {
  Vector r;
  DenseMatrix R;
  DenseMatrix hessian;  // d2c/da2 + sum lambda_i d2h_i/da2
  DenseMatrix J;        // dh/da
};

HomotopySystem homotopy_system(const GaitProblem& p, const Vector& a, const Vector& lambda, double eps,
                               const transcription::AssemblyOptions& opt = {});
Vector homotopy_map(const GaitProblem& p, const Vector& a, const Vector& lambda, double eps);

// `actuated` is the actuated-mode problem (gamma frozen). The multipliers
// solve dh/da^T lambda = -dc/da^T in the least-squares sense.
HomotopyPoint init_from_quasi_passive(const GaitProblem& actuated, const GaitProblem& qp,
                                      const Vector& a_qp);

// Unit null vector of R. With `previous` the sign keeps <p, previous> > 0,
// otherwise the eps component is made positive.
Vector tangent(const DenseMatrix& R, const Vector* previous = nullptr);

// Smallest eigenvalue of Z^T H Z with Z an orthonormal basis of ker(J);
// +infinity when the kernel is trivial.
double reduced_min_eig(const DenseMatrix& H, const DenseMatrix& J);
double second_order_check(const GaitProblem& p, const Vector& a, const Vector& lambda, double eps);

struct ContinuationConfig {
  double delta = 0.02;  // nominal step in psi-arclength
  double tol = 1e-6;    // on ||r||_inf
  int max_corrector_iters = 25;
  double min_step = 1e-5;
  double grow = 1.5;
  int grow_after = 3;  // consecutive successes before growing
  int max_steps = 100000;
  double rank_threshold = 1e-10;
};

struct CorrectorResult {
  HomotopyPoint point;
  HomotopySystem system;
  int iterations = 0;
  std::vector<double> norms;  // ||r||_inf per iteration
};

// Newton on the bordered system [R; p^T] d = [r; 0] from psi_pred.
CorrectorResult corrector(const GaitProblem& p, const Vector& psi_pred, const Vector& direction,
                          const ContinuationConfig& config = {});

struct PathRecord {
  int step = 0;
  double eps = 0.0;
  double delta = 0.0;  // arclength of the step that produced this point
  double r_norm = 0.0;
  double cost = 0.0;
  double mu_min = 0.0;
  double tangent_residual = 0.0;  // ||R p||_2
  double tangent_norm = 1.0;
  double tangent_dot = 1.0;       // <p, p_prev>
  int corrector_iters = 0;
  std::vector<double> durations;
};

struct PathLog {
  std::vector<std::string> phase_names;
  std::vector<PathRecord> records;
  int folds = 0;  // accepted points where eps decreased
  int initial_determinant_sign = 0;
  std::vector<std::string> notes;

  std::string to_csv() const;
  std::string record_text(const PathRecord& r) const;
};

struct ContinuationResult {
  HomotopyPoint final_point;
  PathLog log;
};

ContinuationResult continue_to_actuated(const GaitProblem& p, const HomotopyPoint& start,
                                        const ContinuationConfig& config = {});

}  // namespace gaitforge::continuation
