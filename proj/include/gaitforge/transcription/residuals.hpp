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

// Gait residual h(a, eps) of the transcription, its derivatives and the cost.
//
// h is assembled from small blocks, each depending on a handful of decision
// entries: one collocation defect per interval, the linkage between phases,
// the stride-closing periodicity condition, one event anchor per phase end
// and the operating point. Derivatives are taken block-locally with forward
// duals; the block loop runs under OpenMP and results are scattered serially
// in block order, so parallel and serial assembly agree bitwise.

#include <string>
#include <vector>

#include "gaitforge/hybrid/hybrid.hpp"
#include "gaitforge/models/model.hpp"
#include "gaitforge/numerics/linalg.hpp"
#include "gaitforge/transcription/layout.hpp"

namespace gaitforge::transcription {

using numerics::DenseMatrix;
using numerics::Vector;

struct OperatingPoint {
  enum class Kind { kAverageSpeed, kEnergyLevel };
  Kind kind = Kind::kAverageSpeed;
  double value = 0.3;
};

OperatingPoint::Kind parse_op_kind(const std::string& name);
std::string op_kind_name(OperatingPoint::Kind kind);

// c = weight * xi^T xi. The tag leaves room for other costs.
struct CostSpec {
  std::string kind = "xi-squared";
  double weight = 1.0;
};

enum class BlockKind { kCollocation, kLinkage, kClosing, kAnchor, kOperatingPoint };

struct ResidualBlock {
  BlockKind kind = BlockKind::kCollocation;
  int k = 0;         // phase position
  int interval = 0;  // collocation only
  int row = 0;       // first row in h
  int rows = 0;
  std::vector<int> vars;  // global decision indices read by the block
  bool has_eps = false;   // eps enters (appended as the last local variable)
};

struct GaitProblem {
  models::ModelSpec model;
  DecisionLayout layout;
  OperatingPoint op;
  hybrid::InjectionKind injection = hybrid::InjectionKind::kMassProportional;
  double gamma = 0.0;  // frozen injection parameter in actuated mode
  CostSpec cost;
  std::vector<ResidualBlock> blocks;
};

GaitProblem make_problem(models::ModelSpec model, const std::vector<int>& sequence, int N, Mode mode,
                         OperatingPoint op, hybrid::InjectionKind injection, double gamma = 0.0,
                         CostSpec cost = {});

// Same model/sequence/grid in actuated mode with gamma frozen.
GaitProblem actuated_problem(const GaitProblem& qp, double gamma);

struct AssemblyOptions {
  bool parallel = true;
};

struct ResidualReport {
  struct Block {
    std::string name;
    std::vector<double> values;
    double norm_inf = 0.0;
    double norm_2 = 0.0;
  };
  std::vector<Block> blocks;  // collocation, linkage, periodicity, anchor, operating_point
  double norm_inf = 0.0;

  const Block& block(const std::string& name) const;
  std::string to_text() const;
};

Vector residuals(const GaitProblem& p, const Vector& a, double eps, const AssemblyOptions& opt = {});
Vector collocation_residuals(const GaitProblem& p, const Vector& a, double eps);
ResidualReport gait_residuals(const GaitProblem& p, const Vector& a, double eps);
ResidualReport make_report(const GaitProblem& p, const Vector& h);

struct JacobianResult {
  Vector h;
  DenseMatrix J;  // dh/da
  Vector h_eps;   // dh/deps
};

JacobianResult residual_jacobian(const GaitProblem& p, const Vector& a, double eps,
                                 const AssemblyOptions& opt = {});

// sum_i lambda_i * d2 h_i over (a, eps); eps is the last row/column.
DenseMatrix constraint_hessian(const GaitProblem& p, const Vector& a, const Vector& lambda, double eps,
                               const AssemblyOptions& opt = {});

double cost(const GaitProblem& p, const Vector& a);
Vector cost_gradient(const GaitProblem& p, const Vector& a);
DenseMatrix cost_hessian(const GaitProblem& p, const Vector& a);

}  // namespace gaitforge::transcription
