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

#include "gaitforge/numerics/errors.hpp"
#include "gaitforge/rootsearch/rootsearch.hpp"
#include "gaitforge/transcription/layout.hpp"

namespace gf = gaitforge;
using namespace gf::transcription;
using gf::numerics::Vector;

namespace {

const std::vector<double> kPrismaticGuess{0, 1.0, 0, 0, 1.0, 0, -0.55, 0, 0, -0.55};

GaitProblem prismatic_qp() {
  return make_problem(gf::models::make_prismatic_monopod(), {2, 1}, 10, Mode::kQuasiPassive,
                      {OperatingPoint::Kind::kAverageSpeed, 0.3}, gf::hybrid::InjectionKind::kMassProportional);
}

}  // namespace

TEST(RootSearch, PrismaticReproducesReferenceGait) {
  const auto p = prismatic_qp();
  const Vector a0 = gf::rootsearch::build_guess_from_simulation(p, {kPrismaticGuess}, 0.01);
  const auto r = gf::rootsearch::find_quasi_passive_gait(p, a0);
  EXPECT_LT(r.report.norm_inf, 1e-8);
  EXPECT_NEAR(r.gamma, 0.4466, 0.02);
  EXPECT_NEAR(r.a[p.layout.off_x0 + 1], 0.9713, 0.01);
  EXPECT_NEAR(r.a[p.layout.off_x0 + 5], 0.3835, 0.02);
  EXPECT_TRUE(r.warnings.empty());
  for (size_t i = 1; i < r.log.size(); ++i) EXPECT_LT(r.log[i].norm_2, r.log[i - 1].norm_2);
}

TEST(RootSearch, IterationCapRaisesWithReport) {
  const auto p = prismatic_qp();
  const Vector a0 = gf::rootsearch::build_guess_from_simulation(p, {kPrismaticGuess}, 0.01);
  gf::rootsearch::RootSearchConfig cfg;
  cfg.max_iters = 1;
  try {
    gf::rootsearch::find_quasi_passive_gait(p, a0, cfg);
    FAIL() << "expected ConvergenceError";
  } catch (const gf::ConvergenceError& e) {
    EXPECT_NE(e.report().find("periodicity"), std::string::npos);
  }
}

TEST(RootSearch, RejectsActuatedLayout) {
  const auto act = actuated_problem(prismatic_qp(), 0.4);
  EXPECT_THROW(gf::rootsearch::find_quasi_passive_gait(act, Vector::Zero(act.layout.size)), gf::DomainError);
}

TEST(RootSearch, SegmentedUsesLeastSquaresSteps) {
  const auto p = make_problem(gf::models::make_segmented_monopod(), {2, 1}, 18, Mode::kQuasiPassive,
                              {OperatingPoint::Kind::kAverageSpeed, 0.3}, gf::hybrid::InjectionKind::kMassProportional);
  const Vector a0 = gf::rootsearch::build_guess_from_simulation(
      p, {{0, 0.9613, -0.1234, -0.2, 0.55, 0.0364, -0.75, 0, -2.8275, 5.5042}}, 0.01);
  const auto r = gf::rootsearch::find_quasi_passive_gait(p, a0);
  EXPECT_LT(r.report.norm_inf, 1e-8);
  ASSERT_FALSE(r.warnings.empty());
  EXPECT_NE(r.warnings[0].find("least-squares"), std::string::npos);
  EXPECT_GT(r.gamma, 0.0);
}

TEST(Guess, RestingRobotNeverLiftsOff) {
  const auto p = prismatic_qp();
  const std::vector<double> rest{0, 1.0, 0, 0, 1.0, 0, 0, 0, 0, 0};
  try {
    gf::rootsearch::build_guess_from_simulation(p, {rest}, 0.0);
    FAIL() << "expected GuessError";
  } catch (const gf::GuessError& e) {
    EXPECT_NE(std::string(e.what()).find("candidate 0"), std::string::npos);
  }
}

TEST(Guess, LaterCandidateIsUsedWhenFirstFails) {
  const auto p = prismatic_qp();
  const std::vector<double> rest{0, 1.0, 0, 0, 1.0, 0, 0, 0, 0, 0};
  const Vector a0 = gf::rootsearch::build_guess_from_simulation(p, {rest, kPrismaticGuess}, 0.01);
  const auto c = unpack(p.layout, a0);
  EXPECT_EQ(c.x0, kPrismaticGuess);
  EXPECT_DOUBLE_EQ(c.gamma, 0.01);
}

TEST(Guess, QuadrupedBoundingSequence) {
  const auto p = make_problem(gf::models::make_sagittal_quadruped(), {2, 4, 3, 1}, 10, Mode::kQuasiPassive,
                              {OperatingPoint::Kind::kEnergyLevel, 1.3}, gf::hybrid::InjectionKind::kMassProportional);
  const Vector a0 = gf::rootsearch::build_guess_from_simulation(
      p,
      {{0, 1.2407, 0.1237, -0.3656, 0.7371, -0.3521, 0.7398, 0.3173, -1.2092, -0.4806, -1.7800, 4.3786, -0.4504,
        0.1995}},
      0.01);
  ASSERT_EQ(a0.size(), p.layout.size);
  const auto c = unpack(p.layout, a0);
  ASSERT_EQ(c.durations.size(), 4u);
  for (double T : c.durations) EXPECT_GT(T, 0.0);
}

TEST(Guess, EmptyCandidateListFails) {
  EXPECT_THROW(gf::rootsearch::build_guess_from_simulation(prismatic_qp(), {}, 0.01), gf::GuessError);
}
