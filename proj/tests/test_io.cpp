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
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gaitforge/cli/cli.hpp"
#include "gaitforge/io/artifact.hpp"
#include "gaitforge/io/config.hpp"
#include "gaitforge/numerics/errors.hpp"

namespace gf = gaitforge;
namespace fs = std::filesystem;
using gf::io::parse_config;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("gaitforge_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

struct Run {
  int code;
  std::string out, err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = gf::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> csv_rows(const std::string& text, std::vector<std::string>* header = nullptr) {
  std::istringstream is(text);
  std::string line;
  std::getline(is, line);
  if (header) {
    std::istringstream hs(line);
    std::string h;
    while (std::getline(hs, h, ',')) header->push_back(h);
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const gf::ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, EmptyConfigIsPrismaticDefaults) {
  const auto c = parse_config("");
  EXPECT_EQ(c.model, "prismatic-monopod");
  EXPECT_EQ(c.sequence, (std::vector<int>{2, 1}));
  EXPECT_EQ(c.N, 10);
  EXPECT_EQ(c.op.kind, gf::transcription::OperatingPoint::Kind::kAverageSpeed);
  EXPECT_DOUBLE_EQ(c.op.value, 0.3);
  EXPECT_EQ(c.injection, gf::hybrid::InjectionKind::kMassProportional);
  EXPECT_DOUBLE_EQ(c.continuation.delta, 0.02);
  ASSERT_EQ(c.candidates.size(), 1u);
  EXPECT_DOUBLE_EQ(c.candidates[0][6], -0.55);
}

TEST(Config, ModelSelectsItsOwnDefaults) {
  const auto c = parse_config("[model]\nname = sagittal-quadruped\n");
  EXPECT_EQ(c.sequence, (std::vector<int>{2, 4, 3, 1}));
  EXPECT_EQ(c.op.kind, gf::transcription::OperatingPoint::Kind::kEnergyLevel);
  EXPECT_DOUBLE_EQ(c.op.value, 1.3);
  EXPECT_EQ(parse_config("", std::string("segmented-monopod")).N, 18);
}

TEST(Config, SectionsOverrideDefaults) {
  const auto c = parse_config(
      "# comment\n[model]\nk_L = 25\n[gait]\nn = 6\ninjection = neg-damping\n"
      "[operating_point]\nkind = energy\nvalue = 1.1\n[guess]\ncandidate = 0 1 0 0 1 0 -0.5 0 0 -0.5\n"
      "candidate2 = 0, 1.1, 0, 0, 1, 0, 0, 0, 0, 0\n[continuation]\ndelta = 0.5\n[output]\ndir = results\n");
  EXPECT_DOUBLE_EQ(c.params.at("k_L"), 25.0);
  EXPECT_EQ(c.N, 6);
  EXPECT_EQ(c.injection, gf::hybrid::InjectionKind::kNegativeDamping);
  EXPECT_EQ(c.op.kind, gf::transcription::OperatingPoint::Kind::kEnergyLevel);
  EXPECT_EQ(c.candidates.size(), 2u);
  EXPECT_DOUBLE_EQ(c.candidates[1][1], 1.1);
  EXPECT_DOUBLE_EQ(c.continuation.delta, 0.5);
  EXPECT_EQ(c.out_dir, "results");
  EXPECT_DOUBLE_EQ(c.build_model().params.at("k_L"), 25.0);
}

TEST(Config, ErrorsNameLineAndField) {
  EXPECT_NE(config_error("[gait]\n\nn = abc\n").find("line 3: field 'gait.n'"), std::string::npos);
  EXPECT_NE(config_error("[model]\nfoo = 1\n").find("line 2: field 'model.foo'"), std::string::npos);
  EXPECT_NE(config_error("[gait\n").find("line 1"), std::string::npos);
  EXPECT_NE(config_error("[nonsense]\nx = 1\n").find("unknown section"), std::string::npos);
  EXPECT_NE(config_error("[gait]\nwhatever = 1\n").find("unknown key"), std::string::npos);
  EXPECT_NE(config_error("[gait]\nsequence = 2 7\n").find("phase 7"), std::string::npos);
  EXPECT_NE(config_error("[gait]\nn = 1\n").find("N must be"), std::string::npos);
  EXPECT_NE(config_error("[guess]\ncandidate = 1 2 3\n").find("entries"), std::string::npos);
  EXPECT_NE(config_error("[model]\nname = biped\n").find("unknown model"), std::string::npos);
  EXPECT_NE(config_error("[operating_point]\nkind = torque\n").find("operating_point.kind"), std::string::npos);
}

TEST(Artifact, Fnv1aReferenceValues) {
  EXPECT_EQ(gf::io::fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(gf::io::fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(gf::io::fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(Artifact, RoundTripIsBitwiseAndCorruptionIsCaught) {
  const auto cfg = parse_config("");
  const auto p = cfg.quasi_passive_problem();
  gf::numerics::Vector a = gf::numerics::Vector::LinSpaced(p.layout.size, -1.0, 1.0 / 3.0);
  for (int k = 0; k < p.layout.m; ++k) a[p.layout.off_T + k] = 0.7;
  const auto g = gf::io::make_artifact(cfg, p, a, 0.0);
  const std::string text = gf::io::to_text(g);
  const auto back = gf::io::from_text(text);
  EXPECT_EQ(back.a, g.a);
  EXPECT_EQ(back.gamma, a[p.layout.off_gamma]);
  EXPECT_EQ(back.layout, p.layout.describe());
  EXPECT_EQ(back.problem().layout.size, p.layout.size);

  std::string bad = text;
  bad[bad.find("\"N\": 10")] = ' ';
  EXPECT_THROW(gf::io::from_text(bad), gf::io::ArtifactError);
  EXPECT_THROW(gf::io::from_text("{}"), gf::io::ArtifactError);
  EXPECT_THROW(gf::io::from_text("not json"), gf::io::ArtifactError);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"bogus"}).code, 2);
  EXPECT_EQ(cli({"find-gait", "--model", "biped"}).code, 2);
  EXPECT_EQ(cli({"find-gait", "--op-kind", "torque"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
  const auto dir = scratch("usage");
  write(dir / "bad.ini", "[gait]\nn = abc\n");
  const auto r = cli({"find-gait", "--config", (dir / "bad.ini").string(), "--out", dir.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
}

TEST(Cli, SimulateKnownGaitIsNearlyPeriodic) {
  const auto dir = scratch("simulate");
  write(dir / "run.ini",
        "[simulate]\nx0 = 0 0.9713 0.0676 0.1723 0.9999 0.3835 -0.5740 0.0082 -0.2443 -0.6487\ngamma = 0.4466\n"
        "eps = 0\n");
  const auto r = cli({"simulate", "--config", (dir / "run.ini").string(), "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::vector<std::string> header;
  const auto rows = csv_rows(slurp(dir / "simulate.csv"), &header);
  ASSERT_EQ(header.size(), 12u);
  EXPECT_EQ(header[0], "t");
  EXPECT_EQ(header[2], "x");
  // periodic states of the first row vs. the state the stride returns to
  const auto& first = rows.front();
  const auto& last = rows.back();
  for (size_t i = 3; i < header.size(); ++i) EXPECT_NEAR(first[i], last[i], 5e-2) << header[i];
}

TEST(Cli, BallisticDropFollowsParabola) {
  const auto dir = scratch("drop");
  write(dir / "drop.ini", "[gait]\nsequence = 1 2\n[simulate]\nx0 = 0 1.3 0 0 1 0 0 0 0 0\ngamma = 0\n");
  const auto r = cli({"simulate", "--config", (dir / "drop.ini").string(), "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(slurp(dir / "simulate.csv"));
  int checked = 0;
  for (const auto& row : rows) {
    if (row[1] != 1.0) break;
    EXPECT_NEAR(row[3], 1.3 - 0.5 * row[0] * row[0], 1e-10);
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(Cli, UnreachableSequenceIsNumericalFailure) {
  const auto dir = scratch("unreachable");
  write(dir / "rest.ini", "[guess]\ncandidate = 0 1 0 0 1 0 0 0 0 0\n");
  const auto r = cli({"find-gait", "--config", (dir / "rest.ini").string(), "--out", dir.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(slurp(dir / "find_gait_report.txt").find("FAILED"), std::string::npos);
}

TEST(Cli, FindGaitCheckContinuePipeline) {
  const auto dir = scratch("pipeline");
  const auto found = cli({"find-gait", "--out", dir.string()});
  ASSERT_EQ(found.code, 0) << found.err;
  EXPECT_NE(found.out.find("gamma* 0.44"), std::string::npos);
  ASSERT_TRUE(fs::exists(dir / "gait_qp.json"));
  ASSERT_TRUE(fs::exists(dir / "gait_qp.csv"));

  const auto checked = cli({"check", "--out", dir.string(), "--gait", (dir / "gait_qp.json").string()});
  EXPECT_EQ(checked.code, 0) << checked.out;
  EXPECT_EQ(checked.out.find("FAIL"), std::string::npos);

  const auto exported = cli({"export", "--out", dir.string(), "--gait", (dir / "gait_qp.json").string()});
  EXPECT_EQ(exported.code, 0) << exported.err;
  EXPECT_TRUE(fs::exists(dir / "gait_qp_simulated.csv"));

  // broken periodicity with a valid checksum
  auto g = gf::io::load_artifact((dir / "gait_qp.json").string());
  g.a[1] += 0.1;
  gf::io::save_artifact(g, (dir / "edited.json").string());
  const auto flagged = cli({"check", "--out", dir.string(), "--gait", (dir / "edited.json").string()});
  EXPECT_EQ(flagged.code, 1);
  EXPECT_NE(flagged.out.find("FAIL residual periodicity"), std::string::npos);

  std::string text = slurp(dir / "gait_qp.json");
  text[text.find("\"eps\": 0")+ 7] = '1';
  write(dir / "corrupt.json", text);
  const auto corrupt = cli({"continue", "--out", dir.string(), "--gait", (dir / "corrupt.json").string()});
  EXPECT_EQ(corrupt.code, 2);
  EXPECT_NE(corrupt.err.find("checksum"), std::string::npos);
}

TEST(Cli, CoarseContinuationWritesPathAndActuatedGait) {
  const auto dir = scratch("continue");
  ASSERT_EQ(cli({"find-gait", "--n", "4", "--out", dir.string()}).code, 0);
  const auto r = cli({"continue", "--n", "4", "--delta", "0.5", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  std::vector<std::string> header;
  const auto path = csv_rows(slurp(dir / "path.csv"), &header);
  EXPECT_EQ(header[1], "eps");
  EXPECT_EQ(header[4], "cost");
  EXPECT_EQ(header[5], "mu_min");
  EXPECT_EQ(header.back(), "t_flight");
  EXPECT_EQ(path.front()[4], 0.0);
  EXPECT_EQ(path.back()[1], 1.0);
  EXPECT_GT(path.back()[4], 0.0);
  for (const auto& row : path) EXPECT_GT(row[5], 0.0);

  std::vector<std::string> cols;
  csv_rows(slurp(dir / "gait_act.csv"), &cols);
  EXPECT_EQ(cols[cols.size() - 2], "u_alpha");
  EXPECT_EQ(cols.back(), "u_l");

  const auto checked = cli({"check", "--out", dir.string(), "--gait", (dir / "gait_act.json").string()});
  EXPECT_EQ(checked.code, 0) << checked.out;
  EXPECT_NE(checked.out.find("PASS injected energy"), std::string::npos);
  EXPECT_NE(checked.out.find("PASS second-order mu_min"), std::string::npos);

  const auto again = cli({"continue", "--out", dir.string(), "--gait", (dir / "gait_act.json").string()});
  EXPECT_EQ(again.code, 2);
}
