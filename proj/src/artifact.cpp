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

#include "gaitforge/io/artifact.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gaitforge/numerics/errors.hpp"
#include "gaitforge/transcription/gait_trajectory.hpp"
#include "json.hpp"

namespace gaitforge::io {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "gaitforge-gait";
constexpr int kVersion = 1;

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json body(const GaitArtifact& g) {
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["model"] = g.model;
  j["params"] = g.params;
  j["sequence"] = g.sequence;
  j["N"] = g.N;
  j["mode"] = transcription::mode_name(g.mode);
  j["operating_point"] = {{"kind", transcription::op_kind_name(g.op.kind)}, {"value", g.op.value}};
  j["injection"] = hybrid::injection_name(g.injection);
  j["cost"] = g.cost;
  j["gamma"] = g.gamma;
  j["eps"] = g.eps;
  j["layout"] = g.layout;
  j["a"] = g.a;
  j["lambda"] = g.lambda;
  return j;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

transcription::GaitProblem GaitArtifact::problem() const {
  transcription::CostSpec cs;
  cs.kind = cost;
  auto qp = transcription::make_problem(models::make_model(model, params), sequence, N,
                                        transcription::Mode::kQuasiPassive, op, injection, 0.0, cs);
  if (mode == transcription::Mode::kQuasiPassive) return qp;
  return transcription::actuated_problem(qp, gamma);
}

GaitArtifact make_artifact(const RunConfig& config, const transcription::GaitProblem& p,
                           const numerics::Vector& a, double eps, const numerics::Vector& lambda) {
  GaitArtifact g;
  g.model = config.model;
  g.params = config.params;
  g.sequence = p.layout.sequence;
  g.N = p.layout.N;
  g.mode = p.layout.mode;
  g.op = p.op;
  g.injection = p.injection;
  g.cost = p.cost.kind;
  g.gamma = transcription::injection_gamma(p, a);
  g.eps = eps;
  g.layout = p.layout.describe();
  g.a.assign(a.data(), a.data() + a.size());
  g.lambda.assign(lambda.data(), lambda.data() + lambda.size());
  return g;
}

std::string to_text(const GaitArtifact& g) {
  json j = body(g);
  j["checksum"] = "fnv1a64:" + hex64(fnv1a64(j.dump()));
  return j.dump(1) + "\n";
}

GaitArtifact from_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ArtifactError(std::string("gait artifact is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("checksum")) throw ArtifactError("gait artifact has no checksum");
  const std::string stored = j["checksum"].is_string() ? j["checksum"].get<std::string>() : "";
  j.erase("checksum");
  const std::string computed = "fnv1a64:" + hex64(fnv1a64(j.dump()));
  if (stored != computed)
    throw ArtifactError("gait artifact checksum mismatch (stored " + stored + ", computed " + computed + ")");

  GaitArtifact g;
  try {
    if (j.at("format") != kFormat || j.at("version") != kVersion)
      throw ArtifactError("unsupported gait artifact format");
    g.model = j.at("model").get<std::string>();
    g.params = j.at("params").get<models::ParamSet>();
    g.sequence = j.at("sequence").get<std::vector<int>>();
    g.N = j.at("N").get<int>();
    g.mode = transcription::parse_mode(j.at("mode").get<std::string>());
    g.op.kind = transcription::parse_op_kind(j.at("operating_point").at("kind").get<std::string>());
    g.op.value = j.at("operating_point").at("value").get<double>();
    g.injection = hybrid::parse_injection(j.at("injection").get<std::string>());
    g.cost = j.at("cost").get<std::string>();
    g.gamma = j.at("gamma").get<double>();
    g.eps = j.at("eps").get<double>();
    g.layout = j.at("layout").get<std::string>();
    g.a = j.at("a").get<std::vector<double>>();
    g.lambda = j.at("lambda").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw ArtifactError(std::string("gait artifact field error: ") + e.what());
  }

  const auto p = g.problem();
  if (p.layout.describe() != g.layout) throw ArtifactError("gait artifact layout does not match its problem");
  if (static_cast<int>(g.a.size()) != p.layout.size)
    throw ArtifactError("gait artifact decision vector has " + std::to_string(g.a.size()) + " entries, layout needs " +
                        std::to_string(p.layout.size));
  if (!g.lambda.empty() && static_cast<int>(g.lambda.size()) != p.layout.n_h())
    throw ArtifactError("gait artifact multiplier count does not match the residual");
  return g;
}

void save_artifact(const GaitArtifact& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << to_text(g);
}

GaitArtifact load_artifact(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read gait artifact '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str());
}

}  // namespace gaitforge::io
