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

#include "gaitforge/io/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "gaitforge/numerics/errors.hpp"
#include "gaitforge/transcription/layout.hpp"

namespace gaitforge::io {

namespace pt = boost::property_tree;

models::ModelSpec RunConfig::build_model() const { return models::make_model(model, params); }

transcription::GaitProblem RunConfig::quasi_passive_problem() const {
  return transcription::make_problem(build_model(), sequence, N, transcription::Mode::kQuasiPassive, op,
                                     injection, 0.0, cost);
}

RunConfig default_config(const std::string& model) {
  RunConfig c;
  c.model = model;
  if (model == "prismatic-monopod") {
    c.sequence = {2, 1};
    c.N = 10;
    c.op = {transcription::OperatingPoint::Kind::kAverageSpeed, 0.3};
    c.candidates = {{0, 1.0, 0, 0, 1.0, 0, -0.55, 0, 0, -0.55}};
  } else if (model == "segmented-monopod") {
    c.sequence = {2, 1};
    c.N = 18;
    c.op = {transcription::OperatingPoint::Kind::kAverageSpeed, 0.3};
    c.candidates = {{0, 0.9613, -0.1234, -0.2, 0.55, 0.0364, -0.75, 0, -2.8275, 5.5042}};
  } else if (model == "sagittal-quadruped") {
    c.sequence = {2, 4, 3, 1};
    c.N = 10;
    c.op = {transcription::OperatingPoint::Kind::kEnergyLevel, 1.3};
    c.candidates = {{0, 1.2407, 0.1237, -0.3656, 0.7371, -0.3521, 0.7398, 0.3173, -1.2092, -0.4806, -1.7800,
                     4.3786, -0.4504, 0.1995}};
  } else {
    throw ConfigError("unknown model '" + model +
                      "' (prismatic-monopod, segmented-monopod, sagittal-quadruped)");
  }
  return c;
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::string s = text;
  for (char& ch : s)
    if (ch == ',') ch = ' ';
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || !std::isfinite(v)) throw ConfigError("'" + tok + "' is not a finite number");
    out.push_back(v);
  }
  return out;
}

namespace {

// Line of each "section.key" for diagnostics; the parse itself is boost's.
std::map<std::string, int> key_lines(const std::string& text) {
  std::map<std::string, int> lines;
  std::istringstream is(text);
  std::string line, section;
  int n = 0;
  while (std::getline(is, line)) {
    ++n;
    const auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos || line[b] == ';' || line[b] == '#') continue;
    if (line[b] == '[') {
      const auto e = line.find(']', b);
      section = line.substr(b + 1, e == std::string::npos ? std::string::npos : e - b - 1);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(b, eq - b);
    key.erase(key.find_last_not_of(" \t") + 1);
    lines[section.empty() ? key : section + "." + key] = n;
  }
  return lines;
}

class Reader {
 public:
  Reader(const pt::ptree& tree, std::map<std::string, int> lines) : tree_(tree), lines_(std::move(lines)) {}

  [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
    const auto it = lines_.find(field);
    const std::string where = it == lines_.end() ? "" : "line " + std::to_string(it->second) + ": ";
    throw ConfigError("config " + where + "field '" + field + "': " + msg);
  }

  std::optional<std::string> text(const std::string& field) const {
    const auto v = tree_.get_optional<std::string>(pt::ptree::path_type(field, '.'));
    if (!v) return std::nullopt;
    return *v;
  }

  template <class F>
  auto convert(const std::string& field, F f) const -> std::optional<decltype(f(std::string()))> {
    const auto v = text(field);
    if (!v) return std::nullopt;
    try {
      return f(*v);
    } catch (const std::exception& e) {
      fail(field, e.what());
    }
  }

  std::optional<double> real(const std::string& field) const {
    return convert(field, [](const std::string& s) {
      const auto v = parse_reals(s);
      if (v.size() != 1) throw ConfigError("expected one number, got '" + s + "'");
      return v[0];
    });
  }

  std::optional<int> integer(const std::string& field) const {
    return convert(field, [](const std::string& s) {
      size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(s, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || s.find_first_not_of(" \t", used) != std::string::npos)
        throw ConfigError("expected an integer, got '" + s + "'");
      return v;
    });
  }

  std::optional<std::vector<double>> reals(const std::string& field) const {
    return convert(field, [](const std::string& s) { return parse_reals(s); });
  }

 private:
  const pt::ptree& tree_;
  std::map<std::string, int> lines_;
};

const std::map<std::string, std::set<std::string>> kKeys = {
    {"gait", {"sequence", "n", "injection", "gamma_init", "cost"}},
    {"operating_point", {"kind", "value"}},
    {"rootsearch", {"tol", "max_iters"}},
    {"continuation", {"delta", "tol", "min_step", "max_steps"}},
    {"simulate", {"x0", "gamma", "eps", "step", "t_max"}},
    {"output", {"dir"}},
};

}  // namespace

RunConfig parse_config(const std::string& text, const std::optional<std::string>& model_override) {
  pt::ptree tree;
  {
    std::istringstream is(text);
    try {
      pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
      throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
    }
  }
  const Reader rd(tree, key_lines(text));

  for (const auto& [section, body] : tree) {
    if (body.empty()) rd.fail(section, "key outside a section");
    if (section == "model" || section == "guess") continue;
    const auto it = kKeys.find(section);
    if (it == kKeys.end()) rd.fail(section, "unknown section");
    for (const auto& [key, _] : body)
      if (!it->second.count(key)) rd.fail(section + "." + key, "unknown key");
  }

  std::string model = model_override ? *model_override : rd.text("model.name").value_or("prismatic-monopod");
  RunConfig c;
  try {
    c = default_config(model);
  } catch (const ConfigError& e) {
    if (model_override) throw;
    rd.fail("model.name", e.what());
  }

  if (const auto* sec = tree.get_child_optional("model").get_ptr()) {
    const auto defaults = models::make_model(model).params;
    for (const auto& [key, _] : *sec) {
      if (key == "name") continue;
      if (!defaults.count(key)) rd.fail("model." + key, "unknown parameter of " + model);
      c.params[key] = *rd.real("model." + key);
    }
  }

  if (const auto v = rd.reals("gait.sequence")) {
    c.sequence.clear();
    for (double d : *v) {
      if (d != std::floor(d)) rd.fail("gait.sequence", "phase ids must be integers");
      c.sequence.push_back(static_cast<int>(d));
    }
  }
  if (const auto v = rd.integer("gait.n")) c.N = *v;
  if (const auto v = rd.convert("gait.injection", hybrid::parse_injection)) c.injection = *v;
  if (const auto v = rd.real("gait.gamma_init")) c.rootsearch.gamma_init = *v;
  if (const auto v = rd.text("gait.cost")) {
    if (*v != "xi-squared") rd.fail("gait.cost", "unknown cost '" + *v + "' (xi-squared)");
    c.cost.kind = *v;
  }
  if (const auto v = rd.convert("operating_point.kind", transcription::parse_op_kind)) c.op.kind = *v;
  if (const auto v = rd.real("operating_point.value")) c.op.value = *v;

  if (const auto* sec = tree.get_child_optional("guess").get_ptr()) {
    c.candidates.clear();
    for (const auto& [key, _] : *sec) {
      if (key.rfind("candidate", 0) != 0) rd.fail("guess." + key, "expected candidate, candidate2, ...");
      c.candidates.push_back(*rd.reals("guess." + key));
    }
  }

  if (const auto v = rd.real("rootsearch.tol")) c.rootsearch.tol = *v;
  if (const auto v = rd.integer("rootsearch.max_iters")) c.rootsearch.max_iters = *v;
  if (const auto v = rd.real("continuation.delta")) c.continuation.delta = *v;
  if (const auto v = rd.real("continuation.tol")) c.continuation.tol = *v;
  if (const auto v = rd.real("continuation.min_step")) c.continuation.min_step = *v;
  if (const auto v = rd.integer("continuation.max_steps")) c.continuation.max_steps = *v;
  if (const auto v = rd.reals("simulate.x0")) c.simulate.x0 = *v;
  if (const auto v = rd.real("simulate.gamma")) c.simulate.gamma = *v;
  if (const auto v = rd.real("simulate.eps")) c.simulate.eps = *v;
  if (const auto v = rd.real("simulate.step")) c.simulate.integrator.step = *v;
  if (const auto v = rd.real("simulate.t_max")) c.simulate.integrator.t_max = *v;
  if (const auto v = rd.text("output.dir")) c.out_dir = *v;

  c.rootsearch.N = c.N;
  try {
    validate(c);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path, const std::optional<std::string>& model_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), model_override);
}

void validate(const RunConfig& c) {
  if (c.N < 2) throw ConfigError("N must be at least 2, got " + std::to_string(c.N));
  const auto model = c.build_model();
  for (int id : c.sequence)
    if (!model.has_phase(id))
      throw ConfigError("phase " + std::to_string(id) + " does not exist in " + c.model);
  try {
    transcription::make_layout(model, c.sequence, c.N, transcription::Mode::kQuasiPassive);
  } catch (const GaitError& e) {
    throw ConfigError(e.what());
  }
  for (const auto& x : c.candidates)
    if (static_cast<int>(x.size()) != model.n_x())
      throw ConfigError("guess candidate has " + std::to_string(x.size()) + " entries, model state has " +
                        std::to_string(model.n_x()));
  if (!c.simulate.x0.empty() && static_cast<int>(c.simulate.x0.size()) != model.n_x())
    throw ConfigError("simulate.x0 has " + std::to_string(c.simulate.x0.size()) + " entries, model state has " +
                      std::to_string(model.n_x()));
  if (!(c.continuation.delta > 0.0)) throw ConfigError("continuation delta must be positive");
  if (!(c.rootsearch.tol > 0.0) || !(c.continuation.tol > 0.0)) throw ConfigError("tolerances must be positive");
}

}  // namespace gaitforge::io
