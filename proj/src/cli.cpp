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

#include "gaitforge/cli/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "gaitforge/continuation/continuation.hpp"
#include "gaitforge/hybrid/energy_audit.hpp"
#include "gaitforge/io/artifact.hpp"
#include "gaitforge/io/config.hpp"
#include "gaitforge/numerics/errors.hpp"
#include "gaitforge/rootsearch/rootsearch.hpp"
#include "gaitforge/simulate/simulate.hpp"
#include "gaitforge/transcription/gait_trajectory.hpp"
#include "gaitforge/transcription/layout.hpp"

namespace gaitforge::cli {

namespace fs = std::filesystem;
using numerics::Vector;

namespace {

struct Flags {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::string> model;
  std::optional<std::string> op_kind;
  std::optional<double> op_value;
  std::optional<int> n;
  std::optional<double> delta;
  std::optional<double> tol;
  std::optional<std::string> injection;
  std::string gait;
};

io::RunConfig resolve(const Flags& f) {
  io::RunConfig c = f.config.empty() ? io::parse_config("", f.model) : io::load_config(f.config, f.model);
  if (f.out) c.out_dir = *f.out;
  if (f.op_kind) c.op.kind = transcription::parse_op_kind(*f.op_kind);
  if (f.op_value) c.op.value = *f.op_value;
  if (f.n) c.N = c.rootsearch.N = *f.n;
  if (f.delta) c.continuation.delta = *f.delta;
  if (f.tol) c.rootsearch.tol = c.continuation.tol = *f.tol;
  if (f.injection) c.injection = hybrid::parse_injection(*f.injection);
  io::validate(c);
  return c;
}

std::string path_in(const io::RunConfig& c, const std::string& name) {
  fs::create_directories(c.out_dir);
  return (fs::path(c.out_dir) / name).string();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string state_lines(const models::ModelSpec& m, const std::vector<double>& x) {
  std::ostringstream os;
  const auto names = m.state_names();
  for (size_t i = 0; i < x.size(); ++i) os << "  " << std::left << std::setw(10) << names[i] << ' ' << fmt(x[i]) << '\n';
  return os.str();
}

std::string gait_summary(const transcription::GaitProblem& p, const Vector& a) {
  const auto c = transcription::unpack(p.layout, a);
  std::ostringstream os;
  os << "model " << p.model.name << '\n' << "layout " << p.layout.describe() << '\n';
  os << "gamma " << fmt(transcription::injection_gamma(p, a)) << '\n';
  os << "x0\n" << state_lines(p.model, c.x0);
  os << "durations";
  for (size_t k = 0; k < c.durations.size(); ++k)
    os << ' ' << p.model.phase(p.layout.sequence[k]).name << '=' << fmt(c.durations[k]);
  os << '\n';
  for (size_t i = 0; i < c.free.size(); ++i) os << "free " << p.model.free_params[i].name << ' ' << fmt(c.free[i]) << '\n';
  return os.str();
}

int cmd_simulate(const Flags& f, std::ostream& out) {
  const auto cfg = resolve(f);
  models::ModelSpec model;
  std::vector<int> sequence;
  std::vector<double> x0, free;
  std::vector<simulate::ControlSchedule> controls;
  simulate::HomotopySetting hom{0.0, cfg.simulate.eps, cfg.injection};
  if (!f.gait.empty()) {
    const auto g = io::load_artifact(f.gait);
    const auto p = g.problem();
    const Vector a = Eigen::Map<const Vector>(g.a.data(), static_cast<Eigen::Index>(g.a.size()));
    const auto c = transcription::unpack(p.layout, a);
    model = p.model;
    sequence = g.sequence;
    x0 = c.x0;
    free = c.free;
    controls = transcription::control_schedules(p, a);
    hom = {g.gamma, g.eps, g.injection};
  } else {
    model = cfg.build_model();
    sequence = cfg.sequence;
    x0 = cfg.simulate.x0.empty() ? cfg.candidates.at(0) : cfg.simulate.x0;
    free = model.free_param_defaults();
    hom.gamma = cfg.simulate.gamma.value_or(cfg.rootsearch.gamma_init);
  }
  const auto traj = simulate::simulate_stride(model, sequence, x0, controls, hom, free, cfg.simulate.integrator);
  const std::string csv = path_in(cfg, "simulate.csv");
  write_file(csv, traj.to_csv(model.state_names(), controls.empty() ? std::vector<std::string>{} : model.input_names));

  const auto& end = traj.events.back().post;
  double mismatch = 0.0;
  for (int i = 0; i < model.n_x(); ++i)
    if (model.periodic[i]) mismatch = std::max(mismatch, std::abs(end[i] - x0[i]));
  out << "simulate " << model.name << " gamma=" << fmt(hom.gamma) << " eps=" << fmt(hom.eps) << '\n';
  out << "stride duration " << fmt(traj.duration()) << '\n';
  out << "periodicity mismatch " << fmt(mismatch) << '\n';
  out << "wrote " << csv << '\n';
  return kSuccess;
}

int cmd_find_gait(const Flags& f, std::ostream& out) {
  const auto cfg = resolve(f);
  const auto qp = cfg.quasi_passive_problem();
  const std::string report_path = path_in(cfg, "find_gait_report.txt");
  std::ostringstream rep;
  rep << "find-gait " << cfg.model << " op=" << transcription::op_kind_name(cfg.op.kind) << ':' << fmt(cfg.op.value)
      << " N=" << cfg.N << " injection=" << hybrid::injection_name(cfg.injection) << '\n';
  try {
    const Vector a0 = rootsearch::build_guess_from_simulation(qp, cfg.candidates, cfg.rootsearch.gamma_init);
    const auto r = rootsearch::find_quasi_passive_gait(qp, a0, cfg.rootsearch);
    rep << "converged in " << r.iterations << " iterations\n";
    for (const auto& rec : r.log) rep << "  " << rec.to_text() << '\n';
    for (const auto& w : r.warnings) rep << "warning " << w << '\n';
    rep << "gamma* " << fmt(r.gamma) << '\n' << gait_summary(qp, r.a) << "residual\n" << r.report.to_text();
    const auto g = io::make_artifact(cfg, qp, r.a, 0.0);
    const std::string gait_path = path_in(cfg, "gait_qp.json");
    io::save_artifact(g, gait_path);
    const std::string csv = path_in(cfg, "gait_qp.csv");
    write_file(csv, transcription::collocation_trajectory(qp, r.a, 0.0).to_csv(qp.model.state_names()));
    rep << "wrote " << gait_path << '\n' << "wrote " << csv << '\n';
  } catch (const GaitError& e) {
    if (dynamic_cast<const ConfigError*>(&e)) throw;
    rep << "FAILED " << e.what() << '\n';
    if (const auto* ce = dynamic_cast<const ConvergenceError*>(&e)) rep << ce->report() << '\n';
    write_file(report_path, rep.str());
    out << rep.str();
    return kNumericalFailure;
  }
  write_file(report_path, rep.str());
  out << rep.str();
  return kSuccess;
}

std::string gait_path_or_default(const Flags& f, const io::RunConfig& cfg, const char* name) {
  return f.gait.empty() ? (fs::path(cfg.out_dir) / name).string() : f.gait;
}

int cmd_continue(const Flags& f, std::ostream& out) {
  const auto cfg = resolve(f);
  const auto g = io::load_artifact(gait_path_or_default(f, cfg, "gait_qp.json"));
  if (g.mode != transcription::Mode::kQuasiPassive) throw ConfigError("continue needs a quasi-passive gait artifact");
  const auto qp = g.problem();
  const Vector a_qp = Eigen::Map<const Vector>(g.a.data(), static_cast<Eigen::Index>(g.a.size()));
  const auto act = transcription::actuated_problem(qp, g.gamma);
  io::RunConfig gcfg = cfg;
  gcfg.model = g.model;
  gcfg.params = g.params;

  const std::string report_path = path_in(cfg, "continue_report.txt");
  std::ostringstream rep;
  rep << "continue " << g.model << " gamma=" << fmt(g.gamma) << " delta=" << fmt(cfg.continuation.delta)
      << " tol=" << fmt(cfg.continuation.tol) << '\n';
  try {
    const auto start = continuation::init_from_quasi_passive(act, qp, a_qp);
    const auto res = continuation::continue_to_actuated(act, start, cfg.continuation);
    const std::string path_csv = path_in(cfg, "path.csv");
    write_file(path_csv, res.log.to_csv());
    const auto& fp = res.final_point;
    const auto art = io::make_artifact(gcfg, act, fp.a, fp.eps, fp.lambda);
    const std::string gait_path = path_in(cfg, "gait_act.json");
    io::save_artifact(art, gait_path);
    const std::string csv = path_in(cfg, "gait_act.csv");
    write_file(csv, transcription::collocation_trajectory(act, fp.a, fp.eps)
                        .to_csv(act.model.state_names(), act.model.input_names));
    double mu = std::numeric_limits<double>::infinity();
    for (const auto& r : res.log.records) mu = std::min(mu, r.mu_min);
    rep << "points " << res.log.records.size() << " folds " << res.log.folds << " initial det sign "
        << res.log.initial_determinant_sign << '\n';
    rep << "eps " << fmt(fp.eps) << " r_inf " << fmt(fp.r_norm) << '\n';
    rep << "cost start " << fmt(res.log.records.front().cost) << " end " << fmt(res.log.records.back().cost) << '\n';
    rep << "min mu_min " << fmt(mu) << '\n';
    for (const auto& n : res.log.notes) rep << "note " << n << '\n';
    rep << gait_summary(act, fp.a);
    rep << "wrote " << path_csv << '\n' << "wrote " << gait_path << '\n' << "wrote " << csv << '\n';
  } catch (const GaitError& e) {
    if (dynamic_cast<const ConfigError*>(&e)) throw;
    rep << "FAILED " << e.what() << '\n';
    write_file(report_path, rep.str());
    out << rep.str();
    return kNumericalFailure;
  }
  write_file(report_path, rep.str());
  out << rep.str();
  return kSuccess;
}

int cmd_check(const Flags& f, std::ostream& out) {
  const auto cfg = resolve(f);
  const auto g = io::load_artifact(gait_path_or_default(f, cfg, "gait_qp.json"));
  const auto p = g.problem();
  const Vector a = Eigen::Map<const Vector>(g.a.data(), static_cast<Eigen::Index>(g.a.size()));
  std::ostringstream rep;
  bool ok = true;
  auto line = [&](bool pass, const std::string& name, double value, const std::string& bound) {
    ok = ok && pass;
    rep << (pass ? "PASS " : "FAIL ") << std::left << std::setw(24) << name << ' ' << fmt(value) << ' ' << bound
        << '\n';
  };
  rep << "check " << g.model << ' ' << transcription::mode_name(g.mode) << " eps=" << fmt(g.eps) << '\n';
  const auto report = transcription::gait_residuals(p, a, g.eps);
  for (const auto& b : report.blocks) line(b.norm_inf < 1e-6, "residual " + b.name, b.norm_inf, "< 1e-6");

  try {
    const auto traj = transcription::collocation_trajectory(p, a, g.eps);
    const auto c = transcription::unpack(p.layout, a);
    const auto au = hybrid::stride_energy_audit(p.model, traj, g.gamma, g.eps, g.injection, c.free);
    rep << "energy injected " << fmt(au.injected) << " dissipated " << fmt(au.dissipated) << " impact "
        << fmt(au.impact_loss) << " actuator " << fmt(au.actuator) << '\n';
    line(std::abs(au.balance()) < 1e-3, "energy balance", std::abs(au.balance()), "< 1e-3");
    if (g.mode == transcription::Mode::kActuated) {
      if (g.eps == 1.0) line(au.injected == 0.0, "injected energy", au.injected, "== 0");
      Vector lambda;
      if (g.lambda.empty()) {
        const auto jr = transcription::residual_jacobian(p, a, g.eps);
        lambda = numerics::solve_least_squares(jr.J.transpose(), -transcription::cost_gradient(p, a), 1e-12, true).x;
      } else {
        lambda = Eigen::Map<const Vector>(g.lambda.data(), static_cast<Eigen::Index>(g.lambda.size()));
      }
      const double mu = continuation::second_order_check(p, a, lambda, g.eps);
      line(mu > 0.0, "second-order mu_min", mu, "> 0");
    }
  } catch (const GaitError& e) {
    if (dynamic_cast<const ConfigError*>(&e)) throw;
    rep << "FAIL audit " << e.what() << '\n';
    ok = false;
  }
  write_file(path_in(cfg, "check_report.txt"), rep.str());
  out << rep.str();
  return ok ? kSuccess : kNumericalFailure;
}

int cmd_export(const Flags& f, std::ostream& out) {
  const auto cfg = resolve(f);
  const std::string src = gait_path_or_default(f, cfg, "gait_qp.json");
  const auto g = io::load_artifact(src);
  const auto p = g.problem();
  const Vector a = Eigen::Map<const Vector>(g.a.data(), static_cast<Eigen::Index>(g.a.size()));
  const auto inputs = g.mode == transcription::Mode::kActuated ? p.model.input_names : std::vector<std::string>{};
  const std::string stem = fs::path(src).stem().string();

  const std::string grid_csv = path_in(cfg, stem + "_collocation.csv");
  write_file(grid_csv, transcription::collocation_trajectory(p, a, g.eps).to_csv(p.model.state_names(), inputs));
  out << "wrote " << grid_csv << '\n';

  const auto c = transcription::unpack(p.layout, a);
  const auto traj = simulate::simulate_stride(p.model, g.sequence, c.x0, transcription::control_schedules(p, a),
                                              {g.gamma, g.eps, g.injection}, c.free, cfg.simulate.integrator);
  const std::string sim_csv = path_in(cfg, stem + "_simulated.csv");
  write_file(sim_csv, traj.to_csv(p.model.state_names(), inputs));
  out << "wrote " << sim_csv << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"gaitforge: periodic gaits of hybrid legged models", "gaitforge"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--config", f.config, "run configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", f.out, "output directory");
  app.add_option("--model", f.model, "model name")
      ->check(CLI::IsMember({"prismatic-monopod", "segmented-monopod", "sagittal-quadruped"}));
  app.add_option("--op-kind", f.op_kind, "operating point kind")->check(CLI::IsMember({"speed", "energy"}));
  app.add_option("--op-value", f.op_value, "operating point value");
  app.add_option("--n", f.n, "collocation intervals per phase");
  app.add_option("--delta", f.delta, "continuation step in psi-arclength");
  app.add_option("--tol", f.tol, "root-search and corrector tolerance");
  app.add_option("--injection", f.injection, "virtual energy injection")
      ->check(CLI::IsMember({"mass-prop", "neg-damping", "energy-grad"}));

  auto* sim = app.add_subcommand("simulate", "simulate one stride and write its CSV");
  auto* find = app.add_subcommand("find-gait", "root search for a quasi-passive gait");
  auto* cont = app.add_subcommand("continue", "continue a quasi-passive gait to the actuated one");
  auto* check = app.add_subcommand("check", "audit a gait artifact");
  auto* exp = app.add_subcommand("export", "write CSVs of a gait artifact");
  sim->add_option("--gait", f.gait, "start from a gait artifact")->check(CLI::ExistingFile);
  for (auto* sc : {cont, check, exp}) sc->add_option("--gait", f.gait, "gait artifact")->check(CLI::ExistingFile);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (sim->parsed()) return cmd_simulate(f, out);
    if (find->parsed()) return cmd_find_gait(f, out);
    if (cont->parsed()) return cmd_continue(f, out);
    if (check->parsed()) return cmd_check(f, out);
    return cmd_export(f, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const GaitError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace gaitforge::cli
