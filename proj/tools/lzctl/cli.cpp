#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "lzcontrol/io.hpp"
#include "lzcontrol/units.hpp"

namespace lzctl {

namespace fs = std::filesystem;
using namespace lzcontrol;

GateTarget parse_target(const std::string& text) {
  if (text == "z_pi_2") return GateTarget::z_rotation(std::numbers::pi / 2);
  if (text == "z_pi") return GateTarget::z_rotation(std::numbers::pi);
  constexpr std::string_view prefix = "angle:";
  if (text.starts_with(prefix)) {
    const std::string value = text.substr(prefix.size());
    std::size_t used = 0;
    double phi = 0.0;
    try {
      phi = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size() || !std::isfinite(phi)) {
      throw InvalidArgument("bad target angle '" + value + "'");
    }
    return GateTarget::z_rotation(phi);
  }
  throw InvalidArgument("unknown target '" + text + "' (expected z_pi_2, z_pi or angle:<radians>)");
}

StateVector parse_state(const std::string& text) {
  if (text == "z+") return states::sigma_z_plus();
  if (text == "z-") return states::sigma_z_minus();
  if (text == "x+") return states::sigma_x_plus();
  if (text == "x-") return states::sigma_x_minus();
  throw InvalidArgument("unknown state '" + text + "' (expected z+, z-, x+ or x-)");
}

namespace {

const std::map<std::string, ConstraintMode> kConstraintModes{
    {"none", ConstraintMode::none}, {"reduced", ConstraintMode::reduced}, {"full", ConstraintMode::full}};

const std::map<std::string, StepRule> kStepRules{{"doubling", StepRule::doubling},
                                                 {"barzilai_borwein", StepRule::barzilai_borwein}};

const char* mode_name(ConstraintMode m) {
  switch (m) {
    case ConstraintMode::none: return "none";
    case ConstraintMode::reduced: return "reduced";
    case ConstraintMode::full: return "full";
  }
  return "unknown";
}

struct CliError {
  int code;
  std::string kind;
  std::string message;
  std::size_t line = 0;
};

void add_grid_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--samples", cfg.samples, "Time cells N")->capture_default_str();
  sub->add_option("--tf", cfg.final_time, "Final time (scaled units)")->capture_default_str();
  sub->add_option("--shape-p", cfg.shape_p, "Shape-function exponent p")->capture_default_str();
}

void add_target_option(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--target", cfg.target, "z_pi_2, z_pi or angle:<radians>")->capture_default_str();
}

void add_optimizer_options(CLI::App* sub, RunConfig& cfg) {
  auto& o = cfg.optimizer;
  sub->add_option("--epsilon0", cfg.epsilon0, "Drift estimate used during optimization")->capture_default_str();
  sub->add_option("--alpha", cfg.alpha, "Fluence weight")->capture_default_str();
  sub->add_option("--beta", o.beta, "Initial step size")->capture_default_str();
  sub->add_option("--beta-max", o.beta_max, "Step-size cap")->capture_default_str();
  sub->add_option("--step-rule", o.step_rule, "doubling or barzilai_borwein")
      ->transform(CLI::CheckedTransformer(kStepRules, CLI::ignore_case));
  sub->add_option("--max-iters", o.max_iters)->capture_default_str();
  sub->add_option("--tol-j", o.tol_J, "Plateau tolerance on J")->capture_default_str();
  sub->add_option("--tol-grad", o.tol_grad, "Search-direction norm tolerance")->capture_default_str();
  sub->add_option("--plateau-patience", o.plateau_patience)->capture_default_str();
}

void add_constraint_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--constraint-mode", cfg.optimizer.constraint_mode, "reduced or full")
      ->transform(CLI::CheckedTransformer(kConstraintModes, CLI::ignore_case));
}

void add_dp_options(CLI::App* sub, RunConfig& cfg) {
  auto& o = cfg.optimizer;
  sub->add_option("--dp-angle-weight", o.dp_angle_weight)->capture_default_str();
  sub->add_option("--dp-eta-tol", o.dp_eta_tol)->capture_default_str();
  sub->add_option("--dp-angle-tol", o.dp_angle_tol)->capture_default_str();
  sub->add_option("--dp-max-iters", o.dp_max_iters)->capture_default_str();
}

void add_output_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();
  sub->add_option("--config", cfg.config_path, "Read options from a TOML/INI file");
}

/// Applies `key = value` items from the config file to options of `sub` that the
/// command line left unset. Keys may sit at the top level or in a [<subcommand>] section.
void apply_config_file(CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  for (const auto& item : CLI::ConfigTOML().from_config(in)) {
    if (item.name == "++" || item.name == "--") continue;
    if (!item.parents.empty() && item.parents != std::vector<std::string>{sub->get_name()}) {
      throw CLI::ConversionError("config file section '" + item.parents.front() + "' does not match " + sub->get_name());
    }
    if (item.name == "config") throw CLI::ConversionError("config files cannot nest");
    CLI::Option* opt = sub->get_option_no_throw("--" + item.name);
    if (opt == nullptr) throw CLI::ConversionError("unknown config key '" + item.name + "'");
    if (opt->count() > 0) continue;
    opt->add_result(item.inputs);
    opt->run_callback();
  }
}

void validate(const RunConfig& cfg) {
  if (!(cfg.alpha >= 0.0) || !std::isfinite(cfg.alpha)) throw InvalidArgument("alpha must be >= 0");
  if (!std::isfinite(cfg.epsilon0)) throw InvalidArgument("epsilon0 must be finite");
  cfg.optimizer.validate();
  (void)TimeGrid(cfg.samples, cfg.final_time);
  (void)ShapeFunction(cfg.shape_p);
  (void)parse_target(cfg.target);
  if (cfg.mode == "sweep") {
    if (!(cfg.sweep.min < cfg.sweep.max)) throw InvalidArgument("sweep needs min < max");
    if (!(cfg.sweep.resolution > 0.0)) throw InvalidArgument("sweep resolution must be > 0");
    if (!(cfg.sweep.r_width > 0.0)) throw InvalidArgument("robustness width must be > 0");
  }
  if (cfg.mode == "ensemble") {
    if (cfg.ensemble.count == 0) throw InvalidArgument("ensemble count must be >= 1");
    if (!(cfg.ensemble.min <= cfg.ensemble.max)) throw InvalidArgument("ensemble needs min <= max");
    (void)parse_state(cfg.ensemble.initial);
    (void)parse_state(cfg.ensemble.target_state);
  }
}

ObjectiveConfig objective_config(const RunConfig& cfg) { return {.alpha = cfg.alpha, .epsilon0 = cfg.epsilon0}; }

ControlField load_or(const RunConfig& cfg, const auto& fallback) {
  if (!cfg.control_path.empty()) return read_control_csv(fs::path(cfg.control_path), ShapeFunction(cfg.shape_p));
  return fallback();
}

ControlField require_control(const RunConfig& cfg) {
  if (cfg.control_path.empty()) throw InvalidArgument(cfg.mode + " needs --control");
  return read_control_csv(fs::path(cfg.control_path), ShapeFunction(cfg.shape_p));
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string csv(auto writer) {
  std::ostringstream s;
  writer(s);
  return s.str();
}

void prepare_out(const RunConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw IoError("cannot create " + cfg.out_dir + ": " + ec.message());
  write_text_file(fs::path(cfg.out_dir) / "config.echo.json", dump(echo_config(cfg)));
}

void write_optimization(const RunConfig& cfg, const OptResult& r, nlohmann::json metrics) {
  const fs::path dir(cfg.out_dir);
  write_control_csv(dir / "control.csv", r.control);
  write_text_file(dir / "metrics.json", dump(metrics));
  write_text_file(dir / "history.csv", csv([&](std::ostream& s) { write_history_csv(s, r); }));
}

int run_optimize_oct(const RunConfig& cfg, std::ostream& out) {
  const GateTarget target = parse_target(cfg.target);
  const ControlField initial = load_or(cfg, [&] {
    return initial_square_pulse(target.angle, TimeGrid(cfg.samples, cfg.final_time), ShapeFunction(cfg.shape_p));
  });
  const OptResult r = optimize_oct(initial, target, objective_config(cfg), cfg.optimizer);
  nlohmann::json m = metrics_json(r);
  m["target"] = target.name();
  m["epsilon0"] = cfg.epsilon0;
  write_optimization(cfg, r, m);
  out << "optimize-oct: delta=" << format_double(r.distance) << " iters=" << r.iterations << "\n";
  return kOk;
}

int run_synth_dp(const RunConfig& cfg, std::ostream& out) {
  const GateTarget target = parse_target(cfg.target);
  const TimeGrid grid(cfg.samples, cfg.final_time);
  const ShapeFunction shape(cfg.shape_p);
  const ControlField c = load_or(cfg, [&] { return dp_ansatz(target.angle, grid, shape); });
  const ControlField dp = refine_dp(c, target.angle, cfg.optimizer);
  const OptResult r = summarize(dp, target, {.alpha = cfg.alpha, .epsilon0 = 0.0});
  nlohmann::json m = metrics_json(r);
  m["target"] = target.name();
  const fs::path dir(cfg.out_dir);
  write_control_csv(dir / "control.csv", dp);
  write_text_file(dir / "metrics.json", dump(m));
  out << "synth-dp: eta_r_norm=" << format_double(r.eta_r_norm) << "\n";
  return kOk;
}

int run_optimize_hybrid(const RunConfig& cfg, std::ostream& out) {
  const GateTarget target = parse_target(cfg.target);
  const ControlField initial = load_or(cfg, [&] {
    return synth_dp(target.angle, TimeGrid(cfg.samples, cfg.final_time), ShapeFunction(cfg.shape_p),
                    cfg.optimizer);
  });
  const ObjectiveConfig ocfg = objective_config(cfg);
  const OptResult r = optimize_hybrid(initial, target, ocfg, cfg.optimizer);
  nlohmann::json m = metrics_json(r);
  m["target"] = target.name();
  m["epsilon0"] = cfg.epsilon0;
  m["delta_initial"] = summarize(initial, target, ocfg).distance;
  write_optimization(cfg, r, m);
  write_control_csv(fs::path(cfg.out_dir) / "control.initial.csv", initial);
  out << "optimize-hybrid: delta=" << format_double(r.distance) << " eta_r_norm=" << format_double(r.eta_r_norm)
      << " iters=" << r.iterations << "\n";
  return kOk;
}

int run_sweep(const RunConfig& cfg, std::ostream& out) {
  const GateTarget target = parse_target(cfg.target);
  const ControlField c = require_control(cfg);
  SweepResult s = epsilon_sweep(c, target, cfg.sweep.min, cfg.sweep.max, cfg.sweep.resolution, cfg.jobs);
  s.source = cfg.control_path;
  const fs::path dir(cfg.out_dir);
  write_text_file(dir / "sweep.csv", csv([&](std::ostream& o) { write_sweep_csv(o, s); }));
  if (cfg.sweep.r_eps0) {
    const double r = robustness_R(c, target, *cfg.sweep.r_eps0, cfg.sweep.r_width, cfg.sweep.resolution, cfg.jobs);
    write_text_file(dir / "robustness.json", dump({{"target", target.name()},
                                                   {"eps0", *cfg.sweep.r_eps0},
                                                   {"delta_eps", cfg.sweep.r_width},
                                                   {"resolution", cfg.sweep.resolution},
                                                   {"R", r}}));
    out << "sweep: R=" << format_double(r) << "\n";
  }
  out << "sweep: " << s.epsilon.size() << " points\n";
  return kOk;
}

int run_ensemble(const RunConfig& cfg, std::ostream& out) {
  const ControlField c = require_control(cfg);
  const auto eps = ensemble_grid(cfg.ensemble.min, cfg.ensemble.max, cfg.ensemble.count);
  const EnsembleStats st = ensemble_state_fidelity(c, parse_state(cfg.ensemble.initial),
                                                   parse_state(cfg.ensemble.target_state), eps, cfg.jobs);
  const fs::path dir(cfg.out_dir);
  write_text_file(dir / "ensemble.csv", csv([&](std::ostream& o) { write_ensemble_csv(o, st); }));
  write_text_file(dir / "ensemble_stats.json", dump(stats_json(st)));
  out << "ensemble: mean=" << format_double(st.mean) << " std=" << format_double(st.std) << "\n";
  return kOk;
}

CliError classify(const std::exception& e) {
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) return {kParse, "parse", p->what(), p->line()};
  if (dynamic_cast<const IoError*>(&e) || dynamic_cast<const fs::filesystem_error*>(&e)) {
    return {kIo, "io", e.what()};
  }
  if (const auto* le = dynamic_cast<const Error*>(&e)) {
    switch (le->kind()) {
      case ErrorKind::invalid_argument: return {kInvalidArgument, to_string(le->kind()), e.what()};
      case ErrorKind::undefined_phase: return {kUndefinedPhase, to_string(le->kind()), e.what()};
      case ErrorKind::critical_point: return {kCriticalPoint, to_string(le->kind()), e.what()};
      case ErrorKind::non_convergence: return {kNonConvergence, to_string(le->kind()), e.what()};
      case ErrorKind::parse: return {kParse, to_string(le->kind()), e.what()};
    }
  }
  return {kInternal, "internal", e.what()};
}

int report(const CliError& e, const std::string& out_dir, std::ostream& err) {
  nlohmann::json j{{"error", e.kind}, {"message", e.message}, {"exit_code", e.code}};
  if (e.line) j["line"] = e.line;
  err << j.dump() << "\n";
  if (!out_dir.empty() && fs::is_directory(out_dir)) {
    std::ofstream f(fs::path(out_dir) / "error.json");
    f << j.dump(2) << "\n";
  }
  return e.code;
}

}  // namespace

nlohmann::json echo_config(const RunConfig& cfg) {
  const auto& o = cfg.optimizer;
  nlohmann::json j{{"mode", cfg.mode},
                   {"target", cfg.target},
                   {"epsilon0", cfg.epsilon0},
                   {"samples", cfg.samples},
                   {"tf", cfg.final_time},
                   {"alpha", cfg.alpha},
                   {"shape_p", cfg.shape_p},
                   {"control", cfg.control_path},
                   {"optimizer",
                    {{"beta", o.beta},
                     {"beta_max", o.beta_max},
                     {"beta_growth", o.beta_growth},
                     {"step_rule", to_string(o.step_rule)},
                     {"backtrack_factor", o.backtrack_factor},
                     {"max_backtracks", o.max_backtracks},
                     {"max_iters", o.max_iters},
                     {"tol_J", o.tol_J},
                     {"tol_grad", o.tol_grad},
                     {"plateau_patience", o.plateau_patience},
                     {"constraint_mode", mode_name(o.constraint_mode)},
                     {"restore_every", o.restore_every},
                     {"dp_angle_weight", o.dp_angle_weight},
                     {"dp_eta_tol", o.dp_eta_tol},
                     {"dp_angle_tol", o.dp_angle_tol},
                     {"dp_max_iters", o.dp_max_iters}}},
                   {"sweep",
                    {{"min", cfg.sweep.min},
                     {"max", cfg.sweep.max},
                     {"resolution", cfg.sweep.resolution},
                     {"r_width", cfg.sweep.r_width}}},
                   {"ensemble",
                    {{"min", cfg.ensemble.min},
                     {"max", cfg.ensemble.max},
                     {"count", cfg.ensemble.count},
                     {"initial", cfg.ensemble.initial},
                     {"target_state", cfg.ensemble.target_state}}}};
  j["sweep"]["r_eps0"] = cfg.sweep.r_eps0 ? nlohmann::json(*cfg.sweep.r_eps0) : nlohmann::json(nullptr);
  return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Landau-Zener qubit control: optimal control, decoupling pulses and robustness analysis", "lzctl"};
  app.require_subcommand(1);
  app.add_option("--jobs,-j", cfg.jobs, "Worker threads for sweeps and ensembles (0 = all cores)");

  auto* oct = app.add_subcommand("optimize-oct", "Steepest-descent optimal control from a smoothed square pulse");
  add_target_option(oct, cfg);
  add_grid_options(oct, cfg);
  add_optimizer_options(oct, cfg);
  oct->add_option("--control", cfg.control_path, "Initial control CSV instead of the square pulse");
  add_output_options(oct, cfg);

  auto* dp = app.add_subcommand("synth-dp", "Synthesize a decoupling pulse (eta^r = 0, pulse area = phi)");
  add_target_option(dp, cfg);
  add_grid_options(dp, cfg);
  add_constraint_options(dp, cfg);
  add_dp_options(dp, cfg);
  dp->add_option("--alpha", cfg.alpha, "Fluence weight used for the reported J")->capture_default_str();
  dp->add_option("--control", cfg.control_path, "Starting control CSV instead of the built-in ansatz");
  add_output_options(dp, cfg);

  auto* hyb = app.add_subcommand("optimize-hybrid", "Projected-gradient optimization on the decoupling level set");
  add_target_option(hyb, cfg);
  add_grid_options(hyb, cfg);
  add_optimizer_options(hyb, cfg);
  add_constraint_options(hyb, cfg);
  add_dp_options(hyb, cfg);
  hyb->add_option("--restore-every", cfg.optimizer.restore_every, "Re-impose the constraints every K steps (0 = off)")
      ->capture_default_str();
  hyb->add_option("--control", cfg.control_path, "Initial decoupling pulse CSV (synthesized when omitted)");
  add_output_options(hyb, cfg);

  auto* sweep = app.add_subcommand("sweep", "Gate distance over a uniform epsilon grid");
  add_target_option(sweep, cfg);
  sweep->add_option("--control", cfg.control_path, "Control CSV")->required();
  sweep->add_option("--shape-p", cfg.shape_p)->capture_default_str();
  sweep->add_option("--min", cfg.sweep.min)->capture_default_str();
  sweep->add_option("--max", cfg.sweep.max)->capture_default_str();
  sweep->add_option("--res", cfg.sweep.resolution)->capture_default_str();
  sweep->add_option("--r-eps0", cfg.sweep.r_eps0, "Also integrate Delta over [eps0 - w, eps0 + w]");
  sweep->add_option("--r-width", cfg.sweep.r_width, "Half-width w of the robustness interval")->capture_default_str();
  add_output_options(sweep, cfg);

  auto* ens = app.add_subcommand("ensemble", "State fidelity over an epsilon ensemble");
  ens->add_option("--control", cfg.control_path, "Control CSV")->required();
  ens->add_option("--shape-p", cfg.shape_p)->capture_default_str();
  ens->add_option("--min", cfg.ensemble.min)->capture_default_str();
  ens->add_option("--max", cfg.ensemble.max)->capture_default_str();
  ens->add_option("--count", cfg.ensemble.count)->capture_default_str();
  ens->add_option("--initial", cfg.ensemble.initial, "z+, z-, x+ or x-")->capture_default_str();
  ens->add_option("--target-state", cfg.ensemble.target_state, "z+, z-, x+ or x-")->capture_default_str();
  add_output_options(ens, cfg);

  std::string quantity = "time";
  std::string direction = "si";
  double value = 0.0;
  auto* conv = app.add_subcommand("convert", "Convert between scaled and SI units");
  conv->add_option("--quantity", quantity, "time, energy or angular-momentum")->capture_default_str();
  conv->add_option("--value", value)->required();
  conv->add_option("--to", direction, "si or scaled")
      ->check(CLI::IsMember({"si", "scaled"}))
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return report({kUsage, "usage", e.what()}, "", err);
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.mode = sub->get_name();
  if (!cfg.config_path.empty()) {
    try {
      apply_config_file(sub, cfg.config_path);
    } catch (const IoError& e) {
      return report({kIo, "io", e.what()}, "", err);
    } catch (const CLI::Error& e) {
      return report({kUsage, "usage", cfg.config_path + ": " + e.what()}, "", err);
    }
  }
  try {
    if (cfg.mode == "convert") {
      const auto q = units::parse_quantity(quantity);
      const auto d = direction == "si" ? units::Direction::scaled_to_si : units::Direction::si_to_scaled;
      out << format_double(units::convert(value, q, d)) << "\n";
      return kOk;
    }
    validate(cfg);
    prepare_out(cfg);
    if (cfg.mode == "optimize-oct") return run_optimize_oct(cfg, out);
    if (cfg.mode == "synth-dp") return run_synth_dp(cfg, out);
    if (cfg.mode == "optimize-hybrid") return run_optimize_hybrid(cfg, out);
    if (cfg.mode == "sweep") return run_sweep(cfg, out);
    if (cfg.mode == "ensemble") return run_ensemble(cfg, out);
    return report({kUsage, "usage", "unknown subcommand " + cfg.mode}, "", err);
  } catch (const NonConvergenceError& e) {
    try {
      if (fs::is_directory(cfg.out_dir)) write_control_csv(fs::path(cfg.out_dir) / "control.best.csv", e.best());
    } catch (const std::exception&) {
      // The error report below still goes out.
    }
    return report(classify(e), cfg.out_dir, err);
  } catch (const std::exception& e) {
    return report(classify(e), cfg.out_dir, err);
  }
}

}  // namespace lzctl
