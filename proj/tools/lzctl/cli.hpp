#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lzcontrol/analysis.hpp"
#include "lzcontrol/objective.hpp"
#include "lzcontrol/optimizer.hpp"

namespace lzctl {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kIo = 3,
  kParse = 4,
  kInvalidArgument = 5,
  kUndefinedPhase = 6,
  kCriticalPoint = 7,
  kNonConvergence = 8,
};

struct SweepSettings {
  double min = 0.0;
  double max = 6.0;
  double resolution = lzcontrol::kSweepResolution;
  std::optional<double> r_eps0;
  double r_width = 0.5;
};

struct EnsembleSettings {
  double min = 1.5;
  double max = 2.5;
  std::size_t count = 21;
  std::string initial = "x+";
  std::string target_state = "x-";
};

struct RunConfig {
  std::string mode;
  std::string target = "z_pi_2";
  double epsilon0 = 0.0;
  std::size_t samples = lzcontrol::TimeGrid::kDefaultSamples;
  double final_time = 1.0;
  double alpha = 1e-6;
  double shape_p = 1.0;
  lzcontrol::OptimizerConfig optimizer;
  SweepSettings sweep;
  EnsembleSettings ensemble;
  std::string control_path;
  /// TOML/INI file whose keys fill options not given on the command line.
  std::string config_path;
  std::string out_dir = ".";
  unsigned jobs = 0;
};

/// "z_pi_2", "z_pi" or "angle:<radians>".
lzcontrol::GateTarget parse_target(const std::string& text);

/// "z+", "z-", "x+", "x-".
lzcontrol::StateVector parse_state(const std::string& text);

/// Every resolved setting that can influence the artifacts (worker count excluded).
nlohmann::json echo_config(const RunConfig& cfg);

/// Parses argv-style arguments (without the program name), runs the selected
/// workflow and returns the process exit code. Errors are reported on `err` as
/// a single JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lzctl
