#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "lzcontrol/analysis.hpp"
#include "lzcontrol/constraints.hpp"
#include "lzcontrol/control.hpp"
#include "lzcontrol/errors.hpp"
#include "lzcontrol/optimizer.hpp"

namespace lzcontrol {

/// Malformed input file. `line()` is 1-based; 0 when the error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(ErrorKind::parse, line ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits; lossless for doubles.
std::string format_double(double value);

/// Header `t,C`, one row per midpoint.
void write_control_csv(std::ostream& out, const ControlField& control);
void write_control_csv(const std::filesystem::path& path, const ControlField& control);

/// Reads a control written by write_control_csv. The grid is reconstructed from
/// the midpoint times, which must be uniform; the shape function is not part of
/// the file and is supplied by the caller.
ControlField read_control_csv(std::istream& in, const ShapeFunction& shape = ShapeFunction{});
ControlField read_control_csv(const std::filesystem::path& path,
                              const ShapeFunction& shape = ShapeFunction{});

/// `iter,J,delta,eta_r_norm`
void write_history_csv(std::ostream& out, const OptResult& result);
/// `epsilon,delta`
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);
/// `epsilon,fidelity,x,y,z`
void write_ensemble_csv(std::ostream& out, const EnsembleStats& stats);

/// {delta, eta_r_norm, fluence, theta_tf, max_abs_C, iters, eta, J, stop_reason}
nlohmann::json metrics_json(const OptResult& result);
/// {eta: [5], eta_r_norm}
nlohmann::json constraint_json(const ConstraintVector& eta);
/// {min, max, mean, std}
nlohmann::json stats_json(const EnsembleStats& stats);

/// Writes `text` to `path`, throwing IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace lzcontrol
