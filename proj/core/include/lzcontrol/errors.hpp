#pragma once

#include <stdexcept>
#include <string>

namespace lzcontrol {

enum class ErrorKind {
  invalid_argument,
  undefined_phase,
  critical_point,
  non_convergence,
  parse,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorKind::invalid_argument, what) {}
};

/// Tr(V^dagger U) vanished, so the global phase aligning U with V is undefined.
/// Perturb the control and retry.
class UndefinedPhaseError : public Error {
 public:
  explicit UndefinedPhaseError(const std::string& what) : Error(ErrorKind::undefined_phase, what) {}
};

/// The constraint gradients are (numerically) linearly dependent.
class CriticalPointError : public Error {
 public:
  CriticalPointError(const std::string& what, double eigen_ratio)
      : Error(ErrorKind::critical_point, what), eigen_ratio_(eigen_ratio) {}
  double eigen_ratio() const noexcept { return eigen_ratio_; }

 private:
  double eigen_ratio_;
};

}  // namespace lzcontrol
