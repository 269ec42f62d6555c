#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "lzcontrol/control.hpp"
#include "lzcontrol/objective.hpp"
#include "lzcontrol/su2.hpp"

namespace lzcontrol {

/// Default epsilon resolution for sweeps and robustness integrals.
inline constexpr double kSweepResolution = 0.01;

struct SweepResult {
  std::vector<double> epsilon;
  std::vector<double> delta;
  std::string target_label;
  std::string source;
};

/// Delta[V, U_tf(C; eps)] on eps_min + k * resolution, k = 0..K with
/// K = round((eps_max - eps_min) / resolution). `workers` = 0 uses all cores.
SweepResult epsilon_sweep(const ControlField& control, const GateTarget& target, double eps_min,
                          double eps_max, double resolution, unsigned workers = 0);

/// R_phi = int_{eps0 - d}^{eps0 + d} Delta d eps with the midpoint rule at `resolution`.
double robustness_R(const ControlField& control, const GateTarget& target, double eps0,
                    double delta_eps, double resolution = kSweepResolution, unsigned workers = 0);

using StateVector = std::array<Complex, 2>;

namespace states {
/// S_z eigenbasis: |S_0> = |sigma_z+>, |S_1> = |sigma_z->.
StateVector sigma_z_plus();
StateVector sigma_z_minus();
StateVector sigma_x_plus();
StateVector sigma_x_minus();
}  // namespace states

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double norm() const;
};

/// (<sigma_x>, <sigma_y>, <sigma_z>). Throws InvalidArgument unless normalized to 1e-12.
BlochVector bloch_vector(const StateVector& state);

StateVector apply_unitary(const Unitary2& u, const StateVector& state);

/// Uhlmann fidelity |<a|b>| of pure states.
double state_fidelity(const StateVector& a, const StateVector& b);

struct EnsembleMember {
  double epsilon = 0.0;
  double fidelity = 0.0;
  BlochVector bloch;
};

struct EnsembleStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  /// Population standard deviation.
  double std = 0.0;
  std::vector<EnsembleMember> members;
};

/// `count` equally spaced values from lo to hi inclusive.
std::vector<double> ensemble_grid(double lo, double hi, std::size_t count);

/// Propagates `initial` under (C, eps) for each eps and compares to `target_state`.
EnsembleStats ensemble_state_fidelity(const ControlField& control, const StateVector& initial,
                                      const StateVector& target_state,
                                      std::span<const double> eps_list, unsigned workers = 0);

}  // namespace lzcontrol
