#pragma once

#include <string_view>

namespace lzcontrol::units {

// One scaled unit expressed in SI, for t_f = 20 ns.
inline constexpr double kTimeSeconds = 2.0e-8;
inline constexpr double kEnergyJoules = 5.273e-27;
inline constexpr double kAngularMomentumJouleSeconds = 1.055e-34;

enum class Quantity { time, energy, angular_momentum };
enum class Direction { scaled_to_si, si_to_scaled };

double si_factor(Quantity quantity) noexcept;

double convert(double value, Quantity quantity, Direction direction);

/// Accepts "time", "energy", "angular-momentum" (also "angular_momentum", "hbar").
/// Throws InvalidArgument for anything else.
Quantity parse_quantity(std::string_view name);

}  // namespace lzcontrol::units
