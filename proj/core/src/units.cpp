#include "lzcontrol/units.hpp"

#include <string>

#include "lzcontrol/errors.hpp"

namespace lzcontrol::units {

double si_factor(Quantity quantity) noexcept {
  switch (quantity) {
    case Quantity::time: return kTimeSeconds;
    case Quantity::energy: return kEnergyJoules;
    case Quantity::angular_momentum: return kAngularMomentumJouleSeconds;
  }
  return 1.0;
}

double convert(double value, Quantity quantity, Direction direction) {
  const double f = si_factor(quantity);
  return direction == Direction::scaled_to_si ? value * f : value / f;
}

Quantity parse_quantity(std::string_view name) {
  if (name == "time") return Quantity::time;
  if (name == "energy") return Quantity::energy;
  if (name == "angular-momentum" || name == "angular_momentum" || name == "hbar") {
    return Quantity::angular_momentum;
  }
  throw InvalidArgument("unknown physical quantity '" + std::string(name) + "'");
}

}  // namespace lzcontrol::units
