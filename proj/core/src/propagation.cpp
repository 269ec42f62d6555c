#include "lzcontrol/propagation.hpp"

#include <cmath>

#include "lzcontrol/errors.hpp"

namespace lzcontrol {
namespace {

void check_params(const HamiltonianParams& params) {
  if (!std::isfinite(params.epsilon)) throw InvalidArgument("propagate: epsilon must be finite");
}

}  // namespace

Unitary2 propagate(const ControlField& control, const HamiltonianParams& params) {
  check_params(params);
  const double dt = control.grid().dt();
  const double drift = dt * params.epsilon;
  Unitary2 u = Mat2::identity();
  for (double c : control.samples()) {
    u = su2_exp(drift, 0.0, dt * c) * u;
  }
  return u;
}

TrajectoryResult propagate_with_trajectory(const ControlField& control,
                                           const HamiltonianParams& params) {
  check_params(params);
  const double dt = control.grid().dt();
  const double half = 0.5 * dt;
  TrajectoryResult out;
  out.midpoints.reserve(control.size());
  Unitary2 u = Mat2::identity();
  for (double c : control.samples()) {
    const Unitary2 half_step = su2_exp(half * params.epsilon, 0.0, half * c);
    const Unitary2 mid = half_step * u;
    out.midpoints.push_back(mid);
    // full step from u, not from mid, so `final` matches propagate() bit for bit
    u = su2_exp(dt * params.epsilon, 0.0, dt * c) * u;
  }
  out.final = u;
  return out;
}

std::vector<Unitary2> trajectory(const ControlField& control, const HamiltonianParams& params) {
  return propagate_with_trajectory(control, params).midpoints;
}

}  // namespace lzcontrol
