#pragma once

#include <vector>

#include "lzcontrol/control.hpp"
#include "lzcontrol/su2.hpp"

namespace lzcontrol {

/// H(t) = epsilon S_x + C(t) S_z (hbar = 1). Any finite epsilon is accepted.
struct HamiltonianParams {
  double epsilon = 0.0;
};

/// U(t_f; C): product of exp(-i dt (eps S_x + C_k S_z)) with later steps on the left.
Unitary2 propagate(const ControlField& control, const HamiltonianParams& params);

/// U(t_k; C) at every midpoint: the completed steps 0..k-1 followed by half of step k.
std::vector<Unitary2> trajectory(const ControlField& control, const HamiltonianParams& params);

struct TrajectoryResult {
  std::vector<Unitary2> midpoints;
  Unitary2 final;
};

/// trajectory() and propagate() from a single sweep over the control.
TrajectoryResult propagate_with_trajectory(const ControlField& control,
                                           const HamiltonianParams& params);

}  // namespace lzcontrol
