#pragma once

#include <string>

#include "lzcontrol/control.hpp"
#include "lzcontrol/propagation.hpp"
#include "lzcontrol/su2.hpp"

namespace lzcontrol {

/// Hilbert-space dimension of the qubit.
inline constexpr int kDimension = 2;

/// Below this distance the distance term of grad_J is treated as converged.
inline constexpr double kDeltaFloor = 1e-9;

/// |Tr(V^dagger U_tf)| below this leaves the alignment phase undefined.
inline constexpr double kPhaseTolerance = 1e-12;

enum class TargetLabel { z_pi_2, z_pi, custom };

struct GateTarget {
  Unitary2 gate;
  TargetLabel label = TargetLabel::custom;
  /// Rotation angle for z-rotation targets (0 for custom gates).
  double angle = 0.0;

  /// Z_phi. The label is z_pi_2 / z_pi when phi matches exactly.
  static GateTarget z_rotation(double phi);
  /// Throws InvalidArgument when `gate` is not unitary to 1e-12.
  static GateTarget custom(const Unitary2& gate);

  std::string name() const;
};

struct ObjectiveConfig {
  /// Fluence weight; 0 disables the penalty.
  double alpha = 1e-6;
  /// Drift estimate used for propagation.
  double epsilon0 = 0.0;
};

/// Phase-invariant distance sqrt(1 - |Tr(V^dagger U)| / n), in [0, 1].
///
/// Evaluated as ||U - e^{i phi} V||_HS / sqrt(2n) with the optimal phase, which
/// is algebraically identical for unitaries but keeps full relative precision
/// when the distance is tiny.
double gate_distance(const Unitary2& target, const Unitary2& actual);

/// |Tr(V^dagger U)| / n = 1 - Delta^2.
double fidelity(const Unitary2& target, const Unitary2& actual);

struct ObjectiveValue {
  double objective = 0.0;  // J
  double distance = 0.0;   // Delta
  double penalty = 0.0;    // (alpha/2) int C^2 / s
  Unitary2 final_unitary;
};

ObjectiveValue evaluate_objective(const ControlField& control, const GateTarget& target,
                                  const ObjectiveConfig& cfg);

/// J[C] = Delta[V, U_tf(C)] + (alpha/2) int C^2/s dt.
double objective_J(const ControlField& control, const GateTarget& target, const ObjectiveConfig& cfg);

struct ObjectiveGradient {
  ObjectiveValue value;
  ControlField gradient;
  /// Delta fell below kDeltaFloor; only the alpha C term is present.
  bool distance_converged = false;
};

/// Value and Riesz gradient (weighted inner product) from one trajectory sweep.
/// Throws UndefinedPhaseError when |Tr(V^dagger U_tf)| < kPhaseTolerance.
ObjectiveGradient evaluate_gradient(const ControlField& control, const GateTarget& target,
                                    const ObjectiveConfig& cfg);

/// (grad J)(t) = s(t)/(4 n Delta) Im Tr{[U_tf^dagger R - R^dagger U_tf] U^dagger(t) S_z U(t)} + alpha C(t)
/// with R = exp(i phi_g) V, phi_g = arg Tr(V^dagger U_tf).
ControlField grad_J(const ControlField& control, const GateTarget& target, const ObjectiveConfig& cfg);

}  // namespace lzcontrol
