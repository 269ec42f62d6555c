#include "lzcontrol/objective.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lzcontrol/errors.hpp"

namespace lzcontrol {

GateTarget GateTarget::z_rotation(double phi) {
  if (!std::isfinite(phi)) throw InvalidArgument("z_rotation target: angle must be finite");
  GateTarget t;
  t.gate = lzcontrol::z_rotation(phi);
  t.angle = phi;
  if (phi == std::numbers::pi / 2) {
    t.label = TargetLabel::z_pi_2;
  } else if (phi == std::numbers::pi) {
    t.label = TargetLabel::z_pi;
  } else {
    t.label = TargetLabel::custom;
  }
  return t;
}

GateTarget GateTarget::custom(const Unitary2& gate) {
  if (unitarity_error(gate) > 1e-12) throw InvalidArgument("custom target is not unitary");
  GateTarget t;
  t.gate = gate;
  t.label = TargetLabel::custom;
  return t;
}

std::string GateTarget::name() const {
  switch (label) {
    case TargetLabel::z_pi_2: return "z_pi_2";
    case TargetLabel::z_pi: return "z_pi";
    case TargetLabel::custom: break;
  }
  return angle != 0.0 ? "angle:" + std::to_string(angle) : "custom";
}

namespace {

double frobenius_sq(const Mat2& m) {
  double s = 0.0;
  for (const Complex& v : m.entries()) s += std::norm(v);
  return s;
}

double penalty_term(const ControlField& control, double alpha) {
  return alpha == 0.0 ? 0.0 : 0.5 * alpha * inner_product(control, control);
}

void check_config(const ObjectiveConfig& cfg) {
  if (!(cfg.alpha >= 0.0) || !std::isfinite(cfg.alpha)) throw InvalidArgument("alpha must be >= 0");
}

}  // namespace

double gate_distance(const Unitary2& target, const Unitary2& actual) {
  const Complex tr = hs_inner(target, actual);
  const double mag = std::abs(tr);
  if (mag == 0.0) return 1.0;
  // R = e^{i phi} V with phi = arg Tr(V^dagger U)
  const Mat2 aligned = (tr / mag) * target;
  const double d2 = frobenius_sq(actual - aligned) / (2.0 * kDimension);
  return std::clamp(std::sqrt(d2), 0.0, 1.0);
}

double fidelity(const Unitary2& target, const Unitary2& actual) {
  return std::clamp(std::abs(hs_inner(target, actual)) / kDimension, 0.0, 1.0);
}

ObjectiveValue evaluate_objective(const ControlField& control, const GateTarget& target,
                                  const ObjectiveConfig& cfg) {
  check_config(cfg);
  ObjectiveValue v;
  v.final_unitary = propagate(control, {cfg.epsilon0});
  v.distance = gate_distance(target.gate, v.final_unitary);
  v.penalty = penalty_term(control, cfg.alpha);
  v.objective = v.distance + v.penalty;
  return v;
}

double objective_J(const ControlField& control, const GateTarget& target, const ObjectiveConfig& cfg) {
  return evaluate_objective(control, target, cfg).objective;
}

ObjectiveGradient evaluate_gradient(const ControlField& control, const GateTarget& target,
                                    const ObjectiveConfig& cfg) {
  check_config(cfg);
  const TrajectoryResult traj = propagate_with_trajectory(control, {cfg.epsilon0});

  ObjectiveGradient out{.value = {}, .gradient = ControlField::zeros_like(control)};
  out.value.final_unitary = traj.final;
  out.value.distance = gate_distance(target.gate, traj.final);
  out.value.penalty = penalty_term(control, cfg.alpha);
  out.value.objective = out.value.distance + out.value.penalty;

  auto g = out.gradient.samples();
  if (out.value.distance < kDeltaFloor) {
    out.distance_converged = true;
  } else {
    const Complex tr = hs_inner(target.gate, traj.final);
    const double mag = std::abs(tr);
    if (mag < kPhaseTolerance) {
      throw UndefinedPhaseError("grad_J: |Tr(V^dagger U_tf)| = " + std::to_string(mag) +
                                " leaves the alignment phase undefined");
    }
    const Mat2 aligned = (tr / mag) * target.gate;
    const Mat2 a = traj.final.adjoint() * aligned - aligned.adjoint() * traj.final;
    const double scale = 1.0 / (4.0 * kDimension * out.value.distance);
    const auto w = control.weights();
    for (std::size_t k = 0; k < control.size(); ++k) {
      const Mat2& u = traj.midpoints[k];
      const Mat2 x = u.adjoint() * spin::z * u;
      g[k] = w[k] * scale * (a * x).trace().imag();
    }
  }
  if (cfg.alpha != 0.0) {
    for (std::size_t k = 0; k < control.size(); ++k) g[k] += cfg.alpha * control[k];
  }
  return out;
}

ControlField grad_J(const ControlField& control, const GateTarget& target, const ObjectiveConfig& cfg) {
  return evaluate_gradient(control, target, cfg).gradient;
}

}  // namespace lzcontrol
