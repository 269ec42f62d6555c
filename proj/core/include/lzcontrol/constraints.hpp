#pragma once

#include <array>
#include <span>
#include <vector>

#include "lzcontrol/control.hpp"

namespace lzcontrol {

/// eta = zeta o theta. Components 1..3 form the reduced vector used for the
/// closed-system problem; 4 and 5 are reported but only constrained in `full` mode.
struct ConstraintVector {
  std::array<double, 5> values{};

  std::array<double, 3> reduced() const { return {values[0], values[1], values[2]}; }
  double reduced_norm() const;
  double full_norm() const;
};

enum class ConstraintMode { none, reduced, full };

/// Number of constrained components: 0, 3 or 5.
std::size_t constraint_count(ConstraintMode mode) noexcept;

/// zeta_1..5 of a rotation-angle profile sampled at the midpoints of `grid`:
///   int sin(theta), int cos(theta),
///   int int sin(theta(t1) - theta(t2)) sgn(t1 - t2),
///   int t sin(theta), int t cos(theta)
/// all with the midpoint rule. The double integral is evaluated in O(N) through
/// sin(a - b) = sin a cos b - cos a sin b and running sums; sgn(0) = 0.
std::array<double, 5> zeta(std::span<const double> theta, const TimeGrid& grid);

ConstraintVector eta(const ControlField& control);

enum class GradientWeighting {
  /// Representatives under the weighted inner product (profiles times s(t)).
  riesz,
  /// Plain functional derivatives delta eta_i / delta C(t).
  unweighted,
};

/// grad eta_i for i = 1..5. Each is built from a tail integral of the
/// derivative of the zeta integrand (e.g. int_t^{t_f} cos theta for eta_1),
/// evaluated with the same half-cell convention as theta_profile so that the
/// result is the exact derivative of the discrete eta.
std::array<ControlField, 5> grad_eta(const ControlField& control,
                                     GradientWeighting weighting = GradientWeighting::riesz);

/// The first constraint_count(mode) gradients.
std::vector<ControlField> constraint_gradients(const ControlField& control, ConstraintMode mode,
                                               GradientWeighting weighting = GradientWeighting::riesz);

}  // namespace lzcontrol
