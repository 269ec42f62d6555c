#include "lzcontrol/constraints.hpp"

#include <cmath>
#include <string>

#include "detail/compensated_sum.hpp"
#include "lzcontrol/errors.hpp"

namespace lzcontrol {

using detail::CompensatedSum;

double ConstraintVector::reduced_norm() const {
  return std::hypot(values[0], values[1], values[2]);
}

double ConstraintVector::full_norm() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return std::sqrt(s);
}

std::size_t constraint_count(ConstraintMode mode) noexcept {
  switch (mode) {
    case ConstraintMode::none: return 0;
    case ConstraintMode::reduced: return 3;
    case ConstraintMode::full: return 5;
  }
  return 0;
}

std::array<double, 5> zeta(std::span<const double> theta, const TimeGrid& grid) {
  if (theta.size() != grid.samples()) {
    throw InvalidArgument("zeta: " + std::to_string(theta.size()) + " angles for a grid of " +
                          std::to_string(grid.samples()));
  }
  const double dt = grid.dt();
  CompensatedSum s1, s2, s3, s4, s5;
  CompensatedSum cos_before, sin_before;  // sums over l < k
  for (std::size_t k = 0; k < theta.size(); ++k) {
    const double sn = std::sin(theta[k]);
    const double cs = std::cos(theta[k]);
    const double t = grid.midpoint(k);
    s1.add(sn);
    s2.add(cs);
    s4.add(t * sn);
    s5.add(t * cs);
    // sum_{l<k} sin(theta_k - theta_l)
    s3.add(sn * cos_before.value() - cs * sin_before.value());
    cos_before.add(cs);
    sin_before.add(sn);
  }
  // The double integral over t1 > t2 and t1 < t2 contributes equally.
  return {dt * s1.value(), dt * s2.value(), 2.0 * dt * dt * s3.value(), dt * s4.value(), dt * s5.value()};
}

ConstraintVector eta(const ControlField& control) {
  const ThetaProfile theta = theta_profile(control);
  return {zeta(theta.at_midpoints, control.grid())};
}

std::array<ControlField, 5> grad_eta(const ControlField& control, GradientWeighting weighting) {
  const std::size_t n = control.size();
  const TimeGrid& grid = control.grid();
  const double dt = grid.dt();
  const ThetaProfile theta = theta_profile(control);

  std::vector<double> sn(n), cs(n);
  for (std::size_t k = 0; k < n; ++k) {
    sn[k] = std::sin(theta.at_midpoints[k]);
    cs[k] = std::cos(theta.at_midpoints[k]);
  }

  // Derivative of each zeta integrand with respect to theta(t_k).
  std::array<std::vector<double>, 5> density;
  for (auto& d : density) d.resize(n);
  CompensatedSum cos_total, sin_total;
  for (std::size_t k = 0; k < n; ++k) {
    cos_total.add(cs[k]);
    sin_total.add(sn[k]);
  }
  CompensatedSum cos_before, sin_before;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = grid.midpoint(k);
    density[0][k] = cs[k];
    density[1][k] = -sn[k];
    density[3][k] = t * cs[k];
    density[4][k] = -t * sn[k];
    // 2 int cos(theta(t_k) - theta(tau')) sgn(t_k - tau') dtau'
    const double cb = cos_before.value();
    const double sb = sin_before.value();
    const double ca = cos_total.value() - cb - cs[k];
    const double sa = sin_total.value() - sb - sn[k];
    density[2][k] = 2.0 * dt * (cs[k] * (cb - ca) + sn[k] * (sb - sa));
    cos_before.add(cs[k]);
    sin_before.add(sn[k]);
  }

  // Tail integrals int_{t_k}^{t_f}: full cells after k plus half of cell k,
  // mirroring the half-cell term in theta_profile.
  const auto w = control.weights();
  std::array<ControlField, 5> out{ControlField::zeros_like(control), ControlField::zeros_like(control),
                                  ControlField::zeros_like(control), ControlField::zeros_like(control),
                                  ControlField::zeros_like(control)};
  for (std::size_t i = 0; i < 5; ++i) {
    CompensatedSum after;
    auto g = out[i].samples();
    for (std::size_t k = n; k-- > 0;) {
      double tail = dt * (after.value() + 0.5 * density[i][k]);
      if (weighting == GradientWeighting::riesz) tail *= w[k];
      g[k] = tail;
      after.add(density[i][k]);
    }
  }
  return out;
}

std::vector<ControlField> constraint_gradients(const ControlField& control, ConstraintMode mode,
                                               GradientWeighting weighting) {
  const std::size_t m = constraint_count(mode);
  std::vector<ControlField> out;
  if (m == 0) return out;
  auto all = grad_eta(control, weighting);
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.push_back(std::move(all[i]));
  return out;
}

}  // namespace lzcontrol
