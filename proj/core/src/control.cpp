#include "lzcontrol/control.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lzcontrol/errors.hpp"

namespace lzcontrol {

TimeGrid::TimeGrid(std::size_t samples, double final_time) : samples_(samples), final_time_(final_time) {
  if (samples == 0) throw InvalidArgument("TimeGrid: need at least one sample");
  if (!(final_time > 0.0) || !std::isfinite(final_time)) {
    throw InvalidArgument("TimeGrid: final time must be positive and finite");
  }
}

ShapeFunction::ShapeFunction(double p) : power(p) {
  if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidArgument("ShapeFunction: exponent must be >= 0");
}

double shape_eval(const ShapeFunction& shape, double t, double final_time) {
  if (!(t >= 0.0 && t <= final_time)) {
    throw InvalidArgument("shape_eval: t = " + std::to_string(t) + " outside [0, t_f]");
  }
  if (shape.power == 0.0) return 1.0;
  const double base = std::sin(std::numbers::pi * t / final_time);
  return shape.power == 1.0 ? base : std::pow(base, shape.power);
}

namespace {

std::shared_ptr<const std::vector<double>> make_weights(const TimeGrid& grid, const ShapeFunction& shape) {
  auto w = std::make_shared<std::vector<double>>(grid.samples());
  for (std::size_t k = 0; k < grid.samples(); ++k) {
    (*w)[k] = shape_eval(shape, grid.midpoint(k), grid.final_time());
  }
  return w;
}

}  // namespace

ControlField::ControlField(const TimeGrid& grid, const ShapeFunction& shape)
    : ControlField(grid, shape, std::vector<double>(grid.samples(), 0.0)) {}

ControlField::ControlField(const TimeGrid& grid, const ShapeFunction& shape, std::vector<double> samples)
    : grid_(grid), shape_(shape), samples_(std::move(samples)), weights_(make_weights(grid, shape)) {
  if (samples_.size() != grid_.samples()) {
    throw InvalidArgument("ControlField: " + std::to_string(samples_.size()) + " samples for a grid of " +
                          std::to_string(grid_.samples()));
  }
  for (double v : samples_) {
    if (!std::isfinite(v)) throw InvalidArgument("ControlField: non-finite sample");
  }
}

ControlField ControlField::zeros_like(const ControlField& other) {
  ControlField out = other;
  std::fill(out.samples_.begin(), out.samples_.end(), 0.0);
  return out;
}

ControlField& ControlField::axpy(double a, const ControlField& x) {
  require_same_space(*this, x);
  for (std::size_t k = 0; k < samples_.size(); ++k) samples_[k] += a * x.samples_[k];
  return *this;
}

ControlField& ControlField::operator*=(double a) {
  for (double& v : samples_) v *= a;
  return *this;
}

bool ControlField::same_space(const ControlField& other) const noexcept {
  return grid_ == other.grid_ && shape_ == other.shape_;
}

void require_same_space(const ControlField& f, const ControlField& g) {
  if (!f.same_space(g)) throw InvalidArgument("control fields live on different grids or shapes");
}

double inner_product(const ControlField& f, const ControlField& g) {
  require_same_space(f, g);
  const auto w = f.weights();
  double sum = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) sum += f[k] * g[k] / w[k];
  return sum * f.grid().dt();
}

double weighted_norm(const ControlField& f) { return std::sqrt(inner_product(f, f)); }

ThetaProfile theta_profile(const ControlField& control) {
  const double dt = control.grid().dt();
  ThetaProfile out;
  out.at_midpoints.resize(control.size());
  double completed = 0.0;  // sum of C_j over finished cells
  for (std::size_t k = 0; k < control.size(); ++k) {
    out.at_midpoints[k] = dt * (completed + 0.5 * control[k]);
    completed += control[k];
  }
  out.final_angle = dt * completed;
  return out;
}

double fluence(const ControlField& control) {
  double sum = 0.0;
  for (double c : control.samples()) sum += c * c;
  return sum * control.grid().dt();
}

double max_abs(const ControlField& control) {
  double m = 0.0;
  for (double c : control.samples()) m = std::max(m, std::abs(c));
  return m;
}

ControlField initial_square_pulse(double area, const TimeGrid& grid, const ShapeFunction& shape) {
  if (!std::isfinite(area)) throw InvalidArgument("initial_square_pulse: area must be finite");
  constexpr double kRampFraction = 0.1;
  const double tf = grid.final_time();
  const double ramp = kRampFraction * tf;
  std::vector<double> profile(grid.samples());
  double integral = 0.0;
  for (std::size_t k = 0; k < grid.samples(); ++k) {
    const double t = grid.midpoint(k);
    const double edge = std::min(t, tf - t);
    profile[k] = edge >= ramp ? 1.0 : 0.5 * (1.0 - std::cos(std::numbers::pi * edge / ramp));
    integral += profile[k];
  }
  integral *= grid.dt();
  const double scale = area / integral;
  for (double& v : profile) v *= scale;
  return ControlField(grid, shape, std::move(profile));
}

}  // namespace lzcontrol
