#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace lzcontrol {

/// Uniform grid of `samples` cells over [0, final_time]. Controls are sampled at
/// the cell midpoints t_k = (k + 1/2) dt.
class TimeGrid {
 public:
  static constexpr std::size_t kDefaultSamples = 1024;

  TimeGrid() : TimeGrid(kDefaultSamples, 1.0) {}
  TimeGrid(std::size_t samples, double final_time);

  std::size_t samples() const noexcept { return samples_; }
  double final_time() const noexcept { return final_time_; }
  double dt() const noexcept { return final_time_ / static_cast<double>(samples_); }
  double midpoint(std::size_t k) const noexcept { return (static_cast<double>(k) + 0.5) * dt(); }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  std::size_t samples_;
  double final_time_;
};

/// s(t) = sin^p(pi t / t_f). p = 0 gives the flat weight s = 1.
struct ShapeFunction {
  double power = 1.0;

  ShapeFunction() = default;
  explicit ShapeFunction(double p);

  friend bool operator==(const ShapeFunction&, const ShapeFunction&) = default;
};

/// Evaluates s(t); throws InvalidArgument when t lies outside [0, t_f].
double shape_eval(const ShapeFunction& shape, double t, double final_time);

/// Real control C(t) sampled at the midpoints of a TimeGrid.
///
/// The shape-function values s(t_k) are computed once per (grid, shape) pair and
/// shared between copies, since every inner product needs them.
class ControlField {
 public:
  ControlField(const TimeGrid& grid, const ShapeFunction& shape);
  ControlField(const TimeGrid& grid, const ShapeFunction& shape, std::vector<double> samples);

  static ControlField zeros_like(const ControlField& other);

  const TimeGrid& grid() const noexcept { return grid_; }
  const ShapeFunction& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return samples_.size(); }

  double operator[](std::size_t k) const { return samples_[k]; }
  double& operator[](std::size_t k) { return samples_[k]; }

  std::span<const double> samples() const noexcept { return samples_; }
  std::span<double> samples() noexcept { return samples_; }
  /// s(t_k) at every midpoint; strictly positive.
  std::span<const double> weights() const noexcept { return *weights_; }

  /// this += a * x
  ControlField& axpy(double a, const ControlField& x);
  ControlField& operator*=(double a);

  bool same_space(const ControlField& other) const noexcept;

 private:
  TimeGrid grid_;
  ShapeFunction shape_;
  std::vector<double> samples_;
  std::shared_ptr<const std::vector<double>> weights_;
};

/// Throws InvalidArgument unless f and g live on the same grid with the same shape.
void require_same_space(const ControlField& f, const ControlField& g);

/// <f, g> = int f g / s dt (midpoint rule).
double inner_product(const ControlField& f, const ControlField& g);

/// sqrt(<f, f>).
double weighted_norm(const ControlField& f);

/// theta(t; C) = int_0^t C. `at_midpoints[k]` is the cumulative midpoint integral
/// up to t_k, `final_angle` is the full integral theta(t_f).
struct ThetaProfile {
  std::vector<double> at_midpoints;
  double final_angle = 0.0;
};

ThetaProfile theta_profile(const ControlField& control);

/// Phi[C] = int C^2 dt (unweighted).
double fluence(const ControlField& control);

double max_abs(const ControlField& control);

/// Smoothed rectangle: raised-cosine ramps over the first and last 10% of t_f,
/// flat top in between, scaled so the midpoint integral equals `area`.
ControlField initial_square_pulse(double area, const TimeGrid& grid, const ShapeFunction& shape);

}  // namespace lzcontrol
