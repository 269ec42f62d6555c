#include "lzcontrol/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lzcontrol/errors.hpp"
#include "lzcontrol/parallel.hpp"
#include "lzcontrol/propagation.hpp"

namespace lzcontrol {

SweepResult epsilon_sweep(const ControlField& control, const GateTarget& target, double eps_min,
                          double eps_max, double resolution, unsigned workers) {
  if (!std::isfinite(eps_min) || !std::isfinite(eps_max) || !(eps_min < eps_max)) {
    throw InvalidArgument("epsilon_sweep: need finite eps_min < eps_max");
  }
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw InvalidArgument("epsilon_sweep: resolution must be > 0");
  }
  const auto cells = static_cast<std::size_t>(std::llround((eps_max - eps_min) / resolution));
  SweepResult out;
  out.target_label = target.name();
  out.epsilon.resize(cells + 1);
  out.delta.resize(cells + 1);
  for (std::size_t k = 0; k <= cells; ++k) out.epsilon[k] = eps_min + static_cast<double>(k) * resolution;
  parallel_for(cells + 1, workers, [&](std::size_t k) {
    out.delta[k] = gate_distance(target.gate, propagate(control, {out.epsilon[k]}));
  });
  return out;
}

double robustness_R(const ControlField& control, const GateTarget& target, double eps0, double delta_eps,
                    double resolution, unsigned workers) {
  if (!(delta_eps > 0.0) || !std::isfinite(delta_eps)) throw InvalidArgument("robustness_R: delta_eps must be > 0");
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw InvalidArgument("robustness_R: resolution must be > 0");
  }
  if (!std::isfinite(eps0)) throw InvalidArgument("robustness_R: eps0 must be finite");
  const auto cells = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(2.0 * delta_eps / resolution)));
  const double h = 2.0 * delta_eps / static_cast<double>(cells);
  const double lo = eps0 - delta_eps;
  std::vector<double> values(cells);
  parallel_for(cells, workers, [&](std::size_t j) {
    const double eps = lo + (static_cast<double>(j) + 0.5) * h;
    values[j] = gate_distance(target.gate, propagate(control, {eps}));
  });
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * h;
}

namespace states {
StateVector sigma_z_plus() { return {1.0, 0.0}; }
StateVector sigma_z_minus() { return {0.0, 1.0}; }
StateVector sigma_x_plus() { return {std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2}; }
StateVector sigma_x_minus() { return {std::numbers::sqrt2 / 2, -std::numbers::sqrt2 / 2}; }
}  // namespace states

double BlochVector::norm() const { return std::hypot(x, y, z); }

namespace {

void require_normalized(const StateVector& s, const char* who) {
  const double n2 = std::norm(s[0]) + std::norm(s[1]);
  if (!(std::abs(n2 - 1.0) <= 1e-12)) {
    throw InvalidArgument(std::string(who) + ": state is not normalized");
  }
}

}  // namespace

BlochVector bloch_vector(const StateVector& state) {
  require_normalized(state, "bloch_vector");
  const Complex coherence = std::conj(state[0]) * state[1];
  return {2.0 * coherence.real(), 2.0 * coherence.imag(), std::norm(state[0]) - std::norm(state[1])};
}

StateVector apply_unitary(const Unitary2& u, const StateVector& s) {
  return {u(0, 0) * s[0] + u(0, 1) * s[1], u(1, 0) * s[0] + u(1, 1) * s[1]};
}

double state_fidelity(const StateVector& a, const StateVector& b) {
  return std::abs(std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1]);
}

std::vector<double> ensemble_grid(double lo, double hi, std::size_t count) {
  if (count == 0) throw InvalidArgument("ensemble_grid: count must be >= 1");
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) throw InvalidArgument("ensemble_grid: need lo <= hi");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + static_cast<double>(i) * step;
  out.back() = hi;
  return out;
}

EnsembleStats ensemble_state_fidelity(const ControlField& control, const StateVector& initial,
                                      const StateVector& target_state, std::span<const double> eps_list,
                                      unsigned workers) {
  require_normalized(initial, "ensemble_state_fidelity");
  require_normalized(target_state, "ensemble_state_fidelity");
  if (eps_list.empty()) throw InvalidArgument("ensemble_state_fidelity: empty epsilon list");

  EnsembleStats stats;
  stats.members.resize(eps_list.size());
  parallel_for(eps_list.size(), workers, [&](std::size_t i) {
    const StateVector psi = apply_unitary(propagate(control, {eps_list[i]}), initial);
    stats.members[i] = {eps_list[i], std::min(1.0, state_fidelity(target_state, psi)), bloch_vector(psi)};
  });

  const double n = static_cast<double>(stats.members.size());
  stats.min = stats.members.front().fidelity;
  stats.max = stats.min;
  double sum = 0.0;
  for (const auto& m : stats.members) {
    stats.min = std::min(stats.min, m.fidelity);
    stats.max = std::max(stats.max, m.fidelity);
    sum += m.fidelity;
  }
  stats.mean = sum / n;
  double var = 0.0;
  for (const auto& m : stats.members) var += (m.fidelity - stats.mean) * (m.fidelity - stats.mean);
  stats.std = std::sqrt(var / n);
  return stats;
}

}  // namespace lzcontrol
