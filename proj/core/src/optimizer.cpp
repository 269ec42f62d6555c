#include "lzcontrol/optimizer.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lzcontrol/projection.hpp"

namespace lzcontrol {

const char* to_string(StepRule rule) noexcept {
  switch (rule) {
    case StepRule::doubling: return "doubling";
    case StepRule::barzilai_borwein: return "barzilai_borwein";
  }
  return "unknown";
}

const char* to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::plateau: return "plateau";
    case StopReason::gradient_tolerance: return "gradient_tolerance";
    case StopReason::max_iterations: return "max_iterations";
    case StopReason::line_search_exhausted: return "line_search_exhausted";
  }
  return "unknown";
}

void OptimizerConfig::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(beta)) throw InvalidArgument("beta must be > 0");
  if (!positive(beta_max) || beta_max < beta) throw InvalidArgument("beta_max must be >= beta");
  if (!(beta_growth >= 1.0)) throw InvalidArgument("beta_growth must be >= 1");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
    throw InvalidArgument("backtrack_factor must lie in (0, 1)");
  }
  if (max_backtracks < 0) throw InvalidArgument("max_backtracks must be >= 0");
  if (max_iters < 0) throw InvalidArgument("max_iters must be >= 0");
  if (!positive(tol_J)) throw InvalidArgument("tol_J must be > 0");
  if (plateau_patience < 1) throw InvalidArgument("plateau_patience must be >= 1");
  if (!positive(tol_grad)) throw InvalidArgument("tol_grad must be > 0");
  if (restore_every < 0) throw InvalidArgument("restore_every must be >= 0");
  if (!positive(dp_angle_weight)) throw InvalidArgument("dp_angle_weight must be > 0");
  if (!positive(dp_eta_tol) || !positive(dp_angle_tol)) throw InvalidArgument("DP tolerances must be > 0");
  if (dp_max_iters < 1) throw InvalidArgument("dp_max_iters must be >= 1");
}

OptResult summarize(const ControlField& control, const GateTarget& target, const ObjectiveConfig& cfg) {
  const ObjectiveValue v = evaluate_objective(control, target, cfg);
  OptResult r{.control = control, .eta = {}, .history = {}};
  r.objective = v.objective;
  r.distance = v.distance;
  r.eta = eta(control);
  r.eta_r_norm = r.eta.reduced_norm();
  r.fluence = fluence(control);
  r.theta_final = theta_profile(control).final_angle;
  r.max_abs_control = max_abs(control);
  return r;
}

namespace {

ObjectiveGradient gradient_at(const ControlField& c, const GateTarget& target, const ObjectiveConfig& cfg,
                              int iteration) {
  try {
    return evaluate_gradient(c, target, cfg);
  } catch (const UndefinedPhaseError& e) {
    throw UndefinedPhaseError(std::string(e.what()) + " at iteration " + std::to_string(iteration));
  }
}

// Minimum-norm Gauss-Newton iteration on residuals built by `residuals`, which
// fills r and the matching Riesz gradients. Returns the last iterate; stops when
// the squared residual no longer decreases or drops below `floor`.
template <class Residuals>
ControlField gauss_newton(ControlField c, int max_iters, Residuals&& residuals) {
  constexpr double kFloor = 1e-30;
  constexpr int kMaxHalvings = 40;
  std::vector<double> r;
  std::vector<ControlField> grads;
  residuals(c, r, grads);
  auto squared = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
  };
  double p = squared(r);
  for (int it = 0; it < max_iters && p > kFloor; ++it) {
    const Gramian g = gramian(grads);
    const std::vector<double> x = g.solve(r);
    ControlField step = ControlField::zeros_like(c);
    for (std::size_t i = 0; i < grads.size(); ++i) step.axpy(x[i], grads[i]);

    bool improved = false;
    double lambda = 1.0;
    std::vector<double> r_trial;
    std::vector<ControlField> g_trial;
    for (int h = 0; h <= kMaxHalvings; ++h, lambda *= 0.5) {
      ControlField trial = c;
      trial.axpy(-lambda, step);
      residuals(trial, r_trial, g_trial);
      const double p_trial = squared(r_trial);
      if (p_trial < p) {
        c = std::move(trial);
        r = std::move(r_trial);
        grads = std::move(g_trial);
        p = p_trial;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return c;
}

// Pulls a control back onto eta = 0 (reduced or full) without an area condition.
ControlField restore_constraints(const ControlField& c, ConstraintMode mode) {
  return gauss_newton(c, 20, [mode](const ControlField& x, std::vector<double>& r,
                                    std::vector<ControlField>& grads) {
    const ConstraintVector e = eta(x);
    grads = constraint_gradients(x, mode);
    r.assign(e.values.begin(), e.values.begin() + static_cast<std::ptrdiff_t>(grads.size()));
  });
}

ControlField search_direction(const ControlField& c, const ObjectiveGradient& ev, ConstraintMode mode) {
  if (mode == ConstraintMode::none) return ev.gradient;
  return project_gradient(ev.gradient, constraint_gradients(c, mode));
}

OptResult descend(const ControlField& initial, const GateTarget& target, const ObjectiveConfig& cfg,
                  const OptimizerConfig& ocfg, ConstraintMode mode) {
  ocfg.validate();
  ControlField c = initial;
  ObjectiveGradient ev = gradient_at(c, target, cfg, 0);
  ControlField direction = search_direction(c, ev, mode);

  std::vector<IterationRecord> history;
  history.push_back({ev.value.objective, ev.value.distance, eta(c).reduced_norm()});

  double step = ocfg.beta;
  int iterations = 0;
  int flat_steps = 0;
  StopReason reason = StopReason::max_iterations;
  while (iterations < ocfg.max_iters) {
    const double dd = inner_product(direction, direction);
    if (std::sqrt(dd) < ocfg.tol_grad) {
      reason = StopReason::gradient_tolerance;
      break;
    }

    bool accepted = false;
    ControlField trial = c;
    double trial_step = step;
    for (int b = 0; b <= ocfg.max_backtracks; ++b, trial_step *= ocfg.backtrack_factor) {
      trial = c;
      trial.axpy(-trial_step, direction);
      if (objective_J(trial, target, cfg) < ev.value.objective) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      reason = StopReason::line_search_exhausted;
      break;
    }

    const double previous = ev.value.objective;
    c = std::move(trial);
    ++iterations;
    bool restored = false;
    if (mode != ConstraintMode::none && ocfg.restore_every > 0 && iterations % ocfg.restore_every == 0) {
      c = restore_constraints(c, mode);
      restored = true;
    }
    ev = gradient_at(c, target, cfg, iterations);
    history.push_back({ev.value.objective, ev.value.distance, eta(c).reduced_norm()});
    ControlField next = search_direction(c, ev, mode);

    step = trial_step * ocfg.beta_growth;
    if (ocfg.step_rule == StepRule::barzilai_borwein && !restored) {
      // s = -h d, y = d' - d:  <s,s>/<s,y> = h <d,d> / (<d,d> - <d,d'>).
      const double curvature = dd - inner_product(direction, next);
      if (curvature > 0.0) step = trial_step * dd / curvature;
    }
    step = std::min(step, ocfg.beta_max);
    direction = std::move(next);

    flat_steps = !restored && previous - ev.value.objective < ocfg.tol_J ? flat_steps + 1 : 0;
    if (flat_steps >= ocfg.plateau_patience) {
      reason = StopReason::plateau;
      break;
    }
  }

  OptResult result = summarize(c, target, cfg);
  result.iterations = iterations;
  result.stop_reason = reason;
  result.history = std::move(history);
  return result;
}

}  // namespace

OptResult optimize_oct(const ControlField& initial, const GateTarget& target, const ObjectiveConfig& cfg,
                       const OptimizerConfig& ocfg) {
  return descend(initial, target, cfg, ocfg, ConstraintMode::none);
}

OptResult optimize_hybrid(const ControlField& initial_dp, const GateTarget& target,
                          const ObjectiveConfig& cfg, const OptimizerConfig& ocfg) {
  return descend(initial_dp, target, cfg, ocfg, ocfg.constraint_mode);
}

ControlField refine_dp(const ControlField& start, double phi, const OptimizerConfig& ocfg) {
  ocfg.validate();
  if (!std::isfinite(phi)) throw InvalidArgument("refine_dp: angle must be finite");
  const ConstraintMode mode =
      ocfg.constraint_mode == ConstraintMode::full ? ConstraintMode::full : ConstraintMode::reduced;
  const double root_w = std::sqrt(ocfg.dp_angle_weight);

  ControlField angle_gradient = ControlField::zeros_like(start);
  {
    // theta(t_f) = int C, whose Riesz representative is s(t).
    const auto w = start.weights();
    auto g = angle_gradient.samples();
    for (std::size_t k = 0; k < g.size(); ++k) g[k] = root_w * w[k];
  }

  ControlField c = gauss_newton(start, ocfg.dp_max_iters,
                                [&](const ControlField& x, std::vector<double>& r, std::vector<ControlField>& grads) {
                                  const ConstraintVector e = eta(x);
                                  grads = constraint_gradients(x, mode);
                                  r.assign(e.values.begin(),
                                           e.values.begin() + static_cast<std::ptrdiff_t>(grads.size()));
                                  r.push_back(root_w * (theta_profile(x).final_angle - phi));
                                  grads.push_back(angle_gradient);
                                });

  const double eta_norm = mode == ConstraintMode::full ? eta(c).full_norm() : eta(c).reduced_norm();
  const double angle_err = std::abs(theta_profile(c).final_angle - phi);
  if (!(eta_norm < ocfg.dp_eta_tol) || !(angle_err < ocfg.dp_angle_tol)) {
    std::ostringstream msg;
    msg << "decoupling-pulse synthesis did not converge: ||eta|| = " << eta_norm
        << ", |theta(t_f) - phi| = " << angle_err;
    throw NonConvergenceError(msg.str(), std::move(c));
  }
  return c;
}

ControlField dp_ansatz(double phi, const TimeGrid& grid, const ShapeFunction& shape) {
  if (!std::isfinite(phi)) throw InvalidArgument("dp_ansatz: angle must be finite");
  // Sine-series coefficients found by a seeded scan over refine_dp starts; they
  // refine to low-fluence pulses for both pi/2 and pi.
  static constexpr std::array<double, 5> lobes{8.0508, -3.7597, -7.3573, 0.9178, -7.5156};
  const double tf = grid.final_time();
  std::vector<double> c(grid.samples());
  double area = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double t = grid.midpoint(k);
    double v = 0.0;
    for (std::size_t m = 0; m < lobes.size(); ++m) {
      v += lobes[m] / tf * std::sin(static_cast<double>(m + 1) * std::numbers::pi * t / tf);
    }
    c[k] = v;
    area += v;
  }
  area *= grid.dt();
  // Fix the pulse area with the fundamental lobe, whose discrete integral is known.
  double fundamental = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) fundamental += std::sin(std::numbers::pi * grid.midpoint(k) / tf);
  fundamental *= grid.dt();
  const double b1 = (phi - area) / fundamental;
  for (std::size_t k = 0; k < c.size(); ++k) c[k] += b1 * std::sin(std::numbers::pi * grid.midpoint(k) / tf);
  return ControlField(grid, shape, std::move(c));
}

ControlField synth_dp(double phi, const TimeGrid& grid, const ShapeFunction& shape,
                      const OptimizerConfig& ocfg) {
  return refine_dp(dp_ansatz(phi, grid, shape), phi, ocfg);
}

}  // namespace lzcontrol
