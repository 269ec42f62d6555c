#pragma once

#include <string>
#include <vector>

#include "lzcontrol/constraints.hpp"
#include "lzcontrol/control.hpp"
#include "lzcontrol/errors.hpp"
#include "lzcontrol/objective.hpp"

namespace lzcontrol {

/// Trial step for the next line search. `doubling` grows the last accepted step
/// by beta_growth; `barzilai_borwein` uses the secant estimate <s,s>/<s,y> along
/// the search direction and falls back to doubling when the curvature is not positive.
enum class StepRule { doubling, barzilai_borwein };

const char* to_string(StepRule rule) noexcept;

struct OptimizerConfig {
  /// Initial step size along the (projected) gradient.
  double beta = 1.0;
  StepRule step_rule = StepRule::barzilai_borwein;
  /// Growth factor for the doubling rule. Every trial step is capped at `beta_max`.
  double beta_growth = 2.0;
  double beta_max = 64.0;
  double backtrack_factor = 0.5;
  int max_backtracks = 40;
  int max_iters = 20000;
  /// Stop once an accepted step lowers J by less than this.
  double tol_J = 1e-12;
  /// Number of consecutive such steps before stopping.
  int plateau_patience = 1;
  /// Stop once the weighted norm of the search direction drops below this.
  double tol_grad = 1e-10;
  ConstraintMode constraint_mode = ConstraintMode::reduced;
  /// Hybrid only: re-run the decoupling-pulse descent every K accepted steps
  /// (0 disables restoration).
  int restore_every = 0;

  /// Decoupling-pulse synthesis: weight of the pulse-area residual and the
  /// tolerances the result must meet.
  double dp_angle_weight = 1.0;
  double dp_eta_tol = 1e-7;
  double dp_angle_tol = 1e-9;
  int dp_max_iters = 200;

  void validate() const;
};

enum class StopReason {
  plateau,
  gradient_tolerance,
  max_iterations,
  line_search_exhausted,
};

const char* to_string(StopReason reason) noexcept;

struct IterationRecord {
  double objective = 0.0;
  double distance = 0.0;
  double eta_r_norm = 0.0;
};

struct OptResult {
  ControlField control;
  double objective = 0.0;
  double distance = 0.0;
  ConstraintVector eta;
  double eta_r_norm = 0.0;
  double fluence = 0.0;
  double theta_final = 0.0;
  double max_abs_control = 0.0;
  /// Accepted steps; history holds iterations + 1 records (the first is the start point).
  int iterations = 0;
  StopReason stop_reason = StopReason::plateau;
  std::vector<IterationRecord> history;
};

/// Raised by synth_dp when the tolerances are not met; carries the best iterate.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, ControlField best)
      : Error(ErrorKind::non_convergence, what), best_(std::move(best)) {}
  const ControlField& best() const noexcept { return best_; }

 private:
  ControlField best_;
};

/// Steepest descent C <- C - beta grad J with backtracking on J.
OptResult optimize_oct(const ControlField& initial, const GateTarget& target,
                       const ObjectiveConfig& cfg, const OptimizerConfig& ocfg);

/// Forward-Euler flow along the gradient projected onto the tangent space of
/// the constraint level set (constraint_mode selects eta^r or eta). Backtracking
/// on J; stops when J plateaus, never because the constraint norm grows.
OptResult optimize_hybrid(const ControlField& initial_dp, const GateTarget& target,
                          const ObjectiveConfig& cfg, const OptimizerConfig& ocfg);

/// Multi-lobe starting field for decoupling-pulse synthesis with pulse area phi.
ControlField dp_ansatz(double phi, const TimeGrid& grid, const ShapeFunction& shape);

/// Drives P[C] = ||eta^r||^2 + w (theta(t_f) - phi)^2 to zero from `start` with
/// minimum-norm Gauss-Newton steps (backtracking on P). In `full` constraint
/// mode eta_4 and eta_5 are included. Throws NonConvergenceError when the
/// tolerances in `ocfg` are not reached.
ControlField refine_dp(const ControlField& start, double phi, const OptimizerConfig& ocfg);

/// refine_dp(dp_ansatz(phi, grid, shape), phi, ocfg).
ControlField synth_dp(double phi, const TimeGrid& grid, const ShapeFunction& shape,
                      const OptimizerConfig& ocfg);

/// Evaluates the reported diagnostics of `control` (history left empty).
OptResult summarize(const ControlField& control, const GateTarget& target, const ObjectiveConfig& cfg);

}  // namespace lzcontrol
