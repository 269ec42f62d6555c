#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lzcontrol/control.hpp"

namespace lzcontrol {

/// Smallest-to-largest eigenvalue ratio below which the Gramian is treated as singular.
inline constexpr double kCriticalPointRatio = 1e-12;

/// Symmetric m x m matrix of weighted inner products <g_i, g_j>.
class Gramian {
 public:
  explicit Gramian(std::size_t m) : m_(m), data_(m * m, 0.0) {}

  std::size_t size() const noexcept { return m_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * m_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * m_ + j]; }

  /// Eigenvalues in ascending order.
  std::vector<double> eigenvalues() const;

  /// Solves G x = q. Throws CriticalPointError when the smallest eigenvalue is
  /// below kCriticalPointRatio times the largest.
  std::vector<double> solve(std::span<const double> rhs) const;

 private:
  std::size_t m_;
  std::vector<double> data_;
};

/// (G)_ij = <g_i, g_j>; upper triangle computed, lower mirrored.
Gramian gramian(std::span<const ControlField> grads);

/// grad_J minus its component in span{grads}:
///   out = gJ - sum_i grads_i [G^{-1} q]_i,  q_i = <gJ, grads_i>.
/// One re-orthogonalization pass is applied to the result.
/// Throws CriticalPointError at (numerical) critical points of the constraints.
ControlField project_gradient(const ControlField& gradient, std::span<const ControlField> grads);

}  // namespace lzcontrol
