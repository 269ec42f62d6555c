#include "lzcontrol/projection.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "lzcontrol/errors.hpp"

namespace lzcontrol {
namespace {

Eigen::MatrixXd to_eigen(const Gramian& g) {
  const auto m = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd out(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) out(i, j) = g(i, j);
  }
  return out;
}

}  // namespace

std::vector<double> Gramian::eigenvalues() const {
  if (m_ == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(*this), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> Gramian::solve(std::span<const double> rhs) const {
  if (rhs.size() != m_) throw InvalidArgument("Gramian::solve: dimension mismatch");
  if (m_ == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(*this));
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const double largest = ev(ev.size() - 1);
  const double ratio = largest > 0.0 ? ev(0) / largest : 0.0;
  if (!(largest > 0.0) || ratio < kCriticalPointRatio) {
    std::ostringstream msg;
    msg << "constraint gradients are linearly dependent (eigenvalue ratio " << ratio << ")";
    throw CriticalPointError(msg.str(), ratio);
  }
  const Eigen::MatrixXd& v = solver.eigenvectors();
  const Eigen::Map<const Eigen::VectorXd> q(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  const Eigen::VectorXd x = v * ((v.transpose() * q).array() / ev.array()).matrix();
  return {x.data(), x.data() + x.size()};
}

Gramian gramian(std::span<const ControlField> grads) {
  Gramian g(grads.size());
  for (std::size_t i = 0; i < grads.size(); ++i) {
    for (std::size_t j = i; j < grads.size(); ++j) {
      const double v = inner_product(grads[i], grads[j]);
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

namespace {

void remove_span(ControlField& field, std::span<const ControlField> grads, const Gramian& g) {
  std::vector<double> q(grads.size());
  for (std::size_t i = 0; i < grads.size(); ++i) q[i] = inner_product(field, grads[i]);
  const std::vector<double> x = g.solve(q);
  for (std::size_t i = 0; i < grads.size(); ++i) field.axpy(-x[i], grads[i]);
}

}  // namespace

ControlField project_gradient(const ControlField& gradient, std::span<const ControlField> grads) {
  ControlField out = gradient;
  if (grads.empty()) return out;
  for (const auto& g : grads) require_same_space(gradient, g);
  const Gramian g = gramian(grads);
  remove_span(out, grads, g);
  remove_span(out, grads, g);
  return out;
}

}  // namespace lzcontrol
