#include "lzcontrol/su2.hpp"

#include <algorithm>
#include <cmath>

#include "lzcontrol/errors.hpp"

namespace lzcontrol {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::undefined_phase: return "undefined_phase";
    case ErrorKind::critical_point: return "critical_point";
    case ErrorKind::non_convergence: return "non_convergence";
    case ErrorKind::parse: return "parse_error";
  }
  return "unknown";
}

Mat2 Mat2::adjoint() const {
  return {std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])};
}

Mat2 Mat2::conj() const {
  return {std::conj(m_[0]), std::conj(m_[1]), std::conj(m_[2]), std::conj(m_[3])};
}

Mat2& Mat2::operator*=(const Mat2& rhs) {
  const auto& a = m_;
  const auto& b = rhs.m_;
  m_ = {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
  return *this;
}

Mat2& Mat2::operator+=(const Mat2& rhs) {
  for (int i = 0; i < 4; ++i) m_[i] += rhs.m_[i];
  return *this;
}

Mat2& Mat2::operator-=(const Mat2& rhs) {
  for (int i = 0; i < 4; ++i) m_[i] -= rhs.m_[i];
  return *this;
}

Mat2& Mat2::operator*=(Complex s) {
  for (auto& v : m_) v *= s;
  return *this;
}

double max_abs_diff(const Mat2& a, const Mat2& b) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  return worst;
}

double unitarity_error(const Mat2& u) { return max_abs_diff(u.adjoint() * u, Mat2::identity()); }

Complex hs_inner(const Mat2& a, const Mat2& b) { return (a.adjoint() * b).trace(); }

Unitary2 su2_exp(double a_x, double a_y, double a_z) {
  if (!std::isfinite(a_x) || !std::isfinite(a_y) || !std::isfinite(a_z)) {
    throw InvalidArgument("su2_exp: non-finite rotation vector");
  }
  const double angle = std::hypot(a_x, a_y, a_z);
  if (angle == 0.0) return Mat2::identity();
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle) / angle;
  const double nx = s * a_x;
  const double ny = s * a_y;
  const double nz = s * a_z;
  // c I - i (n . sigma)
  return {Complex(c, -nz), Complex(-ny, -nx), Complex(ny, -nx), Complex(c, nz)};
}

Unitary2 z_rotation(double phi) {
  return {std::polar(1.0, -0.5 * phi), 0.0, 0.0, std::polar(1.0, 0.5 * phi)};
}

}  // namespace lzcontrol
