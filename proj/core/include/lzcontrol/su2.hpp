#pragma once

#include <array>
#include <complex>

namespace lzcontrol {

using Complex = std::complex<double>;

/// Dense 2x2 complex matrix, row-major. Used for SU(2) propagators as well as
/// the spin operators S_x, S_y, S_z.
class Mat2 {
 public:
  constexpr Mat2() = default;
  constexpr Mat2(Complex a00, Complex a01, Complex a10, Complex a11) : m_{a00, a01, a10, a11} {}

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 zero() { return {0.0, 0.0, 0.0, 0.0}; }

  constexpr Complex& operator()(int row, int col) { return m_[2 * row + col]; }
  constexpr const Complex& operator()(int row, int col) const { return m_[2 * row + col]; }

  Mat2 adjoint() const;
  Mat2 conj() const;
  Complex trace() const { return m_[0] + m_[3]; }
  Complex determinant() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

  Mat2& operator*=(const Mat2& rhs);
  Mat2& operator+=(const Mat2& rhs);
  Mat2& operator-=(const Mat2& rhs);
  Mat2& operator*=(Complex s);

  friend Mat2 operator*(Mat2 lhs, const Mat2& rhs) { return lhs *= rhs; }
  friend Mat2 operator+(Mat2 lhs, const Mat2& rhs) { return lhs += rhs; }
  friend Mat2 operator-(Mat2 lhs, const Mat2& rhs) { return lhs -= rhs; }
  friend Mat2 operator*(Complex s, Mat2 m) { return m *= s; }
  friend Mat2 operator*(Mat2 m, Complex s) { return m *= s; }

  const std::array<Complex, 4>& entries() const { return m_; }

 private:
  std::array<Complex, 4> m_{};
};

/// A Mat2 expected to satisfy U^dagger U = I.
using Unitary2 = Mat2;

/// Largest entrywise modulus of (a - b).
double max_abs_diff(const Mat2& a, const Mat2& b);

/// max |(U^dagger U - I)_ij|.
double unitarity_error(const Mat2& u);

/// Tr(A^dagger B).
Complex hs_inner(const Mat2& a, const Mat2& b);

namespace spin {
// S = sigma / 2
inline constexpr Mat2 x{0.0, 0.5, 0.5, 0.0};
inline constexpr Mat2 y{0.0, Complex(0.0, -0.5), Complex(0.0, 0.5), 0.0};
inline constexpr Mat2 z{0.5, 0.0, 0.0, -0.5};
}  // namespace spin

namespace pauli {
inline constexpr Mat2 x{0.0, 1.0, 1.0, 0.0};
inline constexpr Mat2 y{0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0};
inline constexpr Mat2 z{1.0, 0.0, 0.0, -1.0};
}  // namespace pauli

/// exp(-i (a_x S_x + a_y S_y + a_z S_z)) in closed form:
/// cos(|a|/2) I - i sin(|a|/2) (a/|a|) . sigma. Identity for a = 0.
/// Throws InvalidArgument on non-finite input.
Unitary2 su2_exp(double a_x, double a_y, double a_z);

/// Z_phi = diag(exp(-i phi/2), exp(i phi/2)).
Unitary2 z_rotation(double phi);

}  // namespace lzcontrol
