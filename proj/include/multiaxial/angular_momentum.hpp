#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "multiaxial/half_int.hpp"

namespace multiaxial {

using Rational = boost::multiprecision::cpp_rational;

/// Largest doubled angular momentum accepted by the coefficient routines.
/// Spin states are capped at doubled j = 60; their ranks reach k = 2j, which
/// needs doubled arguments up to 120 in the coupling and rotation code.
inline constexpr int kMaxDoubledArgument = 120;
inline constexpr int kMaxDoubledSpin = 60;

/// sign * sqrt(magnitude_squared), kept exact.
struct ExactCoefficient {
  int sign = 0;
  Rational magnitude_squared = 0;

  double value() const;
  bool is_zero() const { return sign == 0; }
  /// e.g. "-sqrt(1/2)", "1", "0".
  std::string to_string() const;
};

/// Clebsch-Gordan coefficient <j1 m1; j2 m2 | j m>, Condon-Shortley phase,
/// from the Racah closed formula in exact arithmetic. Zero for m1 + m2 != m or
/// when the triangle rule fails; DomainError for malformed (j, m) pairs.
ExactCoefficient cg(HalfInt j1, HalfInt j2, HalfInt j, HalfInt m1, HalfInt m2, HalfInt m);

/// Floating-point value of cg(), memoized behind a lock.
double cg_value(HalfInt j1, HalfInt j2, HalfInt j, HalfInt m1, HalfInt m2, HalfInt m);

/// Small-d element d^j_{m_row, m_col}(beta) by the Wigner sum.
double wigner_d(HalfInt j, HalfInt m_row, HalfInt m_col, double beta);

/// D^j_{m_row, m_col}(phi, theta, psi) = e^{-i m_row phi} d^j(theta) e^{-i m_col psi},
/// z-y-z Euler angles of the active rotation Rz(phi) Ry(theta) Rz(psi).
std::complex<double> wigner_D(HalfInt j, HalfInt m_row, HalfInt m_col, double phi, double theta,
                              double psi);

/// Full (2j+1)x(2j+1) D^j matrix, rows and columns ordered m = +j ... -j.
Eigen::MatrixXcd wigner_D_matrix(HalfInt j, double phi, double theta, double psi);

/// Orthonormal Y^l_m(theta, phi) with Condon-Shortley phase.
std::complex<double> spherical_harmonic(int l, int m, double theta, double phi);

}  // namespace multiaxial
