#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "multiaxial/half_int.hpp"

namespace multiaxial {

using Complex = std::complex<double>;

/// Row/column of |j m> in a (2j+1)-dimensional matrix; m = +j comes first.
constexpr int basis_index(HalfInt j, HalfInt m) { return (j.doubled() - m.doubled()) / 2; }
constexpr HalfInt basis_m(HalfInt j, int index) { return HalfInt::from_doubled(j.doubled() - 2 * index); }

/// Hermitian unit-trace matrix in the |j m> basis. Positivity is not enforced
/// by construction; query it with is_physical().
class SpinDensityMatrix {
 public:
  static constexpr double kHermiticityTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kPositivityTol = 1e-10;

  /// Throws ValidationError("dimension" | "hermiticity" | "trace").
  SpinDensityMatrix(HalfInt j, Eigen::MatrixXcd entries);

  HalfInt j() const { return j_; }
  int dimension() const { return j_.multiplicity(); }
  const Eigen::MatrixXcd& matrix() const { return entries_; }
  Complex operator()(int row, int col) const { return entries_(row, col); }

  double min_eigenvalue() const;
  bool is_physical(double tol = kPositivityTol) const { return min_eigenvalue() >= -tol; }
  /// Throws ValidationError("positivity") when is_physical(tol) is false.
  void require_physical(double tol = kPositivityTol) const;

 private:
  HalfInt j_;
  Eigen::MatrixXcd entries_;
};

/// Table of statistical tensor parameters t^k_q, k = 0..2j, q = -k..k.
class TensorParams {
 public:
  static constexpr double kSymmetryTol = 1e-12;

  /// All entries zero.
  explicit TensorParams(HalfInt j);
  /// Only t^0_0 = 1: the maximally mixed state.
  static TensorParams isotropic(HalfInt j);

  HalfInt j() const { return j_; }
  int max_rank() const { return j_.doubled(); }

  Complex& at(int k, int q);
  Complex at(int k, int q) const;
  /// Entries t^k_{-k} ... t^k_{+k}.
  std::span<const Complex> rank(int k) const;
  std::span<Complex> rank(int k);

  /// sum_q |t^k_q|^2
  double rank_norm_squared(int k) const;
  /// max over k, q of |conj(t^k_q) - (-1)^q t^k_{-q}|
  double conjugation_symmetry_error() const;
  double max_abs_difference(const TensorParams& other) const;

 private:
  static int offset(int k) { return k * k; }
  void check_index(int k, int q) const;

  HalfInt j_;
  std::vector<Complex> table_;
};

/// <j m'| tau^k_q |j m> = sqrt(2k+1) C(j k j; m q m'). DomainError for k > 2j or |q| > k.
Eigen::MatrixXcd tau_operator(HalfInt j, int k, int q);

/// t^k_q = Tr(rho tau^k_q).
TensorParams rho_to_t(const SpinDensityMatrix& rho);

struct RhoReconstruction {
  SpinDensityMatrix rho;
  double min_eigenvalue;
  bool physical;
};

/// rho = (2j+1)^{-1} sum t^k_q tau^k_q^dagger. Requires t^0_0 = 1 and conjugation
/// symmetry (ValidationError("normalization" | "conjugation_symmetry")); a
/// non-positive result is returned with physical = false.
RhoReconstruction t_to_rho(const TensorParams& t);

/// Active rotation Rz(phi) Ry(theta) Rz(psi) of the underlying state:
/// rho_to_t(U rho U^dagger) == rotate_t(rho_to_t(rho)) with U = D^j(phi, theta, psi).
TensorParams rotate_t(const TensorParams& t, double phi, double theta, double psi);

}  // namespace multiaxial
