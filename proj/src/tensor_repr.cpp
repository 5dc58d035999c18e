#include "multiaxial/tensor_repr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "multiaxial/angular_momentum.hpp"
#include "multiaxial/errors.hpp"

namespace multiaxial {

namespace {

double parity(int q) { return (q % 2 == 0) ? 1.0 : -1.0; }

void require_spin(HalfInt j) {
  if (j.doubled() < 0 || j.doubled() > kMaxDoubledSpin) {
    throw DomainError("spin doubled j = " + std::to_string(j.doubled()) + " outside [0, " +
                      std::to_string(kMaxDoubledSpin) + "]");
  }
}

// sqrt(2k+1) C(j k j; m q m+q), the only nonzero entry of column m in tau^k_q.
double tau_element(HalfInt j, int k, int q, HalfInt m) {
  const HalfInt mq = m + HalfInt::integer(q);
  if (!is_valid_pair(j, mq)) return 0.0;
  return std::sqrt(2.0 * k + 1.0) *
         cg_value(j, HalfInt::integer(k), j, m, HalfInt::integer(q), mq);
}

}  // namespace

// SpinDensityMatrix ------------------------------------------------------------

SpinDensityMatrix::SpinDensityMatrix(HalfInt j, Eigen::MatrixXcd entries)
    : j_(j), entries_(std::move(entries)) {
  require_spin(j_);
  const int dim = j_.multiplicity();
  if (entries_.rows() != dim || entries_.cols() != dim) {
    throw ValidationError("dimension", "expected " + std::to_string(dim) + "x" +
                                           std::to_string(dim) + " matrix for j = " +
                                           j_.to_string());
  }
  const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermiticityTol) {
    throw ValidationError("hermiticity", "max |rho - rho^dagger| = " + std::to_string(asym));
  }
  const Complex tr = entries_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw ValidationError("trace", "trace = " + std::to_string(tr.real()) + " + " +
                                       std::to_string(tr.imag()) + "i");
  }
}

double SpinDensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void SpinDensityMatrix::require_physical(double tol) const {
  const double lo = min_eigenvalue();
  if (lo < -tol) {
    throw ValidationError("positivity", "minimum eigenvalue " + std::to_string(lo));
  }
}

// TensorParams -------------------------------------------------------------------

TensorParams::TensorParams(HalfInt j) : j_(j) {
  require_spin(j_);
  const int ranks = j_.doubled() + 1;
  table_.assign(std::size_t(ranks) * ranks, Complex{});
}

TensorParams TensorParams::isotropic(HalfInt j) {
  TensorParams t(j);
  t.at(0, 0) = 1.0;
  return t;
}

void TensorParams::check_index(int k, int q) const {
  if (k < 0 || k > max_rank() || std::abs(q) > k) {
    throw DomainError("tensor index (k, q) = (" + std::to_string(k) + ", " + std::to_string(q) +
                      ") out of range for j = " + j_.to_string());
  }
}

Complex& TensorParams::at(int k, int q) {
  check_index(k, q);
  return table_[offset(k) + q + k];
}

Complex TensorParams::at(int k, int q) const {
  check_index(k, q);
  return table_[offset(k) + q + k];
}

std::span<const Complex> TensorParams::rank(int k) const {
  check_index(k, 0);
  return {table_.data() + offset(k), std::size_t(2 * k + 1)};
}

std::span<Complex> TensorParams::rank(int k) {
  check_index(k, 0);
  return {table_.data() + offset(k), std::size_t(2 * k + 1)};
}

double TensorParams::rank_norm_squared(int k) const {
  double sum = 0.0;
  for (const Complex& v : rank(k)) sum += std::norm(v);
  return sum;
}

double TensorParams::conjugation_symmetry_error() const {
  double worst = 0.0;
  for (int k = 0; k <= max_rank(); ++k) {
    for (int q = -k; q <= k; ++q) {
      worst = std::max(worst, std::abs(std::conj(at(k, q)) - parity(q) * at(k, -q)));
    }
  }
  return worst;
}

double TensorParams::max_abs_difference(const TensorParams& other) const {
  if (other.j_ != j_) throw DomainError("max_abs_difference: mismatched j");
  double worst = 0.0;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    worst = std::max(worst, std::abs(table_[i] - other.table_[i]));
  }
  return worst;
}

// Maps ---------------------------------------------------------------------------

Eigen::MatrixXcd tau_operator(HalfInt j, int k, int q) {
  require_spin(j);
  if (k < 0 || k > j.doubled() || std::abs(q) > k) {
    throw DomainError("tau_operator: (k, q) = (" + std::to_string(k) + ", " +
                      std::to_string(q) + ") invalid for j = " + j.to_string());
  }
  const int dim = j.multiplicity();
  Eigen::MatrixXcd tau = Eigen::MatrixXcd::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const HalfInt m = basis_m(j, col);
    const HalfInt mq = m + HalfInt::integer(q);
    if (!is_valid_pair(j, mq)) continue;
    tau(basis_index(j, mq), col) = tau_element(j, k, q, m);
  }
  return tau;
}

TensorParams rho_to_t(const SpinDensityMatrix& rho) {
  const HalfInt j = rho.j();
  const int dim = rho.dimension();
  TensorParams t(j);
  for (int k = 0; k <= j.doubled(); ++k) {
    for (int q = -k; q <= k; ++q) {
      // Tr(rho tau) = sum_m rho(m, m+q) <m+q|tau|m>
      Complex sum{};
      for (int col = 0; col < dim; ++col) {
        const HalfInt m = basis_m(j, col);
        const HalfInt mq = m + HalfInt::integer(q);
        if (!is_valid_pair(j, mq)) continue;
        sum += rho(col, basis_index(j, mq)) * tau_element(j, k, q, m);
      }
      t.at(k, q) = sum;
    }
  }
  return t;
}

RhoReconstruction t_to_rho(const TensorParams& t) {
  const HalfInt j = t.j();
  if (std::abs(t.at(0, 0) - 1.0) > TensorParams::kSymmetryTol) {
    throw ValidationError("normalization", "t^0_0 must equal 1");
  }
  const double sym = t.conjugation_symmetry_error();
  if (sym > TensorParams::kSymmetryTol) {
    throw ValidationError("conjugation_symmetry",
                          "max |conj(t^k_q) - (-1)^q t^k_-q| = " + std::to_string(sym));
  }
  const int dim = j.multiplicity();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k <= j.doubled(); ++k) {
    for (int q = -k; q <= k; ++q) {
      const Complex tkq = t.at(k, q);
      if (tkq == Complex{}) continue;
      // tau^dagger has entry (m, m+q) = sqrt(2k+1) C(j k j; m q m+q)
      for (int row = 0; row < dim; ++row) {
        const HalfInt mrow = basis_m(j, row);
        const HalfInt mq = mrow + HalfInt::integer(q);
        if (!is_valid_pair(j, mq)) continue;
        m(row, basis_index(j, mq)) += tkq * tau_element(j, k, q, mrow);
      }
    }
  }
  m /= double(dim);
  const Eigen::MatrixXcd hermitian = 0.5 * (m + m.adjoint());
  SpinDensityMatrix rho(j, hermitian);
  const double lo = rho.min_eigenvalue();
  return {std::move(rho), lo, lo >= -SpinDensityMatrix::kPositivityTol};
}

TensorParams rotate_t(const TensorParams& t, double phi, double theta, double psi) {
  TensorParams out(t.j());
  out.at(0, 0) = t.at(0, 0);
  for (int k = 1; k <= t.max_rank(); ++k) {
    const Eigen::MatrixXcd d = wigner_D_matrix(HalfInt::integer(k), phi, theta, psi);
    // rows/cols of d run q = +k ... -k
    for (int q = -k; q <= k; ++q) {
      Complex sum{};
      for (int qp = -k; qp <= k; ++qp) sum += std::conj(d(k - q, k - qp)) * t.at(k, qp);
      out.at(k, q) = sum;
    }
  }
  return out;
}

}  // namespace multiaxial
