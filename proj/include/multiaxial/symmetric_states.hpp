#pragma once

#include <vector>

#include <Eigen/Dense>

#include "multiaxial/tensor_repr.hpp"

namespace multiaxial {

/// Pure-qubit polarization direction; the Cartesian vector has unit norm.
struct BlochVector {
  double theta = 0.0;  ///< polar angle in [0, pi]
  double phi = 0.0;    ///< azimuth in [0, 2 pi)

  /// Wraps into the canonical ranges; throws DomainError for non-finite input.
  static BlochVector from_angles(double theta, double phi);
  static BlochVector from_cartesian(const Eigen::Vector3d& v);
  Eigen::Vector3d cartesian() const;
};

/// Angle between two directions, in radians.
double angular_separation(const BlochVector& a, const BlochVector& b);

struct EnsembleTerm {
  double weight = 0.0;
  BlochVector direction;
};

/// rho = sum_i w_i (|psi_i><psi_i|)^{(x) N}, all qubits of a term sharing one direction.
struct SeparableEnsemble {
  static constexpr double kWeightSumTol = 1e-12;
  /// Directions closer than this are treated as the same term direction.
  static constexpr double kDistinctSeparation = 1e-9;

  int n_qubits = 1;
  std::vector<EnsembleTerm> terms;

  /// Throws ValidationError("weights") or DomainError for n_qubits.
  void validate() const;
  /// Number of mutually distinct directions among the terms.
  int distinct_directions() const;
};

/// (I + sigma . n) / 2 for a unit direction n.
Eigen::Matrix2cd qubit_density(const BlochVector& dir);

/// Orthogonal 2^N x 2^N change of basis from the computational basis (qubit 1
/// most significant, |0> = spin up) to sequentially coupled |J M> states. The
/// first N+1 rows are the symmetric states |N/2, M>, M = N/2 ... -N/2; the
/// remaining rows follow by descending J. 1 <= N <= 12.
Eigen::MatrixXd symmetric_subspace_unitary(int n_qubits);

struct SymmetrizedPair {
  Eigen::Matrix4cd computational;  ///< (rho1 (x) rho2 + rho2 (x) rho1) / 2
  Eigen::Matrix4cd coupled;        ///< U * computational * U^T, rows |11>,|10>,|1-1>,|00>
  double antisym_weight = 0.0;     ///< <00| coupled |00> = (1 - n1 . n2) / 4
  double block_coupling = 0.0;     ///< max |entry| linking the triplet block and |00>
};

SymmetrizedPair symmetrize_pair(const BlochVector& dir1, const BlochVector& dir2);

/// Spin-N/2 image of |psi>^{(x) N}: the coherent projector |alpha><alpha|.
SpinDensityMatrix product_state_in_jm(const BlochVector& dir, int n_qubits);

/// sum_i w_i product_state_in_jm(n_i, N).
SpinDensityMatrix ensemble_to_rho(const SeparableEnsemble& ensemble);

/// Tr(rho^2).
double purity(const SpinDensityMatrix& rho);
double purity(const Eigen::MatrixXcd& rho);

// Exponential-size verification path -----------------------------------------

/// Largest qubit count accepted by the 2^N constructions below.
inline constexpr int kMaxFullQubits = 12;

/// rho^{(x) N} in the computational basis.
Eigen::MatrixXcd product_state_full(const BlochVector& dir, int n_qubits);
/// sum_i w_i rho_i^{(x) N} in the computational basis.
Eigen::MatrixXcd ensemble_to_full_rho(const SeparableEnsemble& ensemble);
/// Permutation matrix exchanging qubits a and b (0-based).
Eigen::MatrixXd transposition(int n_qubits, int a, int b);
/// Top-left (N+1)x(N+1) block of U rho U^T.
Eigen::MatrixXcd compress_to_symmetric(const Eigen::MatrixXcd& full, int n_qubits);

}  // namespace multiaxial
