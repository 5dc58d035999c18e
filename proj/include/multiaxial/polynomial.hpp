#pragma once

#include <complex>
#include <span>
#include <vector>

namespace multiaxial {

struct RootCluster {
  std::complex<double> root;
  int multiplicity = 1;
};

/// Roots of a polynomial of nominal degree n = coeffs.size() - 1. Leading
/// zero coefficients are reported as roots at infinity, so the multiplicities
/// always add up to n.
struct PolynomialRoots {
  std::vector<RootCluster> finite;
  int at_infinity = 0;

  int total() const;
};

struct RootOptions {
  /// Coefficients with |c| <= zero_coeff_rel * max|c| count as exact zeros
  /// when they lead (roots at infinity) or trail (roots at the origin).
  double zero_coeff_rel = 0.0;
  /// Eigenvalues closer than this (relative) are always merged.
  double cluster_rel = 1e-7;
  /// Wider eigenvalue clusters are merged into one multiple root when every
  /// Taylor coefficient below the multiplicity vanishes to this relative level
  /// at the cluster centroid.
  double multiple_root_tol = 1e-9;
  int newton_steps = 2;
};

/// Coefficients ordered from the highest power down: coeffs[i] multiplies
/// Z^{n-i}. Finite roots come from the eigenvalues of the balanced companion
/// matrix, followed by Newton polishing. DomainError for the zero polynomial.
PolynomialRoots polynomial_roots(std::span<const std::complex<double>> coeffs,
                                 const RootOptions& options = {});

std::complex<double> evaluate_polynomial(std::span<const std::complex<double>> coeffs,
                                         std::complex<double> z);

/// Expands prod (Z - r)^multiplicity times `leading`, highest power first,
/// ignoring roots at infinity (they lower the effective degree).
std::vector<std::complex<double>> polynomial_from_roots(const PolynomialRoots& roots,
                                                        std::complex<double> leading);

}  // namespace multiaxial
