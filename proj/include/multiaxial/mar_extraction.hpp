#pragma once

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "multiaxial/polynomial.hpp"
#include "multiaxial/tensor_repr.hpp"

namespace multiaxial {

/// Unsigned axis: one representative of the antipodal pair {n, -n}, chosen
/// with theta < pi/2, or theta == pi/2 and phi in [0, pi).
struct Axis {
  double theta = 0.0;
  double phi = 0.0;

  /// Canonical representative of {v, -v}; |v_z| <= kEquatorTol snaps to the equator.
  static Axis from_vector(const Eigen::Vector3d& v);
  Eigen::Vector3d unit() const;
};

inline constexpr double kEquatorTol = 1e-12;

/// Spherical components (Q)^1_q, q = -1, 0, +1, of a Cartesian vector:
/// ((x - iy)/sqrt2, z, -(x + iy)/sqrt2).
std::array<Complex, 3> spherical_components(const Eigen::Vector3d& v);

/// Coefficients of P(Z) = sum_q sqrt(binom(2k, k+q)) t^k_q Z^{k-q}, highest
/// power first, so entry i belongs to q = i - k.
std::vector<Complex> mar_polynomial(const TensorParams& t, int k);

/// Maps Z = tan(theta/2) e^{i phi} (infinity = south pole) to points on the
/// sphere and pairs them under Z -> -1/conj(Z). Requires 2k roots in total;
/// ConsistencyError when a point has no antipode within pair_tol (chordal).
/// Output is sorted by descending theta, then ascending phi.
std::vector<Axis> roots_to_axes(const PolynomialRoots& roots, int k, double pair_tol = 1e-6);

/// Sequential stretched coupling (...((Q1 (x) Q2)^2 (x) Q3)^3 ... (x) Qk)^k_q in
/// list order; returns s^k_q for q = -k ... k. Throws DomainError unless
/// axes.size() == k >= 1.
std::vector<Complex> axes_to_tensor(std::span<const Axis> axes, int k);

struct RadiusFit {
  double radius = 0.0;     ///< Re<s,t>/<s,s>, may be negative
  double imaginary = 0.0;  ///< |Im<s,t>/<s,s>|
  double residual = 0.0;   ///< max_q |t_q - radius s_q|
};

/// Least-squares radius of t along s. DegenerateCouplingError when s == 0.
RadiusFit fit_radius(std::span<const Complex> t_rank, std::span<const Complex> s);

enum class RankStatus { resolved, zero, unresolved };

struct RankMar {
  int rank = 0;
  RankStatus status = RankStatus::zero;
  /// Fitted coefficient against the coupled product of the canonical axes;
  /// its sign depends on the head chosen for each axis.
  double signed_radius = 0.0;
  double radius = 0.0;  ///< |signed_radius|, the sphere radius
  std::vector<Axis> axes;
  double residual = 0.0;
  std::vector<Complex> polynomial;
  PolynomialRoots roots;
  std::string diagnostic;
};

struct MarDecomposition {
  HalfInt j;
  std::vector<RankMar> ranks;  ///< ranks[k - 1] for k = 1 .. 2j

  const RankMar& rank(int k) const { return ranks.at(std::size_t(k - 1)); }
  bool all_resolved() const;
  /// t^0_0 = 1 plus r_k s^k_q for every resolved rank.
  TensorParams reconstruct() const;
};

struct MarOptions {
  /// A rank whose entries are all below this is reported with r_k = 0.
  double zero_rank_tol = 1e-12;
  RootOptions roots{.zero_coeff_rel = 1e-12};
  double pair_tol = 1e-6;
  /// Relative reconstruction residual above which a rank is unresolved.
  double residual_tol = 1e-6;
};

MarDecomposition extract_mar(const TensorParams& t, const MarOptions& options = {});

/// True iff all axes of ranks with radius > tol are pairwise collinear:
/// |n_a . n_b| >= 1 - tol.
bool collinearity_check(const MarDecomposition& mar, double tol);

std::string to_string(RankStatus status);

}  // namespace multiaxial
