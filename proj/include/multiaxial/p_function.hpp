#pragma once

#include <functional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "multiaxial/symmetric_states.hpp"
#include "multiaxial/tensor_repr.hpp"

namespace multiaxial {

/// |alpha(theta, phi)> = sum_m D^j_{m j}(phi, theta, 0) |j m>, entries ordered m = +j ... -j.
Eigen::VectorXcd coherent_state(HalfInt j, double theta, double phi);

/// lambda(theta, phi) = sum_{l <= l_max, |m| <= l} a^l_m conj(Y^l_m(theta, phi)).
class SphericalExpansion {
 public:
  static constexpr double kRealityTol = 1e-12;
  static constexpr double kNormalizationTol = 1e-12;

  explicit SphericalExpansion(int l_max);
  /// lambda = 1/(4 pi).
  static SphericalExpansion uniform();

  int l_max() const { return l_max_; }
  Complex& at(int l, int m);
  Complex at(int l, int m) const;

  /// Real part of the series; reality_error() bounds the discarded imaginary part.
  double operator()(double theta, double phi) const;
  /// max |conj(a^l_m) - (-1)^m a^l_{-m}|
  double reality_error() const;
  /// Throws ValidationError("reality" | "normalization").
  void validate(double normalization_tol = kNormalizationTol) const;

 private:
  int l_max_;
  std::vector<Complex> coeffs_;
};

/// Gauss-Legendre nodes in cos(theta) times a uniform trapezoid in phi.
struct QuadratureGrid {
  struct Node {
    double theta;
    double phi;
    double weight;
  };
  int n_theta = 0;
  int n_phi = 0;
  std::vector<Node> nodes;

  static QuadratureGrid gauss_legendre(int n_theta, int n_phi);
  /// Exact for every integrand met when a band-limited lambda (degree l_max)
  /// meets a spin-j state: n_theta = l_max + 2j + 2, n_phi = 2(l_max + 2j) + 3.
  static QuadratureGrid for_bandlimit(int l_max, HalfInt j);
  double total_weight() const;
};

using SphereFunction = std::function<double(double theta, double phi)>;

/// Finite convex combination of point masses on the sphere.
struct PointMeasure {
  std::vector<EnsembleTerm> atoms;
};

using Distribution = std::variant<SphericalExpansion, SphereFunction, PointMeasure>;

/// c_k = sqrt(4 pi) C(j k j; j 0 j); makes the P-function integral agree with
/// the coherent-state mixture at every rank.
double rank_constant(HalfInt j, int k);

struct DistributionTensor {
  TensorParams t;
  bool negative_values = false;  ///< lambda < 0 at some node: not P-representable as given
  double min_value = 0.0;
};

/// t^k_q = c_k * integral(lambda Y^k_q dOmega), normalized by the quadrature
/// integral of lambda. ValidationError("normalization") when that integral
/// differs from 1 by more than 1e-8; expansions are also checked for reality.
/// Point measures are summed exactly and ignore the grid.
DistributionTensor t_from_distribution(const Distribution& lambda, HalfInt j,
                                       const QuadratureGrid& grid);

struct DistributionState {
  SpinDensityMatrix rho;
  bool negative_values = false;
  double min_value = 0.0;
};

/// integral(lambda |alpha><alpha| dOmega), same normalization and checks.
DistributionState rho_from_distribution(const Distribution& lambda, HalfInt j,
                                        const QuadratureGrid& grid);

/// Closed form t^k_q = c_k a^k_q for an expansion given by its coefficients.
TensorParams t_from_expansion(const SphericalExpansion& lambda, HalfInt j);

/// Tensor parameters for lambda = |Y^l_m|^2 from the Clebsch-Gordan series of
/// the harmonic product; only t^k_0 (even k <= min(2l, 2j)) survive.
TensorParams ylm_squared_t(int l, int m, HalfInt j);

/// a^l_m = integral(f Y^l_m dOmega) for l <= l_max.
SphericalExpansion expansion_from_function(const SphereFunction& f, int l_max,
                                           const QuadratureGrid& grid);

}  // namespace multiaxial
