#include "multiaxial/p_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "multiaxial/angular_momentum.hpp"
#include "multiaxial/errors.hpp"
#include "multiaxial/reduce.hpp"

namespace multiaxial {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDistributionNormTol = 1e-8;

double parity(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

int expansion_index(int l, int m) { return l * l + l + m; }

void require_grid_ok(const QuadratureGrid& grid) {
  if (grid.nodes.empty()) throw DomainError("quadrature grid has no nodes");
}

// lambda evaluated on the grid (or the atoms of a point measure) as weighted samples.
struct Sample {
  BlochVector where;
  double mass;  // weight * lambda
};

struct Samples {
  std::vector<Sample> points;
  double total = 0.0;
  double min_value = 0.0;
  bool negative = false;
};

Samples sample(const Distribution& lambda, const QuadratureGrid& grid) {
  Samples out;
  if (const auto* measure = std::get_if<PointMeasure>(&lambda)) {
    if (measure->atoms.empty()) throw ValidationError("normalization", "empty point measure");
    double min_w = std::numeric_limits<double>::infinity();
    for (const auto& atom : measure->atoms) {
      out.points.push_back({atom.direction, atom.weight});
      min_w = std::min(min_w, atom.weight);
    }
    out.min_value = min_w;
    out.negative = min_w < 0.0;
    std::vector<double> masses;
    for (const auto& p : out.points) masses.push_back(p.mass);
    out.total = pairwise_sum(masses, 0.0);
  } else {
    require_grid_ok(grid);
    if (const auto* expansion = std::get_if<SphericalExpansion>(&lambda)) {
      if (expansion->reality_error() > SphericalExpansion::kRealityTol) {
        throw ValidationError("reality", "coefficients violate conj(a^l_m) = (-1)^m a^l_-m");
      }
    }
    double min_v = std::numeric_limits<double>::infinity();
    std::vector<double> masses;
    for (const auto& node : grid.nodes) {
      const double value = std::visit(
          [&](const auto& f) -> double {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, PointMeasure>) {
              return 0.0;
            } else {
              return f(node.theta, node.phi);
            }
          },
          lambda);
      min_v = std::min(min_v, value);
      out.points.push_back({BlochVector{node.theta, node.phi}, node.weight * value});
      masses.push_back(node.weight * value);
    }
    out.min_value = min_v;
    out.negative = min_v < 0.0;
    out.total = pairwise_sum(masses, 0.0);
  }
  if (!(std::abs(out.total - 1.0) <= kDistributionNormTol)) {
    throw ValidationError("normalization",
                          "integral of lambda is " + std::to_string(out.total) + ", expected 1");
  }
  return out;
}

}  // namespace

// Coherent states ------------------------------------------------------------------

Eigen::VectorXcd coherent_state(HalfInt j, double theta, double phi) {
  if (j.doubled() < 0 || j.doubled() > kMaxDoubledSpin) {
    throw DomainError("coherent_state: unsupported j = " + j.to_string());
  }
  const int dim = j.multiplicity();
  Eigen::VectorXcd out(dim);
  for (int i = 0; i < dim; ++i) out(i) = wigner_D(j, basis_m(j, i), j, phi, theta, 0.0);
  return out;
}

// SphericalExpansion ---------------------------------------------------------------

SphericalExpansion::SphericalExpansion(int l_max) : l_max_(l_max) {
  if (l_max < 0 || l_max > kMaxDoubledArgument) {
    throw DomainError("SphericalExpansion: l_max = " + std::to_string(l_max) + " out of range");
  }
  coeffs_.assign(std::size_t((l_max + 1) * (l_max + 1)), Complex{});
}

SphericalExpansion SphericalExpansion::uniform() {
  SphericalExpansion e(0);
  e.at(0, 0) = 1.0 / std::sqrt(4.0 * kPi);
  return e;
}

Complex& SphericalExpansion::at(int l, int m) {
  if (l < 0 || l > l_max_ || std::abs(m) > l) throw DomainError("SphericalExpansion: bad (l, m)");
  return coeffs_[std::size_t(expansion_index(l, m))];
}

Complex SphericalExpansion::at(int l, int m) const {
  if (l < 0 || l > l_max_ || std::abs(m) > l) throw DomainError("SphericalExpansion: bad (l, m)");
  return coeffs_[std::size_t(expansion_index(l, m))];
}

double SphericalExpansion::operator()(double theta, double phi) const {
  Complex sum{};
  for (int l = 0; l <= l_max_; ++l) {
    for (int m = -l; m <= l; ++m) {
      const Complex a = at(l, m);
      if (a == Complex{}) continue;
      sum += a * std::conj(spherical_harmonic(l, m, theta, phi));
    }
  }
  return sum.real();
}

double SphericalExpansion::reality_error() const {
  double worst = 0.0;
  for (int l = 0; l <= l_max_; ++l) {
    for (int m = -l; m <= l; ++m) {
      worst = std::max(worst, std::abs(std::conj(at(l, m)) - parity(m) * at(l, -m)));
    }
  }
  return worst;
}

void SphericalExpansion::validate(double normalization_tol) const {
  const double err = reality_error();
  if (err > kRealityTol) {
    throw ValidationError("reality", "max |conj(a^l_m) - (-1)^m a^l_-m| = " + std::to_string(err));
  }
  const Complex a00 = at(0, 0);
  if (std::abs(a00 - 1.0 / std::sqrt(4.0 * kPi)) > normalization_tol) {
    throw ValidationError("normalization", "a^0_0 must equal 1/sqrt(4 pi)");
  }
}

// Quadrature -------------------------------------------------------------------------

QuadratureGrid QuadratureGrid::gauss_legendre(int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1) throw DomainError("quadrature grid needs positive node counts");
  QuadratureGrid grid;
  grid.n_theta = n_theta;
  grid.n_phi = n_phi;
  const int n = n_theta;
  std::vector<std::pair<double, double>> gl;  // (x, weight)
  for (int i = 1; i <= n; ++i) {
    double x = std::cos(kPi * (i - 0.25) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node for the weight
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    gl.emplace_back(x, 2.0 / ((1.0 - x * x) * dp * dp));
  }
  const double dphi = 2.0 * kPi / n_phi;
  for (const auto& [x, w] : gl) {
    const double theta = std::acos(x);
    for (int b = 0; b < n_phi; ++b) grid.nodes.push_back({theta, b * dphi, w * dphi});
  }
  return grid;
}

QuadratureGrid QuadratureGrid::for_bandlimit(int l_max, HalfInt j) {
  const int band = l_max + j.doubled();
  return gauss_legendre(band + 2, 2 * band + 3);
}

double QuadratureGrid::total_weight() const {
  std::vector<double> w;
  for (const auto& n : nodes) w.push_back(n.weight);
  return pairwise_sum(w, 0.0);
}

// Distribution maps ------------------------------------------------------------------

double rank_constant(HalfInt j, int k) {
  return std::sqrt(4.0 * kPi) * cg_value(j, HalfInt::integer(k), j, j, HalfInt::integer(0), j);
}

DistributionTensor t_from_distribution(const Distribution& lambda, HalfInt j,
                                       const QuadratureGrid& grid) {
  const Samples s = sample(lambda, grid);
  DistributionTensor out{TensorParams(j), s.negative, s.min_value};
  for (int k = 0; k <= j.doubled(); ++k) {
    const double ck = rank_constant(j, k);
    for (int q = -k; q <= k; ++q) {
      std::vector<Complex> terms;
      terms.reserve(s.points.size());
      for (const auto& p : s.points) {
        terms.push_back(p.mass * spherical_harmonic(k, q, p.where.theta, p.where.phi));
      }
      out.t.at(k, q) = ck * pairwise_sum(std::move(terms), Complex{}) / s.total;
    }
  }
  out.t.at(0, 0) = 1.0;
  return out;
}

DistributionState rho_from_distribution(const Distribution& lambda, HalfInt j,
                                        const QuadratureGrid& grid) {
  const Samples s = sample(lambda, grid);
  const int dim = j.multiplicity();
  std::vector<Eigen::MatrixXcd> parts;
  parts.reserve(s.points.size());
  for (const auto& p : s.points) {
    const Eigen::VectorXcd alpha = coherent_state(j, p.where.theta, p.where.phi);
    parts.push_back((p.mass / s.total) * (alpha * alpha.adjoint()));
  }
  Eigen::MatrixXcd sum =
      pairwise_sum(std::move(parts), Eigen::MatrixXcd(Eigen::MatrixXcd::Zero(dim, dim)));
  sum = 0.5 * (sum + sum.adjoint());
  sum /= sum.trace().real();
  return {SpinDensityMatrix(j, sum), s.negative, s.min_value};
}

TensorParams t_from_expansion(const SphericalExpansion& lambda, HalfInt j) {
  lambda.validate();
  TensorParams t(j);
  for (int k = 0; k <= j.doubled() && k <= lambda.l_max(); ++k) {
    const double ck = rank_constant(j, k);
    for (int q = -k; q <= k; ++q) t.at(k, q) = ck * lambda.at(k, q);
  }
  t.at(0, 0) = 1.0;
  return t;
}

TensorParams ylm_squared_t(int l, int m, HalfInt j) {
  if (l < 0 || std::abs(m) > l) throw DomainError("ylm_squared_t: invalid (l, m)");
  const HalfInt hl = HalfInt::integer(l), hm = HalfInt::integer(m);
  const HalfInt zero = HalfInt::integer(0);
  TensorParams t(j);
  for (int k = 0; k <= j.doubled(); ++k) {
    const HalfInt hk = HalfInt::integer(k);
    // Only L = 0 survives the integration, forcing q = 0.
    double sum = 0.0;
    for (int lp = 0; lp <= 2 * l; ++lp) {
      const HalfInt hlp = HalfInt::integer(lp);
      const double c1 = cg_value(hl, hl, hlp, zero, zero, zero);
      const double c2 = cg_value(hlp, hk, zero, zero, zero, zero);
      const double c3 = cg_value(hl, hl, hlp, hm, -hm, zero);
      if (c1 == 0.0 || c2 == 0.0 || c3 == 0.0) continue;
      const double pre = std::sqrt((2.0 * l + 1) * (2.0 * l + 1) * (2.0 * k + 1) / (16.0 * kPi * kPi));
      sum += parity(m) * pre * c1 * c2 * c3 * c2 * std::sqrt(4.0 * kPi);
    }
    t.at(k, 0) = rank_constant(j, k) * sum;
  }
  return t;
}

SphericalExpansion expansion_from_function(const SphereFunction& f, int l_max,
                                           const QuadratureGrid& grid) {
  require_grid_ok(grid);
  SphericalExpansion out(l_max);
  std::vector<double> values;
  values.reserve(grid.nodes.size());
  for (const auto& node : grid.nodes) values.push_back(node.weight * f(node.theta, node.phi));
  for (int l = 0; l <= l_max; ++l) {
    for (int m = -l; m <= l; ++m) {
      std::vector<Complex> terms;
      terms.reserve(values.size());
      for (std::size_t i = 0; i < values.size(); ++i) {
        const auto& node = grid.nodes[i];
        terms.push_back(values[i] * spherical_harmonic(l, m, node.theta, node.phi));
      }
      out.at(l, m) = pairwise_sum(std::move(terms), Complex{});
    }
  }
  return out;
}

}  // namespace multiaxial
