#include "multiaxial/mar_extraction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/binomial.hpp>

#include "multiaxial/angular_momentum.hpp"
#include "multiaxial/errors.hpp"

namespace multiaxial {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Vector3d sphere_point(const Complex& z) {
  const double theta = 2.0 * std::atan(std::abs(z));
  const double phi = std::arg(z);
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

}  // namespace

// Axis -------------------------------------------------------------------------

Axis Axis::from_vector(const Eigen::Vector3d& v) {
  const double norm = v.norm();
  if (!(norm > 0.0)) throw DomainError("Axis: zero vector");
  Eigen::Vector3d u = v / norm;
  const double rho = std::hypot(u.x(), u.y());
  if (std::abs(u.z()) <= kEquatorTol) {
    double phi = std::atan2(u.y(), u.x());
    if (phi < 0.0) phi += kPi;
    if (phi >= kPi) phi -= kPi;
    return {kPi / 2, phi};
  }
  if (u.z() < 0.0) u = -u;
  const double theta = std::atan2(rho, u.z());
  double phi = rho == 0.0 ? 0.0 : std::atan2(u.y(), u.x());
  if (phi < 0.0) phi += 2.0 * kPi;
  if (phi >= 2.0 * kPi) phi -= 2.0 * kPi;
  return {theta, phi};
}

Eigen::Vector3d Axis::unit() const {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

std::array<Complex, 3> spherical_components(const Eigen::Vector3d& v) {
  const double r2 = std::sqrt(0.5);
  return {r2 * Complex(v.x(), -v.y()), Complex(v.z(), 0.0), -r2 * Complex(v.x(), v.y())};
}

// Polynomial ---------------------------------------------------------------------

std::vector<Complex> mar_polynomial(const TensorParams& t, int k) {
  if (k < 1 || k > t.max_rank()) {
    throw DomainError("mar_polynomial: rank " + std::to_string(k) + " outside [1, " +
                      std::to_string(t.max_rank()) + "]");
  }
  std::vector<Complex> coeffs(std::size_t(2 * k + 1));
  for (int i = 0; i <= 2 * k; ++i) {
    const double weight = std::sqrt(boost::math::binomial_coefficient<double>(unsigned(2 * k), unsigned(i)));
    coeffs[std::size_t(i)] = weight * t.at(k, i - k);
  }
  return coeffs;
}

// Axes ---------------------------------------------------------------------------

std::vector<Axis> roots_to_axes(const PolynomialRoots& roots, int k, double pair_tol) {
  if (roots.total() != 2 * k) {
    throw ConsistencyError("roots_to_axes: expected " + std::to_string(2 * k) +
                           " roots, got " + std::to_string(roots.total()));
  }
  std::vector<Eigen::Vector3d> points;
  for (const auto& cluster : roots.finite) {
    const Eigen::Vector3d p = sphere_point(cluster.root);
    for (int i = 0; i < cluster.multiplicity; ++i) points.push_back(p);
  }
  for (int i = 0; i < roots.at_infinity; ++i) points.emplace_back(0.0, 0.0, -1.0);

  std::vector<bool> used(points.size(), false);
  std::vector<Axis> axes;
  for (std::size_t a = 0; a < points.size(); ++a) {
    if (used[a]) continue;
    std::size_t best = points.size();
    double best_dist = 0.0;
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      if (used[b]) continue;
      const double dist = (points[a] + points[b]).norm();
      if (best == points.size() || dist < best_dist) {
        best = b;
        best_dist = dist;
      }
    }
    if (best == points.size() || best_dist > pair_tol) {
      throw ConsistencyError("roots_to_axes: root at (" + std::to_string(points[a].x()) + ", " +
                             std::to_string(points[a].y()) + ", " + std::to_string(points[a].z()) +
                             ") has no antipodal partner");
    }
    used[a] = used[best] = true;
    axes.push_back(Axis::from_vector(points[a] - points[best]));
  }
  std::sort(axes.begin(), axes.end(), [](const Axis& x, const Axis& y) {
    if (x.theta != y.theta) return x.theta > y.theta;
    return x.phi < y.phi;
  });
  return axes;
}

std::vector<Complex> axes_to_tensor(std::span<const Axis> axes, int k) {
  if (k < 1 || int(axes.size()) != k) {
    throw DomainError("axes_to_tensor: need exactly k >= 1 axes");
  }
  const auto first = spherical_components(axes[0].unit());
  std::vector<Complex> s(first.begin(), first.end());
  for (int n = 2; n <= k; ++n) {
    const auto q_vec = spherical_components(axes[std::size_t(n - 1)].unit());
    std::vector<Complex> next(std::size_t(2 * n + 1), Complex{});
    for (int q = -n; q <= n; ++q) {
      Complex sum{};
      for (int q2 = -1; q2 <= 1; ++q2) {
        const int q1 = q - q2;
        if (std::abs(q1) > n - 1) continue;
        const double c = cg_value(HalfInt::integer(n - 1), HalfInt::integer(1), HalfInt::integer(n),
                                  HalfInt::integer(q1), HalfInt::integer(q2), HalfInt::integer(q));
        sum += c * s[std::size_t(q1 + n - 1)] * q_vec[std::size_t(q2 + 1)];
      }
      next[std::size_t(q + n)] = sum;
    }
    s = std::move(next);
  }
  return s;
}

RadiusFit fit_radius(std::span<const Complex> t_rank, std::span<const Complex> s) {
  if (t_rank.size() != s.size()) throw DomainError("fit_radius: size mismatch");
  Complex st{};
  double ss = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    st += std::conj(s[i]) * t_rank[i];
    ss += std::norm(s[i]);
  }
  if (!(ss > 1e-300)) throw DegenerateCouplingError("fit_radius: coupled product vanishes");
  const Complex ratio = st / ss;
  RadiusFit fit{ratio.real(), std::abs(ratio.imag()), 0.0};
  for (std::size_t i = 0; i < s.size(); ++i) {
    fit.residual = std::max(fit.residual, std::abs(t_rank[i] - fit.radius * s[i]));
  }
  return fit;
}

// Decomposition --------------------------------------------------------------------

bool MarDecomposition::all_resolved() const {
  return std::none_of(ranks.begin(), ranks.end(),
                      [](const RankMar& r) { return r.status == RankStatus::unresolved; });
}

TensorParams MarDecomposition::reconstruct() const {
  TensorParams t = TensorParams::isotropic(j);
  for (const auto& r : ranks) {
    if (r.status != RankStatus::resolved) continue;
    const auto s = axes_to_tensor(r.axes, r.rank);
    for (int q = -r.rank; q <= r.rank; ++q) t.at(r.rank, q) = r.signed_radius * s[std::size_t(q + r.rank)];
  }
  return t;
}

MarDecomposition extract_mar(const TensorParams& t, const MarOptions& options) {
  MarDecomposition out;
  out.j = t.j();
  for (int k = 1; k <= t.max_rank(); ++k) {
    RankMar r;
    r.rank = k;
    const auto block = t.rank(k);
    double scale = 0.0;
    for (const Complex& v : block) scale = std::max(scale, std::abs(v));
    if (scale <= options.zero_rank_tol) {
      out.ranks.push_back(std::move(r));
      continue;
    }
    try {
      r.polynomial = mar_polynomial(t, k);
      r.roots = polynomial_roots(r.polynomial, options.roots);
      r.axes = roots_to_axes(r.roots, k, options.pair_tol);
      const auto s = axes_to_tensor(r.axes, k);
      const RadiusFit fit = fit_radius(block, s);
      r.signed_radius = fit.radius;
      r.radius = std::abs(fit.radius);
      r.residual = fit.residual;
      if (fit.residual > options.residual_tol * scale) {
        r.status = RankStatus::unresolved;
        r.diagnostic = "reconstruction residual " + std::to_string(fit.residual);
      } else {
        r.status = RankStatus::resolved;
      }
    } catch (const ConsistencyError& e) {
      r.status = RankStatus::unresolved;
      r.diagnostic = e.what();
    } catch (const DegenerateCouplingError& e) {
      r.status = RankStatus::unresolved;
      r.diagnostic = e.what();
    }
    out.ranks.push_back(std::move(r));
  }
  return out;
}

bool collinearity_check(const MarDecomposition& mar, double tol) {
  std::vector<Eigen::Vector3d> units;
  for (const auto& r : mar.ranks) {
    if (r.radius <= tol) continue;
    for (const auto& a : r.axes) units.push_back(a.unit());
  }
  for (std::size_t a = 0; a < units.size(); ++a) {
    for (std::size_t b = a + 1; b < units.size(); ++b) {
      if (std::abs(units[a].dot(units[b])) < 1.0 - tol) return false;
    }
  }
  return true;
}

std::string to_string(RankStatus status) {
  switch (status) {
    case RankStatus::resolved: return "resolved";
    case RankStatus::zero: return "zero";
    case RankStatus::unresolved: return "unresolved";
  }
  return "unknown";
}

}  // namespace multiaxial
