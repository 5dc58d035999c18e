#include "multiaxial/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "multiaxial/errors.hpp"

namespace multiaxial {

using Complex = std::complex<double>;

int PolynomialRoots::total() const {
  return std::accumulate(finite.begin(), finite.end(), at_infinity,
                         [](int acc, const RootCluster& r) { return acc + r.multiplicity; });
}

Complex evaluate_polynomial(std::span<const Complex> coeffs, Complex z) {
  Complex acc{};
  for (const Complex& c : coeffs) acc = acc * z + c;
  return acc;
}

std::vector<Complex> polynomial_from_roots(const PolynomialRoots& roots, Complex leading) {
  std::vector<Complex> poly{leading};
  for (const auto& cluster : roots.finite) {
    for (int i = 0; i < cluster.multiplicity; ++i) {
      std::vector<Complex> next(poly.size() + 1, Complex{});
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k] += poly[k];
        next[k + 1] -= poly[k] * cluster.root;
      }
      poly = std::move(next);
    }
  }
  return poly;
}

namespace {

// Parlett-Reinsch balancing with radix 2.
void balance(Eigen::MatrixXcd& a) {
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  const Eigen::Index n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

std::vector<Complex> companion_eigenvalues(std::span<const Complex> b) {
  const std::size_t d = b.size() - 1;
  if (d == 1) return {-b[1] / b[0]};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(Eigen::Index(d), Eigen::Index(d));
  for (std::size_t k = 0; k < d; ++k) comp(0, Eigen::Index(k)) = -b[k + 1] / b[0];
  for (std::size_t k = 1; k < d; ++k) comp(Eigen::Index(k), Eigen::Index(k - 1)) = 1.0;
  balance(comp);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
  if (solver.info() != Eigen::Success) {
    throw ConsistencyError("polynomial_roots: companion eigenvalue iteration failed");
  }
  const Eigen::VectorXcd ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

// Taylor coefficients p^{(i)}(z)/i! for i < count, by repeated Horner division.
std::vector<Complex> taylor(std::vector<Complex> a, Complex z, int count) {
  std::vector<Complex> out;
  for (int i = 0; i < count && !a.empty(); ++i) {
    Complex acc{};
    std::vector<Complex> quotient;
    quotient.reserve(a.size());
    for (const Complex& c : a) {
      acc = acc * z + c;
      quotient.push_back(acc);
    }
    out.push_back(quotient.back());
    quotient.pop_back();
    a = std::move(quotient);
  }
  return out;
}

std::vector<double> taylor_scale(std::span<const Complex> a, double r, int count) {
  std::vector<Complex> absolute;
  for (const Complex& c : a) absolute.emplace_back(std::abs(c), 0.0);
  std::vector<double> out;
  for (const Complex& v : taylor(std::move(absolute), Complex(r, 0.0), count)) {
    out.push_back(v.real());
  }
  return out;
}

// True when z is, to tolerance, a root of multiplicity >= m.
bool is_multiple_root(std::span<const Complex> a, Complex z, int m, double tol) {
  const auto t = taylor({a.begin(), a.end()}, z, m);
  const auto s = taylor_scale(a, std::abs(z), m);
  for (int i = 0; i < m; ++i) {
    if (!(std::abs(t[i]) <= tol * s[i])) return false;
  }
  return true;
}

// Newton on the simple root of p^{(m-1)}, accepting only improving steps.
Complex polish(std::span<const Complex> a, Complex z, int m, int steps) {
  for (int s = 0; s < steps; ++s) {
    const auto t = taylor({a.begin(), a.end()}, z, m + 1);
    if (int(t.size()) < m + 1) break;
    // d/dz [p^{(m-1)}/(m-1)!] = m * T_m
    const Complex value = t[m - 1];
    const Complex slope = double(m) * t[m];
    if (slope == Complex{} || value == Complex{}) break;
    const Complex candidate = z - value / slope;
    const auto tc = taylor({a.begin(), a.end()}, candidate, m);
    if (int(tc.size()) < m || !(std::abs(tc[m - 1]) < std::abs(value))) break;
    z = candidate;
  }
  return z;
}

}  // namespace

PolynomialRoots polynomial_roots(std::span<const Complex> coeffs, const RootOptions& options) {
  if (coeffs.empty()) throw DomainError("polynomial_roots: empty coefficient vector");
  double scale = 0.0;
  for (const Complex& c : coeffs) scale = std::max(scale, std::abs(c));
  if (!(scale > 0.0)) throw DomainError("polynomial_roots: zero polynomial");
  const double threshold = options.zero_coeff_rel * scale;

  std::size_t lead = 0;
  while (std::abs(coeffs[lead]) <= threshold) ++lead;
  std::size_t end = coeffs.size();
  while (std::abs(coeffs[end - 1]) <= threshold) --end;

  PolynomialRoots out;
  out.at_infinity = int(lead);
  const int zeros = int(coeffs.size() - end);

  const std::vector<Complex> direct(coeffs.begin() + lead, coeffs.begin() + end);
  const std::vector<Complex> reversed(direct.rbegin(), direct.rend());
  const int degree = int(direct.size()) - 1;

  if (degree >= 1) {
    std::vector<Complex> eig = companion_eigenvalues(direct);
    std::sort(eig.begin(), eig.end(), [](Complex a, Complex b) {
      if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
      return std::arg(a) < std::arg(b);
    });
    std::vector<bool> used(eig.size(), false);

    for (std::size_t seed = 0; seed < eig.size(); ++seed) {
      if (used[seed]) continue;
      // Work in Z inside the unit disk and in 1/Z outside it.
      const bool inverted = std::abs(eig[seed]) > 1.0;
      const std::span<const Complex> local = inverted ? reversed : direct;
      auto to_local = [&](Complex z) { return inverted ? 1.0 / z : z; };
      const Complex u_seed = to_local(eig[seed]);

      std::vector<std::pair<double, std::size_t>> near;
      for (std::size_t i = 0; i < eig.size(); ++i) {
        if (used[i] || (inverted && eig[i] == Complex{})) continue;
        near.emplace_back(std::abs(to_local(eig[i]) - u_seed), i);
      }
      std::sort(near.begin(), near.end());

      int best = 1;
      Complex best_center = u_seed;
      Complex sum{};
      for (std::size_t m = 1; m <= near.size(); ++m) {
        sum += to_local(eig[near[m - 1].second]);
        const Complex center = sum / double(m);
        double radius = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          radius = std::max(radius, std::abs(to_local(eig[near[i].second]) - center));
        }
        const double ref = std::max(1.0, std::abs(center));
        if (radius > 0.5 * ref) break;
        if (m == 1 || radius <= options.cluster_rel * ref ||
            is_multiple_root(local, center, int(m), options.multiple_root_tol)) {
          best = int(m);
          best_center = center;
        }
      }
      for (int i = 0; i < best; ++i) used[near[std::size_t(i)].second] = true;

      const Complex refined = polish(local, best_center, best, options.newton_steps);
      if (inverted && refined == Complex{}) {
        out.at_infinity += best;
      } else {
        out.finite.push_back({inverted ? 1.0 / refined : refined, best});
      }
    }
  }
  if (zeros > 0) out.finite.push_back({Complex{}, zeros});

  std::sort(out.finite.begin(), out.finite.end(), [](const RootCluster& a, const RootCluster& b) {
    if (std::abs(a.root) != std::abs(b.root)) return std::abs(a.root) < std::abs(b.root);
    return std::arg(a.root) < std::arg(b.root);
  });
  return out;
}

}  // namespace multiaxial
