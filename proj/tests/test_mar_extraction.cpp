#include "multiaxial/mar_extraction.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/binomial.hpp>

#include "gtest/gtest.h"

#include "multiaxial/angular_momentum.hpp"
#include "multiaxial/errors.hpp"
#include "multiaxial/p_function.hpp"
#include "multiaxial/symmetric_states.hpp"
#include "oracles.hpp"

using namespace multiaxial;

namespace {

HalfInt D(int doubled) { return HalfInt::from_doubled(doubled); }

constexpr double kPi = std::numbers::pi;

TensorParams four_point_t() {
  TensorParams t = TensorParams::isotropic(D(2));
  t.at(2, 0) = 1.0 / (4.0 * std::sqrt(2.0));
  t.at(2, 2) = t.at(2, -2) = std::sqrt(3.0) / 8.0;
  return t;
}

TensorParams coherent_t(HalfInt j, const BlochVector& dir) {
  return rho_to_t(product_state_in_jm(dir, j.doubled()));
}

std::vector<Eigen::Vector3d> units(const std::vector<Axis>& axes, const Eigen::Matrix3d& r = Eigen::Matrix3d::Identity()) {
  std::vector<Eigen::Vector3d> out;
  for (const auto& a : axes) out.push_back(r * a.unit());
  return out;
}

PolynomialRoots roots_of(std::vector<RootCluster> finite, int at_infinity = 0) {
  PolynomialRoots r;
  r.finite = std::move(finite);
  r.at_infinity = at_infinity;
  return r;
}

void expect_axis(const Axis& a, double theta, double phi, double tol = 1e-12) {
  EXPECT_NEAR(a.theta, theta, tol);
  EXPECT_NEAR(a.phi, phi, tol);
}

}  // namespace

TEST(axis, canonical_representative) {
  expect_axis(Axis::from_vector({0, 0, -1}), 0, 0);
  expect_axis(Axis::from_vector({-1, 0, 0}), kPi / 2, 0);
  expect_axis(Axis::from_vector({0, -1, 0}), kPi / 2, kPi / 2);
  expect_axis(Axis::from_vector({0, 1, 0}), kPi / 2, kPi / 2);
  const Axis a = Axis::from_vector({0.3, -0.4, -0.5});
  EXPECT_LT(a.theta, kPi / 2);
  EXPECT_LT((a.unit() + Eigen::Vector3d(0.3, -0.4, -0.5).normalized()).norm(), 1e-15);
  EXPECT_THROW(Axis::from_vector(Eigen::Vector3d::Zero()), DomainError);
}

TEST(mar_polynomial, four_point_quartic) {
  const std::vector<Complex> p = mar_polynomial(four_point_t(), 2);
  ASSERT_EQ(p.size(), 5u);
  EXPECT_LT(std::abs(p[0] - std::sqrt(3.0) / 8.0), 1e-15);
  EXPECT_LT(std::abs(p[1]), 1e-15);
  EXPECT_LT(std::abs(p[2] - std::sqrt(6.0) / (4.0 * std::sqrt(2.0))), 1e-15);
  EXPECT_LT(std::abs(p[3]), 1e-15);
  EXPECT_LT(std::abs(p[4] - std::sqrt(3.0) / 8.0), 1e-15);
}

TEST(mar_polynomial, coefficient_layout) {
  std::mt19937_64 rng(51);
  const TensorParams t = rho_to_t(oracle::random_state(D(4), rng));
  for (int k = 1; k <= 4; ++k) {
    const auto p = mar_polynomial(t, k);
    ASSERT_EQ(p.size(), std::size_t(2 * k + 1));
    EXPECT_EQ(p.front(), t.at(k, -k));
    EXPECT_EQ(p.back(), t.at(k, k));
    for (int q = -k; q <= k; ++q) {
      const double b = boost::math::binomial_coefficient<double>(unsigned(2 * k), unsigned(k + q));
      EXPECT_LT(std::abs(p[std::size_t(q + k)] - std::sqrt(b) * t.at(k, q)), 1e-15);
    }
  }
  EXPECT_THROW(mar_polynomial(t, 0), DomainError);
  EXPECT_THROW(mar_polynomial(t, 5), DomainError);
}

TEST(mar_polynomial, plus_z_coherent_state_has_only_the_middle_term) {
  for (int dj = 1; dj <= 6; ++dj) {
    const TensorParams t = coherent_t(D(dj), BlochVector{0, 0});
    for (int k = 1; k <= dj; ++k) {
      const auto p = mar_polynomial(t, k);
      for (int i = 0; i <= 2 * k; ++i) {
        if (i == k) {
          EXPECT_GT(std::abs(p[std::size_t(i)]), 1e-3);
        } else {
          EXPECT_LT(std::abs(p[std::size_t(i)]), 1e-15);
        }
      }
    }
  }
}

TEST(mar_polynomial, qubit_rank_one_roots_are_its_axis) {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 20; ++i) {
    const BlochVector dir = oracle::random_direction(rng);
    const TensorParams t = coherent_t(D(1), dir);
    const auto p = mar_polynomial(t, 1);
    // a Z^2 + b Z + c solved directly
    const Complex a = p[0], b = p[1], c = p[2];
    const Complex disc = std::sqrt(b * b - 4.0 * a * c);
    const Complex z1 = (-b + disc) / (2.0 * a), z2 = (-b - disc) / (2.0 * a);
    const auto point = [](Complex z) {
      const double th = 2 * std::atan(std::abs(z)), ph = std::arg(z);
      return Eigen::Vector3d(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
    };
    const Eigen::Vector3d n = dir.cartesian();
    const Eigen::Vector3d p1 = point(z1), p2 = point(z2);
    EXPECT_LT(std::min((p1 - n).norm(), (p1 + n).norm()), 1e-9);
    EXPECT_LT((p1 + p2).norm(), 1e-9);
  }
}

TEST(roots_to_axes, imaginary_unit_is_the_y_axis) {
  const auto a2 = roots_to_axes(roots_of({{Complex(0, 1), 1}, {Complex(0, -1), 1}}), 1);
  ASSERT_EQ(a2.size(), 1u);
  expect_axis(a2[0], kPi / 2, kPi / 2);
}

TEST(roots_to_axes, origin_pairs_with_infinity) {
  const auto axes = roots_to_axes(roots_of({{Complex(0), 1}}, 1), 1);
  ASSERT_EQ(axes.size(), 1u);
  expect_axis(axes[0], 0, 0);
}

TEST(roots_to_axes, unit_root_pairs_with_minus_one) {
  const auto axes = roots_to_axes(roots_of({{Complex(1), 1}, {Complex(-1), 1}}), 1);
  ASSERT_EQ(axes.size(), 1u);
  expect_axis(axes[0], kPi / 2, 0);
}

TEST(roots_to_axes, four_point_roots) {
  const auto axes = roots_to_axes(roots_of({{Complex(0, -1), 2}, {Complex(0, 1), 2}}), 2);
  ASSERT_EQ(axes.size(), 2u);
  for (const auto& a : axes) expect_axis(a, kPi / 2, kPi / 2);
}

TEST(roots_to_axes, consistency_errors) {
  EXPECT_THROW(roots_to_axes(roots_of({{Complex(0.5), 1}, {Complex(0.25), 1}}), 1), ConsistencyError);
  EXPECT_THROW(roots_to_axes(roots_of({{Complex(1), 1}}), 1), ConsistencyError);
  EXPECT_THROW(roots_to_axes(roots_of({}, 2), 1), ConsistencyError);
}

TEST(roots_to_axes, output_order) {
  // axes along x, z and a tilted direction come back by descending theta
  std::vector<RootCluster> roots = {{Complex(1), 1}, {Complex(-1), 1}, {Complex(0), 1}};
  const double th = 0.6, ph = 0.4;
  const Complex z = std::tan(th / 2) * std::exp(Complex(0, ph));
  roots.push_back({z, 1});
  roots.push_back({-1.0 / std::conj(z), 1});
  const auto axes = roots_to_axes(roots_of(roots, 1), 3);
  ASSERT_EQ(axes.size(), 3u);
  expect_axis(axes[0], kPi / 2, 0);
  expect_axis(axes[1], th, ph, 1e-12);
  expect_axis(axes[2], 0, 0);
}

TEST(axes_to_tensor, single_z_axis) {
  const auto s = axes_to_tensor(std::vector<Axis>{{0, 0}}, 1);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_LT(std::abs(s[0]), 1e-16);
  EXPECT_LT(std::abs(s[1] - 1.0), 1e-16);
  EXPECT_LT(std::abs(s[2]), 1e-16);
}

TEST(axes_to_tensor, two_z_axes) {
  const auto s = axes_to_tensor(std::vector<Axis>{{0, 0}, {0, 0}}, 2);
  const double c = oracle::cg_diagonalization(D(2), D(2), D(4), D(0), D(0), D(0));
  EXPECT_NEAR(std::abs(s[2] - c), 0.0, 1e-12);
  for (int i : {0, 1, 3, 4}) EXPECT_LT(std::abs(s[std::size_t(i)]), 1e-16);
}

TEST(axes_to_tensor, four_point_axes_reproduce_table_ratios) {
  const auto s = axes_to_tensor(std::vector<Axis>{{kPi / 2, kPi / 2}, {kPi / 2, kPi / 2}}, 2);
  const TensorParams t = four_point_t();
  const Complex ratio = t.at(2, 0) / s[2];
  for (int q = -2; q <= 2; ++q) EXPECT_LT(std::abs(t.at(2, q) - ratio * s[std::size_t(q + 2)]), 1e-15);
}

TEST(axes_to_tensor, conjugation_symmetry) {
  std::mt19937_64 rng(53);
  for (int k = 1; k <= 8; ++k) {
    std::vector<Axis> axes;
    for (int i = 0; i < k; ++i) axes.push_back(Axis::from_vector(oracle::random_direction(rng).cartesian()));
    const auto s = axes_to_tensor(axes, k);
    for (int q = -k; q <= k; ++q) {
      const double sign = (q % 2 == 0) ? 1.0 : -1.0;
      EXPECT_LT(std::abs(std::conj(s[std::size_t(q + k)]) - sign * s[std::size_t(-q + k)]), 1e-13);
    }
  }
  EXPECT_THROW(axes_to_tensor(std::vector<Axis>{{0, 0}}, 2), DomainError);
}

TEST(fit_radius, unit_and_scaled) {
  std::mt19937_64 rng(54);
  std::vector<Axis> axes;
  for (int i = 0; i < 3; ++i) axes.push_back(Axis::from_vector(oracle::random_direction(rng).cartesian()));
  const auto s = axes_to_tensor(axes, 3);
  const RadiusFit unit = fit_radius(s, s);
  EXPECT_NEAR(unit.radius, 1.0, 1e-15);
  EXPECT_NEAR(unit.residual, 0.0, 1e-15);
  std::vector<Complex> scaled;
  for (Complex v : s) scaled.push_back(2.5 * v);
  const RadiusFit fit = fit_radius(scaled, s);
  EXPECT_NEAR(fit.radius, 2.5, 1e-14);
  EXPECT_LT(fit.residual, 1e-14);
  EXPECT_LT(fit.imaginary, 1e-14);
  std::vector<Complex> rotated;
  for (Complex v : s) rotated.push_back(Complex(0, 1) * v);
  EXPECT_NEAR(fit_radius(rotated, s).imaginary, 1.0, 1e-14);
}

TEST(fit_radius, vanishing_coupling_is_degenerate) {
  const std::vector<Complex> zero(3, Complex{});
  const std::vector<Complex> t = {0.0, 1.0, 0.0};
  EXPECT_THROW(fit_radius(t, zero), DegenerateCouplingError);
}

TEST(extract_mar, four_point_example) {
  const MarDecomposition mar = extract_mar(four_point_t());
  EXPECT_EQ(mar.rank(1).status, RankStatus::zero);
  EXPECT_EQ(mar.rank(1).radius, 0.0);
  EXPECT_TRUE(mar.rank(1).axes.empty());
  const RankMar& r2 = mar.rank(2);
  ASSERT_EQ(r2.status, RankStatus::resolved);
  ASSERT_EQ(r2.axes.size(), 2u);
  for (const auto& a : r2.axes) expect_axis(a, kPi / 2, kPi / 2, 1e-9);
  EXPECT_LT(r2.residual, 1e-9);
  const RadiusFit refit = fit_radius(four_point_t().rank(2), axes_to_tensor(r2.axes, 2));
  EXPECT_LT(refit.residual, 1e-9);
  EXPECT_LT(refit.imaginary, 1e-9);
  EXPECT_NEAR(r2.radius, std::abs(refit.radius), 1e-12);
  EXPECT_TRUE(collinearity_check(mar, 1e-9));
}

TEST(extract_mar, plus_z_coherent_state) {
  const MarDecomposition mar = extract_mar(coherent_t(D(2), BlochVector{0, 0}));
  for (int k = 1; k <= 2; ++k) {
    ASSERT_EQ(mar.rank(k).status, RankStatus::resolved);
    ASSERT_EQ(mar.rank(k).axes.size(), std::size_t(k));
    for (const auto& a : mar.rank(k).axes) expect_axis(a, 0, 0);
  }
}

TEST(extract_mar, maximally_mixed) {
  const MarDecomposition mar = extract_mar(TensorParams::isotropic(D(5)));
  ASSERT_EQ(mar.ranks.size(), 5u);
  for (const auto& r : mar.ranks) {
    EXPECT_EQ(r.status, RankStatus::zero);
    EXPECT_EQ(r.radius, 0.0);
    EXPECT_TRUE(r.axes.empty());
  }
  EXPECT_TRUE(collinearity_check(mar, 1e-9));
}

TEST(extract_mar, residual_definition) {
  std::mt19937_64 rng(55);
  const TensorParams t = rho_to_t(oracle::random_state(D(5), rng));
  const MarDecomposition mar = extract_mar(t);
  for (const auto& r : mar.ranks) {
    ASSERT_EQ(r.status, RankStatus::resolved);
    const auto s = axes_to_tensor(r.axes, r.rank);
    double worst = 0.0;
    for (int q = -r.rank; q <= r.rank; ++q) {
      worst = std::max(worst, std::abs(t.at(r.rank, q) - r.signed_radius * s[std::size_t(q + r.rank)]));
    }
    EXPECT_NEAR(r.residual, worst, 1e-15);
    EXPECT_NEAR(r.radius, std::abs(r.signed_radius), 0.0);
  }
  EXPECT_LT(mar.reconstruct().max_abs_difference(t), 1e-9);
}

TEST(extract_mar, reconstructs_random_pure_states) {
  std::mt19937_64 rng(56);
  for (int trial = 0; trial < 100; ++trial) {
    const HalfInt j = D(1 + trial % 8);
    const TensorParams t = rho_to_t(oracle::random_pure_state(j, rng));
    const MarDecomposition mar = extract_mar(t);
    ASSERT_TRUE(mar.all_resolved()) << trial;
    for (const auto& r : mar.ranks) {
      const RadiusFit fit = fit_radius(t.rank(r.rank), axes_to_tensor(r.axes, r.rank));
      ASSERT_LT(fit.residual, 1e-8) << trial << " rank " << r.rank;
    }
  }
}

TEST(extract_mar, sign_violating_table_is_unresolved) {
  TensorParams t = TensorParams::isotropic(D(1));
  t.at(1, 1) = 0.3;
  const MarDecomposition mar = extract_mar(t);
  EXPECT_EQ(mar.rank(1).status, RankStatus::unresolved);
  EXPECT_FALSE(mar.rank(1).diagnostic.empty());
  EXPECT_FALSE(mar.all_resolved());
}

TEST(extract_mar, rotation_equivariance) {
  std::mt19937_64 rng(57);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int trial = 0; trial < 20; ++trial) {
    const HalfInt j = D(2 + trial % 5);
    const TensorParams t = rho_to_t(oracle::random_state(j, rng));
    const double phi = u(rng), theta = u(rng), psi = u(rng);
    const Eigen::Matrix3d R = oracle::rotation(phi, theta, psi);
    const MarDecomposition before = extract_mar(t);
    const MarDecomposition after = extract_mar(rotate_t(t, phi, theta, psi));
    for (int k = 1; k <= j.doubled(); ++k) {
      ASSERT_LT(oracle::axis_set_distance(units(before.rank(k).axes, R), units(after.rank(k).axes)), 1e-7)
          << trial << " rank " << k;
      ASSERT_NEAR(before.rank(k).radius, after.rank(k).radius, 1e-10);
    }
  }
}

TEST(extract_mar, coherent_states_are_uniaxial) {
  std::mt19937_64 rng(58);
  for (int dj = 1; dj <= 8; ++dj) {
    for (int trial = 0; trial < 5; ++trial) {
      const BlochVector dir = oracle::random_direction(rng);
      const MarDecomposition mar = extract_mar(coherent_t(D(dj), dir));
      const Eigen::Vector3d n = dir.cartesian();
      for (const auto& r : mar.ranks) {
        ASSERT_EQ(r.status, RankStatus::resolved);
        for (const auto& a : r.axes) {
          ASSERT_LT(std::min((a.unit() - n).norm(), (a.unit() + n).norm()), 1e-8) << dj << " rank " << r.rank;
        }
      }
      ASSERT_TRUE(collinearity_check(mar, 1e-8));
    }
  }
}

TEST(collinearity_check, two_direction_mixture_is_not_collinear) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    const BlochVector a = oracle::random_direction(rng), b = oracle::random_direction(rng);
    const SeparableEnsemble e{2, {{0.5, a}, {0.5, b}}};
    EXPECT_FALSE(collinearity_check(extract_mar(rho_to_t(ensemble_to_rho(e))), 1e-6));
  }
}
