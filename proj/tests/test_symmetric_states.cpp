#include "multiaxial/symmetric_states.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/binomial.hpp>

#include "gtest/gtest.h"

#include "multiaxial/angular_momentum.hpp"
#include "multiaxial/errors.hpp"
#include "oracles.hpp"

using namespace multiaxial;

namespace {

HalfInt D(int doubled) { return HalfInt::from_doubled(doubled); }

constexpr double kPi = std::numbers::pi;

const BlochVector kPlusZ{0.0, 0.0};
const BlochVector kMinusZ{kPi, 0.0};
const BlochVector kPlusX{kPi / 2, 0.0};
const BlochVector kMinusX{kPi / 2, kPi};

SeparableEnsemble four_point_ensemble() {
  return {2, {{0.25, kPlusX}, {0.25, kMinusX}, {0.25, kPlusZ}, {0.25, kMinusZ}}};
}

SeparableEnsemble random_ensemble(int n_qubits, int n_terms, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> w(0.05, 1.0);
  SeparableEnsemble e;
  e.n_qubits = n_qubits;
  double total = 0.0;
  for (int i = 0; i < n_terms; ++i) {
    e.terms.push_back({w(rng), oracle::random_direction(rng)});
    total += e.terms.back().weight;
  }
  for (auto& t : e.terms) t.weight /= total;
  return e;
}

Eigen::MatrixXcd full_product(const BlochVector& dir, int n) {
  Eigen::MatrixXcd out = qubit_density(dir);
  for (int i = 1; i < n; ++i) out = oracle::kron(out, qubit_density(dir));
  return out;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(bloch_vector, angles_and_cartesian) {
  const BlochVector v = BlochVector::from_angles(-kPi / 2, 0.0);
  EXPECT_NEAR((v.cartesian() - Eigen::Vector3d(-1, 0, 0)).norm(), 0.0, 1e-15);
  EXPECT_GE(v.theta, 0.0);
  EXPECT_LE(v.theta, kPi);
  EXPECT_NEAR(BlochVector::from_angles(1.0, -0.5).phi, 2 * kPi - 0.5, 1e-15);
  const BlochVector c = BlochVector::from_cartesian(Eigen::Vector3d(0, 2, 0));
  EXPECT_NEAR(c.theta, kPi / 2, 1e-15);
  EXPECT_NEAR(c.phi, kPi / 2, 1e-15);
  EXPECT_NEAR(c.cartesian().norm(), 1.0, 1e-15);
  EXPECT_THROW(BlochVector::from_angles(NAN, 0.0), DomainError);
  EXPECT_THROW(BlochVector::from_cartesian(Eigen::Vector3d::Zero()), DomainError);
  EXPECT_NEAR(angular_separation(kPlusZ, kPlusX), kPi / 2, 1e-15);
}

TEST(qubit_density, axis_states) {
  Eigen::Matrix2cd z, x;
  z << 1, 0, 0, 0;
  x << 0.5, 0.5, 0.5, 0.5;
  EXPECT_LT(max_abs(qubit_density(kPlusZ) - z), 1e-15);
  EXPECT_LT(max_abs(qubit_density(kPlusX) - x), 1e-15);
}

TEST(qubit_density, pure_for_every_direction) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 20; ++i) {
    const Eigen::Matrix2cd r = qubit_density(oracle::random_direction(rng));
    EXPECT_NEAR(r.trace().real(), 1.0, 1e-15);
    EXPECT_NEAR(purity(Eigen::MatrixXcd(r)), 1.0, 1e-14);
    EXPECT_LT(max_abs(r * r - r), 1e-15);
  }
}

TEST(symmetric_subspace_unitary, single_qubit_is_identity) {
  EXPECT_LT((symmetric_subspace_unitary(1) - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(symmetric_subspace_unitary, two_qubits_match_displayed_matrix) {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix4d u;
  u << 1, 0, 0, 0, 0, s, s, 0, 0, 0, 0, 1, 0, s, -s, 0;
  EXPECT_LT((symmetric_subspace_unitary(2) - u).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(symmetric_subspace_unitary, orthogonal_and_symmetric_rows) {
  for (int n = 1; n <= 6; ++n) {
    const Eigen::MatrixXd u = symmetric_subspace_unitary(n);
    const int d = 1 << n;
    EXPECT_LT((u * u.transpose() - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-13) << n;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        const Eigen::MatrixXd p = transposition(n, a, b);
        EXPECT_LT((u.topRows(n + 1) * p - u.topRows(n + 1)).cwiseAbs().maxCoeff(), 1e-13);
      }
    }
  }
}

TEST(symmetric_subspace_unitary, symmetric_rows_are_dicke_states) {
  // |j, M> is the normalized sum of all strings with j - M down spins.
  for (int n = 1; n <= 5; ++n) {
    const Eigen::MatrixXd u = symmetric_subspace_unitary(n);
    for (int r = 0; r <= n; ++r) {
      const double norm = 1.0 / std::sqrt(double(boost::math::binomial_coefficient<double>(unsigned(n), unsigned(r))));
      for (int s = 0; s < (1 << n); ++s) {
        const double want = __builtin_popcount(unsigned(s)) == r ? norm : 0.0;
        ASSERT_NEAR(u(r, s), want, 1e-13) << n << ' ' << r << ' ' << s;
      }
    }
  }
}

TEST(symmetric_subspace_unitary, out_of_range_throws) {
  EXPECT_THROW(symmetric_subspace_unitary(0), DomainError);
  EXPECT_THROW(symmetric_subspace_unitary(13), DomainError);
}

TEST(symmetrize_pair, identical_directions_have_no_antisymmetric_weight) {
  const SymmetrizedPair p = symmetrize_pair(kPlusX, kPlusX);
  EXPECT_NEAR(p.antisym_weight, 0.0, 1e-15);
  EXPECT_LT(p.block_coupling, 1e-15);
}

TEST(symmetrize_pair, antipodal_directions) {
  const SymmetrizedPair p = symmetrize_pair(kPlusZ, kMinusZ);
  EXPECT_NEAR(p.antisym_weight, 0.5, 1e-15);
}

TEST(symmetrize_pair, block_structure_and_entries) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 50; ++i) {
    const BlochVector a = oracle::random_direction(rng), b = oracle::random_direction(rng);
    const SymmetrizedPair p = symmetrize_pair(a, b);
    const Eigen::MatrixXcd comp =
        0.5 * (oracle::kron(qubit_density(a), qubit_density(b)) + oracle::kron(qubit_density(b), qubit_density(a)));
    ASSERT_LT(max_abs(p.computational - comp), 1e-15);
    const Eigen::Matrix4d u = symmetric_subspace_unitary(2);
    const Eigen::Matrix4cd coupled = u * comp * u.transpose();
    ASSERT_LT(max_abs(p.coupled - coupled), 1e-15);
    for (int k = 0; k < 3; ++k) {
      ASSERT_LT(std::abs(coupled(k, 3)), 1e-12);
      ASSERT_LT(std::abs(coupled(3, k)), 1e-12);
    }
    ASSERT_LT(p.block_coupling, 1e-12);
    const Eigen::Vector3d n1 = a.cartesian(), n2 = b.cartesian();
    const double cos_gamma = std::cos(angular_separation(a, b));
    ASSERT_NEAR(p.antisym_weight, (1.0 - cos_gamma) / 4.0, 1e-12);
    ASSERT_NEAR(coupled(3, 3).real(), (1.0 - n1.dot(n2)) / 4.0, 1e-15);
    // triplet block in closed form, p_- = p_x - i p_y
    const Complex m1(n1.x(), -n1.y()), m2(n2.x(), -n2.y());
    const double z1 = n1.z(), z2 = n2.z();
    ASSERT_LT(std::abs(coupled(0, 0) - (1 + z1) * (1 + z2) / 4.0), 1e-15);
    ASSERT_LT(std::abs(coupled(0, 1) - (m2 * (1 + z1) + m1 * (1 + z2)) / (4.0 * std::sqrt(2.0))), 1e-15);
    ASSERT_LT(std::abs(coupled(0, 2) - m1 * m2 / 4.0), 1e-15);
    ASSERT_LT(std::abs(coupled(1, 1) - (1 - z1 * z2 + n1.x() * n2.x() + n1.y() * n2.y()) / 4.0), 1e-15);
    ASSERT_LT(std::abs(coupled(2, 2) - (1 - z1) * (1 - z2) / 4.0), 1e-15);
  }
}

TEST(product_state_in_jm, plus_z_is_canonical) {
  for (int n = 1; n <= 8; ++n) {
    const SpinDensityMatrix rho = product_state_in_jm(kPlusZ, n);
    Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    want(0, 0) = 1.0;
    EXPECT_LT(max_abs(rho.matrix() - want), 1e-15) << n;
  }
}

TEST(product_state_in_jm, aligned_frame_multipoles) {
  for (int n = 1; n <= 8; ++n) {
    const HalfInt j = D(n);
    const TensorParams t = rho_to_t(product_state_in_jm(kPlusZ, n));
    for (int k = 0; k <= n; ++k) {
      const double want = std::sqrt(2.0 * k + 1) * cg_value(j, HalfInt::integer(k), j, j, HalfInt::integer(0), j);
      EXPECT_LT(std::abs(t.at(k, 0) - want), 1e-12);
      for (int q = -k; q <= k; ++q) {
        if (q != 0) EXPECT_LT(std::abs(t.at(k, q)), 1e-12);
      }
    }
  }
}

TEST(product_state_in_jm, pure_for_every_direction) {
  std::mt19937_64 rng(33);
  for (int n = 1; n <= 8; ++n) {
    const SpinDensityMatrix rho = product_state_in_jm(oracle::random_direction(rng), n);
    EXPECT_NEAR(purity(rho), 1.0, 1e-12);
    EXPECT_TRUE(rho.is_physical());
  }
}

TEST(product_state_in_jm, matches_full_tensor_construction) {
  std::mt19937_64 rng(34);
  for (int n = 1; n <= 4; ++n) {
    for (int i = 0; i < 10; ++i) {
      const BlochVector dir = oracle::random_direction(rng);
      const Eigen::MatrixXcd full = full_product(dir, n);
      ASSERT_LT(max_abs(full - product_state_full(dir, n)), 1e-15);
      const Eigen::MatrixXd u = symmetric_subspace_unitary(n);
      const Eigen::MatrixXcd coupled = u * full * u.transpose();
      ASSERT_LT(max_abs(coupled.topLeftCorner(n + 1, n + 1) - product_state_in_jm(dir, n).matrix()), 1e-13);
      ASSERT_LT(max_abs(compress_to_symmetric(full, n) - product_state_in_jm(dir, n).matrix()), 1e-13);
      // nothing outside the symmetric block
      ASSERT_NEAR(coupled.topLeftCorner(n + 1, n + 1).trace().real(), 1.0, 1e-13);
    }
  }
}

TEST(product_state_in_jm, coherent_multipole_law) {
  std::mt19937_64 rng(35);
  for (int n = 1; n <= 8; ++n) {
    const HalfInt j = D(n);
    const BlochVector dir = oracle::random_direction(rng);
    const TensorParams t = rho_to_t(product_state_in_jm(dir, n));
    for (int k = 0; k <= n; ++k) {
      const double c = std::sqrt(2.0 * k + 1) * cg_value(j, HalfInt::integer(k), j, j, HalfInt::integer(0), j) *
                       std::sqrt(4 * kPi / (2.0 * k + 1));
      for (int q = -k; q <= k; ++q) {
        ASSERT_LT(std::abs(t.at(k, q) - c * spherical_harmonic(k, q, dir.theta, dir.phi)), 1e-11);
      }
    }
  }
}

TEST(ensemble_to_rho, four_point_example) {
  Eigen::MatrixXcd want(3, 3);
  want << 6, 0, 2, 0, 4, 0, 2, 0, 6;
  EXPECT_LT(max_abs(ensemble_to_rho(four_point_ensemble()).matrix() - want / 16.0), 1e-15);
  Eigen::MatrixXcd full(4, 4);
  full << 6, 0, 0, 2, 0, 2, 2, 0, 0, 2, 2, 0, 2, 0, 0, 6;
  EXPECT_LT(max_abs(ensemble_to_full_rho(four_point_ensemble()) - full / 16.0), 1e-15);
}

TEST(ensemble_to_rho, single_term_is_pure) {
  const SeparableEnsemble e{3, {{1.0, BlochVector{0.4, 1.3}}}};
  EXPECT_NEAR(purity(ensemble_to_rho(e)), 1.0, 1e-12);
}

TEST(ensemble_to_rho, antipodal_qubit_mixture) {
  const SeparableEnsemble e{1, {{0.5, kPlusZ}, {0.5, kMinusZ}}};
  const SpinDensityMatrix rho = ensemble_to_rho(e);
  EXPECT_LT(max_abs(rho.matrix() - Eigen::MatrixXcd::Identity(2, 2) / 2.0), 1e-15);
  EXPECT_NEAR(purity(rho), 0.5, 1e-15);
}

TEST(ensemble_to_rho, weight_violations) {
  const auto invariant = [](const SeparableEnsemble& e) -> std::string {
    try {
      ensemble_to_rho(e);
    } catch (const ValidationError& err) {
      return err.invariant();
    }
    return "";
  };
  EXPECT_EQ(invariant({2, {{0.5, kPlusZ}, {0.4, kMinusZ}}}), "weights");
  EXPECT_EQ(invariant({2, {{1.5, kPlusZ}, {-0.5, kMinusZ}}}), "weights");
  EXPECT_EQ(invariant({2, {{1.0, kPlusZ}, {0.0, kMinusZ}}}), "weights");
  EXPECT_EQ(invariant({2, {}}), "weights");
  EXPECT_THROW(ensemble_to_rho({0, {{1.0, kPlusZ}}}), DomainError);
}

TEST(ensemble_to_rho, tensor_parameters_are_linear) {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 8;
    const SeparableEnsemble e = random_ensemble(n, 2 + trial % 4, rng);
    const TensorParams t = rho_to_t(ensemble_to_rho(e));
    TensorParams sum(D(n));
    for (const auto& term : e.terms) {
      const TensorParams ti = rho_to_t(product_state_in_jm(term.direction, n));
      for (int k = 0; k <= n; ++k) {
        for (int q = -k; q <= k; ++q) sum.at(k, q) += term.weight * ti.at(k, q);
      }
    }
    ASSERT_LT(t.max_abs_difference(sum), 1e-12);
  }
}

TEST(ensemble_to_rho, matches_compressed_full_mixture) {
  std::mt19937_64 rng(37);
  for (int n = 1; n <= 4; ++n) {
    const SeparableEnsemble e = random_ensemble(n, 3, rng);
    ASSERT_LT(max_abs(compress_to_symmetric(ensemble_to_full_rho(e), n) - ensemble_to_rho(e).matrix()), 1e-13);
  }
}

TEST(ensemble_to_rho, full_mixture_commutes_with_transpositions) {
  std::mt19937_64 rng(38);
  for (int n = 2; n <= 4; ++n) {
    const Eigen::MatrixXcd full = ensemble_to_full_rho(random_ensemble(n, 4, rng));
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        const Eigen::MatrixXcd p = transposition(n, a, b).cast<Complex>();
        ASSERT_LT(max_abs(p * full - full * p), 1e-12);
        ASSERT_LT(max_abs(p * full - full), 1e-12);
      }
    }
  }
}

TEST(purity, separable_mixtures_are_mixed) {
  std::mt19937_64 rng(39);
  for (int trial = 0; trial < 100; ++trial) {
    const SeparableEnsemble e = random_ensemble(1 + trial % 6, 2 + trial % 5, rng);
    ASSERT_GE(e.distinct_directions(), 2);
    ASSERT_LT(purity(ensemble_to_rho(e)), 1.0 - 1e-9);
  }
}

TEST(purity, pure_product_state) {
  EXPECT_NEAR(purity(product_state_in_jm(BlochVector{2.0, 5.0}, 5)), 1.0, 1e-12);
}

TEST(separable_ensemble, distinct_direction_count) {
  const SeparableEnsemble e{2, {{0.25, kPlusZ}, {0.25, BlochVector{1e-12, 0.0}}, {0.5, kPlusX}}};
  EXPECT_EQ(e.distinct_directions(), 2);
  EXPECT_EQ(four_point_ensemble().distinct_directions(), 4);
}

TEST(transposition, is_a_qubit_swap) {
  // swapping the outer qubits of |0 0 1> gives |1 0 0>
  const Eigen::MatrixXd p = transposition(3, 0, 2);
  EXPECT_EQ(p(0b100, 0b001), 1.0);
  EXPECT_LT((p * p - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-15);
}
