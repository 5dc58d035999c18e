#include "multiaxial/symmetric_states.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "multiaxial/angular_momentum.hpp"
#include "multiaxial/errors.hpp"
#include "multiaxial/p_function.hpp"
#include "multiaxial/reduce.hpp"

namespace multiaxial {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phi(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w -= kTwoPi;
  return w;
}

void require_qubits(int n, int max, const char* what) {
  if (n < 1 || n > max) {
    throw DomainError(std::string(what) + ": qubit count " + std::to_string(n) +
                      " outside [1, " + std::to_string(max) + "]");
  }
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

}  // namespace

// BlochVector --------------------------------------------------------------------

BlochVector BlochVector::from_angles(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw DomainError("BlochVector: non-finite angle");
  }
  if (theta >= 0.0 && theta <= std::numbers::pi) return {theta, wrap_phi(phi)};
  const Eigen::Vector3d v(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                          std::cos(theta));
  return from_cartesian(v);
}

BlochVector BlochVector::from_cartesian(const Eigen::Vector3d& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw DomainError("BlochVector: zero vector");
  const double theta = std::atan2(std::hypot(v.x(), v.y()), v.z());
  const double phi = (v.x() == 0.0 && v.y() == 0.0) ? 0.0 : wrap_phi(std::atan2(v.y(), v.x()));
  return {theta, phi};
}

Eigen::Vector3d BlochVector::cartesian() const {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

double angular_separation(const BlochVector& a, const BlochVector& b) {
  const Eigen::Vector3d u = a.cartesian(), v = b.cartesian();
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

// SeparableEnsemble ----------------------------------------------------------------

void SeparableEnsemble::validate() const {
  if (n_qubits < 1 || n_qubits > kMaxDoubledSpin) {
    throw DomainError("ensemble: n_qubits = " + std::to_string(n_qubits) + " outside [1, " +
                      std::to_string(kMaxDoubledSpin) + "]");
  }
  if (terms.empty()) throw ValidationError("weights", "ensemble has no terms");
  double sum = 0.0;
  for (const auto& term : terms) {
    if (!(term.weight > 0.0)) {
      throw ValidationError("weights", "weight " + std::to_string(term.weight) + " is not > 0");
    }
    sum += term.weight;
  }
  if (std::abs(sum - 1.0) > kWeightSumTol) {
    throw ValidationError("weights", "weights sum to " + std::to_string(sum));
  }
}

int SeparableEnsemble::distinct_directions() const {
  std::vector<BlochVector> seen;
  for (const auto& term : terms) {
    const bool known = std::any_of(seen.begin(), seen.end(), [&](const BlochVector& s) {
      return angular_separation(s, term.direction) <= kDistinctSeparation;
    });
    if (!known) seen.push_back(term.direction);
  }
  return int(seen.size());
}

// Qubits and symmetrization ------------------------------------------------------

Eigen::Matrix2cd qubit_density(const BlochVector& dir) {
  const Eigen::Vector3d p = dir.cartesian();
  Eigen::Matrix2cd rho;
  rho << 0.5 * (1.0 + p.z()), 0.5 * Complex(p.x(), -p.y()),
         0.5 * Complex(p.x(), p.y()), 0.5 * (1.0 - p.z());
  return rho;
}

Eigen::MatrixXd symmetric_subspace_unitary(int n_qubits) {
  require_qubits(n_qubits, kMaxFullQubits, "symmetric_subspace_unitary");

  // Coupled states keyed by coupling path (doubled J after each qubit), then doubled M.
  using Path = std::vector<int>;
  std::map<Path, std::map<int, Eigen::VectorXd>> states;
  states[{1}][1] = Eigen::Vector2d(1.0, 0.0);
  states[{1}][-1] = Eigen::Vector2d(0.0, 1.0);

  const HalfInt spin_half = HalfInt::from_doubled(1);
  for (int n = 2; n <= n_qubits; ++n) {
    std::map<Path, std::map<int, Eigen::VectorXd>> next;
    const Eigen::Index size = Eigen::Index(1) << n;
    for (const auto& [path, multiplet] : states) {
      const int dj1 = path.back();
      for (int dj : {dj1 + 1, dj1 - 1}) {
        if (dj < 0) continue;
        Path extended = path;
        extended.push_back(dj);
        auto& target = next[extended];
        for (int dm = dj; dm >= -dj; dm -= 2) {
          Eigen::VectorXd v = Eigen::VectorXd::Zero(size);
          for (int dm2 : {1, -1}) {
            const int dm1 = dm - dm2;
            if (std::abs(dm1) > dj1) continue;
            const double c = cg_value(HalfInt::from_doubled(dj1), spin_half,
                                      HalfInt::from_doubled(dj), HalfInt::from_doubled(dm1),
                                      HalfInt::from_doubled(dm2), HalfInt::from_doubled(dm));
            if (c == 0.0) continue;
            const Eigen::VectorXd& prev = multiplet.at(dm1);
            const int bit = dm2 > 0 ? 0 : 1;
            for (Eigen::Index i = 0; i < prev.size(); ++i) v(2 * i + bit) += c * prev(i);
          }
          target[dm] = std::move(v);
        }
      }
    }
    states = std::move(next);
  }

  // Rows: descending J, then descending path, then descending M.
  std::vector<const Path*> order;
  for (const auto& entry : states) order.push_back(&entry.first);
  std::sort(order.begin(), order.end(), [](const Path* a, const Path* b) {
    if (a->back() != b->back()) return a->back() > b->back();
    return *a > *b;
  });

  const Eigen::Index size = Eigen::Index(1) << n_qubits;
  Eigen::MatrixXd u(size, size);
  Eigen::Index row = 0;
  for (const Path* path : order) {
    const auto& multiplet = states.at(*path);
    for (auto it = multiplet.rbegin(); it != multiplet.rend(); ++it) {
      u.row(row++) = it->second.transpose();
    }
  }
  return u;
}

SymmetrizedPair symmetrize_pair(const BlochVector& dir1, const BlochVector& dir2) {
  const Eigen::Matrix2cd r1 = qubit_density(dir1);
  const Eigen::Matrix2cd r2 = qubit_density(dir2);
  SymmetrizedPair out;
  out.computational = 0.5 * (kron(r1, r2) + kron(r2, r1));
  const Eigen::Matrix4d u = symmetric_subspace_unitary(2);
  out.coupled = u.cast<Complex>() * out.computational * u.transpose().cast<Complex>();
  out.antisym_weight = out.coupled(3, 3).real();
  double coupling = 0.0;
  for (int i = 0; i < 3; ++i) {
    coupling = std::max({coupling, std::abs(out.coupled(i, 3)), std::abs(out.coupled(3, i))});
  }
  out.block_coupling = coupling;
  return out;
}

// Spin-j images ---------------------------------------------------------------------

SpinDensityMatrix product_state_in_jm(const BlochVector& dir, int n_qubits) {
  require_qubits(n_qubits, kMaxDoubledSpin, "product_state_in_jm");
  const HalfInt j = HalfInt::from_doubled(n_qubits);
  const Eigen::VectorXcd alpha = coherent_state(j, dir.theta, dir.phi);
  Eigen::MatrixXcd proj = alpha * alpha.adjoint();
  proj /= proj.trace().real();
  return SpinDensityMatrix(j, 0.5 * (proj + proj.adjoint()));
}

SpinDensityMatrix ensemble_to_rho(const SeparableEnsemble& ensemble) {
  ensemble.validate();
  const HalfInt j = HalfInt::from_doubled(ensemble.n_qubits);
  std::vector<Eigen::MatrixXcd> parts;
  parts.reserve(ensemble.terms.size());
  for (const auto& term : ensemble.terms) {
    parts.push_back(term.weight * product_state_in_jm(term.direction, ensemble.n_qubits).matrix());
  }
  const int dim = j.multiplicity();
  Eigen::MatrixXcd sum = pairwise_sum(std::move(parts), Eigen::MatrixXcd(Eigen::MatrixXcd::Zero(dim, dim)));
  return SpinDensityMatrix(j, 0.5 * (sum + sum.adjoint()));
}

double purity(const Eigen::MatrixXcd& rho) { return (rho * rho).trace().real(); }

double purity(const SpinDensityMatrix& rho) { return purity(rho.matrix()); }

// Verification path ------------------------------------------------------------------

Eigen::MatrixXcd product_state_full(const BlochVector& dir, int n_qubits) {
  require_qubits(n_qubits, kMaxFullQubits, "product_state_full");
  const Eigen::MatrixXcd single = qubit_density(dir);
  Eigen::MatrixXcd out = single;
  for (int n = 1; n < n_qubits; ++n) out = kron(out, single);
  return out;
}

Eigen::MatrixXcd ensemble_to_full_rho(const SeparableEnsemble& ensemble) {
  ensemble.validate();
  require_qubits(ensemble.n_qubits, kMaxFullQubits, "ensemble_to_full_rho");
  std::vector<Eigen::MatrixXcd> parts;
  for (const auto& term : ensemble.terms) {
    parts.push_back(term.weight * product_state_full(term.direction, ensemble.n_qubits));
  }
  const Eigen::Index dim = Eigen::Index(1) << ensemble.n_qubits;
  return pairwise_sum(std::move(parts), Eigen::MatrixXcd(Eigen::MatrixXcd::Zero(dim, dim)));
}

Eigen::MatrixXd transposition(int n_qubits, int a, int b) {
  require_qubits(n_qubits, kMaxFullQubits, "transposition");
  if (a < 0 || b < 0 || a >= n_qubits || b >= n_qubits) {
    throw DomainError("transposition: qubit index out of range");
  }
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  const int shift_a = n_qubits - 1 - a, shift_b = n_qubits - 1 - b;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Eigen::Index bit_a = (i >> shift_a) & 1, bit_b = (i >> shift_b) & 1;
    Eigen::Index k = i & ~((Eigen::Index(1) << shift_a) | (Eigen::Index(1) << shift_b));
    k |= bit_a << shift_b;
    k |= bit_b << shift_a;
    p(k, i) = 1.0;
  }
  return p;
}

Eigen::MatrixXcd compress_to_symmetric(const Eigen::MatrixXcd& full, int n_qubits) {
  const Eigen::MatrixXd u = symmetric_subspace_unitary(n_qubits);
  if (full.rows() != u.rows() || full.cols() != u.cols()) {
    throw DomainError("compress_to_symmetric: matrix size does not match qubit count");
  }
  const Eigen::MatrixXd top = u.topRows(n_qubits + 1);
  return top.cast<Complex>() * full * top.transpose().cast<Complex>();
}

}  // namespace multiaxial
