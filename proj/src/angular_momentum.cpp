#include "multiaxial/angular_momentum.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "multiaxial/errors.hpp"

namespace multiaxial {

using boost::multiprecision::cpp_int;

// HalfInt --------------------------------------------------------------------

HalfInt HalfInt::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    int v = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw DomainError("cannot parse angular momentum '" + std::string(text) + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return HalfInt::integer(parse_int(text));
  if (parse_int(text.substr(slash + 1)) != 2) {
    throw DomainError("angular momentum '" + std::string(text) + "' must be n or n/2");
  }
  return HalfInt::from_doubled(parse_int(text.substr(0, slash)));
}

std::string HalfInt::to_string() const {
  if (is_integer()) return std::to_string(as_integer());
  return std::to_string(doubled_) + "/2";
}

void require_valid_pair(HalfInt j, HalfInt m, std::string_view what) {
  if (!is_valid_pair(j, m)) {
    throw DomainError(std::string(what) + ": invalid (j, m) = (" + j.to_string() + ", " +
                      m.to_string() + ")");
  }
}

namespace {

void require_argument_range(HalfInt j, std::string_view what) {
  if (j.doubled() > kMaxDoubledArgument) {
    throw DomainError(std::string(what) + ": doubled j = " + std::to_string(j.doubled()) +
                      " exceeds supported maximum " + std::to_string(kMaxDoubledArgument));
  }
}

// Largest factorial argument in the Racah formula is j1 + j2 + j + 1.
constexpr int kFactorialTableSize = 3 * kMaxDoubledArgument / 2 + 2;

const std::vector<cpp_int>& exact_factorials() {
  static const std::vector<cpp_int> table = [] {
    std::vector<cpp_int> f(kFactorialTableSize + 1);
    f[0] = 1;
    for (int n = 1; n <= kFactorialTableSize; ++n) f[n] = f[n - 1] * n;
    return f;
  }();
  return table;
}

const std::vector<double>& log_factorials() {
  static const std::vector<double> table = [] {
    std::vector<double> f(kFactorialTableSize + 1);
    f[0] = 0.0;
    for (int n = 1; n <= kFactorialTableSize; ++n) f[n] = f[n - 1] + std::log(double(n));
    return f;
  }();
  return table;
}

const cpp_int& fact(int n) { return exact_factorials().at(n); }

// Integer value (a + b + ...)/2 expressed from doubled components.
constexpr int half(int doubled) { return doubled / 2; }

}  // namespace

// Clebsch-Gordan ---------------------------------------------------------------

double ExactCoefficient::value() const {
  if (sign == 0) return 0.0;
  return sign * std::sqrt(magnitude_squared.convert_to<double>());
}

std::string ExactCoefficient::to_string() const {
  if (sign == 0) return "0";
  const std::string prefix = sign < 0 ? "-" : "";
  if (magnitude_squared == 1) return prefix + "1";
  return prefix + "sqrt(" + magnitude_squared.str() + ")";
}

ExactCoefficient cg(HalfInt j1, HalfInt j2, HalfInt j, HalfInt m1, HalfInt m2, HalfInt m) {
  require_valid_pair(j1, m1, "cg");
  require_valid_pair(j2, m2, "cg");
  require_valid_pair(j, m, "cg");
  require_argument_range(j1, "cg");
  require_argument_range(j2, "cg");
  require_argument_range(j, "cg");

  ExactCoefficient out;
  if (m1 + m2 != m) return out;
  const int dj1 = j1.doubled(), dj2 = j2.doubled(), dj = j.doubled();
  if ((dj1 + dj2 + dj) % 2 != 0) return out;
  if (dj > dj1 + dj2 || dj < std::abs(dj1 - dj2)) return out;

  const int a = half(dj1 + dj2 - dj);
  const int b = half(dj1 - dj2 + dj);
  const int c = half(-dj1 + dj2 + dj);
  const int d = half(dj1 + dj2 + dj) + 1;
  const int j1_m1 = half(dj1 - m1.doubled()), j1p1 = half(dj1 + m1.doubled());
  const int j2_m2 = half(dj2 - m2.doubled()), j2p2 = half(dj2 + m2.doubled());
  const int j_m = half(dj - m.doubled()), jp = half(dj + m.doubled());
  const int shift1 = half(dj - dj2 + m1.doubled());  // j - j2 + m1
  const int shift2 = half(dj - dj1 - m2.doubled());  // j - j1 - m2

  const int k_min = std::max({0, -shift1, -shift2});
  const int k_max = std::min({a, j1_m1, j2p2});

  Rational sum = 0;
  for (int k = k_min; k <= k_max; ++k) {
    const cpp_int denom = fact(k) * fact(a - k) * fact(j1_m1 - k) * fact(j2p2 - k) *
                          fact(shift1 + k) * fact(shift2 + k);
    const Rational term(cpp_int(1), denom);
    if (k % 2 == 0) sum += term; else sum -= term;
  }
  if (sum == 0) return out;

  const Rational prefactor(cpp_int(dj + 1) * fact(a) * fact(b) * fact(c) * fact(jp) * fact(j_m) *
                               fact(j1_m1) * fact(j1p1) * fact(j2_m2) * fact(j2p2),
                           fact(d));
  out.sign = sum > 0 ? 1 : -1;
  out.magnitude_squared = prefactor * sum * sum;
  return out;
}

double cg_value(HalfInt j1, HalfInt j2, HalfInt j, HalfInt m1, HalfInt m2, HalfInt m) {
  static std::shared_mutex mutex;
  static std::unordered_map<std::uint64_t, double> cache;

  auto pack = [](HalfInt h) { return std::uint64_t(h.doubled() + 256) & 0x3ff; };
  const std::uint64_t key = pack(j1) | pack(j2) << 10 | pack(j) << 20 | pack(m1) << 30 |
                            pack(m2) << 40 | pack(m) << 50;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const double v = cg(j1, j2, j, m1, m2, m).value();
  std::unique_lock lock(mutex);
  cache.emplace(key, v);
  return v;
}

// Wigner rotation matrices -----------------------------------------------------

double wigner_d(HalfInt j, HalfInt m_row, HalfInt m_col, double beta) {
  require_valid_pair(j, m_row, "wigner_d");
  require_valid_pair(j, m_col, "wigner_d");
  require_argument_range(j, "wigner_d");

  const auto& lf = log_factorials();
  const int dj = j.doubled(), da = m_row.doubled(), db = m_col.doubled();
  const int j_p_a = half(dj + da), j_m_a = half(dj - da);
  const int j_p_b = half(dj + db), j_m_b = half(dj - db);
  const int a_m_b = half(da - db);

  const double log_pre = 0.5 * (lf[j_p_a] + lf[j_m_a] + lf[j_p_b] + lf[j_m_b]);
  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);

  const int s_min = std::max(0, -a_m_b);
  const int s_max = std::min(j_p_b, j_m_a);
  double sum = 0.0;
  for (int k = s_min; k <= s_max; ++k) {
    const double magnitude =
        std::exp(log_pre - lf[j_p_b - k] - lf[k] - lf[a_m_b + k] - lf[j_m_a - k]);
    const int cos_power = dj - a_m_b - 2 * k;  // 2j + m_col - m_row - 2k
    const int sin_power = a_m_b + 2 * k;
    const double term = magnitude * std::pow(c, cos_power) * std::pow(s, sin_power);
    sum += ((a_m_b + k) % 2 == 0) ? term : -term;
  }
  return sum;
}

std::complex<double> wigner_D(HalfInt j, HalfInt m_row, HalfInt m_col, double phi, double theta,
                              double psi) {
  const double d = wigner_d(j, m_row, m_col, theta);
  const double angle = -(m_row.value() * phi + m_col.value() * psi);
  return d * std::complex<double>(std::cos(angle), std::sin(angle));
}

Eigen::MatrixXcd wigner_D_matrix(HalfInt j, double phi, double theta, double psi) {
  const int dim = j.multiplicity();
  Eigen::MatrixXcd out(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const HalfInt m_row = HalfInt::from_doubled(j.doubled() - 2 * r);
    for (int c = 0; c < dim; ++c) {
      const HalfInt m_col = HalfInt::from_doubled(j.doubled() - 2 * c);
      out(r, c) = wigner_D(j, m_row, m_col, phi, theta, psi);
    }
  }
  return out;
}

// Spherical harmonics ----------------------------------------------------------

std::complex<double> spherical_harmonic(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l) {
    throw DomainError("spherical_harmonic: invalid (l, m) = (" + std::to_string(l) + ", " +
                      std::to_string(m) + ")");
  }
  if (l > kMaxDoubledArgument) throw DomainError("spherical_harmonic: l too large");
  const int am = std::abs(m);
  // sph_legendre carries the normalization and the (-1)^m phase for m >= 0.
  const double legendre = std::sph_legendre(unsigned(l), unsigned(am), theta);
  const std::complex<double> positive =
      legendre * std::complex<double>(std::cos(am * phi), std::sin(am * phi));
  if (m >= 0) return positive;
  return (am % 2 == 0 ? 1.0 : -1.0) * std::conj(positive);
}

}  // namespace multiaxial
