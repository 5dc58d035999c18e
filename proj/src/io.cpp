#include "multiaxial/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <set>
#include <sstream>
#include <vector>

#include "multiaxial/angular_momentum.hpp"
#include "multiaxial/errors.hpp"

namespace multiaxial::io {

namespace {

[[noreturn]] void schema_error(const std::string& detail) { throw ValidationError("schema", detail); }

void check_fields(const json& obj, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional, const std::string& where) {
  if (!obj.is_object()) schema_error(where + " must be an object");
  std::set<std::string> allowed;
  for (const char* r : required) {
    allowed.insert(r);
    if (!obj.contains(r)) schema_error(where + ": missing field '" + r + "'");
  }
  for (const char* o : optional) allowed.insert(o);
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) schema_error(where + ": unknown field '" + key + "'");
  }
}

void check_version(const json& doc) {
  const json& v = doc.at("schema_version");
  if (!v.is_number_integer() || v.get<long long>() != kSchemaVersion) {
    throw ValidationError("schema_version", "expected schema_version " + std::to_string(kSchemaVersion));
  }
}

double get_number(const json& value, const std::string& what) {
  if (!value.is_number()) schema_error(what + " must be a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) schema_error(what + " must be finite");
  return x;
}

int get_integer(const json& value, const std::string& what) {
  if (!value.is_number_integer()) schema_error(what + " must be an integer");
  return value.get<int>();
}

HalfInt get_spin(const json& value) {
  const int doubled = get_integer(value, "j_doubled");
  if (doubled < 0 || doubled > kMaxDoubledSpin) {
    throw ValidationError("dimension", "j_doubled must be in 0.." + std::to_string(kMaxDoubledSpin));
  }
  return HalfInt::from_doubled(doubled);
}

Complex get_complex(const json& value, const std::string& what) {
  if (!value.is_array() || value.size() != 2) schema_error(what + " must be an [re, im] pair");
  return {get_number(value[0], what), get_number(value[1], what)};
}

json number(double x) { return round_printed(x); }

// Printed values of a unit-sum list whose printed sum is 1 to within half a
// digit of the largest entry: that entry takes the rounding defect. Loaders
// renormalize, and a defect this small leaves every printed digit unchanged.
std::vector<double> printed_unit_sum(const std::vector<double>& values) {
  std::vector<double> out;
  for (double v : values) out.push_back(round_printed(v));
  if (out.empty()) return out;
  const auto big = std::size_t(std::max_element(out.begin(), out.end()) - out.begin());
  double rest = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i != big) rest += out[i];
  }
  out[big] = round_printed(1.0 - rest);
  return out;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::abs(x) < kPrintFloor) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, x);
  return buf;
}

double round_printed(double x) {
  if (!std::isfinite(x)) return x;
  if (std::abs(x) < kPrintFloor) return 0.0;
  return std::strtod(format_number(x).c_str(), nullptr);
}

double parse_angle(std::string_view text) {
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) continue;
    // UTF-8 for the Greek letter pi
    if (c == 0xCF && i + 1 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x80) {
      s += "pi";
      ++i;
      continue;
    }
    s += static_cast<char>(std::tolower(c));
  }
  const auto fail = [&]() -> double {
    throw ValidationError("angle", "cannot parse angle '" + std::string(text) + "'");
  };
  const auto parse_real = [&](const std::string& part) -> double {
    if (part.empty()) fail();
    char* end = nullptr;
    const double v = std::strtod(part.c_str(), &end);
    if (end != part.c_str() + part.size() || !std::isfinite(v)) fail();
    return v;
  };
  const auto pos = s.find("pi");
  if (pos == std::string::npos) return parse_real(s);

  std::string head = s.substr(0, pos);
  std::string tail = s.substr(pos + 2);
  if (!head.empty() && head.back() == '*') head.pop_back();
  double factor = 1.0;
  if (head.empty() || head == "+") {
    factor = 1.0;
  } else if (head == "-") {
    factor = -1.0;
  } else {
    factor = parse_real(head);
  }
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') fail();
    divisor = parse_real(tail.substr(1));
    if (divisor == 0.0) fail();
  }
  return factor * std::numbers::pi / divisor;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("json", "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("json", path.string() + ": " + e.what());
  }
}

// StateFile -------------------------------------------------------------------------

json state_to_json(const SpinDensityMatrix& rho) {
  std::vector<double> diagonal;
  for (int r = 0; r < rho.dimension(); ++r) diagonal.push_back(rho(r, r).real());
  diagonal = printed_unit_sum(diagonal);
  json matrix = json::array();
  for (int r = 0; r < rho.dimension(); ++r) {
    json row = json::array();
    for (int c = 0; c < rho.dimension(); ++c) {
      if (r == c) {
        row.push_back(json::array({diagonal[std::size_t(r)], 0.0}));
      } else {
        row.push_back(json::array({number(rho(r, c).real()), number(rho(r, c).imag())}));
      }
    }
    matrix.push_back(std::move(row));
  }
  return {{"schema_version", kSchemaVersion}, {"j_doubled", rho.j().doubled()}, {"matrix", matrix}};
}

SpinDensityMatrix state_from_json(const json& doc, double tol) {
  check_fields(doc, {"schema_version", "j_doubled", "matrix"}, {}, "state file");
  check_version(doc);
  const HalfInt j = get_spin(doc.at("j_doubled"));
  const int dim = j.multiplicity();
  const json& rows = doc.at("matrix");
  if (!rows.is_array() || int(rows.size()) != dim) {
    throw ValidationError("dimension", "matrix must have j_doubled + 1 = " + std::to_string(dim) + " rows");
  }
  Eigen::MatrixXcd m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = rows[std::size_t(r)];
    if (!row.is_array() || int(row.size()) != dim) {
      throw ValidationError("dimension", "row " + std::to_string(r) + " must have " + std::to_string(dim) + " entries");
    }
    for (int c = 0; c < dim; ++c) {
      m(r, c) = get_complex(row[std::size_t(c)], "matrix entry");
    }
  }
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) {
    throw ValidationError("hermiticity", "max |rho - rho^dagger| = " + format_number(herm));
  }
  const Complex trace = m.trace();
  if (std::abs(trace - 1.0) > tol) {
    throw ValidationError("trace", "trace = " + format_number(trace.real()) + ", expected 1");
  }
  m = 0.5 * (m + m.adjoint());
  m /= m.trace().real();
  return SpinDensityMatrix(j, std::move(m));
}

// EnsembleFile ----------------------------------------------------------------------

json ensemble_to_json(const SeparableEnsemble& ensemble) {
  std::vector<double> weights;
  for (const auto& t : ensemble.terms) weights.push_back(t.weight);
  weights = printed_unit_sum(weights);
  json terms = json::array();
  for (std::size_t i = 0; i < ensemble.terms.size(); ++i) {
    const auto& t = ensemble.terms[i];
    terms.push_back({{"weight", weights[i]},
                     {"theta", number(t.direction.theta)},
                     {"phi", number(t.direction.phi)}});
  }
  return {{"schema_version", kSchemaVersion}, {"n_qubits", ensemble.n_qubits}, {"terms", terms}};
}

SeparableEnsemble ensemble_from_json(const json& doc, double tol) {
  check_fields(doc, {"schema_version", "n_qubits", "terms"}, {}, "ensemble file");
  check_version(doc);
  SeparableEnsemble e;
  e.n_qubits = get_integer(doc.at("n_qubits"), "n_qubits");
  if (e.n_qubits < 1 || e.n_qubits > kMaxDoubledSpin) {
    throw ValidationError("n_qubits", "n_qubits must be in 1.." + std::to_string(kMaxDoubledSpin));
  }
  const json& terms = doc.at("terms");
  if (!terms.is_array() || terms.empty()) throw ValidationError("weights", "terms must be a non-empty list");
  double total = 0.0;
  for (const json& term : terms) {
    check_fields(term, {"weight", "theta", "phi"}, {}, "ensemble term");
    const double w = get_number(term.at("weight"), "weight");
    if (w < 0.0) throw ValidationError("weights", "negative weight " + format_number(w));
    e.terms.push_back({w, BlochVector::from_angles(get_number(term.at("theta"), "theta"),
                                                   get_number(term.at("phi"), "phi"))});
    total += w;
  }
  if (std::abs(total - 1.0) > tol) {
    throw ValidationError("weights", "weights sum to " + format_number(total) + ", expected 1");
  }
  for (auto& t : e.terms) t.weight /= total;
  e.validate();
  return e;
}

// Tensor table ----------------------------------------------------------------------

json tensor_to_json(const TensorParams& t) {
  json entries = json::array();
  for (int k = 0; k <= t.max_rank(); ++k) {
    for (int q = -k; q <= k; ++q) {
      const Complex v = t.at(k, q);
      entries.push_back({{"k", k}, {"q", q}, {"re", number(v.real())}, {"im", number(v.imag())}});
    }
  }
  return {{"schema_version", kSchemaVersion}, {"j_doubled", t.j().doubled()}, {"entries", entries}};
}

TensorParams tensor_from_json(const json& doc, double tol) {
  check_fields(doc, {"schema_version", "j_doubled", "entries"}, {}, "tensor file");
  check_version(doc);
  const HalfInt j = get_spin(doc.at("j_doubled"));
  TensorParams t(j);
  const json& entries = doc.at("entries");
  if (!entries.is_array()) schema_error("entries must be a list");
  std::set<std::pair<int, int>> seen;
  for (const json& e : entries) {
    check_fields(e, {"k", "q", "re", "im"}, {}, "tensor entry");
    const int k = get_integer(e.at("k"), "k");
    const int q = get_integer(e.at("q"), "q");
    if (k < 0 || k > j.doubled() || std::abs(q) > k) {
      throw ValidationError("rank", "entry (k=" + std::to_string(k) + ", q=" + std::to_string(q) + ") out of range");
    }
    if (!seen.insert({k, q}).second) schema_error("duplicate entry for (k, q)");
    t.at(k, q) = {get_number(e.at("re"), "re"), get_number(e.at("im"), "im")};
  }
  if (std::abs(t.at(0, 0) - 1.0) > tol) {
    throw ValidationError("normalization", "t^0_0 must equal 1");
  }
  const double sym = t.conjugation_symmetry_error();
  if (sym > tol) {
    throw ValidationError("conjugation_symmetry", "max |conj(t^k_q) - (-1)^q t^k_-q| = " + format_number(sym));
  }
  TensorParams out(j);
  for (int k = 0; k <= j.doubled(); ++k) {
    for (int q = -k; q <= k; ++q) {
      const double sign = (q % 2 == 0) ? 1.0 : -1.0;
      out.at(k, q) = 0.5 * (t.at(k, q) + sign * std::conj(t.at(k, -q)));
    }
  }
  out.at(0, 0) = 1.0;
  return out;
}

// Expansion -------------------------------------------------------------------------

json expansion_to_json(const SphericalExpansion& lambda) {
  json coeffs = json::array();
  for (int l = 0; l <= lambda.l_max(); ++l) {
    for (int m = -l; m <= l; ++m) {
      const Complex a = lambda.at(l, m);
      if (a == Complex{}) continue;
      coeffs.push_back({{"l", l}, {"m", m}, {"re", number(a.real())}, {"im", number(a.imag())}});
    }
  }
  return {{"schema_version", kSchemaVersion}, {"l_max", lambda.l_max()}, {"coeffs", coeffs}};
}

SphericalExpansion expansion_from_json(const json& doc) {
  check_fields(doc, {"schema_version", "l_max", "coeffs"}, {}, "expansion file");
  check_version(doc);
  const int l_max = get_integer(doc.at("l_max"), "l_max");
  if (l_max < 0 || l_max > kMaxDoubledArgument) {
    throw ValidationError("l_max", "l_max must be in 0.." + std::to_string(kMaxDoubledArgument));
  }
  SphericalExpansion lambda(l_max);
  const json& coeffs = doc.at("coeffs");
  if (!coeffs.is_array()) schema_error("coeffs must be a list");
  std::set<std::pair<int, int>> seen;
  for (const json& c : coeffs) {
    check_fields(c, {"l", "m", "re", "im"}, {}, "expansion coefficient");
    const int l = get_integer(c.at("l"), "l");
    const int m = get_integer(c.at("m"), "m");
    if (l < 0 || l > l_max || std::abs(m) > l) {
      throw ValidationError("l_max", "coefficient (l=" + std::to_string(l) + ", m=" + std::to_string(m) + ") out of range");
    }
    if (!seen.insert({l, m}).second) schema_error("duplicate coefficient for (l, m)");
    lambda.at(l, m) = {get_number(c.at("re"), "re"), get_number(c.at("im"), "im")};
  }
  return lambda;
}

// MAR report ------------------------------------------------------------------------

json mar_to_json(const MarDecomposition& mar, double collinear_tol) {
  json ranks = json::array();
  for (const RankMar& r : mar.ranks) {
    json axes = json::array();
    for (const Axis& a : r.axes) axes.push_back({{"theta", number(a.theta)}, {"phi", number(a.phi)}});
    MarDecomposition single{mar.j, {r}};
    json entry = {{"rank", r.rank},
                  {"status", to_string(r.status)},
                  {"radius", number(r.radius)},
                  {"signed_radius", number(r.signed_radius)},
                  {"residual", number(r.residual)},
                  {"collinear", collinearity_check(single, collinear_tol)},
                  {"axes", axes}};
    if (!r.diagnostic.empty()) entry["diagnostic"] = r.diagnostic;
    ranks.push_back(std::move(entry));
  }
  return {{"schema_version", kSchemaVersion},
          {"j_doubled", mar.j.doubled()},
          {"ranks", ranks},
          {"collinear", collinearity_check(mar, collinear_tol)}};
}

std::string plot_csv(const MarDecomposition& mar) {
  std::ostringstream out;
  out << "rank,x1,y1,z1,x2,y2,z2\n";
  for (const RankMar& r : mar.ranks) {
    if (r.status != RankStatus::resolved) continue;
    for (const Axis& a : r.axes) {
      const Eigen::Vector3d n = a.unit();
      out << r.rank;
      for (double x : {n.x(), n.y(), n.z(), -n.x(), -n.y(), -n.z()}) out << ',' << format_number(x);
      out << '\n';
    }
  }
  return out.str();
}

json rounded(const json& doc) {
  if (doc.is_number_float()) return round_printed(doc.get<double>());
  if (doc.is_array() || doc.is_object()) {
    json out = doc;
    for (auto it = out.begin(); it != out.end(); ++it) *it = rounded(*it);
    return out;
  }
  return doc;
}

}  // namespace multiaxial::io
