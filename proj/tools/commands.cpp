#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "multiaxial/angular_momentum.hpp"
#include "multiaxial/errors.hpp"
#include "multiaxial/io.hpp"
#include "multiaxial/mar_extraction.hpp"
#include "multiaxial/p_function.hpp"
#include "multiaxial/symmetric_states.hpp"
#include "multiaxial/tensor_repr.hpp"

namespace multiaxial::cli {

namespace {

using io::format_number;
using io::json;

constexpr double kPi = std::numbers::pi;

struct Globals {
  bool json = false;
  double tol = 1e-8;
};

// Formatting --------------------------------------------------------------------------

std::string format_complex(Complex z) {
  const std::string re = format_number(z.real());
  const std::string im = format_number(z.imag());
  if (im == "0") return re;
  std::string imag_part = (im == "1") ? "i" : (im == "-1") ? "-i" : im + "i";
  if (re == "0") return imag_part.front() == '-' ? imag_part : "+" + imag_part;
  if (imag_part.front() != '-') imag_part = "+" + imag_part;
  return re + imag_part;
}

void print_real_block(std::ostream& out, const Eigen::MatrixXd& m, const std::string& indent) {
  std::vector<std::vector<std::string>> cells(std::size_t(m.rows()));
  std::vector<std::size_t> width(std::size_t(m.cols()), 0);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      cells[std::size_t(r)].push_back(format_number(m(r, c)));
      width[std::size_t(c)] = std::max(width[std::size_t(c)], cells[std::size_t(r)].back().size());
    }
  }
  for (const auto& row : cells) {
    out << indent;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ' ';
      out << std::string(width[c] - row[c].size(), ' ') << row[c];
    }
    out << '\n';
  }
}

bool printed_zero(const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    if (format_number(m.data()[i]) != "0") return false;
  }
  return true;
}

/// Real block, then the imaginary block if any entry prints nonzero.
void print_matrix(std::ostream& out, const std::string& title, const Eigen::MatrixXcd& m) {
  out << title << ":\n";
  const Eigen::MatrixXd im = m.imag();
  if (printed_zero(im)) {
    print_real_block(out, m.real(), "  ");
    return;
  }
  out << "  Re:\n";
  print_real_block(out, m.real(), "    ");
  out << "  Im:\n";
  print_real_block(out, im, "    ");
}

json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(json::array({io::round_printed(m(r, c).real()), io::round_printed(m(r, c).imag())}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void print_tensor(std::ostream& out, const TensorParams& t, double tol, bool all) {
  out << "k q re im\n";
  for (int k = 0; k <= t.max_rank(); ++k) {
    for (int q = -k; q <= k; ++q) {
      const Complex v = t.at(k, q);
      if (!all && std::abs(v) <= tol) continue;
      out << k << ' ' << q << ' ' << format_number(v.real()) << ' ' << format_number(v.imag()) << '\n';
    }
  }
}

std::string format_axis(const Axis& a) {
  return "(" + format_number(a.theta) + ", " + format_number(a.phi) + ")";
}

/// Consecutive axes that print identically are shown once with a count.
std::string format_axes(const std::vector<Axis>& axes) {
  std::string text;
  for (std::size_t i = 0; i < axes.size();) {
    const std::string s = format_axis(axes[i]);
    std::size_t n = 1;
    while (i + n < axes.size() && format_axis(axes[i + n]) == s) ++n;
    if (!text.empty()) text += ", ";
    text += s;
    if (n > 1) text += " \u00d7" + std::to_string(n);
    i += n;
  }
  return text;
}

void print_mar(std::ostream& out, const MarDecomposition& mar, double tol) {
  for (const RankMar& r : mar.ranks) {
    out << "rank " << r.rank << ": ";
    switch (r.status) {
      case RankStatus::zero:
        out << "radius 0\n";
        break;
      case RankStatus::unresolved:
        out << "unresolved (" << r.diagnostic << ")\n";
        break;
      case RankStatus::resolved: {
        const MarDecomposition single{mar.j, {r}};
        out << "radius " << format_number(r.radius) << ", axes " << format_axes(r.axes)
            << ", residual " << format_number(r.residual)
            << ", collinear: " << (collinearity_check(single, tol) ? "true" : "false") << '\n';
        break;
      }
    }
  }
  out << "collinear: " << (collinearity_check(mar, tol) ? "true" : "false") << '\n';
}

MarOptions mar_options(const Globals& g) {
  MarOptions options;
  options.zero_rank_tol = g.tol;
  return options;
}

void write_plot(const std::string& path, const MarDecomposition& mar) {
  std::ofstream file(path);
  if (!file) throw ValidationError("emit-plot", "cannot write " + path);
  file << io::plot_csv(mar);
}

/// Lists unresolved ranks on err; returns the exit code of a MAR run.
int mar_exit(const MarDecomposition& mar, std::ostream& err) {
  int code = kExitOk;
  for (const RankMar& r : mar.ranks) {
    if (r.status != RankStatus::unresolved) continue;
    err << "error: rank " << r.rank << " unresolved: " << r.diagnostic << '\n';
    code = kExitConsistency;
  }
  return code;
}

// Input ---------------------------------------------------------------------------------

/// State, ensemble or tensor file, told apart by its payload field.
TensorParams load_tensor_source(const std::string& path, double tol) {
  const json doc = io::read_json_file(path);
  if (doc.is_object() && doc.contains("matrix")) return rho_to_t(io::state_from_json(doc, tol));
  if (doc.is_object() && doc.contains("terms")) return rho_to_t(ensemble_to_rho(io::ensemble_from_json(doc, tol)));
  if (doc.is_object() && doc.contains("entries")) return io::tensor_from_json(doc, tol);
  throw ValidationError("schema", path + ": expected a state, ensemble or tensor file");
}

EnsembleTerm parse_term(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) parts.push_back(part);
  if (parts.size() != 3) throw ValidationError("term", "expected weight,theta,phi but got '" + text + "'");
  char* end = nullptr;
  const double w = std::strtod(parts[0].c_str(), &end);
  if (end == parts[0].c_str() || *end != '\0') throw ValidationError("term", "bad weight '" + parts[0] + "'");
  return {w, BlochVector::from_angles(io::parse_angle(parts[1]), io::parse_angle(parts[2]))};
}

// Subcommands -------------------------------------------------------------------------

int cmd_rho2t(const Globals& g, const std::string& path, bool all, std::ostream& out) {
  const SpinDensityMatrix rho = io::state_from_json(io::read_json_file(path), g.tol);
  const TensorParams t = rho_to_t(rho);
  if (g.json) {
    out << io::tensor_to_json(t).dump(2) << '\n';
  } else {
    out << "j = " << rho.j().to_string() << '\n';
    print_tensor(out, t, g.tol, all);
  }
  return kExitOk;
}

int cmd_t2rho(const Globals& g, const std::string& path, std::ostream& out, std::ostream& err) {
  const TensorParams t = io::tensor_from_json(io::read_json_file(path), g.tol);
  const RhoReconstruction rec = t_to_rho(t);
  if (g.json) {
    out << io::state_to_json(rec.rho).dump(2) << '\n';
  } else {
    out << "j = " << t.j().to_string() << '\n';
    print_matrix(out, "rho", rec.rho.matrix());
    out << "min eigenvalue: " << format_number(rec.min_eigenvalue) << '\n';
    out << "physical: " << (rec.physical ? "true" : "false") << '\n';
  }
  if (!rec.physical) {
    err << "validation error: positivity: minimum eigenvalue " << format_number(rec.min_eigenvalue) << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

int cmd_mar(const Globals& g, const std::string& path, const std::string& plot, std::ostream& out,
            std::ostream& err) {
  const TensorParams t = load_tensor_source(path, g.tol);
  const MarDecomposition mar = extract_mar(t, mar_options(g));
  if (g.json) {
    out << io::mar_to_json(mar, g.tol).dump(2) << '\n';
  } else {
    out << "j = " << t.j().to_string() << '\n';
    print_mar(out, mar, g.tol);
  }
  if (!plot.empty()) write_plot(plot, mar);
  return mar_exit(mar, err);
}

int cmd_ensemble(const Globals& g, const std::string& path, const std::vector<std::string>& terms,
                 int n_qubits, std::ostream& out) {
  SeparableEnsemble e;
  if (!path.empty()) {
    if (!terms.empty()) throw ValidationError("arguments", "give either an ensemble file or --term, not both");
    e = io::ensemble_from_json(io::read_json_file(path), g.tol);
  } else {
    if (terms.empty()) throw ValidationError("arguments", "an ensemble file or at least one --term is required");
    e.n_qubits = n_qubits;
    for (const auto& t : terms) e.terms.push_back(parse_term(t));
    double total = 0.0;
    for (const auto& t : e.terms) total += t.weight;
    if (std::abs(total - 1.0) > g.tol) {
      throw ValidationError("weights", "weights sum to " + format_number(total) + ", expected 1");
    }
    for (auto& t : e.terms) t.weight /= total;
    e.validate();
  }
  const SpinDensityMatrix rho = ensemble_to_rho(e);
  if (g.json) {
    out << io::state_to_json(rho).dump(2) << '\n';
    return kExitOk;
  }
  out << "n_qubits = " << e.n_qubits << ", j = " << rho.j().to_string() << '\n';
  out << "distinct directions: " << e.distinct_directions() << '\n';
  out << "purity: " << format_number(purity(rho)) << '\n';
  print_matrix(out, "rho (|j m>, m = +j first)", rho.matrix());
  return kExitOk;
}

struct PfuncSource {
  Distribution lambda;
  std::string label;
  int band = 0;
};

PfuncSource pfunc_source(const std::string& spec, double tol) {
  if (spec == "uniform") return {SphericalExpansion::uniform(), "uniform", 0};
  if (spec.rfind("y2:", 0) == 0) {
    int l = 0, m = 0;
    char tail = '\0';
    if (std::sscanf(spec.c_str() + 3, "l=%d,m=%d%c", &l, &m, &tail) != 2) {
      throw ValidationError("source", "expected y2:l=<int>,m=<int> but got '" + spec + "'");
    }
    if (l < 0 || std::abs(m) > l || 2 * l > kMaxDoubledArgument) {
      throw ValidationError("source", "invalid (l, m) in '" + spec + "'");
    }
    SphereFunction f = [l, m](double theta, double phi) { return std::norm(spherical_harmonic(l, m, theta, phi)); };
    return {f, "|Y^" + std::to_string(l) + "_" + std::to_string(m) + "|^2", 2 * l};
  }
  SphericalExpansion lambda = io::expansion_from_json(io::read_json_file(spec));
  lambda.validate(tol);
  return {lambda, spec, lambda.l_max()};
}

int cmd_pfunc(const Globals& g, const std::string& spec, const std::string& j_text,
              std::optional<int> lmax, const std::string& plot, std::ostream& out, std::ostream& err) {
  const HalfInt j = HalfInt::parse(j_text);
  if (j.doubled() < 1 || j.doubled() > kMaxDoubledSpin) {
    throw ValidationError("j", "--j must be in 1/2.." + HalfInt::from_doubled(kMaxDoubledSpin).to_string());
  }
  const PfuncSource source = pfunc_source(spec, g.tol);
  const int band = lmax.value_or(source.band);
  if (band < 0) throw ValidationError("lmax", "--lmax must be non-negative");
  const QuadratureGrid grid = QuadratureGrid::for_bandlimit(band, j);
  const DistributionTensor dt = t_from_distribution(source.lambda, j, grid);
  const MarDecomposition mar = extract_mar(dt.t, mar_options(g));
  if (dt.negative_values) {
    err << "warning: negativity: lambda reaches " << format_number(dt.min_value)
        << "; the state is not certified classical by this distribution\n";
  }
  if (g.json) {
    json doc = {{"schema_version", io::kSchemaVersion},
                {"source", source.label},
                {"classical", !dt.negative_values},
                {"min_lambda", io::round_printed(dt.min_value)},
                {"tensor", io::tensor_to_json(dt.t)},
                {"mar", io::mar_to_json(mar, g.tol)}};
    out << doc.dump(2) << '\n';
  } else {
    out << "j = " << j.to_string() << '\n';
    out << "source: " << source.label << '\n';
    out << "classical: " << (dt.negative_values ? "false" : "true") << " (min lambda "
        << format_number(dt.min_value) << ")\n";
    print_tensor(out, dt.t, g.tol, false);
    print_mar(out, mar, g.tol);
  }
  if (!plot.empty()) write_plot(plot, mar);
  return mar_exit(mar, err);
}

int cmd_cg(const Globals& g, const std::vector<std::string>& args, std::ostream& out) {
  std::vector<HalfInt> v;
  for (const auto& a : args) v.push_back(HalfInt::parse(a));
  const ExactCoefficient c = cg(v[0], v[1], v[2], v[3], v[4], v[5]);
  if (g.json) {
    json doc = {{"schema_version", io::kSchemaVersion},
                {"j1", v[0].to_string()}, {"j2", v[1].to_string()}, {"j", v[2].to_string()},
                {"m1", v[3].to_string()}, {"m2", v[4].to_string()}, {"m", v[5].to_string()},
                {"exact", c.to_string()},
                {"value", io::round_printed(c.value())}};
    out << doc.dump(2) << '\n';
  } else {
    out << "C(" << v[0].to_string() << ' ' << v[1].to_string() << ' ' << v[2].to_string() << "; "
        << v[3].to_string() << ' ' << v[4].to_string() << ' ' << v[5].to_string() << ") = " << c.to_string();
    if (c.to_string() != format_number(c.value())) out << " = " << format_number(c.value());
    out << '\n';
  }
  return kExitOk;
}

int cmd_tau(const Globals& g, const std::string& j_text, int k, int q, std::ostream& out) {
  const HalfInt j = HalfInt::parse(j_text);
  const Eigen::MatrixXcd tau = tau_operator(j, k, q);
  if (g.json) {
    json doc = {{"schema_version", io::kSchemaVersion}, {"j_doubled", j.doubled()}, {"k", k}, {"q", q},
                {"matrix", matrix_json(tau)}};
    out << doc.dump(2) << '\n';
  } else {
    out << "j = " << j.to_string() << '\n';
    print_matrix(out, "tau^" + std::to_string(k) + "_" + std::to_string(q), tau);
  }
  return kExitOk;
}

// Worked example ------------------------------------------------------------------------

class Checker {
 public:
  explicit Checker(double tol) : tol_(tol) {}
  void near(const std::string& what, Complex got, Complex want) {
    if (!(std::abs(got - want) <= tol_)) {
      failures_.push_back(what + ": got " + format_complex(got) + ", expected " + format_complex(want));
    }
  }
  void expect(const std::string& what, bool ok) {
    if (!ok) failures_.push_back(what);
  }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  double tol_;
  std::vector<std::string> failures_;
};

int cmd_paper_example(const Globals& g, std::ostream& out, std::ostream& err) {
  constexpr double kCheckTol = 1e-9;
  const std::vector<std::pair<std::string, BlochVector>> points = {
      {"+x", BlochVector::from_angles(kPi / 2, 0.0)},
      {"-x", BlochVector::from_angles(kPi / 2, kPi)},
      {"+z", BlochVector::from_angles(0.0, 0.0)},
      {"-z", BlochVector::from_angles(kPi, 0.0)}};
  SeparableEnsemble e;
  e.n_qubits = 2;
  for (const auto& [name, dir] : points) e.terms.push_back({0.25, dir});
  e.validate();

  const Eigen::MatrixXcd full = ensemble_to_full_rho(e);
  const SpinDensityMatrix rho = ensemble_to_rho(e);
  const TensorParams t = rho_to_t(rho);
  const MarDecomposition mar = extract_mar(t, mar_options(g));
  const RankMar& r2 = mar.rank(2);

  Checker check(kCheckTol);
  Eigen::Matrix4d full_ref;
  full_ref << 6, 0, 0, 2, 0, 2, 2, 0, 0, 2, 2, 0, 2, 0, 0, 6;
  Eigen::Matrix3d jm_ref;
  jm_ref << 6, 0, 2, 0, 4, 0, 2, 0, 6;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      check.near("rho[" + std::to_string(r) + "][" + std::to_string(c) + "]", 16.0 * full(r, c), full_ref(r, c));
    }
  }
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      check.near("rho_jm[" + std::to_string(r) + "][" + std::to_string(c) + "]", 16.0 * rho(r, c), jm_ref(r, c));
    }
  }
  const double t20 = 1.0 / (4.0 * std::sqrt(2.0));
  const double t22 = std::sqrt(3.0) / 8.0;
  for (int k = 0; k <= 2; ++k) {
    for (int q = -k; q <= k; ++q) {
      Complex want = 0.0;
      if (k == 0) want = 1.0;
      if (k == 2 && q == 0) want = t20;
      if (k == 2 && std::abs(q) == 2) want = t22;
      check.near("t^" + std::to_string(k) + "_" + std::to_string(q), t.at(k, q), want);
    }
  }
  const std::vector<double> quartic_ref = {t22, 0.0, std::sqrt(6.0) / (4.0 * std::sqrt(2.0)), 0.0, t22};
  check.expect("rank 2 resolved", r2.status == RankStatus::resolved);
  check.expect("quartic has 5 coefficients", r2.polynomial.size() == quartic_ref.size());
  for (std::size_t i = 0; i < std::min(r2.polynomial.size(), quartic_ref.size()); ++i) {
    check.near("quartic coefficient of Z^" + std::to_string(4 - i), r2.polynomial[i], quartic_ref[i]);
  }
  int at_plus_i = 0, at_minus_i = 0;
  for (const RootCluster& c : r2.roots.finite) {
    if (std::abs(c.root - Complex(0, 1)) <= kCheckTol) at_plus_i += c.multiplicity;
    if (std::abs(c.root - Complex(0, -1)) <= kCheckTol) at_minus_i += c.multiplicity;
  }
  check.expect("roots are +i and -i, each double", at_plus_i == 2 && at_minus_i == 2 && r2.roots.at_infinity == 0);
  check.expect("rank 2 has two axes", r2.axes.size() == 2);
  for (std::size_t i = 0; i < r2.axes.size(); ++i) {
    check.near("axis " + std::to_string(i + 1) + " theta", r2.axes[i].theta, kPi / 2);
    check.near("axis " + std::to_string(i + 1) + " phi", r2.axes[i].phi, kPi / 2);
  }
  check.expect("rank 1 is zero", mar.rank(1).status == RankStatus::zero);
  const bool collinear = collinearity_check(mar, kCheckTol);
  check.expect("axes collinear", collinear);

  if (g.json) {
    json roots = json::array();
    for (const RootCluster& c : r2.roots.finite) {
      roots.push_back({{"re", io::round_printed(c.root.real())},
                       {"im", io::round_printed(c.root.imag())},
                       {"multiplicity", c.multiplicity}});
    }
    json quartic = json::array();
    for (Complex c : r2.polynomial) {
      quartic.push_back(json::array({io::round_printed(c.real()), io::round_printed(c.imag())}));
    }
    json doc = {{"schema_version", io::kSchemaVersion},
                {"ensemble", io::ensemble_to_json(e)},
                {"rho_computational", matrix_json(full)},
                {"rho_jm", io::state_to_json(rho)},
                {"tensor", io::tensor_to_json(t)},
                {"quartic", quartic},
                {"roots", roots},
                {"mar", io::mar_to_json(mar, kCheckTol)},
                {"collinear", collinear},
                {"checks_passed", check.failures().empty()}};
    out << doc.dump(2) << '\n';
  } else {
    out << "ensemble (N = 2): weight 1/4 each on";
    for (const auto& [name, dir] : points) out << ' ' << name;
    out << '\n';
    print_matrix(out, "16 rho (computational basis)", 16.0 * full);
    print_matrix(out, "16 rho^{jm} (m = +1, 0, -1)", 16.0 * rho.matrix());
    out << "non-zero t^k_q:\n";
    for (int k = 1; k <= 2; ++k) {
      for (int q = -k; q <= k; ++q) {
        if (std::abs(t.at(k, q)) <= kCheckTol) continue;
        out << "  t^" << k << "_" << q << " = " << format_complex(t.at(k, q)) << '\n';
      }
    }
    out << "quartic (k = 2), highest power first:";
    for (Complex c : r2.polynomial) out << ' ' << format_complex(c);
    out << '\n';
    out << "roots:";
    for (const RootCluster& c : r2.roots.finite) {
      out << ' ' << format_complex(c.root);
      if (c.multiplicity > 1) out << " \u00d7" << c.multiplicity;
    }
    out << '\n';
    out << "radius r_2 = " << format_number(r2.radius) << '\n';
    if (check.failures().empty()) {
      out << "axes: (\u03c0/2, \u03c0/2) \u00d72 \u2014 collinear\n";
    } else {
      out << "axes: " << format_axes(r2.axes) << (collinear ? " \u2014 collinear" : "") << '\n';
    }
  }
  for (const auto& f : check.failures()) err << "mismatch: " << f << '\n';
  return check.failures().empty() ? kExitOk : kExitConsistency;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Statistical tensors and multiaxial representations of symmetric spin states", "multiaxial"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable JSON output");
  app.add_option("--tol", g.tol, "Input validation and zero tolerance")->check(CLI::PositiveNumber);

  std::string path, plot, j_text = "1", spec;
  bool all = false;
  std::vector<std::string> terms, cg_args;
  int n_qubits = 1, k = 0, q = 0;
  std::optional<int> lmax;

  auto* rho2t = app.add_subcommand("rho2t", "Tensor parameters of a state file");
  rho2t->add_option("state-file", path, "StateFile JSON")->required();
  rho2t->add_flag("--all", all, "Also list entries below --tol");

  auto* t2rho = app.add_subcommand("t2rho", "Density matrix from a tensor file");
  t2rho->add_option("tensor-file", path, "Tensor JSON")->required();

  auto* mar = app.add_subcommand("mar", "Multiaxial representation of a state, ensemble or tensor file");
  mar->add_option("file", path, "StateFile, EnsembleFile or tensor JSON")->required();
  mar->add_option("--emit-plot", plot, "Write axis endpoints as CSV");

  auto* ens = app.add_subcommand("ensemble", "Spin-j density matrix of a separable qubit ensemble");
  ens->add_option("ensemble-file", path, "EnsembleFile JSON");
  ens->add_option("--term", terms, "weight,theta,phi (angles may be written like pi/2)");
  ens->add_option("--n", n_qubits, "Qubit count for --term")->check(CLI::Range(1, kMaxDoubledSpin));

  auto* pfunc = app.add_subcommand("pfunc", "State of a P-distribution on the sphere");
  pfunc->add_option("source", spec, "Expansion JSON, 'uniform', or y2:l=<l>,m=<m> for |Y^l_m|^2")->required();
  pfunc->add_option("--j", j_text, "Spin, e.g. 1 or 3/2")->required();
  pfunc->add_option("--lmax", lmax, "Band limit used for the quadrature (default: that of the source)");
  pfunc->add_option("--emit-plot", plot, "Write axis endpoints as CSV");

  auto* paper = app.add_subcommand("paper-example", "Two-qubit ensemble on +x, -x, +z, -z");

  auto* cgc = app.add_subcommand("cg", "Clebsch-Gordan coefficient C(j1 j2 j; m1 m2 m)");
  cgc->add_option("values", cg_args, "j1 j2 j m1 m2 m")->expected(6)->required();

  auto* tau = app.add_subcommand("tau", "Irreducible tensor operator matrix");
  tau->add_option("--j", j_text, "Spin, e.g. 1 or 3/2")->required();
  tau->add_option("k", k, "Rank")->required();
  tau->add_option("q", q, "Projection")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (rho2t->parsed()) return cmd_rho2t(g, path, all, out);
    if (t2rho->parsed()) return cmd_t2rho(g, path, out, err);
    if (mar->parsed()) return cmd_mar(g, path, plot, out, err);
    if (ens->parsed()) return cmd_ensemble(g, path, terms, n_qubits, out);
    if (pfunc->parsed()) return cmd_pfunc(g, spec, j_text, lmax, plot, out, err);
    if (paper->parsed()) return cmd_paper_example(g, out, err);
    if (cgc->parsed()) return cmd_cg(g, cg_args, out);
    if (tau->parsed()) return cmd_tau(g, j_text, k, q, out);
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "validation error: domain: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ConsistencyError& e) {
    err << "consistency error: " << e.what() << '\n';
    return kExitConsistency;
  } catch (const DegenerateCouplingError& e) {
    err << "consistency error: " << e.what() << '\n';
    return kExitConsistency;
  }
  return kExitValidation;
}

}  // namespace multiaxial::cli
