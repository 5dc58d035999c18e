#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "multiaxial/mar_extraction.hpp"
#include "multiaxial/p_function.hpp"
#include "multiaxial/symmetric_states.hpp"
#include "multiaxial/tensor_repr.hpp"

namespace multiaxial::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr int kSignificantDigits = 9;
/// Magnitudes below this print as 0 so roundoff noise does not reach the output.
inline constexpr double kPrintFloor = 5e-15;

/// Value as printed with 9 significant digits ("%.9g"), -0 and noise mapped to 0.
std::string format_number(double x);
/// The double nearest to format_number(x); storing it in JSON prints the same digits.
double round_printed(double x);

/// Radians as a decimal, or a multiple of pi: "pi", "-pi/2", "3pi/4", "2*pi/3", "0.25pi".
/// Throws ValidationError("angle").
double parse_angle(std::string_view text);

/// Throws ValidationError("json") on unreadable or ill-formed input.
json read_json_file(const std::filesystem::path& path);

// StateFile: {schema_version, j_doubled, matrix: [[[re, im], ...], ...]}
json state_to_json(const SpinDensityMatrix& rho);
/// Hermiticity and trace are checked against tol, then the matrix is
/// hermitized and renormalized so printed files load bit-compatibly.
SpinDensityMatrix state_from_json(const json& doc, double tol);

// EnsembleFile: {schema_version, n_qubits, terms: [{weight, theta, phi}, ...]}
json ensemble_to_json(const SeparableEnsemble& ensemble);
/// Weights must be non-negative and sum to 1 within tol; they are then renormalized.
SeparableEnsemble ensemble_from_json(const json& doc, double tol);

// Tensor table: {schema_version, j_doubled, entries: [{k, q, re, im}, ...]}; absent entries are 0.
json tensor_to_json(const TensorParams& t);
/// Conjugation symmetry and t^0_0 = 1 are checked against tol, then enforced exactly.
TensorParams tensor_from_json(const json& doc, double tol);

// Expansion: {schema_version, l_max, coeffs: [{l, m, re, im}, ...]}; absent coefficients are 0.
json expansion_to_json(const SphericalExpansion& lambda);
/// Entries are taken as given; reality and normalization are checked by the consumer.
SphericalExpansion expansion_from_json(const json& doc);

/// {rank, status, radius, signed_radius, residual, collinear, axes: [{theta, phi}]} per rank.
json mar_to_json(const MarDecomposition& mar, double collinear_tol);
/// Header rank,x1,y1,z1,x2,y2,z2 and one row per axis: both antipodal endpoints.
/// Ranks with zero radius contribute no rows.
std::string plot_csv(const MarDecomposition& mar);

/// Recursively replaces every number by round_printed(number).
json rounded(const json& doc);

}  // namespace multiaxial::io
