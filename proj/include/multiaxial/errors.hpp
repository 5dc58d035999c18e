#pragma once

#include <stdexcept>
#include <string>

namespace multiaxial {

/// Quantum numbers or indices outside the supported domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input data violating a named invariant ("hermiticity", "trace", ...).
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string invariant, const std::string& detail)
      : std::invalid_argument(invariant + ": " + detail),
        invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// Internal results that fail a structural check, e.g. unpaired polynomial roots.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The coupled product of a set of axes vanished, so no radius can be fitted.
class DegenerateCouplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace multiaxial
