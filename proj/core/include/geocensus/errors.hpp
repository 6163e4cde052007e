#ifndef GEOCENSUS_ERRORS_HPP
#define GEOCENSUS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace geocensus {

// Accumulated rounding error makes a required decision (sign, comparison,
// hyperbolicity) ambiguous at the current working precision.
struct PrecisionExhausted : std::runtime_error {
  explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

// A matrix with |trace| <= 2 was passed where a hyperbolic element is required.
struct NotHyperbolic : std::runtime_error {
  explicit NotHyperbolic(const std::string& what) : std::runtime_error(what) {}
};

// A representation failed its load-time checks (relator image, hyperbolicity).
struct ValidationFailed : std::runtime_error {
  explicit ValidationFailed(const std::string& what) : std::runtime_error(what) {}
};

// A census cache file is malformed, truncated, or belongs to a different
// representation or format version.
struct FormatError : std::runtime_error {
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// Two censuses cannot be merged (representation or precision mismatch).
struct IncompatibleCensus : std::runtime_error {
  explicit IncompatibleCensus(const std::string& what) : std::runtime_error(what) {}
};

// An argument is outside the mathematical domain of the function.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A statistical estimator was asked to run on too few samples.
struct InsufficientData : std::runtime_error {
  explicit InsufficientData(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace geocensus

#endif
