#pragma once

#include <stdexcept>
#include <string>

namespace gradpde {

// Base of every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Formula or operation undefined for the given parameters.
struct DomainError : Error {
  using Error::Error;
};

struct NotSupercritical : DomainError {
  using DomainError::DomainError;
};

struct OutsideRegion : DomainError {
  using DomainError::DomainError;
};

// A claimed exact inequality is false; carries a rational counterexample.
struct CertificationFailed : Error {
  CertificationFailed(const std::string& what, std::string counterexample)
      : Error(what), counterexample(std::move(counterexample)) {}
  std::string counterexample;
};

struct StepFailure : Error {
  using Error::Error;
};

struct SearchFailure : Error {
  using Error::Error;
};

struct NoConvergence : Error {
  using Error::Error;
};

struct FoldDetected : Error {
  using Error::Error;
};

struct BoundViolation : Error {
  using Error::Error;
};

struct TheoremViolation : Error {
  using Error::Error;
};

}  // namespace gradpde
