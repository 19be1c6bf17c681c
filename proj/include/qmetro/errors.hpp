#pragma once

#include <stdexcept>
#include <string>

namespace qmetro {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operand dimensions disagree or exceed the configured cap.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// A value violates a type invariant (Hermiticity, normalization, ...).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// The Hermitian eigensolver did not converge.
class ConvergenceError : public Error {
  public:
    using Error::Error;
};

/// The tangent of a path has no component inside the support of the state.
class SupportError : public Error {
  public:
    using Error::Error;
};

/// The likelihood carries no information about the parameter.
class IdentifiabilityError : public Error {
  public:
    using Error::Error;
};

} // namespace qmetro
