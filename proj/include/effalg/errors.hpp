#pragma once

#include <stdexcept>
#include <string>

namespace effalg {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
  public:
    DimensionMismatch(long lhs, long rhs)
        : Error("dimension mismatch: " + std::to_string(lhs) + " vs " +
                std::to_string(rhs)) {}
};

/// Input failed a domain check (not Hermitian, not an effect, bad trace, ...).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Conditioning on an event whose probability is at or below the zero threshold.
class ZeroProbability : public Error {
  public:
    explicit ZeroProbability(double p)
        : Error("conditioning event has zero probability (" + std::to_string(p) + ")") {}
};

/// A scalar function returned a non-finite value at a point of the spectrum.
class UndefinedFunctionValue : public Error {
  public:
    using Error::Error;
};

class EigenSolverFailure : public Error {
  public:
    using Error::Error;
};

} // namespace effalg
