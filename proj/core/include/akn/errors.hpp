#pragma once

#include <stdexcept>
#include <string>

namespace akn {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An argument violated a documented precondition (non-unit point, bad radius, ...).
class InvalidInputError : public Error {
  public:
    using Error::Error;
};

/// Two balls of a supposed packing overlap beyond tolerance.
class OverlapError : public Error {
  public:
    OverlapError(int a, int b, double gap, const std::string& msg)
        : Error(msg), ball_a(a), ball_b(b), gap(gap) {}
    int ball_a;
    int ball_b;
    double gap; // center distance minus radius sum, negative here
};

/// Stereographic projection of a ball whose closure contains the pole.
class PoleInBallError : public Error {
  public:
    using Error::Error;
};

/// Statistics requested for a packing with no balls.
class EmptyPackingError : public Error {
  public:
    using Error::Error;
};

/// A packing file could not be parsed or failed schema validation.
class ParseError : public Error {
  public:
    using Error::Error;
};

/// A packing file declares a chart this library does not know.
class UnsupportedChartError : public ParseError {
  public:
    using ParseError::ParseError;
};

/// A structural property of the 120-ball packing failed verification.
class PropertyViolationError : public Error {
  public:
    using Error::Error;
};

/// Two independent routes to the same constructed quantity disagree.
class ConstructionInconsistencyError : public Error {
  public:
    using Error::Error;
};

/// Layer stacking produced an overlap or a shared-layer mismatch.
class LayeringError : public Error {
  public:
    using Error::Error;
};

/// A verified claim about the construction failed numerically.
class ClaimFailureError : public Error {
  public:
    using Error::Error;
};

/// The shell-area certificate found an occupancy above 1.
class CertificateFailureError : public Error {
  public:
    using Error::Error;
};

} // namespace akn
