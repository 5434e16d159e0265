// Exception types shared across the library.
//
// Everything user-facing derives from Error; InputError covers bad data
// coming from the outside (files, CLI flags), InternalError covers broken
// invariants that indicate a bug in the engine itself.
#pragma once

#include <stdexcept>
#include <string>

namespace solitonforge {

class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InputError : public Error {
  public:
    explicit InputError(const std::string& msg) : Error(msg) {}
};

class InternalError : public Error {
  public:
    explicit InternalError(const std::string& msg) : Error(msg) {}
};

// Operands built over different coordinate/parameter contexts.
class ContextError : public Error {
  public:
    explicit ContextError(const std::string& msg) : Error(msg) {}
};

// Division by zero, or by a non-invertible element (zero divisor) of the
// coefficient ring.
class DivisionByZero : public Error {
  public:
    explicit DivisionByZero(const std::string& msg) : Error(msg) {}
};

struct SourceLocation {
    int line = 0; // 1-based
    int col = 0;  // 1-based
};

// Base for all located parse diagnostics.
class ParseError : public InputError {
  public:
    ParseError(SourceLocation loc, const std::string& msg)
        : InputError(std::to_string(loc.line) + ":" + std::to_string(loc.col) + ": " + msg),
          loc_(loc), bare_(msg) {}
    SourceLocation where() const { return loc_; }
    const std::string& message() const { return bare_; }

  private:
    SourceLocation loc_;
    std::string bare_;
};

class SyntaxError : public ParseError {
  public:
    using ParseError::ParseError;
};

class UnknownSymbol : public ParseError {
  public:
    using ParseError::ParseError;
};

// exp(...) whose argument is not a rational-coefficient linear form in the
// coordinates.
class NonRationalFrequency : public ParseError {
  public:
    using ParseError::ParseError;
};

class DimensionMismatch : public ParseError {
  public:
    using ParseError::ParseError;
};

// det(g) has two or more terms; the exact inverse leaves the expression class.
class NonMonomialDeterminant : public InputError {
  public:
    explicit NonMonomialDeterminant(const std::string& msg) : InputError(msg) {}
};

// Internal-consistency guard of the Ricci computation.
class AsymmetryDetected : public InternalError {
  public:
    explicit AsymmetryDetected(const std::string& msg) : InternalError(msg) {}
};

// The collected residual failed to be affine in the unknowns; unreachable
// unless the expression kernel is broken.
class NonAffineResidual : public InternalError {
  public:
    explicit NonAffineResidual(const std::string& msg) : InternalError(msg) {}
};

class UnknownEntry : public InputError {
  public:
    explicit UnknownEntry(const std::string& msg) : InputError(msg) {}
};

class DegenerateMetricAtPoint : public Error {
  public:
    explicit DegenerateMetricAtPoint(const std::string& msg) : Error(msg) {}
};

} // namespace solitonforge
