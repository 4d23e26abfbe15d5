#pragma once

#include <stdexcept>
#include <string>

namespace reflab {

/// What went wrong, at the granularity callers branch on.
enum class ErrorCode {
    // input validation
    ZeroConstantTerm,
    NotSquarefree,
    DegreeZero,
    DimensionMismatch,
    ZeroPolynomial,
    ScheduleTooShort,
    UnsupportedDimension,
    NoExactCoordinates,
    NotIndependentBasis,
    GridTooSmall,
    NotPV,
    ZeroVector,
    NotUnit,
    TooFewPoints,
    BadInput,
    // numeric failures
    NoRealDominantRoot,
    BoundaryIndeterminate,
    BoundaryAmbiguous,
    ZeroHit,
    ZeroOnCycle,
    RootFindFailed,
    OrbitTooLong,
    // property-check failures
    NoWitness,
    SelfSimilarityMismatch,
    TranslationOutsideXi,
};

/// Coarse class of an error; the CLI maps these onto exit codes.
enum class ErrorCategory { Validation, Numeric, PropertyFailure };

constexpr ErrorCategory category_of(ErrorCode c) {
    switch (c) {
        case ErrorCode::NoRealDominantRoot:
        case ErrorCode::BoundaryIndeterminate:
        case ErrorCode::BoundaryAmbiguous:
        case ErrorCode::ZeroHit:
        case ErrorCode::ZeroOnCycle:
        case ErrorCode::RootFindFailed:
        case ErrorCode::OrbitTooLong:
            return ErrorCategory::Numeric;
        case ErrorCode::NoWitness:
        case ErrorCode::SelfSimilarityMismatch:
        case ErrorCode::TranslationOutsideXi:
            return ErrorCategory::PropertyFailure;
        default:
            return ErrorCategory::Validation;
    }
}

const char* name_of(ErrorCode c);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(name_of(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }
    ErrorCategory category() const { return category_of(code_); }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace reflab
