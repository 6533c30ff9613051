#pragma once

#include <stdexcept>
#include <string>

namespace gsis {

/// Root of the library's error hierarchy. Every failure carries a stable
/// code string (the class name) so callers and the CLI can dispatch on it
/// without parsing messages.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Malformed input files or option strings. CLI exit code 2.
class ParseError : public Error {
public:
    using Error::Error;
    explicit ParseError(const std::string& message) : Error("ParseError", message) {}
};

/// Structurally invalid data: wrong shapes, broken symmetry, non-commuting
/// shift sets and the like. CLI exit code 3.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Valid data fed to an operation whose mathematical preconditions it does
/// not meet. CLI exit code 4.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The library detected an inconsistency in its own output. CLI exit code 1.
class InternalError : public Error {
public:
    using Error::Error;
};

#define GSIS_DEFINE_ERROR(NAME, BASE)                            \
    class NAME : public BASE {                                   \
    public:                                                      \
        explicit NAME(const std::string& message)                \
            : BASE(#NAME, message) {}                            \
    };

GSIS_DEFINE_ERROR(DimensionMismatch, ValidationError)
GSIS_DEFINE_ERROR(NotSymmetric, ValidationError)
GSIS_DEFINE_ERROR(NotCommuting, ValidationError)
GSIS_DEFINE_ERROR(SupportViolation, ValidationError)
GSIS_DEFINE_ERROR(IsolatedVertex, ValidationError)
GSIS_DEFINE_ERROR(EmptyShiftSet, ValidationError)
GSIS_DEFINE_ERROR(InvalidSpec, ValidationError)
GSIS_DEFINE_ERROR(AmbiguousClustering, ValidationError)
GSIS_DEFINE_ERROR(ZeroGenerator, ValidationError)
GSIS_DEFINE_ERROR(NotPositiveDefinite, ValidationError)

GSIS_DEFINE_ERROR(BandOutOfRange, PreconditionError)
GSIS_DEFINE_ERROR(ZeroCutoffFrequency, PreconditionError)
GSIS_DEFINE_ERROR(NegativeBaseFractionalPower, PreconditionError)
GSIS_DEFINE_ERROR(NotShiftInvariant, PreconditionError)
GSIS_DEFINE_ERROR(RangeEscape, PreconditionError)
GSIS_DEFINE_ERROR(DecompositionMismatch, PreconditionError)
GSIS_DEFINE_ERROR(NotNormalized, PreconditionError)
GSIS_DEFINE_ERROR(AlphaNotBelowOne, PreconditionError)
GSIS_DEFINE_ERROR(EmptySet, PreconditionError)
GSIS_DEFINE_ERROR(ZeroSignal, PreconditionError)
GSIS_DEFINE_ERROR(PartitionBlowup, PreconditionError)

GSIS_DEFINE_ERROR(ConvergenceFailure, InternalError)
GSIS_DEFINE_ERROR(SeparationFailure, InternalError)
GSIS_DEFINE_ERROR(WitnessSearchExhausted, InternalError)
GSIS_DEFINE_ERROR(ReconstructionResidualExceeded, InternalError)

#undef GSIS_DEFINE_ERROR

} // namespace gsis
