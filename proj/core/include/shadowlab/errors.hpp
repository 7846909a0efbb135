#pragma once

#include <stdexcept>
#include <string>

namespace shadowlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// Pivot magnitude fell below the pivot tolerance after all anti-cycling
// fallbacks were exhausted.
struct NumericalBreakdown : Error {
    using Error::Error;
};

// A tie in the ratio test survived lexicographic tie-breaking along the
// parametric rotation path.
struct DegeneratePivot : Error {
    using Error::Error;
};

struct TooLarge : Error {
    using Error::Error;
};

struct NotNormalized : Error {
    using Error::Error;
};

struct EmptySlice : Error {
    using Error::Error;
};

struct CenterNotInterior : Error {
    using Error::Error;
};

struct UnboundedShadow : Error {
    using Error::Error;
};

struct DepthExceeded : Error {
    using Error::Error;
};

struct OriginOutside : Error {
    using Error::Error;
};

struct PreconditionViolated : Error {
    using Error::Error;
};

struct RejectionStall : Error {
    using Error::Error;
};

struct InvalidK : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace shadowlab
