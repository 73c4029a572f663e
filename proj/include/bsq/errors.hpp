#pragma once

#include <stdexcept>
#include <string>

namespace bsq {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -- geometry / input errors (CLI exit code 2) --------------------------------

struct DimensionMismatch : Error {
    using Error::Error;
};
struct UnboundedPolytope : Error {
    using Error::Error;
};
struct EmptyPolytope : Error {
    using Error::Error;
};
struct InvalidPolytope : Error {
    using Error::Error;
};
struct InvalidSurface : Error {
    using Error::Error;
};
struct OutsideComponent : Error {
    using Error::Error;
};
struct CutHitsZ : Error {
    using Error::Error;
};
struct NotASurface : Error {
    using Error::Error;
};

// -- numeric failures (signal misconfiguration; CLI exit code 2) --------------

struct NonconvergedBisection : Error {
    using Error::Error;
};
struct GridTooCoarse : Error {
    using Error::Error;
};
struct BoxTooSmall : Error {
    using Error::Error;
};

// -- stabilization failure (CLI exit code 3) ----------------------------------

struct NotStabilized : Error {
    using Error::Error;
};

// -- manifest / JSON parse failure (CLI exit code 1) ---------------------------

struct ParseError : Error {
    using Error::Error;
};

}  // namespace bsq
