#pragma once

#include <stdexcept>
#include <string>

namespace rotstar {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A precondition on input values was violated.
struct InvalidParams : Error {
    using Error::Error;
};

/// The radial equation has no zero crossing before the configured cutoff.
struct NoFiniteRadius : Error {
    using Error::Error;
};

/// An adaptive quadrature did not reach the requested tolerance within budget.
struct QuadratureFailure : Error {
    using Error::Error;
};

/// An iteration exceeded its cap without meeting its convergence criterion.
struct NonConvergence : Error {
    using Error::Error;
};

/// The target mass is unreachable inside the validity region of the constant.
struct BoundaryHit : Error {
    using Error::Error;
};

/// The fluid support reached the outermost grid ring.
struct SupportOverflow : Error {
    using Error::Error;
};

/// The initial density handed to the iteration is unusable (e.g. zero mass).
struct InvalidInit : Error {
    using Error::Error;
};

/// A configuration file could not be parsed or validated.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace rotstar
