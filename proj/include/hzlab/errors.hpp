#pragma once

#include <stdexcept>
#include <string>

namespace hzlab {

// Base of every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// s too close to the pole at s = 1 for the requested accuracy.
struct PoleProximity : Error {
    using Error::Error;
};

// Shift argument outside [0, 1).
struct InvalidShift : Error {
    using Error::Error;
};

// The Bernoulli tail cannot reach target_abs_error within the supported
// number of correction pairs.
struct PrecisionUnreachable : Error {
    using Error::Error;
};

// chi requested outside the supported height range.
struct GammaOverflow : Error {
    using Error::Error;
};

// Scalar argument outside its documented range.
struct InvalidRange : Error {
    using Error::Error;
};

// Grid too small for the exactness condition of the selection identity.
struct NodesTooFew : Error {
    using Error::Error;
};

// Explicit polynomial coefficient with |a| > 1.
struct CoefficientTooLarge : Error {
    using Error::Error;
};

// Quadrature step too large for the integrand at hand.
struct StepTooCoarse : Error {
    using Error::Error;
};

// Scaling fit needs at least four points.
struct TooFewPoints : Error {
    using Error::Error;
};

// Scaling fit design matrix is rank-deficient (or V values invalid).
struct DegenerateDesign : Error {
    using Error::Error;
};

// Invalid or missing experiment configuration; message names the key.
struct ConfigError : Error {
    using Error::Error;
};

// Cache file failed validation (bad header or malformed row).
struct CacheCorrupt : Error {
    using Error::Error;
};

}  // namespace hzlab
