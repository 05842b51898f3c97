#pragma once

#include <stdexcept>
#include <string>

namespace dpii {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Working precision was exhausted before the requested accuracy was reached.
struct PrecisionError : Error {
    using Error::Error;
};

/// The Fourier-coefficient truncation could not be certified below target.
struct TailNotCertified : Error {
    using Error::Error;
};

/// A Cholesky pivot was <= 0: the moment matrix is not numerically positive
/// definite (bad table or insufficient precision).
struct NotPositiveDefinite : Error {
    using Error::Error;
};

/// |x_n| reached 1 within tolerance during the Szego recursion.
struct DegenerateMeasure : Error {
    using Error::Error;
};

/// Recursion sign disagrees with the bordered-determinant value.
struct SignMismatch : Error {
    using Error::Error;
};

/// The argument of the discrete antidifference is not a difference of any
/// polynomial in the ring.
struct NotSummable : Error {
    using Error::Error;
};

/// Exact polynomial division left a nonzero remainder.
struct NotDivisible : Error {
    using Error::Error;
};

/// Numeric evaluation was requested at a shift with no supplied value.
struct MissingValue : Error {
    using Error::Error;
};

/// A symbolic identity that must hold exactly failed.
struct IdentityViolation : Error {
    using Error::Error;
};

/// A compatibility coefficient that must vanish identically did not.
struct UnexpectedResidual : Error {
    using Error::Error;
};

/// Scalar and matrix constructions of the hierarchy equation disagree.
struct RouteMismatch : Error {
    using Error::Error;
};

/// The gauge transformation did not produce the expected pair.
struct GaugeMismatch : Error {
    using Error::Error;
};

/// A sub-leading coefficient of the continuum expansion failed to cancel.
struct LeadingOrderNonzero : Error {
    using Error::Error;
};

/// A convolution truncation could not be certified below target.
struct TruncationNotCertified : Error {
    using Error::Error;
};

/// Residual evaluation was requested at n below the equation window.
struct WindowUnderflow : Error {
    using Error::Error;
};

} // namespace dpii
