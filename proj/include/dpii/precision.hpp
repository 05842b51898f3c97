#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace dpii {

/// Arbitrary-precision binary floating point. The precision of newly created
/// values is taken from the thread default; use PrecisionScope to set it.
using Real = boost::multiprecision::mpfr_float;

/// Exact rational coefficients for the symbolic layer.
using Rational = boost::multiprecision::mpq_rational;

using Integer = boost::multiprecision::mpz_int;

/// Decimal digits needed to round-trip a value carrying `bits` bits.
inline unsigned digits_for_bits(unsigned bits) {
    return static_cast<unsigned>(bits * 0.30103) + 4;
}

/// RAII guard that sets the default mpfr precision (in bits) and restores the
/// previous default on destruction.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits)
        : saved_(Real::default_precision()) {
        Real::default_precision(digits_for_bits(bits));
    }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;
    ~PrecisionScope() { Real::default_precision(saved_); }

private:
    unsigned saved_;
};

/// Copy of v carried at the current default precision. Values entering from
/// callers keep their own (possibly lower) precision through copies and
/// expressions, so every computation normalizes its inputs with this first.
inline Real at_working_precision(const Real& v) {
    Real r = v;
    r.precision(Real::default_precision());
    return r;
}

/// pi at the current default precision.
inline Real pi_value() {
    Real r = 0;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

/// 2^e as a Real.
inline Real pow2(long e) {
    Real r = 1;
    mpfr_mul_2si(r.backend().data(), r.backend().data(), e, MPFR_RNDN);
    return r;
}

/// Full-precision decimal rendering (deterministic scientific format).
inline std::string to_decimal(const Real& v, unsigned bits) {
    return v.str(digits_for_bits(bits), std::ios_base::scientific);
}

/// Exact conversion of a binary float to a rational (every mpfr value is a
/// dyadic rational).
inline Rational rational_from_real(const Real& r) {
    if (r == 0)
        return Rational(0);
    mpz_t z;
    mpz_init(z);
    mpfr_exp_t e = mpfr_get_z_2exp(z, r.backend().data());
    Integer m(z);
    mpz_clear(z);
    Rational q(m);
    Integer two_abs_e = Integer(1) << static_cast<unsigned>(e < 0 ? -e : e);
    if (e >= 0)
        q *= Rational(two_abs_e);
    else
        q /= Rational(two_abs_e);
    return q;
}

} // namespace dpii
