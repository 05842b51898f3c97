#pragma once

#include "dpii/errors.hpp"
#include "dpii/precision.hpp"

#include <string>
#include <vector>

namespace dpii {

/// Guard bits added to the user precision for all internal arithmetic.
inline constexpr unsigned kGuardBits = 64;

/// The pair (N, theta_1..theta_N) defining the weight on the unit circle,
/// together with the working precision for everything derived from it.
struct SymbolParams {
    unsigned big_n = 1;
    std::vector<Real> thetas;
    unsigned precision_bits = 256;

    SymbolParams(unsigned n, std::vector<Real> th, unsigned bits = 256);

    /// Parse decimal strings at the working precision.
    static SymbolParams from_strings(unsigned n, const std::vector<std::string>& th,
                                     unsigned bits = 256);

    /// theta_i -> (-1)^{i-1} theta_i (the parameter change taking q_n to r_n).
    SymbolParams sign_alternated() const;

    Real theta_abs_sum() const;
    /// exp(sum_j theta_j^2/j), the partition-function normalization.
    Real z_constant() const;
};

/// Taylor coefficients h_0..h_{m_max} of exp(sum theta_j z^j / j), via the
/// forced recursion k h_k = sum_{j<=min(N,k)} theta_j h_{k-j}.
std::vector<Real> h_coefficients(const SymbolParams& params, int m_max);

/// Truncated two-sided Fourier table of the symbol, with a certified bound on
/// the uncovered coefficients. phi_k = phi_{-k} exactly by construction.
struct FourierTable {
    SymbolParams params;
    int k_max = 0;
    std::vector<Real> coeffs;   // phi_0..phi_{k_max}
    Real tail_bound;            // upper bound on |phi_k| for |k| > k_max
    std::vector<Real> h_coeffs; // h_0..h_M used by the convolution

    const Real& phi(int k) const;
    std::string to_json() const;
};

/// phi_k = sum_m h_m h_{m+|k|} with adaptive truncation. Throws
/// TailNotCertified when the truncation error cannot be pushed below
/// 2^{-precision_bits+8}.
FourierTable fourier_table(const SymbolParams& params, int k_max);

/// Independent check: trapezoidal approximation of the Fourier integral of
/// the symbol, spectrally accurate for this entire weight.
Real quadrature_oracle(const SymbolParams& params, int k, int nodes);

} // namespace dpii
