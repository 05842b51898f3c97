#pragma once

#include "dpii/symbol.hpp"
#include "dpii/toeplitz.hpp"

#include <string>
#include <vector>

namespace dpii {

/// Monic orthogonal-polynomial data on the unit circle for the symbol's
/// measure: x_n = pi_n(0) with its sign, and kappa_n^2. x_0 = 1 (pi_0 = 1);
/// |x_n| < 1 for n >= 1.
struct OPUCSequence {
    SymbolParams params;
    std::vector<Real> kappa_sq; // kappa_0^2..kappa_{n_max}^2
    std::vector<Real> x;        // x_0..x_{n_max}
    std::vector<std::vector<Real>> pi_coeffs; // monic coefficients when stored

    int n_max() const { return static_cast<int>(x.size()) - 1; }
    bool has_pi() const { return !pi_coeffs.empty(); }
};

/// Szego recursion pi_{m+1}(z) = z pi_m(z) + x_{m+1} pi*_m(z), the multiplier
/// fixed by orthogonality against 1; inner products are finite moment sums
/// over the table. kappa chains from kappa_0^2 = 1/phi_0 via
/// kappa_m^2/kappa_{m+1}^2 = 1 - x_{m+1}^2.
/// store_pi < 0 keeps coefficients automatically for n_max <= 256.
OPUCSequence szego_sequence(const FourierTable& table, int n_max, int store_pi = -1);

/// Signed cross-check of x_n against the bordered-determinant formula
/// x_n = (-1)^n det(phi_{i-j-1})_{n x n} / D_{n-1}, evaluated exactly over
/// rationalized entries. Throws SignMismatch on disagreement.
struct SignCheckReport {
    int n_checked = 0;
    std::vector<int> recursion_signs;
    std::vector<int> oracle_signs;
    Real max_abs_difference;
};
SignCheckReport sign_check(const OPUCSequence& x, const DeterminantSequence& seq,
                           const FourierTable& table, int n_limit = 12);

/// Determinants plus OPUC at the requested precision, escalating (doubling)
/// the working precision until the recursion residual passes the contract
/// 2^{-precision_bits/2} at the originally requested bits.
struct CertifiedData {
    FourierTable table;
    DeterminantSequence dets;
    OPUCSequence opuc;
    unsigned bits_used;
};
CertifiedData build_certified(const SymbolParams& params, int n_max);

/// CSV export: n, x_n, kappa_n^2, 1-x_n^2.
std::string opuc_csv(const OPUCSequence& x);

} // namespace dpii
