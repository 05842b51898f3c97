#pragma once

#include "dpii/symbol.hpp"

#include <string>
#include <vector>

namespace dpii {

struct OPUCSequence; // opuc.hpp

/// D_0..D_{n_max} for the (n+1)x(n+1) Toeplitz matrices of the symbol, with
/// logs carried alongside for overflow-free ratios. D_{-1} == 1 by convention.
struct DeterminantSequence {
    SymbolParams params;
    std::vector<Real> values;
    std::vector<Real> log_values;

    int n_max() const { return static_cast<int>(values.size()) - 1; }
    Real d(int n) const;
    Real log_d(int n) const;
};

/// Incremental symmetric (Cholesky) bordering; the whole sequence costs
/// O(n_max^3). Positivity of every pivot is an invariant of the positive
/// symbol; a nonpositive pivot throws NotPositiveDefinite.
DeterminantSequence determinant_sequence(const FourierTable& table, int n_max);

/// q_n and r_n, n = 1..n_max+1. q uses the given sequence; r is computed from
/// the determinant sequence of the sign-alternated parameters.
struct GapProbabilities {
    SymbolParams params;
    Real z_const; // exp(sum theta_j^2/j)
    std::vector<Real> q;
    std::vector<Real> r;

    int n_max() const { return static_cast<int>(q.size()); }
    const Real& q_at(int n) const; // n = 1..n_max
    const Real& r_at(int n) const;
};

GapProbabilities gap_probabilities(const DeterminantSequence& seq);

/// Per-n residual of D_n D_{n-2}/D_{n-1}^2 - (1 - x_n^2), n = 1..n_max.
/// Ratios are evaluated in log space.
std::vector<Real> recursion_residual(const DeterminantSequence& seq, const OPUCSequence& x);

/// Exact fraction-free (Bareiss) determinant of the (n+1)x(n+1) matrix, used
/// as the small-n oracle for the bordered factorization.
Real bareiss_determinant_oracle(const FourierTable& table, int n);

/// CSV export: n, D_n, log D_n, q_n, r_n, ratio, residual (decimal strings at
/// full precision; '.' separator, '\n' endings, header always present).
std::string determinants_csv(const DeterminantSequence& seq, const GapProbabilities& gaps,
                             const OPUCSequence& x);

} // namespace dpii
