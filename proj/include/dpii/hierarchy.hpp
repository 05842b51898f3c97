#pragma once

#include "dpii/opuc.hpp"
#include "dpii/shiftpoly.hpp"

#include <string>
#include <vector>

namespace dpii::hier {

using sym::Rational;
using sym::ShiftPolynomial;

/// The N-th member of the discrete Painleve II hierarchy: the full order-2N
/// equation (lhs = 0 implied) plus the chain of off-diagonal generators that
/// produced it.
struct HierarchyEquation {
    int big_n = 0;
    ShiftPolynomial lhs;
    std::vector<ShiftPolynomial> t_chain; // T_{k,12} for k = 1..N+1
};

/// One application of the scalar recursion operator
///   L(u) = (x_{n+1}(2 D^{-1} + I)((D + I) x_n Perm - x_n) + v_{n+1}(D + I)
///           - x_n x_{n+1}) u
/// with the supplied antidifference constant.
ShiftPolynomial scalar_l(const ShiftPolynomial& u, const ShiftPolynomial& delta_constant);

/// Generates the N-th equation by N-fold application of the recursion
/// operator to zero (iteration i uses constant -theta_{N-i+1}/2; the final
/// outer antidifference constant is zero) and canonical expansion.
HierarchyEquation generate_equation(int big_n);

/// Evaluates the equation on Toeplitz-derived data for n in [n_lo, n_hi].
/// Returns per-n |lhs| / max|term|. Throws WindowUnderflow when n_lo < N.
std::vector<Real> residual_trace(const HierarchyEquation& eq, const OPUCSequence& x, int n_lo,
                                 int n_hi);

/// Asserts that the scalar route and the matrix compatibility route produce
/// the same polynomial up to one overall sign, which is returned. Throws
/// RouteMismatch otherwise.
struct ConsistencyReport {
    int big_n = 0;
    int sign = 0; // +1: identical; -1: opposite sign
};
ConsistencyReport equation_consistency(int big_n);

/// CSV export of a residual table: n, residual.
std::string residual_csv(const HierarchyEquation& eq, const OPUCSequence& x, int n_lo, int n_hi);

} // namespace dpii::hier
