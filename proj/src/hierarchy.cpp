#include "dpii/hierarchy.hpp"

#include "dpii/laxmatrix.hpp"

#include <sstream>

namespace dpii::hier {

using SP = ShiftPolynomial;

ShiftPolynomial scalar_l(const ShiftPolynomial& u, const ShiftPolynomial& delta_constant) {
    const SP x0 = SP::x(0);
    const SP x1 = SP::x(1);
    // ((D + I) x_n Perm - x_n) u
    SP inner = sym::shift(x0 * sym::perm(u), 1) - x0 * u;
    SP anti = sym::delta_inverse(inner, SP(0)) + delta_constant;
    return x1 * (anti * Rational(2) + inner) + SP::v(1) * sym::shift(u, 1) - x0 * x1 * u;
}

HierarchyEquation generate_equation(int big_n) {
    if (big_n < 1)
        throw Error("generate_equation: N must be >= 1");
    HierarchyEquation eq;
    eq.big_n = big_n;

    SP u; // T_{1,12} = 0
    eq.t_chain.push_back(u);
    for (int i = 1; i <= big_n; ++i) {
        u = scalar_l(u, SP::theta(big_n - i + 1) * Rational(-1, 2));
        eq.t_chain.push_back(u);
    }

    const SP x0 = SP::x(0);
    SP integrand = x0 * u - sym::shift(x0 * sym::perm(u), 1);
    SP anti = sym::delta_inverse(integrand, SP(0));
    eq.lhs = SP::n() * x0 + x0 * anti * Rational(2) - SP::v(0) * u - SP::v(0) * sym::perm(u);
    return eq;
}

std::vector<Real> residual_trace(const HierarchyEquation& eq, const OPUCSequence& x, int n_lo,
                                 int n_hi) {
    const int big_n = eq.big_n;
    if (n_lo - big_n < 0)
        throw WindowUnderflow("residual_trace: n range dips below the equation window");
    if (n_hi + big_n > x.n_max() || n_lo > n_hi)
        throw Error("residual_trace: OPUC sequence does not cover the requested range");
    PrecisionScope scope(x.params.precision_bits + kGuardBits);
    const Real tiny = pow2(-static_cast<long>(x.params.precision_bits) * 4);

    std::vector<Real> out;
    out.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
    for (int n = n_lo; n <= n_hi; ++n) {
        std::map<int, Real> values;
        for (int j = -big_n; j <= big_n; ++j)
            values[j] = x.x[static_cast<std::size_t>(n + j)];
        auto r = sym::eval_with_scale(eq.lhs, values, x.params.thetas, n);
        Real scale = r.scale < tiny ? Real(1) : r.scale;
        out.push_back(abs(r.value) / scale);
    }
    return out;
}

ConsistencyReport equation_consistency(int big_n) {
    HierarchyEquation eq = generate_equation(big_n);
    SP matrix_route =
        lax::compatibility_residual(lax::build_T(big_n), lax::build_U(), big_n);
    ConsistencyReport report{big_n, 0};
    if (eq.lhs == matrix_route)
        report.sign = 1;
    else if ((eq.lhs + matrix_route).is_zero())
        report.sign = -1;
    else
        throw RouteMismatch("equation_consistency: scalar and matrix routes differ by more "
                            "than a sign; difference = " +
                            sym::to_text(eq.lhs - matrix_route));
    return report;
}

std::string residual_csv(const HierarchyEquation& eq, const OPUCSequence& x, int n_lo,
                         int n_hi) {
    std::vector<Real> res = residual_trace(eq, x, n_lo, n_hi);
    std::ostringstream os;
    os << "n,residual\n";
    for (int n = n_lo; n <= n_hi; ++n)
        os << n << "," << to_decimal(res[static_cast<std::size_t>(n - n_lo)], x.params.precision_bits)
           << "\n";
    return os.str();
}

} // namespace dpii::hier
