#include "dpii/opuc.hpp"

#include <sstream>

namespace dpii {

OPUCSequence szego_sequence(const FourierTable& table, int n_max, int store_pi) {
    if (table.k_max < n_max + 1)
        throw Error("szego_sequence: table must cover |k| <= n_max + 1");
    PrecisionScope scope(table.params.precision_bits + kGuardBits);
    const bool keep = store_pi < 0 ? n_max <= 256 : store_pi != 0;

    OPUCSequence seq{table.params, {}, {}, {}};
    seq.x.push_back(Real(1)); // pi_0 = 1
    seq.kappa_sq.push_back(1 / table.phi(0));

    const Real degenerate_gap = pow2(-static_cast<long>(table.params.precision_bits) / 2);

    std::vector<Real> pi{Real(1)}; // monic coefficients, degree m
    Real norm_sq = table.phi(0);   // ||pi_m||^2 = D_m / D_{m-1}
    if (keep)
        seq.pi_coeffs.push_back(pi);
    for (int m = 0; m < n_max; ++m) {
        // <1, z pi_m> = sum_k pi_m[k] phi_{k+1}
        Real ip = 0;
        for (int k = 0; k <= m; ++k)
            ip += pi[static_cast<std::size_t>(k)] * table.phi(k + 1);
        Real c = -ip / norm_sq; // = pi_{m+1}(0)
        if (1 - c * c <= degenerate_gap)
            throw DegenerateMeasure("szego_sequence: |x_n| reached 1 within tolerance at n = " +
                                    std::to_string(m + 1));
        // pi_{m+1} = z pi_m + c * reverse(pi_m)
        std::vector<Real> next(static_cast<std::size_t>(m) + 2);
        for (int k = 0; k <= m; ++k) {
            next[static_cast<std::size_t>(k + 1)] = pi[static_cast<std::size_t>(k)];
            next[static_cast<std::size_t>(k)] += c * pi[static_cast<std::size_t>(m - k)];
        }
        pi = std::move(next);
        norm_sq *= 1 - c * c;
        seq.x.push_back(c);
        seq.kappa_sq.push_back(1 / norm_sq);
        if (keep)
            seq.pi_coeffs.push_back(pi);
    }
    return seq;
}

namespace {

int sign_with_tol(const Real& v, const Real& tol) {
    if (abs(v) < tol)
        return 0;
    return v < 0 ? -1 : 1;
}

// Exact determinant of the n x n matrix (phi_{i-j-1}), i,j = 0..n-1.
Rational bordered_minor_det(const FourierTable& table, int n) {
    if (n == 0)
        return Rational(1);
    std::vector<std::vector<Rational>> a(static_cast<std::size_t>(n),
                                         std::vector<Rational>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                rational_from_real(table.phi(i - j - 1));
    // Plain fraction-free Bareiss with row swaps for zero pivots.
    Rational prev(1);
    int swaps = 0;
    for (int k = 0; k < n - 1; ++k) {
        if (a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] != 0) {
                    p = i;
                    break;
                }
            if (p < 0)
                return Rational(0);
            std::swap(a[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(p)]);
            ++swaps;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                auto& aij = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                aij = (aij * a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] -
                       a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                           a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) /
                      prev;
            }
        prev = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    }
    Rational det = a[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)];
    return swaps % 2 ? Rational(-det) : det;
}

} // namespace

SignCheckReport sign_check(const OPUCSequence& x, const DeterminantSequence& seq,
                           const FourierTable& table, int n_limit) {
    PrecisionScope scope(table.params.precision_bits + kGuardBits);
    SignCheckReport report;
    report.max_abs_difference = 0;
    const Real tol = pow2(-static_cast<long>(table.params.precision_bits) / 2);
    int upto = std::min({n_limit, x.n_max(), seq.n_max()});
    for (int n = 1; n <= upto; ++n) {
        Rational det = bordered_minor_det(table, n);
        Real det_r = 0;
        mpfr_set_q(det_r.backend().data(), det.backend().data(), MPFR_RNDN);
        Real oracle = (n % 2 ? -det_r : det_r) / seq.d(n - 1);
        const Real& xn = x.x[static_cast<std::size_t>(n)];
        int s_rec = sign_with_tol(xn, tol);
        int s_ora = sign_with_tol(oracle, tol);
        report.recursion_signs.push_back(s_rec);
        report.oracle_signs.push_back(s_ora);
        report.max_abs_difference = std::max(report.max_abs_difference, Real(abs(xn - oracle)));
        if (s_rec != s_ora)
            throw SignMismatch("sign_check: recursion and bordered determinant disagree at n = " +
                               std::to_string(n));
        ++report.n_checked;
    }
    return report;
}

CertifiedData build_certified(const SymbolParams& params, int n_max) {
    const Real tol = pow2(-static_cast<long>(params.precision_bits) / 2);
    unsigned bits = params.precision_bits;
    const unsigned cap = params.precision_bits * 16;
    while (true) {
        SymbolParams attempt(params.big_n, params.thetas, bits);
        try {
            FourierTable table = fourier_table(attempt, n_max + 1);
            DeterminantSequence dets = determinant_sequence(table, n_max);
            OPUCSequence x = szego_sequence(table, n_max);
            std::vector<Real> res = recursion_residual(dets, x);
            Real worst = 0;
            for (const auto& v : res)
                worst = std::max(worst, v);
            if (worst < tol)
                return {std::move(table), std::move(dets), std::move(x), bits};
        } catch (const NotPositiveDefinite&) {
            // fall through to escalation
        } catch (const DegenerateMeasure&) {
        }
        if (bits >= cap)
            throw PrecisionError("build_certified: residual target unreachable below " +
                                 std::to_string(cap) + " bits");
        bits *= 2;
    }
}

std::string opuc_csv(const OPUCSequence& x) {
    PrecisionScope scope(x.params.precision_bits + kGuardBits);
    const unsigned bits = x.params.precision_bits;
    std::ostringstream os;
    os << "n,x_n,kappa_sq_n,one_minus_x_n_sq\n";
    for (int n = 0; n <= x.n_max(); ++n) {
        const Real& xn = x.x[static_cast<std::size_t>(n)];
        os << n << "," << to_decimal(xn, bits) << ","
           << to_decimal(x.kappa_sq[static_cast<std::size_t>(n)], bits) << ","
           << to_decimal(1 - xn * xn, bits) << "\n";
    }
    return os.str();
}

} // namespace dpii
