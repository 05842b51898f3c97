#include "dpii/toeplitz.hpp"

#include "dpii/opuc.hpp"

#include <sstream>

namespace dpii {

Real DeterminantSequence::d(int n) const {
    if (n == -1)
        return Real(1);
    if (n < -1 || n > n_max())
        throw Error("DeterminantSequence: index out of range");
    return values[static_cast<std::size_t>(n)];
}

Real DeterminantSequence::log_d(int n) const {
    if (n == -1)
        return Real(0);
    if (n < -1 || n > n_max())
        throw Error("DeterminantSequence: index out of range");
    return log_values[static_cast<std::size_t>(n)];
}

DeterminantSequence determinant_sequence(const FourierTable& table, int n_max) {
    if (table.k_max < n_max)
        throw Error("determinant_sequence: table must cover |k| <= n_max");
    PrecisionScope scope(table.params.precision_bits + kGuardBits);

    DeterminantSequence seq{table.params, {}, {}};
    seq.values.reserve(static_cast<std::size_t>(n_max) + 1);
    seq.log_values.reserve(static_cast<std::size_t>(n_max) + 1);

    // Lower-triangular Cholesky factor, grown one bordering row at a time.
    std::vector<std::vector<Real>> L;
    Real det = 1;
    Real log_det = 0;
    for (int n = 0; n <= n_max; ++n) {
        // Solve L y = (phi_n, ..., phi_1), then pivot^2 = phi_0 - |y|^2.
        std::vector<Real> y(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            Real s = table.phi(n - j);
            for (int k = 0; k < j; ++k)
                s -= L[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] *
                     y[static_cast<std::size_t>(k)];
            y[static_cast<std::size_t>(j)] = s / L[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
        }
        Real pivot_sq = table.phi(0);
        for (const auto& v : y)
            pivot_sq -= v * v;
        if (pivot_sq <= 0)
            throw NotPositiveDefinite("determinant_sequence: pivot <= 0 at n = " +
                                      std::to_string(n));
        y.push_back(sqrt(pivot_sq));
        L.push_back(std::move(y));
        det *= pivot_sq;
        log_det += log(pivot_sq);
        seq.values.push_back(det);
        seq.log_values.push_back(log_det);
    }
    return seq;
}

const Real& GapProbabilities::q_at(int n) const {
    if (n < 1 || n > static_cast<int>(q.size()))
        throw Error("GapProbabilities: index out of range");
    return q[static_cast<std::size_t>(n - 1)];
}

const Real& GapProbabilities::r_at(int n) const {
    if (n < 1 || n > static_cast<int>(r.size()))
        throw Error("GapProbabilities: index out of range");
    return r[static_cast<std::size_t>(n - 1)];
}

GapProbabilities gap_probabilities(const DeterminantSequence& seq) {
    PrecisionScope scope(seq.params.precision_bits + kGuardBits);
    GapProbabilities g{seq.params, seq.params.z_constant(), {}, {}};
    Real zinv = 1 / g.z_const;
    for (int n = 1; n <= seq.n_max() + 1; ++n)
        g.q.push_back(zinv * seq.d(n - 1));

    SymbolParams tilde = seq.params.sign_alternated();
    FourierTable tilde_table = fourier_table(tilde, seq.n_max());
    DeterminantSequence tilde_seq = determinant_sequence(tilde_table, seq.n_max());
    for (int n = 1; n <= seq.n_max() + 1; ++n)
        g.r.push_back(zinv * tilde_seq.d(n - 1));
    return g;
}

std::vector<Real> recursion_residual(const DeterminantSequence& seq, const OPUCSequence& x) {
    if (x.n_max() < seq.n_max())
        throw Error("recursion_residual: OPUC sequence too short");
    PrecisionScope scope(seq.params.precision_bits + kGuardBits);
    std::vector<Real> out;
    for (int n = 1; n <= seq.n_max(); ++n) {
        Real ratio = exp(seq.log_d(n) + seq.log_d(n - 2) - 2 * seq.log_d(n - 1));
        Real xn = x.x[static_cast<std::size_t>(n)];
        out.push_back(abs(ratio - (1 - xn * xn)));
    }
    return out;
}

Real bareiss_determinant_oracle(const FourierTable& table, int n) {
    if (table.k_max < n)
        throw Error("bareiss_determinant_oracle: table must cover |k| <= n");
    PrecisionScope scope(table.params.precision_bits + kGuardBits);
    const int dim = n + 1;
    std::vector<std::vector<Rational>> a(static_cast<std::size_t>(dim),
                                         std::vector<Rational>(static_cast<std::size_t>(dim)));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                rational_from_real(table.phi(i - j));

    // Bareiss fraction-free elimination; divisions are exact.
    Rational prev(1);
    for (int k = 0; k < dim - 1; ++k) {
        if (a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] == 0)
            throw Error("bareiss_determinant_oracle: zero pivot");
        for (int i = k + 1; i < dim; ++i)
            for (int j = k + 1; j < dim; ++j) {
                auto& aij = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                aij = (aij * a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] -
                       a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                           a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) /
                      prev;
            }
        prev = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    }
    Rational det = a[static_cast<std::size_t>(dim - 1)][static_cast<std::size_t>(dim - 1)];
    Real out = 0;
    mpfr_set_q(out.backend().data(), det.backend().data(), MPFR_RNDN);
    return out;
}

std::string determinants_csv(const DeterminantSequence& seq, const GapProbabilities& gaps,
                             const OPUCSequence& x) {
    PrecisionScope scope(seq.params.precision_bits + kGuardBits);
    const unsigned bits = seq.params.precision_bits;
    std::vector<Real> residuals = recursion_residual(seq, x);
    std::ostringstream os;
    os << "n,D_n,log_D_n,q_n,r_n,ratio,residual\n";
    for (int n = 0; n <= seq.n_max(); ++n) {
        os << n << "," << to_decimal(seq.d(n), bits) << "," << to_decimal(seq.log_d(n), bits)
           << ",";
        if (n >= 1) {
            os << to_decimal(gaps.q_at(n), bits) << "," << to_decimal(gaps.r_at(n), bits) << ","
               << to_decimal(exp(seq.log_d(n) + seq.log_d(n - 2) - 2 * seq.log_d(n - 1)), bits)
               << "," << to_decimal(residuals[static_cast<std::size_t>(n - 1)], bits);
        } else {
            os << ",,,";
        }
        os << "\n";
    }
    return os.str();
}

} // namespace dpii
