#include "dpii/bessel.hpp"

#include "dpii/errors.hpp"

#include <sstream>

namespace dpii::asym {

namespace {

// Ascending series sum_k (-1)^k (x/2)^{n+2k} / (k! (n+k)!); guard bits absorb
// the e^{x}-sized cancellation.
Real bessel_series(long n, const Real& x_in, unsigned bits) {
    long xl = x_in.convert_to<long>();
    PrecisionScope scope(bits + 64 + static_cast<unsigned>(2 * (xl > 0 ? xl : 0)));
    Real x = at_working_precision(x_in);
    Real half_x = x / 2;
    Real term = 1;
    for (long i = 1; i <= n; ++i)
        term *= half_x / i;
    Real sum = term;
    Real peak = abs(term);
    const Real cutoff = pow2(-static_cast<long>(bits) - 32);
    Real hx2 = half_x * half_x;
    for (long k = 1; k < 100000; ++k) {
        term *= -hx2 / (Real(k) * Real(n + k));
        sum += term;
        Real a = abs(term);
        if (a > peak)
            peak = a;
        if (a < cutoff * (peak > 1 ? peak : Real(1)) && 2 * k > xl)
            break;
    }
    return sum;
}

std::vector<Real> miller_column(const Real& x_in, int m_max, int start, unsigned bits) {
    PrecisionScope scope(bits + 96);
    Real x = at_working_precision(x_in);
    std::vector<Real> y(static_cast<std::size_t>(start) + 2);
    y[static_cast<std::size_t>(start) + 1] = 0;
    y[static_cast<std::size_t>(start)] = pow2(-static_cast<long>(bits));
    for (int m = start; m >= 1; --m)
        y[static_cast<std::size_t>(m - 1)] =
            (2 * m / x) * y[static_cast<std::size_t>(m)] - y[static_cast<std::size_t>(m) + 1];
    Real norm = y[0];
    for (int m = 2; m <= start; m += 2)
        norm += 2 * y[static_cast<std::size_t>(m)];
    std::vector<Real> out(static_cast<std::size_t>(m_max) + 1);
    for (int m = 0; m <= m_max; ++m)
        out[static_cast<std::size_t>(m)] = y[static_cast<std::size_t>(m)] / norm;
    return out;
}

} // namespace

std::vector<Real> bessel_j_column(const Real& x_in, int m_max, unsigned bits) {
    if (x_in < 0)
        throw Error("bessel_j_column: x must be >= 0");
    PrecisionScope scope(bits + 96);
    Real x = at_working_precision(x_in);
    if (x == 0) {
        std::vector<Real> out(static_cast<std::size_t>(m_max) + 1, Real(0));
        out[0] = 1;
        return out;
    }
    Real xc = ceil(x);
    int margin = 24 + static_cast<int>(xc.convert_to<long>()) + static_cast<int>(bits / 6);
    const Real target = pow2(-static_cast<long>(bits) - 8);
    for (int attempt = 0; attempt < 24; ++attempt) {
        auto a = miller_column(x, m_max, m_max + margin, bits);
        auto b = miller_column(x, m_max, m_max + margin + margin / 2 + 8, bits);
        Real worst = 0;
        for (int m = 0; m <= m_max; ++m) {
            Real denom = abs(b[static_cast<std::size_t>(m)]);
            if (denom < target)
                denom = 1;
            Real rel = abs(a[static_cast<std::size_t>(m)] - b[static_cast<std::size_t>(m)]) / denom;
            if (rel > worst)
                worst = rel;
        }
        if (worst < target)
            return b;
        margin *= 2;
    }
    throw PrecisionError("bessel_j_column: backward recurrence failed to stabilize");
}

Real bessel_j(long n, const Real& x_in, unsigned bits) {
    PrecisionScope scope(bits + 96);
    Real x = at_working_precision(x_in);
    Real ax = abs(x);
    long an = n < 0 ? -n : n;
    int sign = 1;
    if (n < 0 && (an % 2))
        sign = -sign; // J_{-n} = (-1)^n J_n
    if (x < 0 && (an % 2))
        sign = -sign; // J_n(-x) = (-1)^n J_n(x)
    Real val;
    if (ax == 0) {
        val = an == 0 ? Real(1) : Real(0);
    } else if (ax <= Real(2 * an)) {
        val = bessel_series(an, ax, bits);
    } else {
        val = bessel_j_column(ax, static_cast<int>(an), bits)[static_cast<std::size_t>(an)];
    }
    return sign < 0 ? Real(-val) : val;
}

GBFResult gbf(const GBFSpec& spec) {
    if (spec.big_n < 1 || spec.xis.size() != static_cast<std::size_t>(spec.big_n))
        throw Error("gbf: need exactly N xi values");
    if (spec.n_min > spec.n_max)
        throw Error("gbf: empty order range");
    PrecisionScope scope(spec.bits + 96);
    const Real tau = pow2(-static_cast<long>(spec.bits) - 16);

    GBFResult result;
    result.truncation_bound = 0;

    // One-sided factor data: J_0..J_{Jmax}(2|xi|) per factor, placed at
    // orders k*j with the parity signs for negative order and argument.
    struct Factor {
        int k;
        int jmax;
        std::vector<Real> col;
        bool neg;
        Real neglected; // sum_{j>jmax} |xi|^j/j! * e^{|xi|}
        Real l1;        // sum over kept orders of |value|
    };
    std::vector<Factor> factors;
    for (int k = 1; k <= spec.big_n; ++k) {
        Real xi = at_working_precision(spec.xis[static_cast<std::size_t>(k - 1)]);
        Factor f;
        f.k = k;
        f.neg = xi < 0;
        Real axi = abs(xi);
        if (axi == 0) {
            f.jmax = 0;
            f.col = {Real(1)};
            f.neglected = 0;
            f.l1 = 1;
            factors.push_back(std::move(f));
            continue;
        }
        // |J_j(2 xi)| <= |xi|^j / j!
        Real bound = axi; // j = 1
        int j = 1;
        const int cap = 100000;
        while (bound > tau) {
            ++j;
            bound *= axi / j;
            if (j > cap)
                throw TruncationNotCertified("gbf: Bessel truncation bound did not certify");
        }
        f.jmax = j;
        f.col = bessel_j_column(2 * axi, f.jmax, spec.bits + 16);
        f.neglected = bound * axi / (j + 1) * exp(axi);
        f.l1 = abs(f.col[0]);
        for (int m = 1; m <= f.jmax; ++m)
            f.l1 += 2 * abs(f.col[static_cast<std::size_t>(m)]);
        factors.push_back(std::move(f));
    }

    // value of factor k at integer order m
    auto factor_at = [](const Factor& f, long m) -> Real {
        if (m % f.k != 0)
            return Real(0);
        long j = m / f.k;
        long aj = j < 0 ? -j : j;
        if (aj > f.jmax)
            return Real(0);
        Real val = f.col[static_cast<std::size_t>(aj)];
        int sign = 1;
        if (j < 0 && (aj % 2))
            sign = -sign; // negative order
        if (f.neg && (aj % 2))
            sign = -sign; // negative argument
        return sign < 0 ? Real(-val) : val;
    };

    // iterated convolution over the finite joint support
    std::map<long, Real> acc{{0, Real(1)}};
    for (const auto& f : factors) {
        std::map<long, Real> next;
        long reach = static_cast<long>(f.k) * f.jmax;
        for (const auto& [m, val] : acc) {
            if (val == 0)
                continue;
            for (long d = -reach; d <= reach; d += f.k) {
                Real fv = factor_at(f, d);
                if (fv == 0)
                    continue;
                next[m + d] += val * fv;
            }
        }
        acc = std::move(next);
    }
    result.values = std::move(acc);

    for (std::size_t k = 0; k < factors.size(); ++k) {
        Real others = 1;
        for (std::size_t i = 0; i < factors.size(); ++i)
            if (i != k)
                others *= factors[i].l1;
        result.truncation_bound += factors[k].neglected * others;
    }
    for (const auto& f : factors)
        result.orders.push_back(f.jmax);
    return result;
}

Real gbf_quadrature_oracle(const GBFSpec& spec, long n, int nodes) {
    if (nodes < 4)
        throw Error("gbf_quadrature_oracle: nodes must be >= 4");
    PrecisionScope scope(spec.bits + 64);
    const Real two_pi = 2 * pi_value();
    Real sum = 0;
    for (int m = 0; m < nodes; ++m) {
        Real beta = two_pi * m / nodes;
        Real phase = -Real(n) * beta;
        for (int k = 1; k <= spec.big_n; ++k)
            phase += 2 * at_working_precision(spec.xis[static_cast<std::size_t>(k - 1)]) *
                     sin(Real(k) * beta);
        sum += cos(phase);
    }
    return sum / nodes;
}

std::vector<AsymptoticsRow> compare_asymptotics(const OPUCSequence& x) {
    const SymbolParams& p = x.params;
    PrecisionScope scope(p.precision_bits + kGuardBits);

    GBFSpec spec;
    spec.big_n = static_cast<int>(p.big_n);
    spec.bits = p.precision_bits;
    spec.n_min = 0;
    spec.n_max = x.n_max();
    for (unsigned i = 1; i <= p.big_n; ++i) {
        Real xi = p.thetas[i - 1] / Real(i);
        spec.xis.push_back(i % 2 ? xi : Real(-xi));
    }
    GBFResult g = gbf(spec);

    Real max_abs_x = 0;
    for (int n = 1; n <= x.n_max(); ++n)
        max_abs_x = std::max(max_abs_x, Real(abs(x.x[static_cast<std::size_t>(n)])));
    const Real regime_cut = Real("0.05") * max_abs_x;
    const Real tiny = pow2(-static_cast<long>(p.precision_bits) * 3 / 4);

    std::vector<AsymptoticsRow> rows;
    for (int n = 0; n <= x.n_max(); ++n) {
        AsymptoticsRow row;
        row.n = n;
        row.x_n = x.x[static_cast<std::size_t>(n)];
        auto it = g.values.find(n);
        Real pred = it == g.values.end() ? Real(0) : it->second;
        if (n % 2)
            pred = -pred;
        row.prediction = pred;
        row.difference = row.x_n - pred;
        row.ratio = abs(pred) > tiny ? Real(row.x_n / pred) : Real(0);
        row.asymptotic_regime = n >= 1 && abs(row.difference) < regime_cut;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string asymptotics_csv(const std::vector<AsymptoticsRow>& rows, unsigned bits) {
    std::ostringstream os;
    os << "n,x_n,prediction,difference,ratio,asymptotic_regime\n";
    for (const auto& r : rows) {
        os << r.n << "," << to_decimal(r.x_n, bits) << "," << to_decimal(r.prediction, bits)
           << "," << to_decimal(r.difference, bits) << "," << to_decimal(r.ratio, bits) << ","
           << (r.asymptotic_regime ? 1 : 0) << "\n";
    }
    return os.str();
}

} // namespace dpii::asym
