#include "dpii/symbol.hpp"

#include <cmath>
#include <sstream>

namespace dpii {

SymbolParams::SymbolParams(unsigned n, std::vector<Real> th, unsigned bits)
    : big_n(n), thetas(std::move(th)), precision_bits(bits) {
    if (big_n < 1)
        throw Error("SymbolParams: N must be >= 1");
    if (thetas.size() != big_n)
        throw Error("SymbolParams: expected exactly N theta values");
    if (precision_bits < 64)
        throw Error("SymbolParams: precision_bits must be >= 64");
    PrecisionScope scope(precision_bits + kGuardBits);
    for (auto& t : thetas)
        t = at_working_precision(t);
}

SymbolParams SymbolParams::from_strings(unsigned n, const std::vector<std::string>& th,
                                        unsigned bits) {
    PrecisionScope scope(bits + kGuardBits);
    std::vector<Real> vals;
    vals.reserve(th.size());
    for (const auto& s : th)
        vals.emplace_back(s);
    return SymbolParams(n, std::move(vals), bits);
}

SymbolParams SymbolParams::sign_alternated() const {
    PrecisionScope scope(precision_bits + kGuardBits);
    std::vector<Real> th = thetas;
    for (std::size_t i = 1; i < th.size(); i += 2)
        th[i] = -th[i];
    return SymbolParams(big_n, std::move(th), precision_bits);
}

Real SymbolParams::theta_abs_sum() const {
    PrecisionScope scope(precision_bits + kGuardBits);
    Real s = 0;
    for (const auto& t : thetas)
        s += abs(t);
    return s;
}

Real SymbolParams::z_constant() const {
    PrecisionScope scope(precision_bits + kGuardBits);
    Real s = 0;
    for (std::size_t j = 0; j < thetas.size(); ++j)
        s += thetas[j] * thetas[j] / Real(j + 1);
    return exp(s);
}

std::vector<Real> h_coefficients(const SymbolParams& params, int m_max) {
    if (m_max < 0)
        throw Error("h_coefficients: m_max must be >= 0");
    PrecisionScope scope(params.precision_bits + kGuardBits);
    std::vector<Real> h(static_cast<std::size_t>(m_max) + 1);
    h[0] = 1;
    for (int k = 1; k <= m_max; ++k) {
        Real s = 0;
        int jmax = std::min<int>(params.big_n, k);
        for (int j = 1; j <= jmax; ++j)
            s += params.thetas[j - 1] * h[k - j];
        h[k] = s / Real(k);
    }
    return h;
}

namespace {

// Geometric majorant for the h-coefficients of the |theta| symbol: once
// m > m0 := ceil(2 sum|theta_j|), blocks of N consecutive coefficients halve.
struct HBound {
    int m0 = 0;
    unsigned big_n = 1;
    Real block_max;              // max hhat over (m0-N, m0]
    std::vector<Real> hhat;      // computed prefix

    Real at(int m) const {
        if (m < 0)
            return Real(0);
        if (m <= m0)
            return hhat[static_cast<std::size_t>(m)];
        long j = (m - m0 - 1) / static_cast<long>(big_n) + 1;
        return block_max * pow2(-j);
    }
};

HBound make_hbound(const SymbolParams& params, int upto) {
    SymbolParams abs_params = params;
    for (auto& t : abs_params.thetas)
        t = abs(t);
    HBound b;
    b.big_n = params.big_n;
    Real s2 = ceil(2 * params.theta_abs_sum());
    b.m0 = static_cast<int>(s2.convert_to<long>()) + 1;
    int need = std::max(upto, b.m0 + static_cast<int>(params.big_n));
    b.hhat = h_coefficients(abs_params, need);
    b.block_max = 0;
    for (int m = std::max(0, b.m0 - static_cast<int>(params.big_n) + 1); m <= b.m0; ++m)
        b.block_max = std::max(b.block_max, b.hhat[static_cast<std::size_t>(m)]);
    return b;
}

} // namespace

const Real& FourierTable::phi(int k) const {
    int a = k < 0 ? -k : k;
    if (a > k_max)
        throw Error("FourierTable: coefficient outside covered range");
    return coeffs[static_cast<std::size_t>(a)];
}

std::string FourierTable::to_json() const {
    std::ostringstream os;
    unsigned bits = params.precision_bits;
    os << "{\"N\":" << params.big_n << ",\"thetas\":[";
    for (std::size_t i = 0; i < params.thetas.size(); ++i) {
        if (i)
            os << ",";
        os << "\"" << to_decimal(params.thetas[i], bits) << "\"";
    }
    os << "],\"k_max\":" << k_max << ",\"coeffs\":[";
    for (int k = 0; k <= k_max; ++k) {
        if (k)
            os << ",";
        os << "\"" << to_decimal(coeffs[static_cast<std::size_t>(k)], bits) << "\"";
    }
    os << "],\"tail_bound\":\"" << to_decimal(tail_bound, bits) << "\"}";
    return os.str();
}

FourierTable fourier_table(const SymbolParams& params, int k_max) {
    if (k_max < 0)
        throw Error("fourier_table: k_max must be >= 0");
    PrecisionScope scope(params.precision_bits + kGuardBits);

    FourierTable table{params, k_max, {}, Real(0), {}};

    bool all_zero = true;
    for (const auto& t : params.thetas)
        if (t != 0)
            all_zero = false;
    if (all_zero) {
        table.coeffs.assign(static_cast<std::size_t>(k_max) + 1, Real(0));
        table.coeffs[0] = 1;
        table.h_coeffs = {Real(1)};
        table.tail_bound = 0;
        return table;
    }

    const Real target = pow2(8 - static_cast<long>(params.precision_bits));
    HBound hb = make_hbound(params, k_max + 64);

    int m_trunc = std::max(hb.m0 + static_cast<int>(params.big_n), 32);
    const int cap = 1 << 20;
    while (true) {
        Real inner_tail =
            Real(4 * params.big_n) / 3 * hb.at(m_trunc + 1) * hb.at(m_trunc + 1);
        if (inner_tail <= target)
            break;
        if (m_trunc >= cap)
            throw TailNotCertified("fourier_table: truncation tail stuck above 2^{-bits+8}");
        m_trunc *= 2;
    }

    std::vector<Real> h = h_coefficients(params, m_trunc + k_max);
    table.coeffs.assign(static_cast<std::size_t>(k_max) + 1, Real(0));
    for (int k = 0; k <= k_max; ++k) {
        Real s = 0;
        for (int m = m_trunc; m >= 0; --m) // small terms first
            s += h[static_cast<std::size_t>(m)] * h[static_cast<std::size_t>(m + k)];
        table.coeffs[static_cast<std::size_t>(k)] = s;
    }
    table.h_coeffs.assign(h.begin(), h.begin() + m_trunc + 1);

    // |phi_k| <= (sum_m hhat_m) * sup_{m > k_max} hhat_m
    Real sup_tail = hb.at(std::max(k_max + 1, hb.m0 + 1));
    for (int m = k_max + 1; m <= hb.m0; ++m)
        sup_tail = std::max(sup_tail, hb.at(m));
    Real vhat1 = 0;
    for (std::size_t j = 0; j < params.thetas.size(); ++j)
        vhat1 += abs(params.thetas[j]) / Real(j + 1);
    table.tail_bound = exp(vhat1) * sup_tail;
    return table;
}

Real quadrature_oracle(const SymbolParams& params, int k, int nodes) {
    if (nodes < 2)
        throw Error("quadrature_oracle: nodes must be >= 2");
    PrecisionScope scope(params.precision_bits + kGuardBits);
    const Real two_pi = 2 * pi_value();
    Real sum = 0;
    for (int m = 0; m < nodes; ++m) {
        Real beta = two_pi * m / nodes;
        Real w = 0;
        for (std::size_t j = 0; j < params.thetas.size(); ++j)
            w += 2 * params.thetas[j] / Real(j + 1) * cos(Real(j + 1) * beta);
        sum += exp(w) * cos(Real(k) * beta);
    }
    return sum / nodes;
}

} // namespace dpii
