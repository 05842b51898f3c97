#pragma once

#include "dpii/opuc.hpp"
#include "dpii/precision.hpp"

#include <map>
#include <string>
#include <vector>

namespace dpii::asym {

/// Bessel function of the first kind, integer order, arbitrary precision.
/// Series below the |x| <= 2n crossover, Miller backward recurrence with
/// series normalization above it. J_{-n}(x) = (-1)^n J_n(x).
Real bessel_j(long n, const Real& x, unsigned bits);

/// J_0(x)..J_{m_max}(x) in one backward pass (x >= 0).
std::vector<Real> bessel_j_column(const Real& x, int m_max, unsigned bits);

/// Multivariable generalized Bessel function: the N-fold discrete convolution
/// of the coefficient sequences j^{(k)}, where j^{(k)} places J_{m/k}(2 xi_k)
/// at orders m divisible by k and zero elsewhere.
struct GBFSpec {
    int big_n = 1;
    std::vector<Real> xis;
    long n_min = 0;
    long n_max = 0;
    unsigned bits = 256;
};

struct GBFResult {
    std::map<long, Real> values; // full computed support
    Real truncation_bound;       // certified bound on the dropped mass
    std::vector<int> orders;     // Bessel truncation order per factor
};

GBFResult gbf(const GBFSpec& spec);

/// Independent check: n-th Fourier coefficient of the product symbol
/// prod_k exp(2 i xi_k sin(k beta)) by trapezoidal quadrature.
Real gbf_quadrature_oracle(const GBFSpec& spec, long n, int nodes);

/// Comparison of x_n against the conjectured large-n profile
/// (-1)^n J_n^{(N)} evaluated at xi_i = (-1)^{i+1} theta_i / i.
struct AsymptoticsRow {
    int n = 0;
    Real x_n;
    Real prediction;
    Real difference;
    Real ratio;
    bool asymptotic_regime = false;
};

std::vector<AsymptoticsRow> compare_asymptotics(const OPUCSequence& x);

/// CSV: n, x_n, prediction, difference, ratio, asymptotic_regime.
std::string asymptotics_csv(const std::vector<AsymptoticsRow>& rows, unsigned bits);

} // namespace dpii::asym
