#pragma once

#include "dpii/shiftpoly.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace dpii::cont {

using sym::Rational;

/// Monomial in t and the derivatives u, u', u'', ... with an integer (Laurent)
/// power of the formal small parameter eps, where eps^{2N+1} = d/theta.
class SeriesMonomial {
public:
    struct DerivPower {
        int order = 0; // 0 = u itself
        int pow = 0;
        friend bool operator==(const DerivPower&, const DerivPower&) = default;
    };

    SeriesMonomial() = default;
    static SeriesMonomial eps(int pow);
    static SeriesMonomial t(int pow);
    static SeriesMonomial u_deriv(int order, int pow = 1);

    int eps_pow() const { return eps_pow_; }
    int t_pow() const { return t_pow_; }
    const std::vector<DerivPower>& derivs() const { return derivs_; }
    int u_degree() const;

    SeriesMonomial operator*(const SeriesMonomial& other) const;
    SeriesMonomial without_eps() const;

    bool operator==(const SeriesMonomial&) const = default;
    std::strong_ordering operator<=>(const SeriesMonomial& other) const;

private:
    std::vector<DerivPower> derivs_; // sorted by order, pow >= 1
    int t_pow_ = 0;
    int eps_pow_ = 0;
};

/// Exact polynomial in the above monomials.
class FormalSeries {
public:
    using TermMap = std::map<SeriesMonomial, Rational>;

    FormalSeries() = default;
    explicit FormalSeries(const Rational& c) { add_term(SeriesMonomial{}, c); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const SeriesMonomial& m, const Rational& c);
    FormalSeries operator+(const FormalSeries&) const;
    FormalSeries operator-(const FormalSeries&) const;
    /// Product with all eps powers above `eps_cap` discarded.
    FormalSeries multiply_truncated(const FormalSeries&, int eps_cap) const;
    FormalSeries operator*(const Rational&) const;
    bool operator==(const FormalSeries&) const = default;

    Rational coefficient(const SeriesMonomial& m) const;
    /// The sub-polynomial carrying exactly eps^k (with the eps factor
    /// removed).
    FormalSeries eps_slice(int k) const;
    int eps_min() const;

private:
    TermMap terms_;
};

struct CancellationEntry {
    int eps_power = 0;
    std::string theta_power; // e.g. "theta^(4/5)"
    bool zero = true;
};

struct ContinuumLimit {
    int big_n = 0;
    Rational b;               // (N+1)/N
    Rational d;               // binomial(2N, N-1)
    FormalSeries ode;         // normalized so the t*u coefficient is +1
    Rational normalization;   // factor divided out of the raw eps^0 slice
    std::vector<CancellationEntry> cancellations; // one per order below eps^0
};

/// Substitutes the scaling n = b theta + t (theta/d)^{1/(2N+1)},
/// theta_i = c_i theta, x_{n+K} = (-1)^{n+K} eps u(t + K eps) into the N-th
/// hierarchy equation, expands in eps, certifies every order below eps^0
/// cancels, and returns the eps^0 coefficient: the N-th continuous equation.
/// Throws LeadingOrderNonzero when a sub-leading order fails to cancel.
ContinuumLimit continuum_limit(int big_n);

/// The per-order ledger alone.
std::vector<CancellationEntry> cancellation_report(int big_n);

std::string ode_text(const FormalSeries& s);
std::string ode_latex(const FormalSeries& s);
std::string cancellation_json(const ContinuumLimit& limit);

} // namespace dpii::cont
