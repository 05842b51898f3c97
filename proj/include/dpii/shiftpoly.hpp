#pragma once

#include "dpii/errors.hpp"
#include "dpii/precision.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dpii::sym {

using dpii::Rational;

/// One factor x_{n+shift}^pow of a monomial.
struct XPower {
    int shift = 0;
    int pow = 0;
    friend bool operator==(const XPower&, const XPower&) = default;
};

/// One factor theta_index^pow (index is 1-based).
struct ThetaPower {
    int index = 0;
    int pow = 0;
    friend bool operator==(const ThetaPower&, const ThetaPower&) = default;
};

/// A monomial in the shifted variables x_{n+j}, the formal parameters
/// theta_1..theta_N, and the affine symbol n. Factor lists are sorted and
/// carry strictly positive exponents.
class Monomial {
public:
    Monomial() = default;

    static Monomial x(int shift, int pow = 1);
    static Monomial theta(int index, int pow = 1);
    static Monomial n(int pow = 1);

    const std::vector<XPower>& xs() const { return xs_; }
    const std::vector<ThetaPower>& thetas() const { return thetas_; }
    int n_pow() const { return n_pow_; }

    int x_degree() const;
    int theta_degree() const;
    int total_degree() const { return x_degree() + theta_degree() + n_pow_; }

    int min_shift() const; // requires non-empty x part
    int max_shift() const;
    bool has_x() const { return !xs_.empty(); }
    int x_pow_at(int shift) const;
    int theta_pow_at(int index) const;

    Monomial operator*(const Monomial& other) const;
    /// Quotient this / other, or nullopt semantics via NotDivisible.
    bool divides(const Monomial& other) const; // this | other
    Monomial divide_into(const Monomial& numerator) const;

    Monomial shifted_x(int s) const;   // x part only: x_{n+j} -> x_{n+j+s}
    Monomial permuted() const;         // x_{n+j} -> x_{n-j}
    Monomial with_n_pow(int k) const;

    bool operator==(const Monomial& other) const = default;

    /// Canonical graded order: total degree, then x-degree, then n-power,
    /// then exponent-lexicographic on the x part (ascending shifts, larger
    /// exponent first wins), then on the theta part. Admissible, so it is
    /// compatible with multiplication.
    std::strong_ordering operator<=>(const Monomial& other) const;

private:
    std::vector<XPower> xs_;
    std::vector<ThetaPower> thetas_;
    int n_pow_ = 0;

    friend class ShiftPolynomial;
};

/// Exact sparse polynomial over Q in x_{n+j}, theta_i, n.
class ShiftPolynomial {
public:
    using TermMap = std::map<Monomial, Rational>;

    ShiftPolynomial() = default;
    ShiftPolynomial(int value) { add_term(Monomial{}, Rational(value)); }
    explicit ShiftPolynomial(const Rational& value) { add_term(Monomial{}, value); }

    static ShiftPolynomial x(int shift, int pow = 1);
    static ShiftPolynomial theta(int index, int pow = 1);
    static ShiftPolynomial n(int pow = 1);
    /// v_{n+shift} := 1 - x_{n+shift}^2
    static ShiftPolynomial v(int shift);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool has_x() const;
    /// True when the polynomial lies in Q[theta] (no x, no n): the kernel of
    /// the difference operator.
    bool is_delta_constant() const;

    int window_min() const; // min shift over all x factors; 0 if no x part
    int window_max() const;
    int x_degree() const;
    int n_degree() const;
    int theta_pow_max(int index) const;

    Rational coefficient(const Monomial& m) const;

    ShiftPolynomial operator-() const;
    ShiftPolynomial& operator+=(const ShiftPolynomial& other);
    ShiftPolynomial& operator-=(const ShiftPolynomial& other);
    ShiftPolynomial operator+(const ShiftPolynomial& other) const;
    ShiftPolynomial operator-(const ShiftPolynomial& other) const;
    ShiftPolynomial operator*(const ShiftPolynomial& other) const;
    ShiftPolynomial operator*(const Rational& c) const;
    bool operator==(const ShiftPolynomial& other) const { return terms_ == other.terms_; }

    /// Drop every term whose x-degree is >= d (linearization helper).
    ShiftPolynomial drop_x_degree_at_least(int d) const;
    /// Set theta_index := 0 (drops all terms containing it).
    ShiftPolynomial substitute_theta_zero(int index) const;

    void add_term(const Monomial& m, const Rational& c);

private:
    TermMap terms_;
};

/// x_{n+j} -> x_{n+j+s}, n -> n+s, theta fixed.
ShiftPolynomial shift(const ShiftPolynomial& p, int s);

/// Index reflection x_{n+j} -> x_{n-j}; fixes x_n, n, theta. An involution.
ShiftPolynomial perm(const ShiftPolynomial& p);

/// Forward difference: shift(p, 1) - p.
ShiftPolynomial delta(const ShiftPolynomial& p);

/// Discrete antidifference: returns G + constant with delta(G) == p and G
/// containing no Q[theta] component. `constant` must be delta-constant.
/// Throws NotSummable when p is not a difference.
ShiftPolynomial delta_inverse(const ShiftPolynomial& p, const ShiftPolynomial& constant);

/// Exact division; throws NotDivisible on a nonzero remainder.
ShiftPolynomial divide_exact(const ShiftPolynomial& p, const ShiftPolynomial& q);

/// Substitute numeric values. x_values maps the shift j to the value of
/// x_{n+j}. thetas[i-1] is the value of theta_i. Throws MissingValue when a
/// needed shift is absent.
Real eval_numeric(const ShiftPolynomial& p, const std::map<int, Real>& x_values,
                  const std::vector<Real>& thetas, long n_value);

/// As eval_numeric but also returns max |term| for residual scaling.
struct EvalResult {
    Real value;
    Real scale;
};
EvalResult eval_with_scale(const ShiftPolynomial& p, const std::map<int, Real>& x_values,
                           const std::vector<Real>& thetas, long n_value);

/// Canonical single-line rendering, deterministic (terms in ascending
/// canonical order). Variables print as x[n+2], th1, n.
std::string to_text(const ShiftPolynomial& p);

/// LaTeX rendering (x_{n+2}, \theta_1).
std::string to_latex(const ShiftPolynomial& p);

/// Deterministic term-list serialization:
/// [{"coeff":"-3/2","n":1,"thetas":[[1,2]],"x":[[-1,1],[0,2]]}, ...]
std::string to_json_terms(const ShiftPolynomial& p);

} // namespace dpii::sym
