#include "doctest.h"

#include "dpii/shiftpoly.hpp"

#include <random>

using namespace dpii;
using namespace dpii::sym;

using SP = ShiftPolynomial;

namespace {

// Deterministic random polynomial over a small variable box.
SP random_poly(std::mt19937& rng, int max_terms = 6, int shift_range = 2, int max_pow = 2) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> shift(-shift_range, shift_range);
    std::uniform_int_distribution<int> pw(1, max_pow);
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_int_distribution<int> nfac(0, 2);
    std::uniform_int_distribution<int> thfac(0, 2);
    SP p;
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        Monomial m;
        int nx = nterms(rng) % 3;
        for (int j = 0; j < nx; ++j)
            m = m * Monomial::x(shift(rng), pw(rng));
        if (thfac(rng) == 0)
            m = m * Monomial::theta(1 + (pw(rng) % 2), pw(rng));
        m = m * Monomial::n(nfac(rng));
        int c = coeff(rng);
        if (c != 0)
            p.add_term(m, Rational(c, den(rng)));
    }
    return p;
}

} // namespace

TEST_CASE("basic arithmetic and canonical storage") {
    SP p = SP::x(0) + SP::x(1);
    SP q = SP::x(1) + SP::x(0);
    CHECK(p == q);
    CHECK((p - q).is_zero());
    SP z = p * SP(0);
    CHECK(z.is_zero());
    // no zero coefficients stored
    SP r = SP::x(0) - SP::x(0);
    CHECK(r.term_count() == 0);
    // v_n = 1 - x_n^2
    SP vn = SP::v(0);
    CHECK(vn.coefficient(Monomial{}) == 1);
    CHECK(vn.coefficient(Monomial::x(0, 2)) == -1);
}

TEST_CASE("shift operator") {
    // shift(x_n, 1) = x_{n+1}
    CHECK(shift(SP::x(0), 1) == SP::x(1));
    // shift(n*x_{n-1}, 1) = (n+1)*x_n
    SP p = SP::n() * SP::x(-1);
    SP expect = (SP::n() + SP(1)) * SP::x(0);
    CHECK(shift(p, 1) == expect);
    // inverse pair on random polynomials
    std::mt19937 rng(12345);
    for (int i = 0; i < 50; ++i) {
        SP r = random_poly(rng);
        CHECK(shift(shift(r, 1), -1) == r);
        CHECK(shift(shift(r, -3), 3) == r);
    }
}

TEST_CASE("perm operator") {
    // perm(x_{n+1} x_n^2) = x_{n-1} x_n^2
    SP p = SP::x(1) * SP::x(0, 2);
    CHECK(perm(p) == SP::x(-1) * SP::x(0, 2));
    // perm fixes v_n
    CHECK(perm(SP::v(0)) == SP::v(0));
    // involution, and commutes with multiplication
    std::mt19937 rng(777);
    for (int i = 0; i < 50; ++i) {
        SP a = random_poly(rng);
        SP b = random_poly(rng);
        CHECK(perm(perm(a)) == a);
        CHECK(perm(a * b) == perm(a) * perm(b));
    }
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937 rng(424242);
    for (int i = 0; i < 40; ++i) {
        SP a = random_poly(rng);
        SP b = random_poly(rng);
        SP c = random_poly(rng);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
    }
}

TEST_CASE("delta") {
    CHECK(delta(SP(Rational(7, 2))).is_zero());
    CHECK(delta(SP::theta(1)).is_zero());
    CHECK(delta(SP::n()) == SP(1));
    // delta(x_n x_{n+1}) = x_{n+1}x_{n+2} - x_n x_{n+1}
    SP p = SP::x(0) * SP::x(1);
    CHECK(delta(p) == SP::x(1) * SP::x(2) - SP::x(0) * SP::x(1));
}

TEST_CASE("delta_inverse basics") {
    // delta_inverse(0, c) = c
    SP c = SP::theta(1) * SP(Rational(-1, 2));
    CHECK(delta_inverse(SP(0), c) == c);
    // delta_inverse(1, 0) = n
    CHECK(delta_inverse(SP(1), SP(0)) == SP::n());
    // telescoping product round trip
    SP g = SP::x(0) * SP::x(1) * SP::x(2);
    CHECK(delta_inverse(delta(g), SP(0)) == g);
    // n-polynomial: delta^{-1}(n) = n(n-1)/2
    SP got = delta_inverse(SP::n(), SP(0));
    SP expect = (SP::n(2) - SP::n()) * Rational(1, 2);
    CHECK(got == expect);
    // x_n alone is not a difference
    CHECK_THROWS_AS((void)delta_inverse(SP::x(0), SP(0)), NotSummable);
    // constant argument must be delta-constant
    CHECK_THROWS_AS((void)delta_inverse(SP(0), SP::x(0)), NotSummable);
}

TEST_CASE("delta_inverse round trip on random differences") {
    std::mt19937 rng(99);
    for (int i = 0; i < 200; ++i) {
        SP g = random_poly(rng);
        // normalize: delta_inverse returns the representative without
        // delta-constant component
        SP g_norm;
        for (const auto& [m, coeff] : g.terms())
            if (m.has_x() || m.n_pow() != 0)
                g_norm.add_term(m, coeff);
        SP back = delta_inverse(delta(g_norm), SP(0));
        CHECK(back == g_norm);
        CHECK(delta(back) == delta(g_norm));
    }
}

TEST_CASE("divide_exact") {
    SP p = SP::v(1) * (SP::x(0) * SP::x(2) + SP::theta(2));
    CHECK(divide_exact(p, SP::v(1)) == SP::x(0) * SP::x(2) + SP::theta(2));
    CHECK_THROWS_AS((void)divide_exact(SP::x(0), SP::v(0)), NotDivisible);
    std::mt19937 rng(31);
    for (int i = 0; i < 40; ++i) {
        SP a = random_poly(rng);
        SP b = random_poly(rng);
        if (b.is_zero())
            continue;
        CHECK(divide_exact(a * b, b) == a);
    }
}

TEST_CASE("numeric evaluation") {
    PrecisionScope scope(128);
    std::map<int, Real> xv{{0, Real(0)}};
    // v_n at x_n = 0 is 1
    CHECK(eval_numeric(SP::v(0), xv, {}, 5) == 1);
    // theta constant
    std::vector<Real> th{Real("2.5")};
    CHECK(eval_numeric(SP::theta(1), {}, th, 0) == Real("2.5"));
    // n value and powers
    CHECK(eval_numeric(SP::n(2), {}, {}, 7) == 49);
    // missing value
    CHECK_THROWS_AS((void)eval_numeric(SP::x(3), xv, {}, 0), MissingValue);
    // rational coefficients evaluate exactly
    SP half = SP(Rational(1, 2)) * SP::x(0, 2);
    xv[0] = Real(3);
    CHECK(eval_numeric(half, xv, {}, 0) == Real("4.5"));
}

TEST_CASE("window bookkeeping") {
    SP p = SP::x(-2) * SP::x(1) + SP::x(3);
    CHECK(p.window_min() == -2);
    CHECK(p.window_max() == 3);
    CHECK(p.x_degree() == 2);
}

TEST_CASE("rendering is deterministic and canonical") {
    SP p = SP::n() * SP::x(0) + SP::theta(1) * SP::v(0) * (SP::x(1) + SP::x(-1));
    CHECK(to_text(p) == to_text(p));
    SP q = SP::theta(1) * SP::v(0) * SP::x(-1) + SP::theta(1) * SP::v(0) * SP::x(1) +
           SP::x(0) * SP::n();
    CHECK(to_text(p) == to_text(q));
    CHECK(to_text(SP(0)) == "0");
    // fractions and signs survive the round trip through text
    SP f = SP(Rational(-3, 2)) * SP::x(2, 3);
    CHECK(to_text(f) == "-3/2*x[n+2]^3");
    CHECK(to_latex(SP::theta(2)) == "\\theta_{2}");
    CHECK(to_json_terms(SP::x(1)) == "[{\"coeff\":\"1\",\"n\":0,\"thetas\":[],\"x\":[[1,1]]}]");
}
