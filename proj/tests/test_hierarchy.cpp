#include "doctest.h"

#include "dpii/hierarchy.hpp"

using namespace dpii;
using namespace dpii::hier;

using SP = sym::ShiftPolynomial;

namespace {
SP x(int j, int p = 1) { return SP::x(j, p); }
SP v(int j) { return SP::v(j); }
SP th(int k) { return SP::theta(k); }
SP nn() { return SP::n(); }

SP golden_equation(int big_n) {
    SP e = nn() * x(0);
    SP sum1 = x(1) + x(-1);
    if (big_n >= 1)
        e += th(1) * v(0) * sum1;
    if (big_n >= 2)
        e += th(2) * v(0) * (x(2) * v(1) + x(-2) * v(-1) - x(0) * sum1 * sum1);
    if (big_n >= 3) {
        e += th(3) * v(0) *
             (x(0, 2) * sum1 * sum1 * sum1 + x(3) * v(2) * v(1) + x(-3) * v(-2) * v(-1));
        e += th(3) * v(0) *
             (SP(-2) * x(0) * sum1 * (x(2) * v(1) + x(-2) * v(-1)) - x(-1) * x(-2, 2) * v(-1));
        e += th(3) * v(0) * (-(x(1) * x(2, 2) * v(1)) - x(1) * x(-1) * sum1);
    }
    return e;
}

} // namespace

TEST_CASE("recursion operator examples") {
    // first application with constant -theta_1/2 (the N=1 chain)
    CHECK(scalar_l(SP(0), th(1) * Rational(-1, 2)) == -(th(1) * x(1)));
    // second application in the N=2 chain
    SP t3 = scalar_l(-(th(2) * x(1)), th(1) * Rational(-1, 2));
    CHECK(t3 == th(2) * (x(0) * x(1, 2) - v(1) * x(2)) - th(1) * x(1));
}

TEST_CASE("golden equations N = 1, 2, 3") {
    for (int big_n : {1, 2, 3}) {
        CAPTURE(big_n);
        HierarchyEquation eq = generate_equation(big_n);
        CHECK(eq.lhs == golden_equation(big_n));
        CHECK(eq.t_chain.size() == static_cast<std::size_t>(big_n) + 1);
        CHECK(eq.t_chain[0].is_zero());
    }
}

TEST_CASE("structural invariants up to N = 4") {
    for (int big_n : {1, 2, 3, 4}) {
        CAPTURE(big_n);
        HierarchyEquation eq = generate_equation(big_n);
        // order 2N: window exactly [-N, N]
        CHECK(eq.lhs.window_min() == -big_n);
        CHECK(eq.lhs.window_max() == big_n);
        // reflection invariance
        CHECK(sym::perm(eq.lhs) == eq.lhs);
    }
}

TEST_CASE("linearization: degree >= 2 terms dropped leave the linear lattice") {
    for (int big_n : {2, 3}) {
        CAPTURE(big_n);
        HierarchyEquation eq = generate_equation(big_n);
        SP linear = eq.lhs.drop_x_degree_at_least(2);
        SP expect = nn() * x(0);
        for (int k = 1; k <= big_n; ++k)
            expect += th(k) * (x(k) + x(-k));
        CHECK(linear == expect);
    }
}

TEST_CASE("degeneration: theta_N = 0 reduces to the previous equation") {
    for (int big_n : {2, 3}) {
        CAPTURE(big_n);
        SP reduced = generate_equation(big_n).lhs.substitute_theta_zero(big_n);
        CHECK(reduced == generate_equation(big_n - 1).lhs);
    }
}

TEST_CASE("scalar and matrix routes agree") {
    for (int big_n : {1, 2, 3}) {
        CAPTURE(big_n);
        ConsistencyReport rep = equation_consistency(big_n);
        CHECK(rep.sign == 1);
    }
}

TEST_CASE("residual trace") {
    SUBCASE("zero thetas vanish identically") {
        auto p = SymbolParams::from_strings(1, {"0"}, 128);
        auto t = fourier_table(p, 14);
        auto xs = szego_sequence(t, 13);
        HierarchyEquation eq = generate_equation(1);
        auto res = residual_trace(eq, xs, 1, 12);
        for (const auto& r : res)
            CHECK(r == 0);
    }
    SUBCASE("window underflow") {
        auto p = SymbolParams::from_strings(2, {"1", "1"}, 128);
        auto t = fourier_table(p, 12);
        auto xs = szego_sequence(t, 11);
        HierarchyEquation eq = generate_equation(2);
        CHECK_THROWS_AS((void)residual_trace(eq, xs, 1, 8), WindowUnderflow);
        CHECK_THROWS_AS((void)residual_trace(eq, xs, 2, 40), Error);
    }
    SUBCASE("round-off level on Toeplitz data") {
        auto p = SymbolParams::from_strings(2, {"3", "1.2"}, 256);
        auto t = fourier_table(p, 34);
        auto xs = szego_sequence(t, 33);
        HierarchyEquation eq = generate_equation(2);
        auto res = residual_trace(eq, xs, 2, 30);
        Real worst = 0;
        for (const auto& r : res)
            worst = std::max(worst, r);
        CHECK(worst < Real("1e-30"));
    }
}

TEST_CASE("residual csv shape") {
    auto p = SymbolParams::from_strings(1, {"3"}, 128);
    auto t = fourier_table(p, 12);
    auto xs = szego_sequence(t, 11);
    HierarchyEquation eq = generate_equation(1);
    std::string csv = residual_csv(eq, xs, 1, 10);
    CHECK(csv.rfind("n,residual\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);
}
