#include "doctest.h"

#include "dpii/symbol.hpp"

using namespace dpii;

namespace {

SymbolParams make_params(unsigned n, std::vector<std::string> th, unsigned bits = 256) {
    return SymbolParams::from_strings(n, th, bits);
}

Real factorial(int m) {
    Real f = 1;
    for (int i = 2; i <= m; ++i)
        f *= i;
    return f;
}

} // namespace

TEST_CASE("h coefficients: N=1 is the exponential series") {
    PrecisionScope scope(320);
    auto p = make_params(1, {"0.5"});
    auto h = h_coefficients(p, 6);
    Real t("0.5");
    for (int m = 0; m <= 6; ++m) {
        Real expect = 1;
        for (int i = 1; i <= m; ++i)
            expect *= t / i;
        CHECK(abs(h[m] - expect) < pow2(-300));
    }
}

TEST_CASE("h coefficients: zero thetas") {
    auto p = make_params(3, {"0", "0", "0"});
    auto h = h_coefficients(p, 5);
    CHECK(h[0] == 1);
    for (int m = 1; m <= 5; ++m)
        CHECK(h[m] == 0);
}

TEST_CASE("h coefficients match complex quadrature of exp(v) on the circle") {
    // h_m is the m-th Fourier coefficient of exp(v(e^{i beta})).
    PrecisionScope scope(320);
    auto p = make_params(2, {"3", "1.2"});
    auto h = h_coefficients(p, 8);
    const int nodes = 256;
    Real two_pi = 2 * pi_value();
    for (int m = 0; m <= 8; ++m) {
        Real sum_re = 0;
        for (int q = 0; q < nodes; ++q) {
            Real beta = two_pi * q / nodes;
            // v(e^{i beta}) = a + i b
            Real a = 0, b = 0;
            for (unsigned j = 1; j <= p.big_n; ++j) {
                a += p.thetas[j - 1] / j * cos(j * beta);
                b += p.thetas[j - 1] / j * sin(j * beta);
            }
            // Re(e^{a+ib} e^{-im beta})
            sum_re += exp(a) * cos(b - m * beta);
        }
        sum_re /= nodes;
        CHECK(abs(h[m] - sum_re) < Real("1e-20"));
    }
}

TEST_CASE("fourier table: zero thetas") {
    auto t = fourier_table(make_params(2, {"0", "0"}), 8);
    CHECK(t.phi(0) == 1);
    for (int k = 1; k <= 8; ++k) {
        CHECK(t.phi(k) == 0);
        CHECK(t.phi(-k) == 0);
    }
    CHECK(t.tail_bound == 0);
}

TEST_CASE("fourier table: phi_0 = sum h_m^2 for N=1, theta=3") {
    PrecisionScope scope(320);
    auto p = make_params(1, {"3"});
    auto t = fourier_table(p, 4);
    Real expect = 0;
    for (int m = 0; m < 200; ++m) {
        Real hm = pow(Real(3), m) / factorial(m);
        expect += hm * hm;
    }
    CHECK(abs(t.phi(0) - expect) < Real("1e-60"));
}

TEST_CASE("fourier table agrees with quadrature at 256 bits") {
    auto p = make_params(1, {"3"}, 256);
    auto t = fourier_table(p, 12);
    for (int k : {0, 1, 2, 5, 12}) {
        Real oracle = quadrature_oracle(p, k, 512);
        CHECK(abs(t.phi(k) - oracle) < Real("1e-30"));
        CHECK(abs(t.phi(k) - oracle) < t.tail_bound + pow2(16 - 256));
    }
}

TEST_CASE("quadrature oracle trivial cases") {
    auto p = make_params(1, {"0"});
    CHECK(abs(quadrature_oracle(p, 0, 64) - 1) < pow2(-200));
    CHECK(abs(quadrature_oracle(p, 5, 64)) < pow2(-200));
}

TEST_CASE("symmetry and monotone refinement") {
    auto p = make_params(2, {"3", "1.2"});
    auto t1 = fourier_table(p, 16);
    // symmetry is structural
    for (int k = 1; k <= 16; ++k)
        CHECK(t1.phi(k) == t1.phi(-k));
    // increasing k_max never changes already certified digits and shrinks the
    // tail bound
    auto t2 = fourier_table(p, 32);
    for (int k = 0; k <= 16; ++k)
        CHECK(abs(t1.phi(k) - t2.phi(k)) < pow2(8 - 256) * 4);
    CHECK(t2.tail_bound < t1.tail_bound);
    // increasing precision keeps certified digits
    auto p3 = make_params(2, {"3", "1.2"}, 512);
    auto t3 = fourier_table(p3, 16);
    for (int k = 0; k <= 16; ++k)
        CHECK(abs(t1.phi(k) - t3.phi(k)) < pow2(8 - 256) * 4);
}

TEST_CASE("tail bound really bounds uncovered coefficients") {
    auto p = make_params(2, {"3", "1.2"});
    auto t = fourier_table(p, 10);
    auto big = fourier_table(p, 40);
    for (int k = 11; k <= 40; ++k)
        CHECK(abs(big.phi(k)) <= t.tail_bound);
}

TEST_CASE("json serialization shape") {
    auto p = make_params(1, {"1"}, 64);
    auto t = fourier_table(p, 2);
    std::string js = t.to_json();
    CHECK(js.find("\"N\":1") != std::string::npos);
    CHECK(js.find("\"k_max\":2") != std::string::npos);
    CHECK(js.find("\"coeffs\":[") != std::string::npos);
    CHECK(js.find("\"tail_bound\":\"") != std::string::npos);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(make_params(2, {"1"}), Error);
    CHECK_THROWS_AS(make_params(1, {"1"}, 32), Error);
    CHECK_THROWS_AS((void)h_coefficients(make_params(1, {"1"}), -1), Error);
}
