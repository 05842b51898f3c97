#include "doctest.h"

#include "dpii/continuum.hpp"

using namespace dpii;
using namespace dpii::cont;

namespace {

SeriesMonomial t_pow(int p) { return SeriesMonomial::t(p); }
SeriesMonomial u(int order = 0, int pow = 1) { return SeriesMonomial::u_deriv(order, pow); }

FormalSeries golden_ode(int big_n) {
    FormalSeries s;
    switch (big_n) {
    case 1:
        // t u + 2 u^3 - u''
        s.add_term(t_pow(1) * u(), Rational(1));
        s.add_term(u(0, 3), Rational(2));
        s.add_term(u(2), Rational(-1));
        break;
    case 2:
        // t u + 6 u^5 - 10 u (u')^2 - 10 u^2 u'' + u''''
        s.add_term(t_pow(1) * u(), Rational(1));
        s.add_term(u(0, 5), Rational(6));
        s.add_term(u(0, 1) * u(1, 2), Rational(-10));
        s.add_term(u(0, 2) * u(2, 1), Rational(-10));
        s.add_term(u(4), Rational(1));
        break;
    case 3:
        // t u + 20 u^7 - 140 u^3 (u')^2 - 70 u^4 u'' + 70 (u')^2 u''
        //     + 42 u (u'')^2 + 56 u u' u''' + 14 u^2 u'''' - u''''''
        s.add_term(t_pow(1) * u(), Rational(1));
        s.add_term(u(0, 7), Rational(20));
        s.add_term(u(0, 3) * u(1, 2), Rational(-140));
        s.add_term(u(0, 4) * u(2, 1), Rational(-70));
        s.add_term(u(1, 2) * u(2, 1), Rational(70));
        s.add_term(u(0, 1) * u(2, 2), Rational(42));
        s.add_term(u(0, 1) * u(1, 1) * u(3, 1), Rational(56));
        s.add_term(u(0, 2) * u(4, 1), Rational(14));
        s.add_term(u(6), Rational(-1));
        break;
    default:
        break;
    }
    return s;
}

} // namespace

TEST_CASE("scaling constants") {
    for (int big_n : {1, 2, 3}) {
        auto lim = continuum_limit(big_n);
        CHECK(lim.b == Rational(big_n + 1, big_n));
    }
    CHECK(continuum_limit(1).d == 1);
    CHECK(continuum_limit(2).d == 4);
    CHECK(continuum_limit(3).d == 15);
}

TEST_CASE("limit equations for N = 1, 2, 3") {
    for (int big_n : {1, 2, 3}) {
        CAPTURE(big_n);
        auto lim = continuum_limit(big_n);
        CHECK(lim.ode == golden_ode(big_n));
        // the raw tu coefficient is already +1 under this scaling
        CHECK(lim.normalization == 1);
    }
}

TEST_CASE("every sub-leading order cancels") {
    for (int big_n : {1, 2, 3}) {
        CAPTURE(big_n);
        auto entries = cancellation_report(big_n);
        CHECK(entries.size() == static_cast<std::size_t>(2 * big_n));
        for (const auto& e : entries) {
            CHECK(e.zero);
            CHECK(e.eps_power < 0);
        }
    }
}

TEST_CASE("order labels follow the fractional theta powers") {
    auto entries = cancellation_report(2);
    // eps^{-4} <-> theta^{4/5}, eps^{-2} <-> theta^{2/5}
    bool saw45 = false, saw25 = false;
    for (const auto& e : entries) {
        if (e.eps_power == -4)
            saw45 = e.theta_power == "theta^(4/5)";
        if (e.eps_power == -2)
            saw25 = e.theta_power == "theta^(2/5)";
    }
    CHECK(saw45);
    CHECK(saw25);
}

TEST_CASE("series algebra sanity") {
    FormalSeries a;
    a.add_term(u(1, 2), Rational(3));
    FormalSeries b;
    b.add_term(SeriesMonomial::eps(2), Rational(1, 2));
    auto prod = a.multiply_truncated(b, 4);
    CHECK(prod.coefficient(u(1, 2) * SeriesMonomial::eps(2)) == Rational(3, 2));
    CHECK(a.multiply_truncated(b, 1).is_zero());
    CHECK((a - a).is_zero());
}

TEST_CASE("rendering") {
    auto lim = continuum_limit(1);
    CHECK(ode_text(lim.ode) == "-u(2) + t*u + 2*u^3");
    CHECK(ode_latex(lim.ode) == "-u'' + t u + 2 u^{3}");
    std::string js = cancellation_json(lim);
    CHECK(js.find("\"N\":1") != std::string::npos);
    CHECK(js.find("\"zero\":true") != std::string::npos);
    CHECK(js.find("\"ode\":\"-u(2) + t*u + 2*u^3\"") != std::string::npos);
}
