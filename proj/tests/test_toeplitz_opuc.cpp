#include "doctest.h"

#include "dpii/opuc.hpp"
#include "dpii/toeplitz.hpp"

using namespace dpii;

namespace {

SymbolParams make_params(unsigned n, std::vector<std::string> th, unsigned bits = 256) {
    return SymbolParams::from_strings(n, th, bits);
}

} // namespace

TEST_CASE("determinants: identity symbol") {
    auto p = make_params(2, {"0", "0"});
    auto t = fourier_table(p, 12);
    auto seq = determinant_sequence(t, 10);
    for (int n = 0; n <= 10; ++n)
        CHECK(seq.d(n) == 1);
    CHECK(seq.d(-1) == 1);
}

TEST_CASE("determinants: D_0 = phi_0 and brute-force agreement") {
    auto p = make_params(1, {"3"});
    auto t = fourier_table(p, 12);
    auto seq = determinant_sequence(t, 10);
    CHECK(abs(seq.d(0) - t.phi(0)) == 0);
    PrecisionScope scope(320);
    for (int n = 0; n <= 10; ++n) {
        Real oracle = bareiss_determinant_oracle(t, n);
        CHECK(abs(seq.d(n) - oracle) < Real("1e-20") * abs(oracle));
    }
}

TEST_CASE("determinants positive and ratio in (0,1]") {
    auto p = make_params(3, {"3", "1.2", "2.6"});
    auto t = fourier_table(p, 34);
    auto seq = determinant_sequence(t, 32);
    PrecisionScope scope(320);
    for (int n = 0; n <= 32; ++n)
        CHECK(seq.d(n) > 0);
    for (int n = 1; n <= 32; ++n) {
        Real ratio = exp(seq.log_d(n) + seq.log_d(n - 2) - 2 * seq.log_d(n - 1));
        CHECK(ratio > 0);
        CHECK(ratio <= 1);
    }
}

TEST_CASE("gap probabilities") {
    SUBCASE("zero thetas give probability one") {
        auto p = make_params(2, {"0", "0"});
        auto t = fourier_table(p, 10);
        auto g = gap_probabilities(determinant_sequence(t, 8));
        for (int n = 1; n <= 9; ++n) {
            CHECK(abs(g.q_at(n) - 1) < pow2(-200));
            CHECK(abs(g.r_at(n) - 1) < pow2(-200));
        }
    }
    SUBCASE("N=1: q and r coincide") {
        auto p = make_params(1, {"3"});
        auto t = fourier_table(p, 20);
        auto g = gap_probabilities(determinant_sequence(t, 18));
        PrecisionScope scope(320);
        for (int n = 1; n <= 19; ++n)
            CHECK(abs(g.q_at(n) - g.r_at(n)) < pow2(-250));
    }
    SUBCASE("N=2 monotone and saturating") {
        auto p = make_params(2, {"3", "1.2"});
        auto t = fourier_table(p, 32);
        auto g = gap_probabilities(determinant_sequence(t, 30));
        PrecisionScope scope(320);
        for (int n = 1; n <= 30; ++n) {
            CHECK(g.q_at(n) > 0);
            CHECK(g.q_at(n) <= 1);
            if (n > 1) {
                CHECK(g.q_at(n) >= g.q_at(n - 1));
                CHECK(g.r_at(n) >= g.r_at(n - 1));
            }
        }
        CHECK(abs(g.q_at(30) - 1) < Real("1e-6"));
    }
}

TEST_CASE("szego sequence basics") {
    SUBCASE("Lebesgue measure: x_n = 0, kappa = 1") {
        auto p = make_params(1, {"0"});
        auto t = fourier_table(p, 12);
        auto x = szego_sequence(t, 10);
        CHECK(x.x[0] == 1);
        for (int n = 1; n <= 10; ++n) {
            CHECK(x.x[n] == 0);
            CHECK(x.kappa_sq[n] == 1);
        }
        // pi_n = z^n
        REQUIRE(x.has_pi());
        CHECK(x.pi_coeffs[5][5] == 1);
        for (int k = 0; k < 5; ++k)
            CHECK(x.pi_coeffs[5][k] == 0);
    }
    SUBCASE("monic leading coefficient always 1") {
        auto p = make_params(2, {"3", "1.2"});
        auto t = fourier_table(p, 14);
        auto x = szego_sequence(t, 12);
        for (int n = 0; n <= 12; ++n)
            CHECK(x.pi_coeffs[n][n] == 1);
    }
}

TEST_CASE("cross identities between determinants and OPUC") {
    auto p = make_params(1, {"3"});
    auto t = fourier_table(p, 42);
    auto seq = determinant_sequence(t, 41);
    auto x = szego_sequence(t, 41);
    PrecisionScope scope(320);
    // x_n^2 = 1 - D_n D_{n-2} / D_{n-1}^2 to 1e-30
    for (int n = 1; n <= 40; ++n) {
        Real ratio = seq.d(n) * seq.d(n - 2) / (seq.d(n - 1) * seq.d(n - 1));
        CHECK(abs(x.x[n] * x.x[n] - (1 - ratio)) < Real("1e-30"));
    }
    // kappa_n^2 D_n = D_{n-1}
    for (int n = 0; n <= 40; ++n)
        CHECK(abs(x.kappa_sq[n] * seq.d(n) - seq.d(n - 1)) <
              Real("1e-60") * abs(seq.d(n - 1)));
    // kappa_{n-1}^2/kappa_n^2 = 1 - x_n^2
    for (int n = 1; n <= 40; ++n)
        CHECK(abs(x.kappa_sq[n - 1] / x.kappa_sq[n] - (1 - x.x[n] * x.x[n])) < Real("1e-60"));
    // |x_n| < 1
    for (int n = 1; n <= 41; ++n)
        CHECK(abs(x.x[n]) < 1);
}

TEST_CASE("recursion residual near round-off") {
    for (auto&& [N, th] :
         std::vector<std::pair<unsigned, std::vector<std::string>>>{{1, {"3"}},
                                                                    {3, {"3", "1.2", "2.6"}}}) {
        auto p = make_params(N, th);
        auto t = fourier_table(p, 42);
        auto seq = determinant_sequence(t, 40);
        auto x = szego_sequence(t, 41);
        auto res = recursion_residual(seq, x);
        PrecisionScope scope(320);
        Real worst = 0;
        for (const auto& v : res)
            worst = std::max(worst, v);
        CHECK(worst < Real("1e-30"));
        CHECK(worst < pow2(-128)); // 2^{-bits/2}
    }
}

TEST_CASE("sign check against bordered determinants") {
    SUBCASE("theta = 0 vacuous") {
        auto p = make_params(1, {"0"});
        auto t = fourier_table(p, 14);
        auto seq = determinant_sequence(t, 12);
        auto x = szego_sequence(t, 12);
        auto rep = sign_check(x, seq, t);
        CHECK(rep.n_checked == 12);
        for (int s : rep.oracle_signs)
            CHECK(s == 0);
    }
    SUBCASE("N=1 and N=2 agree with the oracle") {
        for (auto&& [N, th] : std::vector<std::pair<unsigned, std::vector<std::string>>>{
                 {1, {"3"}}, {2, {"3", "1.2"}}}) {
            auto p = make_params(N, th);
            auto t = fourier_table(p, 14);
            auto seq = determinant_sequence(t, 12);
            auto x = szego_sequence(t, 12);
            auto rep = sign_check(x, seq, t, 10);
            CHECK(rep.n_checked == 10);
            CHECK(rep.max_abs_difference < Real("1e-40"));
            for (std::size_t i = 0; i < rep.recursion_signs.size(); ++i)
                CHECK(rep.recursion_signs[i] == rep.oracle_signs[i]);
        }
    }
}

TEST_CASE("certified builder meets the residual contract") {
    auto p = make_params(2, {"3", "1.2"}, 128);
    auto data = build_certified(p, 24);
    auto res = recursion_residual(data.dets, data.opuc);
    Real worst = 0;
    for (const auto& v : res)
        worst = std::max(worst, v);
    CHECK(worst < pow2(-64));
    CHECK(data.bits_used >= 128);
}

TEST_CASE("csv exports") {
    auto p = make_params(1, {"3"}, 128);
    auto t = fourier_table(p, 8);
    auto seq = determinant_sequence(t, 6);
    auto x = szego_sequence(t, 7);
    auto g = gap_probabilities(seq);
    std::string csv = determinants_csv(seq, g, x);
    CHECK(csv.rfind("n,D_n,log_D_n,q_n,r_n,ratio,residual\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 8);
    std::string ocsv = opuc_csv(x);
    CHECK(ocsv.rfind("n,x_n,kappa_sq_n,one_minus_x_n_sq\n", 0) == 0);
    // byte-identical across runs
    CHECK(csv == determinants_csv(seq, g, x));
}

TEST_CASE("error paths") {
    auto p = make_params(1, {"3"});
    auto t = fourier_table(p, 4);
    CHECK_THROWS_AS((void)determinant_sequence(t, 6), Error);
    CHECK_THROWS_AS((void)szego_sequence(t, 4), Error);
}
