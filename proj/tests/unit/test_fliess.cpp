#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "cfs/fliess.hpp"

using namespace cfs;

namespace {

Word W(const char* tok) { return Word::parse(tok); }
LyndonMonomial M(const char* tok) { return LyndonMonomial::parse(tok); }

Signal sine_signal(double dt, double tmax = 1.0) {
    return sample_signal(0.0, dt, static_cast<std::size_t>(std::lround(tmax / dt)) + 1,
                         {[](double t) { return 4.0 * std::sin(16.0 * t); }});
}

Poly random_series(std::mt19937_64& rng, int max_deg) {
    // proper, coefficients in [-2, 2], about half of the words present
    Poly p;
    for (int k = 1; k <= max_deg; ++k) {
        const Poly level = char_of_level(Alphabet(1), k);
        for (const auto& [w, c] : level.terms()) {
            if (rng() % 2 == 0) continue;
            const long num = static_cast<long>(rng() % 41) - 20;
            p.add_term(w, rational(num, 10));
        }
    }
    return p;
}

}  // namespace

TEST_CASE("alg1 on simple series") {
    Signal s = sine_signal(1e-3);
    {
        EvalResult r = evaluate_alg1(make_series(Poly::monomial(W("x0")), 1), s);
        for (std::size_t j = 0; j < s.points(); ++j)
            CHECK(r.y[j] == doctest::Approx(s.t(j)).epsilon(1e-12));
    }
    {
        EvalResult r = evaluate_alg1(make_series(Poly{}, 3), s);
        CHECK(r.integral_count == 0);
        for (double v : r.y) CHECK(v == 0.0);
    }
    // chen backend tables the whole level set
    CHECK(evaluate_alg1(make_series(char_of_level(Alphabet(1), 3), 3), s).integral_count == 14);
    // direct backend only tables the suffix closure of the support
    CHECK(evaluate_alg1(make_series(Poly::monomial(W("x0")), 3), s, Backend::direct)
              .integral_count == 1);
}

TEST_CASE("alg2 integral counts follow J_L") {
    Signal s = sine_signal(1e-3);
    {
        EvalResult r = evaluate_alg2(make_series(Poly::monomial(W("x1x0")), 2), s);
        CHECK(r.integral_count == 3);  // x0, x1, x0x1
    }
    {
        EvalResult r1 = evaluate_alg1(make_series(Poly::monomial(W("x0")), 1), s);
        EvalResult r2 = evaluate_alg2(make_series(Poly::monomial(W("x0")), 1), s);
        CHECK(r2.integral_count == 1);
        for (std::size_t j = 0; j < s.points(); ++j)
            CHECK(r2.y[j] == doctest::Approx(r1.y[j]).epsilon(1e-12));
    }
    // char(X^3) in Lyndon coordinates needs only the two letters
    CHECK(evaluate_alg2(make_series(char_of_level(Alphabet(1), 3), 3), s).integral_count == 2);
}

TEST_CASE("alg1 and alg2 agree on char(X^3) with the sine input") {
    Signal s = sine_signal(1e-4);
    GeneratingSeries c = make_series(char_of_level(Alphabet(1), 3), 3);
    EvalResult r1 = evaluate_alg1(c, s, Backend::direct);
    EvalResult r2 = evaluate_alg2(c, s);
    double worst = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < s.points(); ++j) {
        worst = std::max(worst, std::abs(r1.y[j] - r2.y[j]));
        scale = std::max(scale, std::abs(r1.y[j]));
    }
    CHECK(worst <= 1e-6 * (1.0 + scale));
}

TEST_CASE("alg1 and alg2 agree on seeded random series") {
    Signal s = sine_signal(1e-4);
    std::mt19937_64 rng(0x5EED);
    for (int trial = 0; trial < 3; ++trial) {
        GeneratingSeries c = make_series(random_series(rng, 5), 5);
        EvalResult r1 = evaluate_alg1(c, s, Backend::direct);
        EvalResult r2 = evaluate_alg2(c, s);
        double worst = 0.0, scale = 0.0;
        for (std::size_t j = 0; j < s.points(); ++j) {
            worst = std::max(worst, std::abs(r1.y[j] - r2.y[j]));
            scale = std::max(scale, std::abs(r1.y[j]));
        }
        CHECK(worst <= 1e-6 * (1.0 + scale));
    }
}

TEST_CASE("alg2 never needs more integrals on full-support series") {
    Signal s = sample_signal(0.0, 0.1, 11, {[](double t) { return std::sin(t); }});
    std::mt19937_64 rng(99);
    for (int n = 3; n <= 6; ++n) {
        Poly p;
        for (int k = 1; k <= n; ++k) {
            const Poly level = char_of_level(Alphabet(1), k);
            for (const auto& [w, c] : level.terms())
                p.add_term(w, rational(1 + static_cast<long>(rng() % 7), 3));
        }
        GeneratingSeries series = make_series(p, n);
        EvalResult r1 = evaluate_alg1(series, s);  // chen: I_X(n)
        EvalResult r2 = evaluate_alg2(series, s);
        CHECK(static_cast<long long>(r1.integral_count) == cost_IX(n, 2));
        CHECK(r2.integral_count <= r1.integral_count);
        CHECK(r2.integral_count < r1.integral_count);  // strict for card 2, n >= 3
    }
}

TEST_CASE("nonproper series add their constant term") {
    Signal s = sine_signal(1e-3);
    Poly p;
    p.add_term(W("e"), rational(2));
    p.add_term(W("x0"), rational(1));
    for (const auto* result : {"alg1", "alg2"}) {
        EvalResult r = std::string(result) == "alg1"
                           ? evaluate_alg1(make_series(p, 1), s, Backend::direct)
                           : evaluate_alg2(make_series(p, 1), s);
        for (std::size_t j = 0; j < s.points(); ++j)
            CHECK(r.y[j] == doctest::Approx(2.0 + s.t(j)).epsilon(1e-12));
    }
}

TEST_CASE("alphabet mismatch is an error") {
    Signal s = sine_signal(1e-2);
    CHECK_THROWS_AS(evaluate_alg1(make_series(Poly::monomial(W("x2")), 1), s),
                    std::invalid_argument);
    CHECK_THROWS_AS(evaluate_alg2(make_series(Poly::monomial(W("x2")), 1), s),
                    std::invalid_argument);
}

TEST_CASE("worst-case integral counts") {
    CHECK(cost_IX(3, 2) == 14);
    CHECK(cost_IX(1, 5) == 5);
    CHECK(cost_IX(4, 2) == 30);
    CHECK(cost_IX(4, 1) == 4);

    CHECK(cost_IL(5, 2) == 20);
    CHECK(cost_IL(9, 2) == 222);
    CHECK(cost_IL(1, 3) == 3);
    const long long expect14[] = {2, 3, 6, 10, 20, 33, 66, 116, 222, 406, 778, 1442, 2762, 5203};
    for (int n = 1; n <= 14; ++n) CHECK(cost_IL(n, 2) == expect14[n - 1]);
}

TEST_CASE("I_L reference sequence holds through n = 20") {
    const long long expect[] = {2,    3,    6,    10,   20,   33,   66,    116,   222,   406,
                                778,  1442, 2762, 5203, 9952, 18941, 36348, 69575, 133930, 257646};
    for (int n = 15; n <= 20; ++n) CHECK(cost_IL(n, 2) == expect[n - 1]);
    CHECK_THROWS_AS(cost_IL(14, 4), std::invalid_argument);  // desk-scale guard
}

TEST_CASE("minimum integral counts for specific polynomials") {
    Poly p;
    p.add_term(W("x1"), 1);
    p.add_term(W("x1x1"), 1);
    CHECK(count_JX(p) == 2);

    LPoly q3;  // (l_0 + l_1)^3 support
    q3.add_term(M("x0|x0|x0"), 1);
    q3.add_term(M("x1|x0|x0"), 1);
    q3.add_term(M("x1|x1|x0"), 1);
    q3.add_term(M("x1|x1|x1"), 1);
    CHECK(count_JL(q3) == 2);

    LPoly q2;
    q2.add_term(M("x0x1"), rational(-1));
    q2.add_term(M("x1|x0"), 1);
    CHECK(count_JL(q2) == 3);
}

TEST_CASE("efficiency reports") {
    {
        CostReport r = efficiency(3, 2);
        REQUIRE(r.CE);
        CHECK(*r.CE == rational(4, 7));
        CHECK(*r.I_L == 6);
    }
    {
        CostReport r = efficiency(4, 1);  // single letter: CE(n) = 1 - 1/n
        REQUIRE(r.CE);
        CHECK(*r.CE == rational(3, 4));
    }
    CHECK(efficiency(9, 2).CE_hat_plus == rational(8, 9));
    {
        CostReport r = efficiency(12, 2, /*bounds_only=*/true);
        CHECK_FALSE(r.I_L);
        CHECK_FALSE(r.CE);
        CHECK(r.CE_plus == (Rational(8190 - 747) / 8190));
    }
}

TEST_CASE("bound sandwich for n <= 14") {
    for (int n = 1; n <= 14; ++n) {
        CostReport r = efficiency(n, 2);
        REQUIRE(r.CE);
        CHECK(r.CE_minus <= *r.CE);
        CHECK(*r.CE <= r.CE_plus);
        // the bound behind the sandwich: L_+(n) <= I_L(n) <= n L(n) + 1
        CHECK(Rational(count_upto(n, 2)) <= Rational(static_cast<long>(*r.I_L)));
        CHECK(Rational(static_cast<long>(*r.I_L)) <= Rational(count_length(n, 2)) * n + 1);
    }
}

TEST_CASE("cost CSV emission") {
    std::ostringstream os;
    write_cost_csv(os, {efficiency(3, 2)}, /*exact=*/true);
    CHECK(os.str() ==
          "n,card,I_X,I_L,CE,CE_minus,CE_plus,CE_hat_minus,CE_hat_plus\n"
          "3,2,14,6,4/7,1/2,9/14,1/2,2/3\n");
}
