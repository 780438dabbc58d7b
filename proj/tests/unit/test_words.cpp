#include <doctest.h>

#include <random>
#include <sstream>

#include "cfs/poly.hpp"

using namespace cfs;

namespace {

Word W(const char* tok) { return Word::parse(tok); }

Poly random_poly(std::mt19937_64& rng, int card, int max_deg, int terms, bool positive = false) {
    Poly p;
    for (int i = 0; i < terms; ++i) {
        const int len = static_cast<int>(rng() % static_cast<std::uint64_t>(max_deg + 1));
        Word w;
        for (int j = 0; j < len; ++j)
            w.letters.push_back(static_cast<Letter>(rng() % static_cast<std::uint64_t>(card)));
        long num = static_cast<long>(rng() % 9) - 4;
        if (positive) num = 1 + static_cast<long>(rng() % 5);
        p.add_term(w, rational(num, 1 + static_cast<long>(rng() % 4)));
    }
    return p;
}

Integer binomial(unsigned long n, unsigned long k) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

}  // namespace

TEST_CASE("concatenation") {
    CHECK(concat(W("x1"), W("x0")) == W("x1x0"));
    CHECK(concat(W("e"), W("x0x1")) == W("x0x1"));
    CHECK(concat(W("x0x1"), W("x1")) == W("x0x1x1"));
    CHECK(concat(W("x0x1"), W("x1")).size() == 3);
}

TEST_CASE("shortlex ordering") {
    CHECK(shortlex_compare(W("x1"), W("x0x1")) < 0);
    CHECK(shortlex_compare(W("x0x1"), W("x1x0")) < 0);
    CHECK(shortlex_compare(W("x0"), W("x0")) == 0);
    // lexicographic: a proper prefix precedes its extensions
    CHECK(lex_compare(W("x0"), W("x0x1")) < 0);
    CHECK(lex_compare(W("x0x1"), W("x1")) < 0);
}

TEST_CASE("shuffle of words") {
    Poly expect;
    expect.add_term(W("x0x1"), 1);
    expect.add_term(W("x1x0"), 1);
    CHECK(shuffle(W("x0"), W("x1")) == expect);

    CHECK(shuffle(W("x1"), W("x1")) == Poly::monomial(W("x1x1"), 2));

    Poly expect2;
    expect2.add_term(W("x0x1x1"), 2);
    expect2.add_term(W("x1x0x1"), 1);
    CHECK(shuffle(W("x1"), W("x0x1")) == expect2);

    // unit of the shuffle product
    CHECK(shuffle(W("e"), W("x0x1")) == Poly::monomial(W("x0x1")));
}

TEST_CASE("shuffle powers") {
    CHECK(shuffle_power(W("x1"), 2) == Poly::monomial(W("x1x1"), 2));
    CHECK(shuffle_power(W("x0"), 3) == Poly::monomial(W("x0x0x0"), 6));
    CHECK(shuffle_power(W("x0x1"), 1) == Poly::monomial(W("x0x1")));
    CHECK(shuffle_power(W("x0x1"), 0) == Poly::monomial(W("e")));
    // x_i^{sh k} = k! x_i^k
    for (int k = 1; k <= 6; ++k) {
        Integer f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
        Word xk{std::vector<Letter>(static_cast<std::size_t>(k), 0)};
        CHECK(shuffle_power(W("x0"), k) == Poly::monomial(xk, Rational(f)));
    }
}

TEST_CASE("characteristic polynomials of level sets") {
    const Alphabet two(1);
    CHECK(char_of_level(two, 0) == Poly::monomial(W("e")));

    Poly lvl1;
    lvl1.add_term(W("x0"), 1);
    lvl1.add_term(W("x1"), 1);
    CHECK(char_of_level(two, 1) == lvl1);

    Poly lvl2;
    for (const char* tok : {"x0x0", "x0x1", "x1x0", "x1x1"}) lvl2.add_term(W(tok), 1);
    CHECK(char_of_level(two, 2) == lvl2);
    CHECK(char_of_level(Alphabet(2), 3).term_count() == 27);
}

TEST_CASE("shuffle is commutative and associative") {
    std::mt19937_64 rng(0xC0FFEE);
    for (int trial = 0; trial < 10; ++trial) {
        const int card = 1 + static_cast<int>(rng() % 2) + 1;  // 2 or 3
        Poly p = random_poly(rng, card, 5, 5);
        Poly q = random_poly(rng, card, 5, 5);
        Poly r = random_poly(rng, card, 3, 3);
        CHECK(shuffle(p, q) == shuffle(q, p));
        CHECK(shuffle(shuffle(p, q), r) == shuffle(p, shuffle(q, r)));
    }
}

TEST_CASE("shuffle is graded") {
    std::mt19937_64 rng(0xBEEF);
    for (int trial = 0; trial < 10; ++trial) {
        const int da = 1 + static_cast<int>(rng() % 3), db = 1 + static_cast<int>(rng() % 3);
        // homogeneous inputs with positive coefficients
        Poly p, q;
        for (int i = 0; i < 3; ++i) {
            Word a, b;
            for (int j = 0; j < da; ++j) a.letters.push_back(static_cast<Letter>(rng() % 2));
            for (int j = 0; j < db; ++j) b.letters.push_back(static_cast<Letter>(rng() % 2));
            p.add_term(a, rational(1 + static_cast<long>(rng() % 3)));
            q.add_term(b, rational(1 + static_cast<long>(rng() % 3)));
        }
        Poly s = shuffle(p, q);
        CHECK(s.degree() == da + db);
        for (const auto& [w, c] : s.terms()) CHECK(static_cast<int>(w.size()) == da + db);
    }
}

TEST_CASE("binomial coefficient from mixed-letter shuffles") {
    // sum of coefficients of x_i^a sh x_j^b equals binomial(a+b, a) for i != j
    for (unsigned long a = 1; a <= 4; ++a) {
        for (unsigned long b = 1; b <= 4; ++b) {
            Word xa{std::vector<Letter>(a, 0)}, xb{std::vector<Letter>(b, 1)};
            Poly s = shuffle(xa, xb);
            Rational sum(0);
            for (const auto& [w, c] : s.terms()) sum += c;
            CHECK(sum == Rational(binomial(a + b, a)));
        }
    }
}

TEST_CASE("poly text round trip") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 8; ++trial) {
        Poly p = random_poly(rng, 2, 5, 10);
        CHECK(parse_poly(to_string(p)) == p);
    }
    Poly p;
    p.add_term(W("e"), rational(1, 2));
    p.add_term(W("x0x1"), rational(-3, 7));
    CHECK(to_string(p) == "1/2 e\n-3/7 x0x1\n");
    CHECK(parse_poly("# comment\n 1/2 e\n-3/7 x0x1 # trailing\n\n") == p);
    CHECK(parse_poly("1/2 e\r\n-3/7 x0x1\r\n") == p);
}

TEST_CASE("poly parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_poly("1 x0\nabc x0\n"), doctest::Contains("line 2"),
                         std::runtime_error);
    CHECK_THROWS_AS(parse_poly("1/0 x0\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_poly("1 y0\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_poly("1 x0 junk\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_poly("1\n"), std::runtime_error);
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/6") == rational(1, 2));
    CHECK(parse_rational("-4/2") == rational(-2));
    CHECK(parse_rational("+7") == rational(7));
    CHECK(to_string(rational(-2, 4)) == "-1/2");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}

TEST_CASE("word parsing") {
    CHECK(W("x0x12x3").letters == std::vector<Letter>{0, 12, 3});
    CHECK(W("e").empty());
    CHECK(W("x0x1x1").str() == "x0x1x1");
    CHECK(Word{}.str() == "e");
    CHECK_THROWS_AS(Word::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Word::parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(Word::parse("0x1"), std::invalid_argument);
}
