#include "cfs/selftest.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "cfs/fliess.hpp"
#include "cfs/integrate.hpp"
#include "cfs/lyndon.hpp"
#include "cfs/poly.hpp"
#include "cfs/realize.hpp"
#include "cfs/transduce.hpp"

namespace cfs {

namespace {

struct Runner {
    std::ostream& os;
    bool all_ok = true;

    void check(const std::string& name, const std::function<bool(std::string&)>& body) {
        std::string detail;
        bool ok = false;
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        os << (ok ? "[ ok ] " : "[FAIL] ") << name;
        if (!ok && !detail.empty()) os << ": " << detail;
        os << '\n';
        all_ok = all_ok && ok;
    }
};

Poly random_poly(std::mt19937_64& rng, const Alphabet& a, int max_deg, int terms) {
    Poly p;
    for (int i = 0; i < terms; ++i) {
        const int len = static_cast<int>(rng() % static_cast<std::uint64_t>(max_deg + 1));
        Word w;
        for (int j = 0; j < len; ++j)
            w.letters.push_back(static_cast<Letter>(rng() % static_cast<std::uint64_t>(a.cardinality())));
        const long num = static_cast<long>(rng() % 9) - 4;
        const long den = 1 + static_cast<long>(rng() % 4);
        p.add_term(w, rational(num, den));
    }
    return p;
}

double factorial_d(int k) {
    double f = 1.0;
    for (int r = 2; r <= k; ++r) f *= r;
    return f;
}

}  // namespace

bool run_selftest(std::ostream& os, std::uint64_t seed, bool quick) {
    Runner run{os};
    std::mt19937_64 rng(seed);
    const Alphabet two(1), three(2);

    run.check("shuffle commutative/associative", [&](std::string& detail) {
        const int trials = quick ? 4 : 12;
        for (int i = 0; i < trials; ++i) {
            const Alphabet& a = (i % 2 == 0) ? two : three;
            Poly p = random_poly(rng, a, 4, 4), q = random_poly(rng, a, 4, 4),
                 r = random_poly(rng, a, 3, 3);
            if (!(shuffle(p, q) == shuffle(q, p))) {
                detail = "commutativity";
                return false;
            }
            if (!(shuffle(shuffle(p, q), r) == shuffle(p, shuffle(q, r)))) {
                detail = "associativity";
                return false;
            }
        }
        return true;
    });

    run.check("shuffle grading and powers", [&](std::string& detail) {
        for (int k = 0; k <= (quick ? 3 : 5); ++k) {
            Word x1{1};
            Poly expect = Poly::monomial(Word{std::vector<Letter>(static_cast<std::size_t>(k), 1)});
            Integer f;
            mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
            expect *= Rational(f);
            if (!(shuffle_power(x1, k) == expect)) {
                detail = "shuffle_power k=" + std::to_string(k);
                return false;
            }
        }
        return true;
    });

    run.check("Lyndon counting vs enumeration", [&](std::string& detail) {
        for (int card = 2; card <= 3; ++card) {
            const int nmax = quick ? 8 : (card == 2 ? 12 : 8);
            auto words = generate_upto(Alphabet(card - 1), nmax);
            if (Integer(static_cast<long>(words.size())) != count_upto(nmax, card)) {
                detail = "card=" + std::to_string(card);
                return false;
            }
        }
        return count_length(10, 2) == 99;
    });

    run.check("CFL factorization round trip", [&](std::string& detail) {
        const int nmax = quick ? 6 : 8;
        std::vector<Letter> w;
        std::function<bool(int)> rec = [&](int len) {
            if (len > 0) {
                Word word{w};
                auto fac = cfl_factorize(word);
                Word cat;
                for (std::size_t i = 0; i < fac.size(); ++i) {
                    if (!is_lyndon(fac[i])) return false;
                    if (i && lex_less(fac[i - 1], fac[i])) return false;
                    cat = concat(cat, fac[i]);
                }
                if (!(cat == word)) return false;
            }
            if (len == nmax) return true;
            for (Letter l = 0; l <= 1; ++l) {
                w.push_back(l);
                if (!rec(len + 1)) return false;
                w.pop_back();
            }
            return true;
        };
        if (!rec(0)) {
            detail = "mismatch";
            return false;
        }
        return true;
    });

    run.check("standard factorization splits u < v", [&](std::string& detail) {
        for (const auto& lw : generate_upto(two, quick ? 6 : 8)) {
            if (lw.word.size() < 2) continue;
            auto [u, v] = standard_factorization(lw.word);
            if (!is_lyndon(u) || !is_lyndon(v) || !(concat(u, v) == lw.word) || !lex_less(u, v)) {
                detail = lw.word.str();
                return false;
            }
        }
        return true;
    });

    run.check("L round trip on words", [&](std::string& detail) {
        const int n2 = quick ? 4 : 6, n3 = quick ? 3 : 4;
        for (const auto& [a, nmax] : {std::pair{two, n2}, std::pair{three, n3}}) {
            for (int k = 1; k <= nmax; ++k) {
                Poly chars = char_of_level(a, k);
                for (const auto& [w, c] : chars.terms()) {
                    Poly back = apply_L_inv(apply_L(Poly::monomial(w), a));
                    if (!(back == Poly::monomial(w))) {
                        detail = w.str();
                        return false;
                    }
                }
            }
        }
        return true;
    });

    run.check("L is a shuffle-algebra morphism", [&](std::string& detail) {
        const int trials = quick ? 3 : 8;
        for (int i = 0; i < trials; ++i) {
            Poly p = random_poly(rng, two, 3, 4), q = random_poly(rng, two, 3, 4);
            // stay proper
            p -= Poly::monomial(Word{}, p.coeff(Word{}));
            q -= Poly::monomial(Word{}, q.coeff(Word{}));
            if (!(apply_L(shuffle(p, q), two) == apply_L(p, two) * apply_L(q, two))) {
                detail = "trial " + std::to_string(i);
                return false;
            }
        }
        return true;
    });

    run.check("transformation blocks: identity, triangular, integer inverse", [&](std::string& detail) {
        const int kmax = quick ? 4 : 6;
        for (int k = 0; k <= kmax; ++k) {
            auto fwd = forward_matrix(two, k);
            auto inv = inverse_matrix(two, k);
            const std::size_t n = fwd->n;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < i; ++j) {
                    if (fwd->at(i, j) != 0 || inv->at(i, j) != 0) {
                        detail = "triangularity k=" + std::to_string(k);
                        return false;
                    }
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const Rational& v = inv->at(i, j);
                    if (v < 0 || !is_integer(v)) {
                        detail = "inverse entries k=" + std::to_string(k);
                        return false;
                    }
                }
            }
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    Rational s(0);
                    for (std::size_t p = i; p <= j; ++p) {
                        if (fwd->at(i, p) != 0 && inv->at(p, j) != 0) s += fwd->at(i, p) * inv->at(p, j);
                    }
                    if (s != (i == j ? 1 : 0)) {
                        detail = "T T^-1 != I at k=" + std::to_string(k);
                        return false;
                    }
                }
            }
        }
        return true;
    });

    run.check("norm growth bounds", [&](std::string& detail) {
        const int kmax = quick ? 5 : 7;
        const long long bell[] = {1, 1, 3, 13, 75, 541, 4683, 47293};
        for (int k = 1; k <= kmax; ++k) {
            const double fk = factorial_d(k);
            const double semi = to_double(seminorm_T(two, k));
            if (!(1.0 / fk <= semi + 1e-15 && semi < std::pow(2.0, k) / (fk * std::sqrt(M_PI / 2)))) {
                detail = "seminorm k=" + std::to_string(k);
                return false;
            }
            Integer tinv = norm_inf_Tinv(two, k);
            Integer fact;
            mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k));
            if (tinv < fact || to_double(Rational(tinv)) > std::pow(1.0 / std::log(2.0), k) * to_double(Rational(fact)) * (1 + 1e-12)) {
                detail = "inverse norm k=" + std::to_string(k);
                return false;
            }
            auto inv = inverse_matrix(two, k);
            for (std::size_t i = 0; i < inv->n; ++i) {
                Rational s(0);
                for (std::size_t j = 0; j < inv->n; ++j) s += inv->at(i, j);
                if (s > Rational(static_cast<long>(bell[k]))) {
                    detail = "ordered Bell k=" + std::to_string(k);
                    return false;
                }
            }
        }
        return true;
    });

    run.check("appendix identities", [&](std::string& detail) {
        for (const Alphabet& a : {two, three}) {
            auto rep = check_appendix_identities(a, quick ? 3 : 5, quick ? 20 : 100,
                                                 rng());
            if (!rep.ok) {
                detail = rep.detail;
                return false;
            }
        }
        return true;
    });

    // numeric checks on a shared sine input
    auto make_sine = [](double dt) {
        return sample_signal(0.0, dt, static_cast<std::size_t>(std::lround(1.0 / dt)) + 1,
                             {[](double t) { return 4.0 * std::sin(16.0 * t); }});
    };
    Signal sine = make_sine(1e-3);

    run.check("E_x0 = t and shuffle-integral correspondence", [&](std::string& detail) {
        Poly all;
        for (int k = 1; k <= 4; ++k) all += char_of_level(two, k);
        std::vector<Word> words;
        for (const auto& [w, c] : all.terms()) words.push_back(w);
        IntegralTable t = direct_table(sine, words);
        const auto& Ex0 = t.at(Word{0});
        for (std::size_t j = 0; j < sine.points(); ++j)
            if (std::abs(Ex0[j] - sine.t(j)) > 1e-12) {
                detail = "E_x0";
                return false;
            }
        std::mt19937_64 local(seed ^ 0x5eedu);
        for (int trial = 0; trial < (quick ? 4 : 10); ++trial) {
            const int la = 1 + static_cast<int>(local() % 2), lb = 1 + static_cast<int>(local() % 2);
            Word xi, nu;
            for (int i = 0; i < la; ++i) xi.letters.push_back(static_cast<Letter>(local() % 2));
            for (int i = 0; i < lb; ++i) nu.letters.push_back(static_cast<Letter>(local() % 2));
            Poly sh = shuffle(xi, nu);
            const auto& Exi = t.at(xi);
            const auto& Enu = t.at(nu);
            double worst = 0.0, scale = 0.0;
            for (std::size_t j = 0; j < sine.points(); ++j) {
                double rhs = 0.0;
                for (const auto& [w, c] : sh.terms()) rhs += to_double(c) * t.at(w)[j];
                const double lhs = Exi[j] * Enu[j];
                worst = std::max(worst, std::abs(lhs - rhs));
                scale = std::max(scale, std::abs(lhs));
            }
            if (worst > 5e-3 * (scale + 1e-6)) {
                detail = xi.str() + " sh " + nu.str();
                return false;
            }
        }
        return true;
    });

    run.check("chen/direct discrepancy at least halves with dt", [&](std::string& detail) {
        std::vector<Word> words;
        for (int k = 1; k <= 4; ++k) {
            const Poly level = char_of_level(two, k);
            for (const auto& [w, c] : level.terms()) words.push_back(w);
        }
        auto max_disc = [&](double step) {
            Signal s = sample_signal(0.0, step, static_cast<std::size_t>(std::lround(1.0 / step)) + 1,
                                     {[](double t) { return 4.0 * std::sin(16.0 * t); }});
            IntegralTable d = direct_table(s, words);
            IntegralTable ch = chen_table(s, 4);
            double worst = 0.0;
            for (const auto& w : words) {
                const auto& dv = d.at(w);
                const auto& cv = ch.at(w);
                for (std::size_t j = 0; j < s.points(); ++j)
                    worst = std::max(worst, std::abs(dv[j] - cv[j]));
            }
            return worst;
        };
        const double d1 = max_disc(2e-3), d2 = max_disc(1e-3);
        if (!(d2 <= 0.6 * d1)) {
            detail = "ratio " + std::to_string(d2 / d1);
            return false;
        }
        return true;
    });

    run.check("growth bound on the sine input", [&](std::string& detail) {
        auto rep = check_growth_bound(sine, quick ? 3 : 5, 3.0);
        if (!rep.ok) {
            detail = "ratio " + std::to_string(rep.max_ratio);
            return false;
        }
        return true;
    });

    run.check("cost model sequences", [&](std::string& detail) {
        const long long il_expect[] = {2, 3, 6, 10, 20, 33, 66, 116, 222, 406};
        const int nmax = quick ? 6 : 10;
        for (int n = 1; n <= nmax; ++n) {
            if (cost_IL(n, 2) != il_expect[n - 1]) {
                detail = "I_L(" + std::to_string(n) + ")";
                return false;
            }
        }
        if (cost_IX(3, 2) != 14) {
            detail = "I_X(3)";
            return false;
        }
        auto rep = efficiency(3, 2);
        return rep.CE && *rep.CE == rational(4, 7);
    });

    run.check("algorithm equivalence on random series", [&](std::string& detail) {
        // the 1e-6 tolerance belongs to the fine grid; on coarser grids the
        // O(dt^2) cross-method quadrature difference dominates it
        Signal fine = make_sine(1e-4);
        const int trials = quick ? 2 : 5;
        for (int i = 0; i < trials; ++i) {
            Poly p = random_poly(rng, two, 5, 12);
            p -= Poly::monomial(Word{}, p.coeff(Word{}));
            GeneratingSeries c = make_series(p, 5);
            EvalResult y1 = evaluate_alg1(c, fine, Backend::direct);
            EvalResult y2 = evaluate_alg2(c, fine);
            double worst = 0.0, scale = 0.0;
            for (std::size_t j = 0; j < fine.points(); ++j) {
                worst = std::max(worst, std::abs(y1.y[j] - y2.y[j]));
                scale = std::max(scale, std::abs(y1.y[j]));
            }
            if (worst > 1e-6 * (1 + scale)) {
                detail = "trial " + std::to_string(i) + " diff " + std::to_string(worst);
                return false;
            }
        }
        return true;
    });

    run.check("CSTR series calibration", [&](std::string& detail) {
        GeneratingSeries c = series_from_realization(cstr_realization(4), 4);
        const std::pair<const char*, long> expected[] = {
            {"x0", 1},       {"x1", 1},       {"x0x0", -2},     {"x0x1", -1},
            {"x0x0x1", -2},  {"x0x1x0", -2},  {"x0x1x1", -1},   {"x0x0x0x0", 22},
            {"x0x0x0x1", 15}, {"x0x0x1x0", 11}, {"x0x0x1x1", 4}, {"x0x1x0x0", 6},
            {"x0x1x0x1", 2}, {"x0x1x1x0", 2}, {"x0x1x1x1", 1}};
        if (c.poly.term_count() != sizeof(expected) / sizeof(expected[0])) {
            detail = "term count " + std::to_string(c.poly.term_count());
            return false;
        }
        for (const auto& [tok, val] : expected) {
            if (c.poly.coeff(Word::parse(tok)) != val) {
                detail = tok;
                return false;
            }
        }
        return true;
    });

    return run.all_ok;
}

}  // namespace cfs
