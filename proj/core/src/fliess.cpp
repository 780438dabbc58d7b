#include "cfs/fliess.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

#include "cfs/lyndon.hpp"

namespace cfs {

GeneratingSeries make_series(const Poly& p, int n) {
    if (n < 0) throw std::invalid_argument("need truncation >= 0");
    return GeneratingSeries{truncate(p, n), n};
}

namespace {

void check_alphabet(const Poly& p, const Signal& s) {
    if (p.max_letter() > s.m())
        throw std::invalid_argument("alphabet mismatch: series uses x" +
                                    std::to_string(p.max_letter()) + " but the signal has " +
                                    std::to_string(s.m()) + " input channel(s)");
}

}  // namespace

EvalResult evaluate_alg1(const GeneratingSeries& c, const Signal& s, Backend backend) {
    const Poly p = truncate(c.poly, c.truncation);
    check_alphabet(p, s);
    const std::size_t np = s.points();
    EvalResult out;
    out.y.assign(np, 0.0);
    if (p.is_zero()) return out;

    IntegralTable table;
    if (backend == Backend::chen) {
        table = chen_table(s, c.truncation);
    } else {
        std::vector<Word> support;
        for (const auto& [w, coef] : p.terms())
            if (!w.empty()) support.push_back(w);
        if (!support.empty()) table = direct_table(s, support);
    }
    out.integral_count = table.integral_count;

    for (const auto& [w, coef] : p.terms()) {
        const double cd = to_double(coef);
        if (w.empty()) {
            for (std::size_t j = 0; j < np; ++j) out.y[j] += cd;
            continue;
        }
        const auto& E = table.at(w);
        for (std::size_t j = 0; j < np; ++j) out.y[j] += cd * E[j];
    }
    return out;
}

EvalResult evaluate_alg2(const GeneratingSeries& c, const Signal& s) {
    const Poly p = truncate(c.poly, c.truncation);
    check_alphabet(p, s);
    const std::size_t np = s.points();
    EvalResult out;
    out.y.assign(np, 0.0);
    if (p.is_zero()) return out;

    const LPoly q = apply_L(p, Alphabet(std::max(p.max_letter(), 0)));

    // only the Lyndon words that actually occur as factors get integrated
    std::unordered_set<Word, WordHash> factor_set;
    for (const auto& [mono, coef] : q.terms())
        for (const auto& f : mono.factors) factor_set.insert(f);
    IntegralTable table;
    if (!factor_set.empty()) {
        std::vector<Word> factors(factor_set.begin(), factor_set.end());
        table = direct_table(s, factors);
    }
    out.integral_count = table.integral_count;

    std::vector<const std::vector<double>*> cols;
    for (const auto& [mono, coef] : q.terms()) {
        const double cd = to_double(coef);
        if (mono.empty()) {
            for (std::size_t j = 0; j < np; ++j) out.y[j] += cd;
            continue;
        }
        cols.clear();
        for (const auto& f : mono.factors) cols.push_back(&table.at(f));
        for (std::size_t j = 0; j < np; ++j) {
            double prod = cd;
            for (const auto* col : cols) prod *= (*col)[j];
            out.y[j] += prod;
        }
    }
    return out;
}

long long cost_IX(int n, int card) {
    if (n < 1 || card < 1) throw std::invalid_argument("need n >= 1, card >= 1");
    long long sum = 0, power = 1;
    for (int k = 1; k <= n; ++k) {
        power *= card;
        sum += power;
    }
    return sum;
}

long long cost_IL(int n, int card) {
    if (n < 1 || card < 1) throw std::invalid_argument("need n >= 1, card >= 1");
    // enumeration guard: the closure holds at most n * L_+(n) short words
    Integer budget = count_upto(n, card) * n;
    if (budget > 20'000'000)
        throw std::invalid_argument("I_L(" + std::to_string(n) + ") over " +
                                    std::to_string(card) + " letters exceeds the desk-scale budget");
    std::vector<Word> lyndon;
    for (auto& lw : generate_upto(Alphabet(card - 1), n)) lyndon.push_back(std::move(lw.word));
    return static_cast<long long>(suffix_closure(lyndon).size());
}

std::size_t count_JX(const Poly& p) {
    std::vector<Word> support;
    for (const auto& [w, c] : p.terms())
        if (!w.empty()) support.push_back(w);
    return suffix_closure(support).size();
}

std::size_t count_JL(const LPoly& q) {
    std::unordered_set<Word, WordHash> factor_set;
    for (const auto& [mono, c] : q.terms())
        for (const auto& f : mono.factors) factor_set.insert(f);
    std::vector<Word> factors(factor_set.begin(), factor_set.end());
    return suffix_closure(factors).size();
}

CostReport efficiency(int n, int card, bool bounds_only) {
    if (n < 1 || card < 1) throw std::invalid_argument("need n >= 1, card >= 1");
    CostReport r;
    r.n = n;
    r.card = card;
    r.I_X = cost_IX(n, card);
    const Rational ix(static_cast<long>(r.I_X));
    const Rational Ln(count_length(n, card));
    const Rational Lplus(count_upto(n, card));
    r.CE_minus = (ix - (Ln * n + 1)) / ix;
    r.CE_plus = (ix - Lplus) / ix;
    r.CE_hat_minus = rational(1, card);
    r.CE_hat_plus = rational(n - card + 1, n);
    if (!bounds_only) {
        r.I_L = cost_IL(n, card);
        r.CE = (ix - Rational(static_cast<long>(*r.I_L))) / ix;
    }
    return r;
}

void write_cost_csv(std::ostream& os, const std::vector<CostReport>& rows, bool exact) {
    os << "n,card,I_X,I_L,CE,CE_minus,CE_plus,CE_hat_minus,CE_hat_plus\n";
    char buf[64];
    auto emit = [&](const Rational& v) {
        if (exact) {
            os << to_string(v);
        } else {
            std::snprintf(buf, sizeof buf, "%.17g", to_double(v));
            os << buf;
        }
    };
    for (const auto& r : rows) {
        os << r.n << ',' << r.card << ',' << r.I_X << ',';
        if (r.I_L) os << *r.I_L;
        os << ',';
        if (r.CE) emit(*r.CE);
        os << ',';
        emit(r.CE_minus);
        os << ',';
        emit(r.CE_plus);
        os << ',';
        emit(r.CE_hat_minus);
        os << ',';
        emit(r.CE_hat_plus);
        os << '\n';
    }
}

}  // namespace cfs
