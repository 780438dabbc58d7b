#include "cfs/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

#include "cfs/lyndon.hpp"

namespace cfs {

const std::vector<double>* IntegralTable::find(const Word& w) const {
    auto it = index.find(w);
    return it == index.end() ? nullptr : &values[it->second];
}

const std::vector<double>& IntegralTable::at(const Word& w) const {
    const auto* v = find(w);
    if (!v) throw std::invalid_argument("word not tabulated: " + w.str());
    return *v;
}

std::vector<Word> suffix_closure(const std::vector<Word>& words) {
    std::unordered_set<Word, WordHash> seen;
    for (const auto& w : words) {
        for (std::size_t s = 0; s < w.size(); ++s) {
            auto [it, inserted] = seen.insert(w.suffix(s));
            if (!inserted) break;  // shorter suffixes are already present
        }
    }
    std::vector<Word> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), shortlex_less);
    return out;
}

namespace {

void check_words_over_signal(const std::vector<Word>& words, const Signal& s) {
    for (const auto& w : words)
        if (w.max_letter() > s.m())
            throw std::invalid_argument("word " + w.str() + " needs input channel u" +
                                        std::to_string(w.max_letter()) + " but the signal has " +
                                        std::to_string(s.m()));
}

std::size_t checked_table_size(std::size_t words, std::size_t points) {
    const std::size_t entries = words * points;
    if (entries > (std::size_t{1} << 25))
        throw std::invalid_argument("integral table too large (" + std::to_string(words) +
                                    " words x " + std::to_string(points) + " points)");
    return entries;
}

}  // namespace

IntegralTable direct_table(const Signal& s, const std::vector<Word>& words) {
    s.validate();
    IntegralTable t;
    t.words = suffix_closure(words);
    check_words_over_signal(t.words, s);
    const std::size_t np = s.points();
    checked_table_size(t.words.size(), np);
    t.values.assign(t.words.size(), {});
    t.integral_count = t.words.size();
    for (std::size_t i = 0; i < t.words.size(); ++i) t.index.emplace(t.words[i], i);
    const double half_dt = 0.5 * s.dt;
    for (std::size_t i = 0; i < t.words.size(); ++i) {
        const Word& w = t.words[i];
        const Letter first = w.letters[0];
        const std::vector<double>* inner = nullptr;
        if (w.size() > 1) inner = &t.values[t.index.at(w.suffix(1))];  // shorter, already done
        const double* u = nullptr;
        if (first > 0) u = s.channels[static_cast<std::size_t>(first - 1)].data();
        auto& E = t.values[i];
        E.assign(np, 0.0);
        double acc = 0.0;
        double prev = (u ? u[0] : 1.0) * (inner ? (*inner)[0] : 1.0);
        for (std::size_t j = 1; j < np; ++j) {
            const double cur = (u ? u[j] : 1.0) * (inner ? (*inner)[j] : 1.0);
            acc += half_dt * (prev + cur);
            E[j] = acc;
            prev = cur;
        }
    }
    return t;
}

IntegralTable chen_table(const Signal& s, int n) {
    s.validate();
    if (n < 1) throw std::invalid_argument("need n >= 1");
    const int card = s.m() + 1;
    // level-lex enumeration of X^{<=n}; the rank of a word is its base-card
    // value offset by the sizes of the shorter levels
    std::vector<Word> words;
    for (int k = 1; k <= n; ++k) {
        std::vector<Letter> w(static_cast<std::size_t>(k), 0);
        while (true) {
            words.emplace_back(Word{w});
            int i = k - 1;
            while (i >= 0 && w[static_cast<std::size_t>(i)] == static_cast<Letter>(card - 1)) {
                w[static_cast<std::size_t>(i)] = 0;
                --i;
            }
            if (i < 0) break;
            ++w[static_cast<std::size_t>(i)];
        }
    }
    IntegralTable t;
    t.words = words;
    t.integral_count = words.size();
    const std::size_t W = words.size();
    const std::size_t np = s.points();
    checked_table_size(W, np);
    for (std::size_t i = 0; i < W; ++i) t.index.emplace(words[i], i);

    // per-word suffix rank (for increment products) and split pairs
    std::vector<std::size_t> tail(W);          // rank of w[1:], or npos for letters
    std::vector<double> inv_fact(W);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> splits(W);
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    for (std::size_t i = 0; i < W; ++i) {
        const Word& w = words[i];
        tail[i] = w.size() > 1 ? t.index.at(w.suffix(1)) : npos;
        double f = 1.0;
        for (std::size_t r = 2; r <= w.size(); ++r) f *= static_cast<double>(r);
        inv_fact[i] = 1.0 / f;
        for (std::size_t p = 1; p < w.size(); ++p)
            splits[i].emplace_back(t.index.at(w.prefix(p)), t.index.at(w.suffix(p)));
    }

    t.values.assign(W, std::vector<double>(np, 0.0));
    std::vector<double> cur(W, 0.0), next(W, 0.0), prod(W, 0.0), local(W, 0.0);
    std::vector<double> dU(static_cast<std::size_t>(card), 0.0);
    for (std::size_t j = 0; j + 1 < np; ++j) {
        dU[0] = s.dt;
        for (int ch = 1; ch < card; ++ch) {
            const auto& u = s.channels[static_cast<std::size_t>(ch - 1)];
            dU[static_cast<std::size_t>(ch)] = 0.5 * s.dt * (u[j] + u[j + 1]);
        }
        for (std::size_t i = 0; i < W; ++i) {
            const Word& w = words[i];
            prod[i] = dU[w.letters[0]] * (tail[i] == npos ? 1.0 : prod[tail[i]]);
            local[i] = prod[i] * inv_fact[i];
        }
        for (std::size_t i = 0; i < W; ++i) {
            double acc = local[i] + cur[i];  // full-prefix and full-suffix splits
            for (const auto& [a, b] : splits[i]) acc += local[a] * cur[b];
            next[i] = acc;
        }
        for (std::size_t i = 0; i < W; ++i) {
            cur[i] = next[i];
            t.values[i][j + 1] = next[i];
        }
    }
    return t;
}

IntegralTable lyndon_table(const Signal& s, int n) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    std::vector<Word> lyndon;
    for (auto& lw : generate_upto(Alphabet(s.m()), n)) lyndon.push_back(std::move(lw.word));
    return direct_table(s, lyndon);
}

GrowthBoundReport check_growth_bound(const Signal& s, int n, double R) {
    s.validate();
    // precondition: max(||u||_1, t_M - t_0) <= R
    double u1 = 0.0;
    for (const auto& ch : s.channels) {
        double acc = 0.0;
        for (std::size_t j = 1; j < ch.size(); ++j)
            acc += 0.5 * s.dt * (std::abs(ch[j - 1]) + std::abs(ch[j]));
        u1 = std::max(u1, acc);
    }
    const double horizon = s.dt * static_cast<double>(s.steps());
    if (std::max(u1, horizon) > R)
        throw std::invalid_argument("R must dominate max(||u||_1, t_M - t_0) = " +
                                    std::to_string(std::max(u1, horizon)));

    std::vector<Word> all;
    for (int k = 1; k <= n; ++k) {
        // all words of length k
        std::vector<Letter> w(static_cast<std::size_t>(k), 0);
        while (true) {
            all.emplace_back(Word{w});
            int i = k - 1;
            while (i >= 0 && w[static_cast<std::size_t>(i)] == static_cast<Letter>(s.m())) {
                w[static_cast<std::size_t>(i)] = 0;
                --i;
            }
            if (i < 0) break;
            ++w[static_cast<std::size_t>(i)];
        }
    }
    IntegralTable t = direct_table(s, all);
    GrowthBoundReport rep;
    rep.max_ratio = 1.0;  // the k = 0 term: 1 <= 1
    const double base = R * static_cast<double>(s.m() + 1);
    for (int k = 1; k <= n; ++k) {
        double fact = 1.0;
        for (int r = 2; r <= k; ++r) fact *= static_cast<double>(r);
        const double rhs = std::pow(base, k);
        for (std::size_t j = 0; j < s.points(); ++j) {
            double sum = 0.0;
            for (std::size_t i = 0; i < t.words.size(); ++i)
                if (static_cast<int>(t.words[i].size()) == k) sum += std::abs(t.values[i][j]);
            const double ratio = fact * sum / rhs;
            if (ratio > rep.max_ratio) {
                rep.max_ratio = ratio;
                rep.worst_k = k;
                rep.worst_t = s.t(j);
            }
        }
    }
    rep.ok = rep.max_ratio <= 1.0 + 1e-12;
    return rep;
}

void write_table_csv(std::ostream& os, const IntegralTable& table, const Signal& s) {
    os << "word,t,value\n";
    char buf[64];
    for (std::size_t i = 0; i < table.words.size(); ++i) {
        for (std::size_t j = 0; j < s.points(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", s.t(j));
            os << table.words[i].str() << ',' << buf << ',';
            std::snprintf(buf, sizeof buf, "%.17g", table.values[i][j]);
            os << buf << '\n';
        }
    }
}

}  // namespace cfs
