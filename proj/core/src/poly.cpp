#include "cfs/poly.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cfs {

Poly Poly::monomial(Word w, Rational c) {
    Poly p;
    if (c != 0) p.terms_.emplace(std::move(w), std::move(c));
    return p;
}

bool Poly::is_proper() const { return terms_.find(Word{}) == terms_.end(); }

int Poly::degree() const {
    int d = -1;
    for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
    return d;
}

Rational Poly::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::max_letter() const {
    int mx = -1;
    for (const auto& [w, c] : terms_) mx = std::max(mx, w.max_letter());
    return mx;
}

void Poly::add_term(const Word& w, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, Rational(-c));
    return *this;
}

Poly& Poly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, v] : terms_) v *= c;
    return *this;
}

std::vector<std::pair<Word, Rational>> Poly::sorted_terms() const {
    std::vector<std::pair<Word, Rational>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return shortlex_less(x.first, y.first); });
    return out;
}

namespace {

// Shuffle of the suffix pair (a[i:], b[j:]) by dynamic programming from the
// short ends; entry (i, j) only depends on (i+1, j) and (i, j+1).
Poly prepend(Letter x, const Poly& p) {
    Poly out;
    for (const auto& [w, c] : p.terms()) {
        Word nw;
        nw.letters.reserve(w.size() + 1);
        nw.letters.push_back(x);
        nw.letters.insert(nw.letters.end(), w.letters.begin(), w.letters.end());
        out.add_term(nw, c);
    }
    return out;
}

}  // namespace

Poly shuffle(const Word& a, const Word& b) {
    const std::size_t la = a.size(), lb = b.size();
    std::vector<Poly> row(lb + 1);
    row[lb] = Poly::monomial(Word{});  // both suffixes empty
    for (std::size_t j = lb; j-- > 0;) row[j] = Poly::monomial(b.suffix(j));
    for (std::size_t i = la; i-- > 0;) {
        std::vector<Poly> next(lb + 1);
        next[lb] = Poly::monomial(a.suffix(i));
        for (std::size_t j = lb; j-- > 0;) {
            next[j] = prepend(a.letters[i], row[j]);
            next[j] += prepend(b.letters[j], next[j + 1]);
        }
        row = std::move(next);
    }
    return row[0];
}

Poly shuffle(const Poly& p, const Poly& q) {
    Poly out;
    for (const auto& [a, ca] : p.terms()) {
        for (const auto& [b, cb] : q.terms()) {
            Poly s = shuffle(a, b);
            Rational c = ca * cb;
            for (const auto& [w, k] : s.terms()) out.add_term(w, Rational(c * k));
        }
    }
    return out;
}

Poly shuffle_power(const Word& w, int k) {
    if (k < 0) throw std::invalid_argument("negative shuffle power");
    Poly out = Poly::monomial(Word{});
    for (int i = 0; i < k; ++i) out = shuffle(out, Poly::monomial(w));
    return out;
}

Poly char_of_level(const Alphabet& a, int k) {
    if (k < 0) throw std::invalid_argument("negative level");
    Poly out;
    std::vector<Letter> w(static_cast<std::size_t>(k), 0);
    while (true) {
        out.add_term(Word{w}, Rational(1));
        int i = k - 1;
        while (i >= 0 && w[static_cast<std::size_t>(i)] == static_cast<Letter>(a.m)) {
            w[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++w[static_cast<std::size_t>(i)];
    }
    return out;
}

Poly truncate(const Poly& p, int n) {
    Poly out;
    for (const auto& [w, c] : p.terms())
        if (static_cast<int>(w.size()) <= n) out.add_term(w, c);
    return out;
}

void write_poly(std::ostream& os, const Poly& p) {
    for (const auto& [w, c] : p.sorted_terms())
        os << to_string(c) << ' ' << w.str() << '\n';
}

Poly read_poly(std::istream& is) {
    Poly out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++lineno;
        std::istringstream ls(line);
        std::string rat, word, extra;
        if (!(ls >> rat) || rat[0] == '#') continue;
        if (!(ls >> word))
            throw std::runtime_error("line " + std::to_string(lineno) + ": expected '<rational> <word>'");
        if (ls >> extra && extra[0] != '#')
            throw std::runtime_error("line " + std::to_string(lineno) + ": trailing junk '" + extra + "'");
        try {
            out.add_term(Word::parse(word), parse_rational(rat));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::string to_string(const Poly& p) {
    std::ostringstream os;
    write_poly(os, p);
    return os.str();
}

Poly parse_poly(const std::string& text) {
    std::istringstream is(text);
    return read_poly(is);
}

}  // namespace cfs
