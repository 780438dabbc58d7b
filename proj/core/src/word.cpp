#include "cfs/word.hpp"

#include <algorithm>
#include <stdexcept>

namespace cfs {

Alphabet::Alphabet(int m_) : m(m_) {
    if (m < 0) throw std::invalid_argument("alphabet needs at least one letter");
    if (m > 255) throw std::invalid_argument("alphabet too large");
}

Word Word::parse(const std::string& token) {
    if (token == "e") return Word{};
    if (token.empty()) throw std::invalid_argument("empty word token");
    std::vector<Letter> ls;
    std::size_t i = 0;
    while (i < token.size()) {
        if (token[i] != 'x')
            throw std::invalid_argument("bad word token '" + token + "'");
        ++i;
        std::size_t start = i;
        unsigned v = 0;
        while (i < token.size() && token[i] >= '0' && token[i] <= '9') {
            v = v * 10 + static_cast<unsigned>(token[i] - '0');
            if (v > 255) throw std::invalid_argument("letter index out of range in '" + token + "'");
            ++i;
        }
        if (i == start)
            throw std::invalid_argument("bad word token '" + token + "'");
        ls.push_back(static_cast<Letter>(v));
    }
    return Word{std::move(ls)};
}

std::string Word::str() const {
    if (empty()) return "e";
    std::string s;
    for (Letter l : letters) {
        s += 'x';
        s += std::to_string(static_cast<unsigned>(l));
    }
    return s;
}

bool Word::valid_over(const Alphabet& a) const {
    return std::all_of(letters.begin(), letters.end(),
                       [&](Letter l) { return static_cast<int>(l) <= a.m; });
}

int Word::max_letter() const {
    int mx = -1;
    for (Letter l : letters) mx = std::max(mx, static_cast<int>(l));
    return mx;
}

Word Word::suffix(std::size_t start) const {
    return Word{std::vector<Letter>(letters.begin() + static_cast<std::ptrdiff_t>(start),
                                    letters.end())};
}

Word Word::prefix(std::size_t len) const {
    return Word{std::vector<Letter>(letters.begin(),
                                    letters.begin() + static_cast<std::ptrdiff_t>(len))};
}

std::strong_ordering lex_compare(const Word& a, const Word& b) {
    return std::lexicographical_compare_three_way(a.letters.begin(), a.letters.end(),
                                                  b.letters.begin(), b.letters.end());
}

std::strong_ordering shortlex_compare(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return lex_compare(a, b);
}

Word concat(const Word& a, const Word& b) {
    Word r = a;
    r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
    return r;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
    // FNV-1a over the letter bytes
    std::size_t h = 1469598103934665603ull;
    for (Letter l : w.letters) {
        h ^= static_cast<std::size_t>(l);
        h *= 1099511628211ull;
    }
    return h ^ (w.size() << 1);
}

}  // namespace cfs
