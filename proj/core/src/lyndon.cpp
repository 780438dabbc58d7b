#include "cfs/lyndon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cfs {

bool is_lyndon(const Word& w) {
    if (w.empty()) throw std::invalid_argument("Lyndon words are nonempty");
    // Duval-style single scan: w is Lyndon iff it is strictly smaller than
    // every proper suffix (equivalent to the rotation criterion).
    const auto& s = w.letters;
    const std::size_t n = s.size();
    for (std::size_t i = 1; i < n; ++i) {
        std::size_t j = 0, k = i;
        while (k < n && s[j] == s[k]) ++j, ++k;
        if (k == n || s[j] > s[k]) return false;  // suffix <= word
    }
    return true;
}

std::vector<LyndonWord> generate_upto(const Alphabet& a, int n) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    /* Duval's algorithm (Theor. Comput. Sci. 60, 1988): starting from (x_0),
     * repeat the word periodically to length n, then strip trailing maximal
     * letters and increment the last one. Produces all Lyndon words of
     * length <= n in lexicographic order. */
    std::vector<Word> out;
    std::vector<Letter> w{0};
    const Letter top = static_cast<Letter>(a.m);
    while (!w.empty()) {
        out.emplace_back(Word{w});
        std::size_t k = w.size();
        while (w.size() < static_cast<std::size_t>(n)) w.push_back(w[w.size() % k]);
        while (!w.empty() && w.back() == top) w.pop_back();
        if (!w.empty()) ++w.back();
    }
    std::stable_sort(out.begin(), out.end(), shortlex_less);
    std::vector<LyndonWord> ranked;
    ranked.reserve(out.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        ranked.push_back(LyndonWord{i, std::move(out[i])});
    return ranked;
}

int mobius(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("mobius(0)");
    int primes = 0;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;  // square factor
            ++primes;
        }
    }
    if (n > 1) ++primes;
    return primes % 2 == 0 ? 1 : -1;
}

Integer count_length(int n, int card) {
    if (n < 1 || card < 1) throw std::invalid_argument("need n >= 1, card >= 1");
    Integer sum = 0;
    for (std::uint64_t d = 1; d <= static_cast<std::uint64_t>(n); ++d) {
        if (static_cast<std::uint64_t>(n) % d != 0) continue;
        Integer power;
        mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(card),
                      static_cast<unsigned long>(n) / d);
        sum += mobius(d) * power;
    }
    return sum / n;
}

Integer count_upto(int n, int card) {
    Integer sum = 0;
    for (int k = 1; k <= n; ++k) sum += count_length(k, card);
    return sum;
}

LyndonAsymptotics asymptotic_counts(int n, int card) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    double c = static_cast<double>(card);
    double nn = static_cast<double>(n);
    return LyndonAsymptotics{std::pow(c, nn) / nn, std::pow(c, nn + 1) / nn};
}

std::vector<Word> cfl_factorize(const Word& w) {
    if (w.empty()) throw std::invalid_argument("cannot factor the empty word");
    // Duval's linear scan; factors come out lexicographically non-increasing.
    const auto& s = w.letters;
    const std::size_t n = s.size();
    std::vector<Word> out;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1, k = i;
        while (j < n && s[k] <= s[j]) {
            k = (s[k] < s[j]) ? i : k + 1;
            ++j;
        }
        const std::size_t len = j - k;
        while (i <= k) {
            out.emplace_back(Word{std::vector<Letter>(s.begin() + static_cast<std::ptrdiff_t>(i),
                                                      s.begin() + static_cast<std::ptrdiff_t>(i + len))});
            i += len;
        }
    }
    return out;
}

std::pair<Word, Word> standard_factorization(const Word& w) {
    if (w.size() < 2) throw std::invalid_argument("need a Lyndon word of length >= 2");
    if (!is_lyndon(w)) throw std::invalid_argument("not a Lyndon word: " + w.str());
    // v = longest proper Lyndon suffix; u = the rest (Lyndon with u < v).
    for (std::size_t start = 1; start < w.size(); ++start) {
        Word v = w.suffix(start);
        if (is_lyndon(v)) return {w.prefix(start), v};
    }
    throw std::logic_error("unreachable: last letter is a Lyndon suffix");
}

std::size_t lyndon_rank(const Word& w, const Alphabet& a) {
    if (!is_lyndon(w)) throw std::invalid_argument("not a Lyndon word: " + w.str());
    if (!w.valid_over(a)) throw std::invalid_argument("word not over the alphabet");
    std::size_t rank = 0;
    for (int k = 1; k < static_cast<int>(w.size()); ++k)
        rank += count_length(k, a.cardinality()).get_ui();
    for (const auto& lw : generate_upto(a, static_cast<int>(w.size()))) {
        if (lw.word.size() == w.size() && lex_less(lw.word, w)) ++rank;
    }
    return rank;
}

}  // namespace cfs
