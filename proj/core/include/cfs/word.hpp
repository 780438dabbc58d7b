#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace cfs {

// Alphabet X = {x_0, ..., x_m}, ordered by letter index.
struct Alphabet {
    int m = 0;  // largest letter index; cardinality is m + 1

    explicit Alphabet(int m_);
    static Alphabet with_cardinality(int card) { return Alphabet(card - 1); }
    int cardinality() const { return m + 1; }
};

using Letter = std::uint8_t;

// A word is a finite (possibly empty) sequence of letter indices.
struct Word {
    std::vector<Letter> letters;

    Word() = default;
    explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}
    Word(std::initializer_list<Letter> ls) : letters(ls) {}

    // Token form: "x0x1x1"; the empty word is "e".
    static Word parse(const std::string& token);
    std::string str() const;

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    bool valid_over(const Alphabet& a) const;
    int max_letter() const;  // -1 for the empty word

    Word suffix(std::size_t start) const;  // drop the first `start` letters
    Word prefix(std::size_t len) const;

    friend bool operator==(const Word&, const Word&) = default;
};

// Pure lexicographic order on letter sequences; a proper prefix precedes its
// extensions. This is the order Lyndon words live in.
std::strong_ordering lex_compare(const Word& a, const Word& b);
inline bool lex_less(const Word& a, const Word& b) { return lex_compare(a, b) < 0; }

// Length first, then lexicographic. Canonical term order for serialization.
std::strong_ordering shortlex_compare(const Word& a, const Word& b);
inline bool shortlex_less(const Word& a, const Word& b) { return shortlex_compare(a, b) < 0; }

Word concat(const Word& a, const Word& b);

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace cfs
