#pragma once

#include <iosfwd>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cfs/rational.hpp"
#include "cfs/word.hpp"

namespace cfs {

// Sparse element of R<X>: a finite rational combination of words. Zero
// coefficients are never stored.
class Poly {
public:
    using Terms = std::unordered_map<Word, Rational, WordHash>;

    Poly() = default;
    static Poly monomial(Word w, Rational c = Rational(1));

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // Proper: no empty-word component.
    bool is_proper() const;
    // Max word length in the support; -1 for the zero polynomial.
    int degree() const;
    std::size_t term_count() const { return terms_.size(); }
    Rational coeff(const Word& w) const;
    int max_letter() const;

    void add_term(const Word& w, const Rational& c);

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rational& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

    // Terms in shortlex order.
    std::vector<std::pair<Word, Rational>> sorted_terms() const;

private:
    Terms terms_;
};

// Shuffle product, bilinear extension of
//   (x_i a) sh (x_j b) = x_i (a sh (x_j b)) + x_j ((x_i a) sh b),
// with the empty word as unit.
Poly shuffle(const Word& a, const Word& b);
Poly shuffle(const Poly& p, const Poly& q);

// k-fold shuffle of w with itself; k = 0 gives the empty word.
Poly shuffle_power(const Word& w, int k);

// Sum of all (m+1)^k words of length k, coefficient 1.
Poly char_of_level(const Alphabet& a, int k);

// Keep words of length <= n.
Poly truncate(const Poly& p, int n);

// Text format: one "<rational> <word>" term per line, '#' starts a comment.
void write_poly(std::ostream& os, const Poly& p);
Poly read_poly(std::istream& is);
std::string to_string(const Poly& p);
Poly parse_poly(const std::string& text);

}  // namespace cfs
