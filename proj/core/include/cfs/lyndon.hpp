#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cfs/rational.hpp"
#include "cfs/word.hpp"

namespace cfs {

// A Lyndon word together with its rank in the global shortlex enumeration:
// l_0 = x_0, l_1 = x_1, l_2 = x_0x_1, ... for the two-letter alphabet.
struct LyndonWord {
    std::size_t index = 0;
    Word word;
};

// True iff w is strictly smaller than all of its proper rotations.
// Throws on the empty word.
bool is_lyndon(const Word& w);

// All Lyndon words of length <= n in shortlex order, with global ranks.
// Duval's iteration (Theor. Comput. Sci. 60, 1988) generates them in
// lexicographic order; the result is re-sorted by shortlex.
std::vector<LyndonWord> generate_upto(const Alphabet& a, int n);

// Moebius function by trial division; n is small here.
int mobius(std::uint64_t n);

// L(n) = P(n) = (1/n) sum_{d|n} mu(d) card^(n/d), exact.
Integer count_length(int n, int card);
// L_+(n) = sum_{k<=n} L(k).
Integer count_upto(int n, int card);

struct LyndonAsymptotics {
    double L_hat;      // card^n / n
    double Lplus_hat;  // card^(n+1) / n
};
LyndonAsymptotics asymptotic_counts(int n, int card);

// Chen-Fox-Lyndon factorization by Duval's scan: the unique non-increasing
// sequence of Lyndon factors whose concatenation is w. Throws on empty input.
std::vector<Word> cfl_factorize(const Word& w);

// Standard (right) factorization of a Lyndon word of length >= 2:
// w = uv with v the longest proper Lyndon suffix; u, v Lyndon and u < v.
std::pair<Word, Word> standard_factorization(const Word& w);

// Rank of a Lyndon word in the global shortlex enumeration.
std::size_t lyndon_rank(const Word& w, const Alphabet& a);

}  // namespace cfs
