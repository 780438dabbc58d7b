#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "cfs/lyndon.hpp"
#include "cfs/poly.hpp"

namespace cfs {

// Commutative product of Lyndon words. Canonical form keeps the factors
// sorted non-increasing lexicographically; the empty monomial plays the role
// of the formally adjoined empty word. Degree is the total letter count.
struct LyndonMonomial {
    std::vector<Word> factors;

    LyndonMonomial() = default;
    // Sorts into canonical order; throws if a factor is not Lyndon.
    explicit LyndonMonomial(std::vector<Word> fs);
    // CFL factors of w, already non-increasing, taken as-is.
    static LyndonMonomial from_cfl(const Word& w);

    int degree() const;
    bool empty() const { return factors.empty(); }
    // Concatenation of the factors. On degree-k monomials this is the inverse
    // of the CFL bijection with X^k.
    Word concat_word() const;

    // Token form: factors joined by '|', e.g. "x1|x0x1"; empty monomial "e".
    std::string str() const;
    static LyndonMonomial parse(const std::string& token);

    friend bool operator==(const LyndonMonomial&, const LyndonMonomial&) = default;
};

struct LyndonMonomialHash {
    std::size_t operator()(const LyndonMonomial& m) const noexcept;
};

// Sparse element of R[L] (plus the empty monomial): rational combinations of
// Lyndon monomials. Commutative multiplication merges factor multisets.
class LPoly {
public:
    using Terms = std::unordered_map<LyndonMonomial, Rational, LyndonMonomialHash>;

    LPoly() = default;
    static LPoly monomial(LyndonMonomial m, Rational c = Rational(1));

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;  // -1 for zero
    std::size_t term_count() const { return terms_.size(); }
    Rational coeff(const LyndonMonomial& m) const;
    void add_term(const LyndonMonomial& m, const Rational& c);

    LPoly& operator+=(const LPoly& o);
    LPoly& operator-=(const LPoly& o);
    LPoly& operator*=(const Rational& c);
    friend LPoly operator+(LPoly a, const LPoly& b) { return a += b; }
    friend LPoly operator-(LPoly a, const LPoly& b) { return a -= b; }
    friend LPoly operator*(LPoly a, const Rational& c) { return a *= c; }
    LPoly operator*(const LPoly& o) const;
    LPoly pow(int k) const;
    friend bool operator==(const LPoly& a, const LPoly& b) { return a.terms_ == b.terms_; }

    // Terms ordered by degree, then by the CFL bijection (lexicographic order
    // of the concatenated factor word). Matches monomial_order_level.
    std::vector<std::pair<LyndonMonomial, Rational>> sorted_terms() const;

private:
    Terms terms_;
};

// Degree-k block of the transformation between the word basis of X^k and the
// degree-k Lyndon monomials.
//
// Column/row index conventions:
//   forward block T_k:    entry(i, j) = (L(eta_j), ell_i)     rows = monomials
//   inverse block T_k^-1: entry(i, j) = (L^-1(ell_j), eta_i)  rows = words
// Words of X^k are in lexicographic order; the monomial at position j is the
// CFL factorization of the j-th word. In this ordering both blocks are upper
// triangular (Radford's decomposition).
struct TransformMatrix {
    int k = 0;
    bool inverse = false;
    std::size_t n = 0;
    std::vector<Rational> a;  // dense, row-major
    std::vector<Word> words;
    std::vector<LyndonMonomial> monomials;

    const Rational& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
    Rational& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
};

// Degree-k monomials in the canonical (CFL bijection) order.
std::vector<LyndonMonomial> monomial_order_level(const Alphabet& a, int k);

// T_k^-1 built column-by-column as the shuffle expansion of each monomial.
// Entries are non-negative integers; the diagonal entry is the product of
// factorials of repeated-factor multiplicities. Cached per (alphabet, k).
// k = 0 is the 1x1 identity on the span of the empty word. Dense blocks are
// refused above 1024x1024.
std::shared_ptr<const TransformMatrix> inverse_matrix(const Alphabet& a, int k);

// T_k as the exact inverse of T_k^-1 by back-substitution on the triangular
// system. Cached per (alphabet, k).
std::shared_ptr<const TransformMatrix> forward_matrix(const Alphabet& a, int k);

// The isomorphism L: degree-by-degree application of the forward blocks.
// L(empty) = empty monomial, so nonproper input is fine.
LPoly apply_L(const Poly& p, const Alphabet& a);

// Inverse map: each monomial expands to the shuffle product of its factors.
Poly apply_L_inv(const LPoly& q);

// Seminorm |max_i sum_j (T_k)_{ij}| and the max-abs-row-sum norms.
Rational seminorm_T(const Alphabet& a, int k);
Rational norm_inf_T(const Alphabet& a, int k);
Integer norm_inf_Tinv(const Alphabet& a, int k);

struct IdentityCheckReport {
    bool ok = true;
    int checks = 0;
    std::string detail;  // names (k, nu, composition) on the first mismatch
};

// (a) L(char(X^k)) = (char(L(X)))^k / k! for k <= k_max;
// (b) `trials` random pairs of a word nu and a composition (i_1..i_n) of
//     |nu|: the summed shuffle coefficient equals the multinomial.
IdentityCheckReport check_appendix_identities(const Alphabet& a, int k_max, int trials,
                                              std::uint64_t seed);

// CSV with labeled rows/columns, exact p/q cells.
void write_matrix_csv(std::ostream& os, const TransformMatrix& t);

// Text format: "<rational> <monomial>" per line, '#' comments, token "e" for
// the empty monomial.
void write_lpoly(std::ostream& os, const LPoly& q);
LPoly read_lpoly(std::istream& is);
std::string to_string(const LPoly& q);
LPoly parse_lpoly(const std::string& text);

}  // namespace cfs
