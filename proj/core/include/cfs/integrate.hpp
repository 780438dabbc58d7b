#pragma once

#include <cstddef>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "cfs/signal.hpp"
#include "cfs/word.hpp"

namespace cfs {

// Iterated integrals E_eta[u](t_j, t_0) over the grid of a Signal, for a set
// of nonempty words. E_empty = 1 identically and is not stored.
// integral_count is the number of distinct one-dimensional integrations that
// were performed to fill the table.
struct IntegralTable {
    std::vector<Word> words;                  // shortlex order
    std::vector<std::vector<double>> values;  // values[i][j] = E_{words[i]}(t_j)
    std::size_t integral_count = 0;
    std::unordered_map<Word, std::size_t, WordHash> index;

    const std::vector<double>* find(const Word& w) const;
    const std::vector<double>& at(const Word& w) const;  // throws if absent
};

// Smallest superset closed under dropping the leftmost letter. The empty
// word is excluded. Result in shortlex order.
std::vector<Word> suffix_closure(const std::vector<Word>& words);

// Direct recursion E_{x_i eta}(t) = int u_i E_eta, composite trapezoid per
// grid step, computed over the suffix closure in increasing length order.
IntegralTable direct_table(const Signal& s, const std::vector<Word>& words);

// Full table over X^{<= n} stepped with Chen's identity:
//   E_eta(t_{j+1}, t_0) = sum_{eta = xi nu} E_xi(t_{j+1}, t_j) E_nu(t_j, t_0),
// where the local factor over one step is the scaled increment product
//   E_xi(t_{j+1}, t_j) = (1/k!) prod_r DU^(i_r),
// DU^(i) being the trapezoid increment of u_i (DU^(0) = dt exactly).
IntegralTable chen_table(const Signal& s, int n);

// direct_table over the suffix closure of the Lyndon words of length <= n;
// integral_count then matches the I_L cost model.
IntegralTable lyndon_table(const Signal& s, int n);

struct GrowthBoundReport {
    bool ok = true;
    double max_ratio = 0.0;  // max over k, t of LHS/RHS
    int worst_k = 0;
    double worst_t = 0.0;
};

// Checks k! sum_{|eta|=k} |E_eta[u](t)| <= (R(m+1))^k for k <= n on the whole
// grid. Requires max(||u||_1, t_M - t_0) <= R.
GrowthBoundReport check_growth_bound(const Signal& s, int n, double R);

// CSV rows "word,t,value".
void write_table_csv(std::ostream& os, const IntegralTable& table, const Signal& s);

}  // namespace cfs
