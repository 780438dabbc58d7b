#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "cfs/integrate.hpp"
#include "cfs/poly.hpp"
#include "cfs/transduce.hpp"

namespace cfs {

// Truncated generating series: support within length <= truncation.
struct GeneratingSeries {
    Poly poly;
    int truncation = 0;
};

GeneratingSeries make_series(const Poly& p, int n);

enum class Backend { chen, direct };

struct EvalResult {
    std::vector<double> y;
    std::size_t integral_count = 0;
};

// y(t) = sum_{eta in X^{<=n}} (c,eta) E_eta[u](t).
// chen backend tables the whole level set X^{<=n}; the direct backend tables
// only the suffix closure of supp(c), so its count is J_X(c).
// Throws on alphabet mismatch between series letters and signal channels.
EvalResult evaluate_alg1(const GeneratingSeries& c, const Signal& s,
                         Backend backend = Backend::chen);

// y(t) = sum_{l} (L(c), l) E_{L^-1(l)}[u](t) with each monomial evaluated as
// the pointwise product of its Lyndon factor columns. Only Lyndon words whose
// monomials occur in supp(L(c)) are integrated (count J_L(L(c))).
EvalResult evaluate_alg2(const GeneratingSeries& c, const Signal& s);

// Worst-case integral counts at truncation degree n.
long long cost_IX(int n, int card);
// |suffix closure of the Lyndon words of length <= n|; validated against the
// brute-force tally of the cost model.
long long cost_IL(int n, int card);

// Minimum integrals for a specific polynomial / Lyndon polynomial under the
// "longer words reuse shorter words" rule.
std::size_t count_JX(const Poly& p);
std::size_t count_JL(const LPoly& q);

struct CostReport {
    int n = 0;
    int card = 0;
    long long I_X = 0;
    std::optional<long long> I_L;   // absent in bounds-only mode
    std::optional<Rational> CE;     // (I_X - I_L)/I_X
    Rational CE_minus;              // (I_X - (n L(n) + 1))/I_X
    Rational CE_plus;               // (I_X - L_+(n))/I_X
    Rational CE_hat_minus;          // 1/card
    Rational CE_hat_plus;           // 1 - (card-1)/n
};

// All seven quantities. `bounds_only` skips the Lyndon-word enumeration that
// I_L needs (the bounds come from Moebius counts and stay cheap).
CostReport efficiency(int n, int card, bool bounds_only = false);

// CSV rows for the cost table; exact mode prints p/q cells, otherwise
// full-precision doubles.
void write_cost_csv(std::ostream& os, const std::vector<CostReport>& rows, bool exact);

}  // namespace cfs
