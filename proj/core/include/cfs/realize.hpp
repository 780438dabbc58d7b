#pragma once

#include <map>
#include <string>
#include <vector>

#include "cfs/fliess.hpp"
#include "cfs/rational.hpp"
#include "cfs/signal.hpp"

namespace cfs {

// Sparse polynomial in state variables z_1..z_d with rational coefficients,
// keyed by exponent vectors.
class MultiPoly {
public:
    using Exponents = std::vector<unsigned>;
    using Terms = std::map<Exponents, Rational>;

    explicit MultiPoly(int dim) : dim_(dim) {}
    static MultiPoly constant(int dim, const Rational& c);
    static MultiPoly variable(int dim, int i);

    int dim() const { return dim_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int total_degree() const;  // -1 for zero
    void add_term(const Exponents& e, const Rational& c);
    Rational constant_term() const;

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator*=(const Rational& c);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly derivative(int i) const;
    MultiPoly truncated(int max_total_degree) const;

    Rational eval(const std::vector<Rational>& z) const;
    double eval_double(const std::vector<double>& z) const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

private:
    int dim_;
    Terms terms_;
};

// Polynomial state-space realization
//   dz = g_0(z) dt + sum_i g_i(z) u_i dt,  y = h(z),  z(0) = z0.
struct Realization {
    int dim = 0;
    int m = 0;                              // input channels
    std::vector<std::vector<MultiPoly>> g;  // g[i], i = 0..m, each dim components
    MultiPoly h{1};
    std::vector<Rational> z0;

    void validate() const;
};

// L_g f = sum_i g_i df/dz_i, exact.
MultiPoly lie_derivative(const MultiPoly& f, const std::vector<MultiPoly>& field);

// Coefficient of eta = x_{i_1}...x_{i_k}: apply L_{g_{i_1}} first, then the
// remaining letters left to right, and evaluate at z0 (the convention the
// CSTR calibration tests pin down).
// Around z0 = 0 intermediate polynomials are truncated to the remaining word
// length, which leaves every extracted coefficient exact.
GeneratingSeries series_from_realization(const Realization& r, int n);

// Maclaurin coefficients of e^(w/(1+w)) through degree D.
std::vector<Rational> exp_frac_kernel(int D);

// Normalized CSTR (all physical constants 1) with the exponential replaced by
// its degree-D Maclaurin polynomial; D >= n gives exact series coefficients
// up to degree n.
Realization cstr_realization(int taylor_degree);

// Zero-dynamics attack input u*(t) = -(1 + e^{-2t})/2 sampled on a grid.
Signal attack_input(double t0, double dt, std::size_t points);

// Classical fixed-step RK4 with the step equal to the grid step; midpoints
// of u are linearly interpolated. Returns y = h(z) on the grid. Throws on
// non-finite state.
std::vector<double> reference_ode(const Realization& r, const Signal& s);

// Same integrator on the exact CSTR right-hand side (true exponential).
std::vector<double> cstr_reference_ode(const Signal& s);

}  // namespace cfs
