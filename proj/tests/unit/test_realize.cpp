#include <doctest.h>

#include <cmath>

#include "cfs/realize.hpp"
#include "cfs/transduce.hpp"

using namespace cfs;

namespace {

Word W(const char* tok) { return Word::parse(tok); }
LyndonMonomial M(const char* tok) { return LyndonMonomial::parse(tok); }

// single integrator dz = u, y = z, z(0) = 0
Realization integrator() {
    Realization r;
    r.dim = 1;
    r.m = 1;
    r.g = {{MultiPoly(1)}, {MultiPoly::constant(1, Rational(1))}};
    r.h = MultiPoly::variable(1, 0);
    r.z0 = {Rational(0)};
    return r;
}

}  // namespace

TEST_CASE("multivariate polynomial basics") {
    MultiPoly z1 = MultiPoly::variable(2, 0), z2 = MultiPoly::variable(2, 1);
    MultiPoly p = z1 * z1 + z2 * Rational(3);
    CHECK(p.total_degree() == 2);
    CHECK(p.derivative(0) == MultiPoly::variable(2, 0) * Rational(2));
    CHECK(p.derivative(1) == MultiPoly::constant(2, Rational(3)));
    CHECK(p.eval({rational(2), rational(1, 3)}) == rational(5));
    CHECK(p.truncated(1) == z2 * Rational(3));
    CHECK(p.eval_double({2.0, 1.0}) == doctest::Approx(7.0));
}

TEST_CASE("Lie derivative examples") {
    // f = z2, g = (0, 1) -> 1
    MultiPoly f = MultiPoly::variable(2, 1);
    std::vector<MultiPoly> g = {MultiPoly(2), MultiPoly::constant(2, Rational(1))};
    CHECK(lie_derivative(f, g) == MultiPoly::constant(2, Rational(1)));

    // f = z1^2, g = (z1, 0) -> 2 z1^2
    MultiPoly f2 = MultiPoly::variable(2, 0) * MultiPoly::variable(2, 0);
    std::vector<MultiPoly> g2 = {MultiPoly::variable(2, 0), MultiPoly(2)};
    CHECK(lie_derivative(f2, g2) == f2 * Rational(2));
}

TEST_CASE("exponential kernel coefficients") {
    // by the series composition exp(w - w^2 + w^3 - ...) expanded by hand
    CHECK(exp_frac_kernel(1) == std::vector<Rational>{1, 1});
    CHECK(exp_frac_kernel(2) == std::vector<Rational>{1, 1, rational(-1, 2)});
    CHECK(exp_frac_kernel(4) ==
          std::vector<Rational>{1, 1, rational(-1, 2), rational(1, 6), rational(1, 24)});
    // numeric cross-check against the true function near the origin
    auto ker = exp_frac_kernel(8);
    const double w = 0.1;
    double poly = 0.0, pw = 1.0;
    for (const auto& c : ker) {
        poly += to_double(c) * pw;
        pw *= w;
    }
    CHECK(poly == doctest::Approx(std::exp(w / (1.0 + w))).epsilon(1e-9));
}

TEST_CASE("CSTR realization structure") {
    Realization r = cstr_realization(2);
    r.validate();
    // drift second component at the origin is 1
    CHECK(r.g[0][1].constant_term() == 1);
    // input field is (0, 1)
    CHECK(r.g[1][0].is_zero());
    CHECK(r.g[1][1] == MultiPoly::constant(2, Rational(1)));
    CHECK_THROWS_AS(cstr_realization(0), std::invalid_argument);
}

TEST_CASE("Lie derivative of the output along the CSTR drift") {
    // L_{g0} z2 = -2 z2 + (1 - z1) E(z2): check the low-degree structure
    Realization r = cstr_realization(3);
    MultiPoly lie = lie_derivative(r.h, r.g[0]);
    CHECK(lie.constant_term() == 1);                         // E(0) = 1
    CHECK(lie.eval({rational(1), rational(0)}) == 0);        // (1 - z1) factor at z1 = 1
    // coefficient of z2 is -2 + 1 (from (1-z1) e^{z2/(1+z2)})
    MultiPoly at_z1_0 = lie;  // inspect the z1^0 z2^1 coefficient directly
    auto it = at_z1_0.terms().find(MultiPoly::Exponents{0, 1});
    REQUIRE(it != at_z1_0.terms().end());
    CHECK(it->second == rational(-1));
}

TEST_CASE("series of the single integrator is x1") {
    GeneratingSeries c = series_from_realization(integrator(), 4);
    CHECK(c.poly == Poly::monomial(W("x1")));
}

TEST_CASE("CSTR series coefficients through degree 4") {
    GeneratingSeries c = series_from_realization(cstr_realization(4), 4);
    const std::pair<const char*, long> expected[] = {
        {"x0", 1},        {"x1", 1},        {"x0x0", -2},     {"x0x1", -1},
        {"x0x0x1", -2},   {"x0x1x0", -2},   {"x0x1x1", -1},   {"x0x0x0x0", 22},
        {"x0x0x0x1", 15}, {"x0x0x1x0", 11}, {"x0x0x1x1", 4},  {"x0x1x0x0", 6},
        {"x0x1x0x1", 2},  {"x0x1x1x0", 2},  {"x0x1x1x1", 1}};
    CHECK(c.poly.term_count() == 15);  // nothing else through degree 4
    for (const auto& [tok, val] : expected) CHECK(c.poly.coeff(W(tok)) == val);
    CHECK(c.poly.coeff(W("x0x0x0")) == 0);
    CHECK(c.poly.coeff(W("x1x0")) == 0);
}

TEST_CASE("transduced CSTR series in Lyndon coordinates") {
    GeneratingSeries c = series_from_realization(cstr_realization(5), 5);
    LPoly q = apply_L(c.poly, Alphabet(1));

    // degrees 1..4: the complete expansion
    const std::pair<const char*, const char*> deg_le4[] = {
        {"x0", "1"},          {"x1", "1"},         {"x0|x0", "-1"},     {"x0x1", "-1"},
        {"x0x1|x0", "-2"},    {"x0x0x1", "2"},     {"x0x1x1", "-1"},    {"x0|x0|x0|x0", "11/12"},
        {"x0x1|x0|x0", "3"},  {"x0x0x1|x0", "-1"}, {"x0x1x1|x0", "2"},  {"x0x1x1x1", "1"}};
    for (const auto& [tok, val] : deg_le4) CHECK(q.coeff(M(tok)) == parse_rational(val));
    // and nothing else below degree 5
    int low_terms = 0;
    for (const auto& [m, v] : q.terms())
        if (m.degree() <= 4) ++low_terms;
    CHECK(low_terms == 12);

    // degree 5
    const std::pair<const char*, const char*> deg5[] = {
        {"x0|x0|x0|x0|x0", "-13/15"}, {"x0x1|x0|x0|x0", "-7/3"}, {"x0x1|x0x1|x0", "3/2"},
        {"x0x0x1|x0|x0", "11/2"},     {"x0x1|x0x0x1", "-1"},     {"x0x1x1|x0|x0", "-2"},
        {"x0x0x0x1|x0", "-10"},       {"x0x0x1x1|x0", "3"},      {"x0x0x0x0x1", "3"},
        {"x0x0x0x1x1", "-2"}};
    for (const auto& [tok, val] : deg5) CHECK(q.coeff(M(tok)) == parse_rational(val));
    // the remaining degree-5 coefficients
    CHECK(q.coeff(M("x0x0x1x1x1")) == 4);
    CHECK(q.coeff(M("x0x1x0x1x1")) == 2);
    CHECK(q.coeff(M("x0x1x1x1x1")) == 1);
}

TEST_CASE("series coefficients are stable under a deeper Taylor kernel") {
    GeneratingSeries a = series_from_realization(cstr_realization(4), 4);
    GeneratingSeries b = series_from_realization(cstr_realization(6), 4);
    CHECK(a.poly == b.poly);
}

TEST_CASE("attack input samples the closed form") {
    Signal u = attack_input(0.0, std::log(2.0) / 2.0, 2);
    CHECK(u.channels[0][0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(u.channels[0][1] == doctest::Approx(-0.75).epsilon(1e-14));
    Signal far = attack_input(10.0, 1.0, 2);
    CHECK(far.channels[0][0] == doctest::Approx(-0.5).epsilon(1e-8));
}

TEST_CASE("reference integrator on simple systems") {
    // CSTR with u = 0 starts at y = 0
    Signal zero = sample_signal(0.0, 1e-3, 101, {[](double) { return 0.0; }});
    auto y = cstr_reference_ode(zero);
    CHECK(y[0] == 0.0);

    // single integrator with u = 1: y(t) = t
    Signal one = sample_signal(0.0, 1e-3, 1001, {[](double) { return 1.0; }});
    auto yi = reference_ode(integrator(), one);
    for (std::size_t j = 0; j < one.points(); ++j)
        CHECK(std::abs(yi[j] - one.t(j)) <= 1e-10);
}

TEST_CASE("zero-dynamics attack keeps the true output at zero") {
    const double dt = 1e-4;
    Signal u = attack_input(0.0, dt, static_cast<std::size_t>(std::lround(0.5 / dt)) + 1);
    auto y = cstr_reference_ode(u);
    double worst = 0.0;
    for (double v : y) worst = std::max(worst, std::abs(v));
    CHECK(worst < 1e-3);

    // the polynomial realization integrates to the same trajectory
    auto yp = reference_ode(cstr_realization(10), u);
    double diff = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) diff = std::max(diff, std::abs(y[j] - yp[j]));
    CHECK(diff < 1e-8);
}

TEST_CASE("diverging states are reported") {
    // dz = z^2, z(0) = 1 blows up at t = 1
    Realization r;
    r.dim = 1;
    r.m = 0;
    r.g = {{MultiPoly::variable(1, 0) * MultiPoly::variable(1, 0)}};
    r.h = MultiPoly::variable(1, 0);
    r.z0 = {Rational(1)};
    Signal s = sample_signal(0.0, 1e-3, 2001, {[](double) { return 0.0; }});
    CHECK_THROWS_AS(reference_ode(r, s), std::runtime_error);
}
