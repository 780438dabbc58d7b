#include "cfs/realize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace cfs {

MultiPoly MultiPoly::constant(int dim, const Rational& c) {
    MultiPoly p(dim);
    p.add_term(Exponents(static_cast<std::size_t>(dim), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(int dim, int i) {
    if (i < 0 || i >= dim) throw std::invalid_argument("variable index out of range");
    MultiPoly p(dim);
    Exponents e(static_cast<std::size_t>(dim), 0);
    e[static_cast<std::size_t>(i)] = 1;
    p.add_term(e, Rational(1));
    return p;
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (unsigned x : e) s += static_cast<int>(x);
        d = std::max(d, s);
    }
    return d;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    if (e.size() != static_cast<std::size_t>(dim_))
        throw std::invalid_argument("exponent vector has wrong dimension");
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational MultiPoly::constant_term() const {
    auto it = terms_.find(Exponents(static_cast<std::size_t>(dim_), 0));
    return it == terms_.end() ? Rational(0) : it->second;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    if (o.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
    MultiPoly out(dim_);
    Exponents e(static_cast<std::size_t>(dim_));
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, Rational(ca * cb));
        }
    }
    return out;
}

MultiPoly MultiPoly::derivative(int i) const {
    MultiPoly out(dim_);
    const auto idx = static_cast<std::size_t>(i);
    for (const auto& [e, c] : terms_) {
        if (e[idx] == 0) continue;
        Exponents d = e;
        --d[idx];
        out.add_term(d, Rational(c * static_cast<long>(e[idx])));
    }
    return out;
}

MultiPoly MultiPoly::truncated(int max_total_degree) const {
    MultiPoly out(dim_);
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (unsigned x : e) s += static_cast<int>(x);
        if (s <= max_total_degree) out.add_term(e, c);
    }
    return out;
}

Rational MultiPoly::eval(const std::vector<Rational>& z) const {
    if (z.size() != static_cast<std::size_t>(dim_)) throw std::invalid_argument("point dimension");
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned r = 0; r < e[i]; ++r) term *= z[i];
        sum += term;
    }
    return sum;
}

double MultiPoly::eval_double(const std::vector<double>& z) const {
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double term = to_double(c);
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned r = 0; r < e[i]; ++r) term *= z[i];
        sum += term;
    }
    return sum;
}

void Realization::validate() const {
    if (dim < 1) throw std::invalid_argument("need state dimension >= 1");
    if (m < 0) throw std::invalid_argument("need m >= 0");
    if (g.size() != static_cast<std::size_t>(m) + 1)
        throw std::invalid_argument("need vector fields g_0..g_m");
    for (const auto& gi : g) {
        if (gi.size() != static_cast<std::size_t>(dim))
            throw std::invalid_argument("vector field has wrong dimension");
        for (const auto& comp : gi)
            if (comp.dim() != dim) throw std::invalid_argument("component dimension mismatch");
    }
    if (h.dim() != dim) throw std::invalid_argument("output map dimension mismatch");
    if (z0.size() != static_cast<std::size_t>(dim))
        throw std::invalid_argument("initial state dimension mismatch");
}

MultiPoly lie_derivative(const MultiPoly& f, const std::vector<MultiPoly>& field) {
    if (field.empty() || field[0].dim() != f.dim())
        throw std::invalid_argument("field/function dimension mismatch");
    MultiPoly out(f.dim());
    for (std::size_t i = 0; i < field.size(); ++i)
        out += field[i] * f.derivative(static_cast<int>(i));
    return out;
}

GeneratingSeries series_from_realization(const Realization& r, int n) {
    r.validate();
    if (n < 1) throw std::invalid_argument("need n >= 1");
    const bool at_origin =
        std::all_of(r.z0.begin(), r.z0.end(), [](const Rational& v) { return v == 0; });

    GeneratingSeries out;
    out.truncation = n;
    // DFS over the word prefix tree; the coefficient of a word is the value
    // at z0 of the Lie derivative chain along its letters, leftmost first.
    struct Frame {
        Word word;
        MultiPoly f;
    };
    std::vector<Frame> stack;
    {
        MultiPoly f0 = at_origin ? r.h.truncated(n) : r.h;
        Rational c = f0.eval(r.z0);
        if (c != 0) out.poly.add_term(Word{}, c);
        stack.push_back(Frame{Word{}, std::move(f0)});
    }
    while (!stack.empty()) {
        Frame fr = std::move(stack.back());
        stack.pop_back();
        const int depth = static_cast<int>(fr.word.size());
        if (depth == n) continue;
        for (int i = r.m; i >= 0; --i) {
            MultiPoly next = lie_derivative(fr.f, r.g[static_cast<std::size_t>(i)]);
            if (at_origin) next = next.truncated(n - depth - 1);
            Word w = fr.word;
            w.letters.push_back(static_cast<Letter>(i));
            Rational c = next.eval(r.z0);
            if (c != 0) out.poly.add_term(w, c);
            stack.push_back(Frame{std::move(w), std::move(next)});
        }
    }
    return out;
}

std::vector<Rational> exp_frac_kernel(int D) {
    if (D < 0) throw std::invalid_argument("need D >= 0");
    const std::size_t sz = static_cast<std::size_t>(D) + 1;
    // s(w) = w/(1+w) = sum_{j>=1} (-1)^{j+1} w^j, then exp(s) term by term;
    // s has no constant term so the sum stops at order D.
    std::vector<Rational> s(sz, Rational(0));
    for (std::size_t j = 1; j < sz; ++j) s[j] = (j % 2 == 1) ? 1 : -1;
    std::vector<Rational> out(sz, Rational(0)), term(sz, Rational(0));
    out[0] = 1;
    term[0] = 1;
    for (int k = 1; k <= D; ++k) {
        std::vector<Rational> next(sz, Rational(0));
        for (std::size_t i = 0; i < sz; ++i) {
            if (term[i] == 0) continue;
            for (std::size_t j = 1; i + j < sz; ++j) next[i + j] += term[i] * s[j];
        }
        for (std::size_t i = 0; i < sz; ++i) term[i] = next[i] / k;
        for (std::size_t i = 0; i < sz; ++i) out[i] += term[i];
    }
    return out;
}

Realization cstr_realization(int taylor_degree) {
    if (taylor_degree < 1) throw std::invalid_argument("need Taylor degree >= 1");
    const int dim = 2;
    // E = degree-D Maclaurin polynomial of e^{z2/(1+z2)}
    MultiPoly E(dim);
    {
        auto ker = exp_frac_kernel(taylor_degree);
        for (std::size_t j = 0; j < ker.size(); ++j) {
            if (ker[j] == 0) continue;
            MultiPoly::Exponents e{0, static_cast<unsigned>(j)};
            E.add_term(e, ker[j]);
        }
    }
    MultiPoly one_minus_z1 = MultiPoly::constant(dim, Rational(1));
    one_minus_z1 += MultiPoly::variable(dim, 0) * Rational(-1);
    MultiPoly reaction = one_minus_z1 * E;

    // all physical constants at unity:
    //   g0 = (-z1 + (1-z1) E, -2 z2 + (1-z1) E),  g1 = (0, 1),  y = z2
    std::vector<MultiPoly> g0{MultiPoly::variable(dim, 0) * Rational(-1) + reaction,
                              MultiPoly::variable(dim, 1) * Rational(-2) + reaction};
    std::vector<MultiPoly> g1{MultiPoly(dim), MultiPoly::constant(dim, Rational(1))};

    Realization r;
    r.dim = dim;
    r.m = 1;
    r.g = {std::move(g0), std::move(g1)};
    r.h = MultiPoly::variable(dim, 1);
    r.z0 = {Rational(0), Rational(0)};
    return r;
}

Signal attack_input(double t0, double dt, std::size_t points) {
    return sample_signal(t0, dt, points,
                         {[](double t) { return -(1.0 + std::exp(-2.0 * t)) / 2.0; }});
}

static std::vector<double> run_rk4(
    const std::function<void(const std::vector<double>&, double, std::vector<double>&)>& rhs,
    const std::function<double(const std::vector<double>&)>& output, std::size_t dim,
    std::vector<double> z, const Signal& s) {
    const std::size_t np = s.points();
    std::vector<double> y(np, 0.0);
    y[0] = output(z);
    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    const double h = s.dt;
    for (std::size_t j = 0; j + 1 < np; ++j) {
        const double u0 = s.channels.empty() ? 0.0 : s.channels[0][j];
        const double u1 = s.channels.empty() ? 0.0 : s.channels[0][j + 1];
        const double um = 0.5 * (u0 + u1);
        rhs(z, u0, k1);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = z[i] + 0.5 * h * k1[i];
        rhs(tmp, um, k2);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = z[i] + 0.5 * h * k2[i];
        rhs(tmp, um, k3);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = z[i] + h * k3[i];
        rhs(tmp, u1, k4);
        for (std::size_t i = 0; i < dim; ++i)
            z[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        for (double v : z)
            if (!std::isfinite(v))
                throw std::runtime_error("state diverged at t = " + std::to_string(s.t(j + 1)));
        y[j + 1] = output(z);
    }
    return y;
}

std::vector<double> reference_ode(const Realization& r, const Signal& s) {
    r.validate();
    s.validate();
    if (r.m > 1) throw std::invalid_argument("reference integrator handles single-input systems");
    if (s.m() < r.m) throw std::invalid_argument("signal has fewer channels than the realization");
    std::vector<double> z0;
    for (const auto& v : r.z0) z0.push_back(to_double(v));
    auto rhs = [&](const std::vector<double>& z, double u, std::vector<double>& dz) {
        for (int i = 0; i < r.dim; ++i) {
            double v = r.g[0][static_cast<std::size_t>(i)].eval_double(z);
            if (r.m == 1) v += u * r.g[1][static_cast<std::size_t>(i)].eval_double(z);
            dz[static_cast<std::size_t>(i)] = v;
        }
    };
    auto output = [&](const std::vector<double>& z) { return r.h.eval_double(z); };
    return run_rk4(rhs, output, static_cast<std::size_t>(r.dim), std::move(z0), s);
}

std::vector<double> cstr_reference_ode(const Signal& s) {
    s.validate();
    if (s.m() != 1) throw std::invalid_argument("CSTR has a single input channel");
    auto rhs = [](const std::vector<double>& z, double u, std::vector<double>& dz) {
        const double e = std::exp(z[1] / (1.0 + z[1]));
        const double reaction = (1.0 - z[0]) * e;
        dz[0] = -z[0] + reaction;
        dz[1] = -2.0 * z[1] + reaction + u;
    };
    auto output = [](const std::vector<double>& z) { return z[1]; };
    return run_rk4(rhs, output, 2, {0.0, 0.0}, s);
}

}  // namespace cfs
