#include "cfs/transduce.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cfs {

namespace {

Rational factorial(unsigned long k) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), k);
    return Rational(f);
}

std::size_t level_rank(const Word& w, int card) {
    std::size_t r = 0;
    for (Letter l : w.letters) r = r * static_cast<std::size_t>(card) + l;
    return r;
}

std::vector<Word> level_words(const Alphabet& a, int k) {
    std::vector<Word> out;
    std::vector<Letter> w(static_cast<std::size_t>(k), 0);
    while (true) {
        out.emplace_back(Word{w});
        int i = k - 1;
        while (i >= 0 && w[static_cast<std::size_t>(i)] == static_cast<Letter>(a.m)) {
            w[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++w[static_cast<std::size_t>(i)];
    }
    return out;
}

}  // namespace

LyndonMonomial::LyndonMonomial(std::vector<Word> fs) : factors(std::move(fs)) {
    for (const auto& f : factors)
        if (!is_lyndon(f)) throw std::invalid_argument("monomial factor not Lyndon: " + f.str());
    std::sort(factors.begin(), factors.end(), [](const Word& a, const Word& b) {
        return lex_compare(a, b) > 0;  // non-increasing
    });
}

LyndonMonomial LyndonMonomial::from_cfl(const Word& w) {
    LyndonMonomial m;
    m.factors = cfl_factorize(w);
    return m;
}

int LyndonMonomial::degree() const {
    int d = 0;
    for (const auto& f : factors) d += static_cast<int>(f.size());
    return d;
}

Word LyndonMonomial::concat_word() const {
    Word w;
    for (const auto& f : factors) w = concat(w, f);
    return w;
}

std::string LyndonMonomial::str() const {
    if (factors.empty()) return "e";
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += '|';
        s += factors[i].str();
    }
    return s;
}

LyndonMonomial LyndonMonomial::parse(const std::string& token) {
    if (token == "e") return LyndonMonomial{};
    std::vector<Word> fs;
    std::size_t start = 0;
    while (start <= token.size()) {
        std::size_t bar = token.find('|', start);
        std::string part = token.substr(start, bar == std::string::npos ? bar : bar - start);
        fs.push_back(Word::parse(part));
        if (bar == std::string::npos) break;
        start = bar + 1;
    }
    return LyndonMonomial(std::move(fs));
}

std::size_t LyndonMonomialHash::operator()(const LyndonMonomial& m) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    WordHash wh;
    for (const auto& f : m.factors) h = h * 1099511628211ull ^ wh(f);
    return h;
}

LPoly LPoly::monomial(LyndonMonomial m, Rational c) {
    LPoly q;
    if (c != 0) q.terms_.emplace(std::move(m), std::move(c));
    return q;
}

int LPoly::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

Rational LPoly::coeff(const LyndonMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void LPoly::add_term(const LyndonMonomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LPoly& LPoly::operator+=(const LPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

LPoly& LPoly::operator-=(const LPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, Rational(-c));
    return *this;
}

LPoly& LPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

LPoly LPoly::operator*(const LPoly& o) const {
    LPoly out;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            LyndonMonomial m;
            m.factors.resize(ma.factors.size() + mb.factors.size());
            std::merge(ma.factors.begin(), ma.factors.end(), mb.factors.begin(), mb.factors.end(),
                       m.factors.begin(), [](const Word& x, const Word& y) {
                           return lex_compare(x, y) > 0;
                       });
            out.add_term(m, Rational(ca * cb));
        }
    }
    return out;
}

LPoly LPoly::pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative power");
    LPoly out = LPoly::monomial(LyndonMonomial{});
    for (int i = 0; i < k; ++i) out = out * *this;
    return out;
}

std::vector<std::pair<LyndonMonomial, Rational>> LPoly::sorted_terms() const {
    std::vector<std::pair<LyndonMonomial, Rational>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return shortlex_less(x.first.concat_word(), y.first.concat_word());
    });
    return out;
}

std::vector<LyndonMonomial> monomial_order_level(const Alphabet& a, int k) {
    if (k < 1) throw std::invalid_argument("need k >= 1");
    std::vector<LyndonMonomial> out;
    for (const auto& w : level_words(a, k)) out.push_back(LyndonMonomial::from_cfl(w));
    return out;
}

namespace {

constexpr std::size_t kMaxDense = 1024;

struct MatrixCache {
    std::mutex mu;
    std::map<std::pair<int, int>, std::shared_ptr<const TransformMatrix>> inv, fwd;
};

MatrixCache& cache() {
    static MatrixCache c;
    return c;
}

std::size_t checked_dim(const Alphabet& a, int k) {
    std::size_t n = 1;
    for (int i = 0; i < k; ++i) {
        n *= static_cast<std::size_t>(a.cardinality());
        if (n > kMaxDense)
            throw std::invalid_argument("transformation block (card=" +
                                        std::to_string(a.cardinality()) + ", k=" +
                                        std::to_string(k) + ") exceeds the 1024x1024 dense limit");
    }
    return n;
}

std::shared_ptr<const TransformMatrix> build_inverse(const Alphabet& a, int k) {
    auto t = std::make_shared<TransformMatrix>();
    t->k = k;
    t->inverse = true;
    if (k == 0) {
        t->n = 1;
        t->a.assign(1, Rational(1));
        t->words = {Word{}};
        t->monomials = {LyndonMonomial{}};
        return t;
    }
    t->n = checked_dim(a, k);
    t->words = level_words(a, k);
    t->monomials.reserve(t->n);
    for (const auto& w : t->words) t->monomials.push_back(LyndonMonomial::from_cfl(w));
    t->a.assign(t->n * t->n, Rational(0));
    for (std::size_t j = 0; j < t->n; ++j) {
        Poly expansion = Poly::monomial(Word{});
        for (const auto& f : t->monomials[j].factors)
            expansion = shuffle(expansion, Poly::monomial(f));
        for (const auto& [w, c] : expansion.terms())
            t->at(level_rank(w, a.cardinality()), j) = c;
    }
    return t;
}

std::shared_ptr<const TransformMatrix> build_forward(int k, const TransformMatrix& inv) {
    auto t = std::make_shared<TransformMatrix>();
    t->k = k;
    t->inverse = false;
    t->n = inv.n;
    t->words = inv.words;
    t->monomials = inv.monomials;
    t->a.assign(t->n * t->n, Rational(0));
    if (k == 0) {
        t->at(0, 0) = 1;
        return t;
    }
    const std::size_t n = t->n;
    // Sparse rows of the upper-triangular inverse block, strictly above the
    // diagonal, for the back-substitution below.
    std::vector<std::vector<std::pair<std::size_t, const Rational*>>> rows(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t p = i + 1; p < n; ++p)
            if (inv.at(i, p) != 0) rows[i].emplace_back(p, &inv.at(i, p));
    std::vector<Rational> col(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (auto& x : col) x = 0;
        col[j] = Rational(1) / inv.at(j, j);
        for (std::size_t i = j; i-- > 0;) {
            Rational s(0);
            for (const auto& [p, v] : rows[i]) {
                if (p > j) break;
                if (col[p] != 0) s += *v * col[p];
            }
            if (s != 0) col[i] = -s / inv.at(i, i);
        }
        for (std::size_t i = 0; i <= j; ++i)
            if (col[i] != 0) t->at(i, j) = col[i];
    }
    return t;
}

}  // namespace

std::shared_ptr<const TransformMatrix> inverse_matrix(const Alphabet& a, int k) {
    if (k < 0) throw std::invalid_argument("need k >= 0");
    auto& c = cache();
    std::scoped_lock lock(c.mu);
    auto key = std::make_pair(a.m, k);
    auto it = c.inv.find(key);
    if (it != c.inv.end()) return it->second;
    auto built = build_inverse(a, k);
    c.inv.emplace(key, built);
    return built;
}

std::shared_ptr<const TransformMatrix> forward_matrix(const Alphabet& a, int k) {
    if (k < 0) throw std::invalid_argument("need k >= 0");
    auto inv = inverse_matrix(a, k);
    auto& c = cache();
    std::scoped_lock lock(c.mu);
    auto key = std::make_pair(a.m, k);
    auto it = c.fwd.find(key);
    if (it != c.fwd.end()) return it->second;
    auto built = build_forward(k, *inv);
    c.fwd.emplace(key, built);
    return built;
}

LPoly apply_L(const Poly& p, const Alphabet& a) {
    LPoly out;
    std::map<int, std::vector<std::pair<const Word*, const Rational*>>> by_degree;
    for (const auto& [w, c] : p.terms()) {
        if (!w.valid_over(a)) throw std::invalid_argument("word not over the alphabet: " + w.str());
        by_degree[static_cast<int>(w.size())].emplace_back(&w, &c);
    }
    for (const auto& [k, terms] : by_degree) {
        if (k == 0) {
            for (const auto& [w, c] : terms) out.add_term(LyndonMonomial{}, *c);
            continue;
        }
        auto t = forward_matrix(a, k);
        for (const auto& [w, c] : terms) {
            const std::size_t j = level_rank(*w, a.cardinality());
            for (std::size_t i = 0; i <= j; ++i)  // upper triangular
                if (t->at(i, j) != 0) out.add_term(t->monomials[i], Rational(*c * t->at(i, j)));
        }
    }
    return out;
}

Poly apply_L_inv(const LPoly& q) {
    Poly out;
    for (const auto& [m, c] : q.terms()) {
        Poly expansion = Poly::monomial(Word{});
        for (const auto& f : m.factors) expansion = shuffle(expansion, Poly::monomial(f));
        expansion *= c;
        out += expansion;
    }
    return out;
}

Rational seminorm_T(const Alphabet& a, int k) {
    auto t = forward_matrix(a, k);
    Rational best(0);
    for (std::size_t i = 0; i < t->n; ++i) {
        Rational s(0);
        for (std::size_t j = 0; j < t->n; ++j) s += t->at(i, j);
        Rational av = abs(s);
        if (av > best) best = av;
    }
    return best;
}

Rational norm_inf_T(const Alphabet& a, int k) {
    auto t = forward_matrix(a, k);
    Rational best(0);
    for (std::size_t i = 0; i < t->n; ++i) {
        Rational s(0);
        for (std::size_t j = 0; j < t->n; ++j) s += abs(t->at(i, j));
        if (s > best) best = s;
    }
    return best;
}

Integer norm_inf_Tinv(const Alphabet& a, int k) {
    auto t = inverse_matrix(a, k);
    Rational best(0);
    for (std::size_t i = 0; i < t->n; ++i) {
        Rational s(0);
        for (std::size_t j = 0; j < t->n; ++j) s += t->at(i, j);
        if (s > best) best = s;
    }
    if (!is_integer(best)) throw std::logic_error("inverse block row sums must be integers");
    return best.get_num();
}

IdentityCheckReport check_appendix_identities(const Alphabet& a, int k_max, int trials,
                                              std::uint64_t seed) {
    IdentityCheckReport rep;
    // (a) L(char(X^k)) = (l_0 + ... + l_m)^k / k!
    LPoly letters;
    for (int i = 0; i <= a.m; ++i)
        letters.add_term(LyndonMonomial({Word{static_cast<Letter>(i)}}), Rational(1));
    for (int k = 0; k <= k_max; ++k) {
        LPoly lhs = apply_L(char_of_level(a, k), a);
        LPoly rhs = letters.pow(k);
        rhs *= Rational(1) / factorial(static_cast<unsigned long>(k));
        ++rep.checks;
        if (!(lhs == rhs)) {
            rep.ok = false;
            rep.detail = "char identity failed at k=" + std::to_string(k);
            return rep;
        }
    }
    // (b) multinomial shuffle identity on random (nu, composition) pairs
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        const int len = 1 + static_cast<int>(rng() % 6);
        Word nu;
        for (int i = 0; i < len; ++i)
            nu.letters.push_back(static_cast<Letter>(rng() % static_cast<std::uint64_t>(a.cardinality())));
        std::vector<int> comp;
        int rest = len;
        while (rest > 0) {
            int part = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(rest));
            comp.push_back(part);
            rest -= part;
        }
        Poly prod = Poly::monomial(Word{});
        for (int part : comp) prod = shuffle(prod, char_of_level(a, part));
        Rational lhs = prod.coeff(nu);
        Integer rhs = factorial(static_cast<unsigned long>(len)).get_num();
        for (int part : comp) rhs /= factorial(static_cast<unsigned long>(part)).get_num();
        ++rep.checks;
        if (lhs != Rational(rhs)) {
            rep.ok = false;
            std::ostringstream os;
            os << "multinomial identity failed for nu=" << nu.str() << " composition=(";
            for (std::size_t i = 0; i < comp.size(); ++i) os << (i ? "," : "") << comp[i];
            os << ")";
            rep.detail = os.str();
            return rep;
        }
    }
    return rep;
}

void write_matrix_csv(std::ostream& os, const TransformMatrix& t) {
    os << "# " << (t.inverse ? "T_k^-1" : "T_k") << " block, k=" << t.k << '\n';
    if (t.inverse) {
        os << "word\\monomial";
        for (const auto& m : t.monomials) os << ',' << m.str();
        os << '\n';
        for (std::size_t i = 0; i < t.n; ++i) {
            os << t.words[i].str();
            for (std::size_t j = 0; j < t.n; ++j) os << ',' << to_string(t.at(i, j));
            os << '\n';
        }
    } else {
        os << "monomial\\word";
        for (const auto& w : t.words) os << ',' << w.str();
        os << '\n';
        for (std::size_t i = 0; i < t.n; ++i) {
            os << t.monomials[i].str();
            for (std::size_t j = 0; j < t.n; ++j) os << ',' << to_string(t.at(i, j));
            os << '\n';
        }
    }
}

void write_lpoly(std::ostream& os, const LPoly& q) {
    for (const auto& [m, c] : q.sorted_terms())
        os << to_string(c) << ' ' << m.str() << '\n';
}

LPoly read_lpoly(std::istream& is) {
    LPoly out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++lineno;
        std::istringstream ls(line);
        std::string rat, mono, extra;
        if (!(ls >> rat) || rat[0] == '#') continue;
        if (!(ls >> mono))
            throw std::runtime_error("line " + std::to_string(lineno) +
                                     ": expected '<rational> <monomial>'");
        if (ls >> extra && extra[0] != '#')
            throw std::runtime_error("line " + std::to_string(lineno) + ": trailing junk '" + extra + "'");
        try {
            out.add_term(LyndonMonomial::parse(mono), parse_rational(rat));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::string to_string(const LPoly& q) {
    std::ostringstream os;
    write_lpoly(os, q);
    return os.str();
}

LPoly parse_lpoly(const std::string& text) {
    std::istringstream is(text);
    return read_lpoly(is);
}

}  // namespace cfs
