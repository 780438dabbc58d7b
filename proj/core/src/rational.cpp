#include "cfs/rational.hpp"

#include <stdexcept>

namespace cfs {

Rational parse_rational(const std::string& token) {
    if (token.empty()) throw std::invalid_argument("empty rational token");
    // mpq_class accepts leading '+' only on the numerator via mpz; normalize.
    std::string s = token;
    if (s[0] == '+') s.erase(0, 1);
    mpq_class r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational '" + token + "'");
    if (r.get_den() == 0)
        throw std::invalid_argument("zero denominator in '" + token + "'");
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace cfs
