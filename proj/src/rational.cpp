#include "maxapprox/rational.hpp"

#include <charconv>
#include <stdexcept>

namespace maxapprox {

Rational rat(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational rat(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
        throw std::invalid_argument("malformed rational literal: " + text);
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator in rational literal: " + text);
    q.canonicalize();
    return q;
}

std::string to_fraction_string(const Rational& q) {
    return q.get_str();
}

std::string to_decimal_string(const Rational& q) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), q.get_d());
    return std::string(buf, res.ptr);
}

double to_double(const Rational& q) {
    return q.get_d();
}

Rational pow_rational(const Rational& base, unsigned exp) {
    Rational out = 1;
    Rational acc = base;
    while (exp > 0) {
        if (exp & 1u) out *= acc;
        acc *= acc;
        exp >>= 1u;
    }
    return out;
}

Integer binomial(unsigned long n, unsigned long k) {
    Integer out;
    if (k > n) return 0;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

}  // namespace maxapprox
