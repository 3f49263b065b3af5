#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace leib3 {

// Exact rational scalar. GMP keeps values canonical: reduced, denominator > 0,
// zero stored as 0/1.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p", "-p", "p/q". Throws std::invalid_argument on malformed input.
inline Rational parse_rational(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    mpq_t raw;
    mpq_init(raw);
    if (mpq_set_str(raw, std::string(s).c_str(), 10) != 0) {
        mpq_clear(raw);
        throw std::invalid_argument("malformed rational literal: " + std::string(s));
    }
    if (mpz_sgn(mpq_denref(raw)) == 0) {
        mpq_clear(raw);
        throw std::invalid_argument("zero denominator in rational literal: " + std::string(s));
    }
    mpq_canonicalize(raw);
    Rational q(raw);
    mpq_clear(raw);
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// gcd extended to rationals: gcd(p1/q1, p2/q2) = gcd(p1 q2, p2 q1) / (q1 q2).
// Always nonnegative; rational_gcd(0, x) = |x|.
inline Rational rational_gcd(const Rational& a, const Rational& b) {
    mpz_class num;
    mpz_gcd(num.get_mpz_t(), mpz_class(a.get_num() * b.get_den()).get_mpz_t(),
            mpz_class(b.get_num() * a.get_den()).get_mpz_t());
    Rational g(num, a.get_den() * b.get_den());
    g.canonicalize();
    return g;
}

}  // namespace leib3
