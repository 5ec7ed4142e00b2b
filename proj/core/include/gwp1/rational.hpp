#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace gwp1 {

using Integer = mpz_class;
using Rational = mpq_class;

struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// "p/q", or "p" when q = 1.
std::string to_string(const Rational& q);

// Accepts "p", "p/q", "-p/q"; result is canonicalized.
Rational parse_rational(std::string_view s);

inline Rational frac(long a, long b) {
    Rational q{Integer(a), Integer(b)};
    q.canonicalize();
    return q;
}

Rational factorial(long n);
Rational binomial(long n, long k);

// H_k = 1 + 1/2 + ... + 1/k; zero for k <= 0.
Rational harmonic(long k);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace gwp1
