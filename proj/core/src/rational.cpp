#include "gwp1/rational.hpp"

#include <mutex>
#include <vector>

namespace gwp1 {

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view s) {
    auto parse_int = [](std::string_view t) {
        if (t.empty()) throw DomainError("empty integer in rational literal");
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) throw DomainError("bad rational literal");
        for (std::size_t j = i; j < t.size(); ++j)
            if (t[j] < '0' || t[j] > '9') throw DomainError("bad rational literal: " + std::string(t));
        std::string u(t[0] == '+' ? t.substr(1) : t);
        return Integer(u, 10);
    };
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(s));
    Integer num = parse_int(s.substr(0, slash));
    Integer den = parse_int(s.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

namespace {
std::mutex fact_mu;
std::vector<Rational> fact_table{Rational(1)};
std::vector<Rational> harm_table{Rational(0)};
}  // namespace

Rational factorial(long n) {
    if (n < 0) throw DomainError("factorial of negative integer");
    std::lock_guard lock(fact_mu);
    while (static_cast<long>(fact_table.size()) <= n) {
        Rational next = fact_table.back() * static_cast<long>(fact_table.size());
        fact_table.push_back(next);
    }
    return fact_table[n];
}

Rational binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

Rational harmonic(long k) {
    if (k <= 0) return 0;
    std::lock_guard lock(fact_mu);
    while (static_cast<long>(harm_table.size()) <= k) {
        long j = static_cast<long>(harm_table.size());
        harm_table.push_back(harm_table.back() + frac(1, j));
    }
    return harm_table[k];
}

}  // namespace gwp1
