#include "dynaheight/rational.hpp"

#include <cctype>

namespace dyna {

Rational rational_pow(const Rational& q, long e) {
    if (e == 0) return Rational(1);
    if (q == 0) {
        if (e < 0) raise(ErrorKind::domain, "0 raised to a negative power");
        return Rational(0);
    }
    Rational base = q;
    long n = e;
    if (n < 0) {
        base = Rational(1) / base;
        n = -n;
    }
    Rational acc(1);
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

long p_valuation(const Integer& p, const Rational& q) {
    if (q == 0) raise(ErrorKind::domain, "valuation of zero");
    auto count = [&](Integer n) {
        long v = 0;
        Integer r;
        while (n != 0) {
            Integer quo = n / p;
            r = n - quo * p;
            if (r != 0) break;
            n = quo;
            ++v;
        }
        return v;
    };
    return count(q.get_num()) - count(q.get_den());
}

std::vector<Integer> prime_factors(const Integer& n) {
    std::vector<Integer> out;
    Integer m = abs(n);
    if (m <= 1) return out;
    for (Integer p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p == 0) {
            out.push_back(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) out.push_back(m);
    return out;
}

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) raise(ErrorKind::parse, "empty rational literal");
    try {
        Rational q(s);
        if (q.get_den() == 0) raise(ErrorKind::parse, "zero denominator: " + text);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        raise(ErrorKind::parse, "malformed rational literal: " + text);
    }
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& n) { return n.get_str(); }

std::size_t digit_size(const Integer& n) {
    return mpz_sizeinbase(n.get_mpz_t(), 10);
}

} // namespace dyna
