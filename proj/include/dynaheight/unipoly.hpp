#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "dynaheight/config.hpp"
#include "dynaheight/errors.hpp"
#include "dynaheight/rational.hpp"

namespace dyna {

// Customization point: how to make ring constants compatible with an existing
// coefficient.  Field types that carry context (number-field elements)
// specialize this; plain scalars ignore the sample.
template <class K>
struct coeff_ops {
    static K zero(const K&) { return K(0); }
    static K one(const K&) { return K(1); }
    static bool is_zero(const K& a) { return a == K(0); }
};

// Dense univariate polynomial over a field K, stored low-to-high with a
// nonzero leading coefficient (empty vector = zero polynomial).
template <class K>
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static UniPoly constant(const K& a) {
        return coeff_ops<K>::is_zero(a) ? UniPoly() : UniPoly(std::vector<K>{a});
    }
    static UniPoly monomial(const K& a, std::size_t deg) {
        if (coeff_ops<K>::is_zero(a)) return UniPoly();
        std::vector<K> v(deg + 1, coeff_ops<K>::zero(a));
        v[deg] = a;
        return UniPoly(std::move(v));
    }
    // x + 0, for fields constructible from long.
    static UniPoly identity() { return UniPoly(std::vector<K>{K(0), K(1)}); }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<K>& coeffs() const { return c_; }
    const K& lead() const {
        if (c_.empty()) raise(ErrorKind::domain, "leading coefficient of zero polynomial");
        return c_.back();
    }
    K coeff(std::size_t i) const {
        if (i < c_.size()) return c_[i];
        if (c_.empty()) return K(0);
        return coeff_ops<K>::zero(c_[0]);
    }
    bool is_monic() const { return !c_.empty() && c_.back() == coeff_ops<K>::one(c_.back()); }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<K> r = a.c_;
        if (r.size() < b.c_.size()) {
            if (b.c_.empty()) return UniPoly(std::move(r));
            r.resize(b.c_.size(), coeff_ops<K>::zero(b.c_[0]));
        }
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
    friend UniPoly operator-(const UniPoly& a) {
        std::vector<K> r = a.c_;
        for (auto& x : r) x = coeff_ops<K>::zero(x) - x;
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.c_.empty() || b.c_.empty()) return UniPoly();
        std::vector<K> r(a.c_.size() + b.c_.size() - 1, coeff_ops<K>::zero(a.c_[0]));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (coeff_ops<K>::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return UniPoly(std::move(r));
    }

    UniPoly scaled(const K& a) const {
        if (coeff_ops<K>::is_zero(a)) return UniPoly();
        std::vector<K> r = c_;
        for (auto& x : r) x = x * a;
        return UniPoly(std::move(r));
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<K> r;
        r.reserve(c_.size() - 1);
        K one = coeff_ops<K>::one(c_[0]);
        K k = one;
        for (std::size_t i = 1; i < c_.size(); ++i) {
            r.push_back(c_[i] * k);
            k = k + one;
        }
        return UniPoly(std::move(r));
    }

    // Euclidean division; b must be nonzero with invertible lead (field).
    static void divrem(const UniPoly& a, const UniPoly& b, UniPoly* q, UniPoly* r) {
        if (b.is_zero()) raise(ErrorKind::domain, "polynomial division by zero");
        std::vector<K> rem = a.c_;
        long db = b.degree();
        if (a.degree() < db) {
            if (q) *q = UniPoly();
            if (r) *r = a;
            return;
        }
        std::vector<K> quo(a.c_.size() - b.c_.size() + 1, coeff_ops<K>::zero(b.lead()));
        for (long i = static_cast<long>(rem.size()) - 1; i >= db; --i) {
            if (coeff_ops<K>::is_zero(rem[i])) continue;
            K f = rem[i] / b.lead();
            quo[i - db] = f;
            for (long j = 0; j <= db; ++j)
                rem[i - db + j] = rem[i - db + j] - f * b.c_[j];
        }
        if (q) *q = UniPoly(std::move(quo));
        if (r) *r = UniPoly(std::move(rem));
    }

    friend UniPoly operator%(const UniPoly& a, const UniPoly& b) {
        UniPoly r;
        divrem(a, b, nullptr, &r);
        return r;
    }
    friend UniPoly operator/(const UniPoly& a, const UniPoly& b) {
        UniPoly q;
        divrem(a, b, &q, nullptr);
        return q;
    }

    UniPoly make_monic() const {
        if (is_zero()) return *this;
        K inv = coeff_ops<K>::one(lead()) / lead();
        return scaled(inv);
    }

    // Evaluate by Horner in any ring T reachable from K through conv.
    template <class T, class Conv>
    T eval_with(const T& x, Conv conv) const {
        if (c_.empty()) raise(ErrorKind::domain, "eval of zero polynomial needs explicit zero");
        T acc = conv(c_.back());
        for (long i = static_cast<long>(c_.size()) - 2; i >= 0; --i)
            acc = acc * x + conv(c_[i]);
        return acc;
    }
    K eval(const K& x) const {
        if (c_.empty()) return coeff_ops<K>::zero(x);
        K acc = c_.back();
        for (long i = static_cast<long>(c_.size()) - 2; i >= 0; --i)
            acc = acc * x + c_[i];
        return acc;
    }

    std::size_t term_count() const {
        std::size_t n = 0;
        for (const auto& a : c_)
            if (!coeff_ops<K>::is_zero(a)) ++n;
        return n;
    }

  private:
    void normalize() {
        while (!c_.empty() && coeff_ops<K>::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<K> c_;
};

template <class K>
UniPoly<K> poly_gcd(UniPoly<K> a, UniPoly<K> b) {
    while (!b.is_zero()) {
        UniPoly<K> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.make_monic();
}

// Extended Euclid: returns g = gcd and u,v with u*a + v*b = g (g monic).
template <class K>
UniPoly<K> poly_xgcd(const UniPoly<K>& a, const UniPoly<K>& b, UniPoly<K>* u_out, UniPoly<K>* v_out) {
    UniPoly<K> r0 = a, r1 = b;
    UniPoly<K> s0 = UniPoly<K>::constant(coeff_ops<K>::one(a.is_zero() ? b.lead() : a.lead()));
    UniPoly<K> s1, t0, t1 = s0;
    while (!r1.is_zero()) {
        UniPoly<K> q, r;
        UniPoly<K>::divrem(r0, r1, &q, &r);
        UniPoly<K> s = s0 - q * s1;
        UniPoly<K> t = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s);
        t0 = std::move(t1); t1 = std::move(t);
    }
    if (!r0.is_zero()) {
        K inv = coeff_ops<K>::one(r0.lead()) / r0.lead();
        r0 = r0.scaled(inv);
        s0 = s0.scaled(inv);
        t0 = t0.scaled(inv);
    }
    if (u_out) *u_out = s0;
    if (v_out) *v_out = t0;
    return r0;
}

// f(g(x)) with a degree budget; the budget guards iterate blow-up.
template <class K>
UniPoly<K> poly_compose(const UniPoly<K>& f, const UniPoly<K>& g,
                        long degree_cap = Config::kDefaultDegreeCap) {
    if (f.is_zero()) return f;
    long df = std::max(f.degree(), 0L), dg = std::max(g.degree(), 0L);
    if (df > 0 && dg > 0 && df > degree_cap / dg)
        raise(ErrorKind::iterate_too_large,
              "composition degree " + std::to_string(df) + "*" + std::to_string(dg) +
                  " exceeds budget " + std::to_string(degree_cap));
    UniPoly<K> acc = UniPoly<K>::constant(f.coeffs().back());
    for (long i = f.degree() - 1; i >= 0; --i)
        acc = acc * g + UniPoly<K>::constant(f.coeff(static_cast<std::size_t>(i)));
    return acc;
}

// m-fold self-composition f^(m) (m >= 0; m = 0 is the identity map).
template <class K>
UniPoly<K> poly_iterate(const UniPoly<K>& f, long m,
                        long degree_cap = Config::kDefaultDegreeCap) {
    if (m < 0) raise(ErrorKind::domain, "negative iterate");
    if (f.is_zero()) return m == 0 ? UniPoly<K>::identity() : f;
    UniPoly<K> acc = UniPoly<K>::identity();
    for (long i = 0; i < m; ++i) acc = poly_compose(f, acc, degree_cap);
    return acc;
}

template <class K>
UniPoly<K> poly_pow(const UniPoly<K>& f, long e, long degree_cap = Config::kDefaultDegreeCap) {
    if (e < 0) raise(ErrorKind::domain, "negative polynomial power");
    if (e == 0) return UniPoly<K>::constant(coeff_ops<K>::one(f.is_zero() ? K(1) : f.lead()));
    if (f.degree() > 0 && f.degree() > degree_cap / e)
        raise(ErrorKind::iterate_too_large, "power degree exceeds budget");
    UniPoly<K> acc = f;
    for (long i = 1; i < e; ++i) acc = acc * f;
    return acc;
}

// Resultant of two univariate polynomials over a field, by the Euclidean
// remainder sequence with the standard homogeneity bookkeeping.
template <class K>
K resultant(UniPoly<K> a, UniPoly<K> b) {
    if (a.is_zero() || b.is_zero()) {
        if (a.degree() == 0) return K(1);  // res(c, 0) undefined-ish; callers avoid
        return K(0);
    }
    K one = coeff_ops<K>::one(a.lead());
    K res = one;
    bool negate = false;
    while (b.degree() > 0) {
        UniPoly<K> r = a % b;
        long da = a.degree(), db = b.degree(), dr = r.is_zero() ? -1 : r.degree();
        if ((da & 1) && (db & 1)) negate = !negate;
        if (r.is_zero()) return coeff_ops<K>::zero(one);
        // res(a,b) = (-1)^{da db} lead(b)^{da-dr} res(b,r)
        K lb = b.lead();
        K p = one;
        for (long i = 0; i < da - dr; ++i) p = p * lb;
        res = res * p;
        a = std::move(b);
        b = std::move(r);
    }
    // b is a nonzero constant: res(a, c) = c^{deg a}
    K cb = b.lead();
    K p = one;
    for (long i = 0; i < a.degree(); ++i) p = p * cb;
    res = res * p;
    return negate ? coeff_ops<K>::zero(one) - res : res;
}

using RPoly = UniPoly<Rational>;

// x^deg(f) * f(1/x): reverses the coefficient vector.
inline RPoly poly_reverse(const RPoly& f) {
    std::vector<Rational> r(f.coeffs().rbegin(), f.coeffs().rend());
    return RPoly(std::move(r));
}

} // namespace dyna
