#include "dynaheight/factor.hpp"

#include <algorithm>
#include <cstdint>

#include "dynaheight/config.hpp"

namespace dyna {

namespace {

using ZVec = std::vector<Integer>;

void z_normalize(ZVec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

long z_degree(const ZVec& v) { return static_cast<long>(v.size()) - 1; }

// ---------------------------------------------------------------------------
// GF(p) dense polynomials for a small prime p.

struct FpCtx {
    long p;
    long sub(long a, long b) const { return ((a - b) % p + p) % p; }
    long mul(long a, long b) const { return static_cast<long>((__int128)a * b % p); }
    long inv(long a) const {
        long t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
        while (nr != 0) {
            long q = r / nr;
            long tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        return (t % p + p) % p;
    }
};

using FpVec = std::vector<long>;

void fp_normalize(FpVec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

long fp_degree(const FpVec& v) { return static_cast<long>(v.size()) - 1; }

FpVec fp_mul(const FpCtx& F, const FpVec& a, const FpVec& b) {
    if (a.empty() || b.empty()) return {};
    FpVec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<long>(((__int128)a[i] * b[j] + r[i + j]) % F.p);
    }
    fp_normalize(r);
    return r;
}

void fp_divrem(const FpCtx& F, const FpVec& a, const FpVec& b, FpVec* q, FpVec* r) {
    FpVec rem = a;
    long db = fp_degree(b);
    if (db < 0) raise(ErrorKind::domain, "mod-p division by zero");
    FpVec quo(a.size() > b.size() ? a.size() - b.size() + 1 : 1, 0);
    long linv = F.inv(b.back());
    for (long i = fp_degree(rem); i >= db; --i) {
        long c = rem[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        long f = F.mul(c, linv);
        quo[static_cast<std::size_t>(i - db)] = f;
        for (long j = 0; j <= db; ++j)
            rem[static_cast<std::size_t>(i - db + j)] =
                F.sub(rem[static_cast<std::size_t>(i - db + j)], F.mul(f, b[static_cast<std::size_t>(j)]));
    }
    fp_normalize(rem);
    fp_normalize(quo);
    if (q) *q = quo;
    if (r) *r = rem;
}

FpVec fp_mod(const FpCtx& F, const FpVec& a, const FpVec& b) {
    FpVec r;
    fp_divrem(F, a, b, nullptr, &r);
    return r;
}

FpVec fp_gcd(const FpCtx& F, FpVec a, FpVec b) {
    while (!b.empty()) {
        FpVec r = fp_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        long inv = F.inv(a.back());
        for (auto& c : a) c = F.mul(c, inv);
    }
    return a;
}

FpVec fp_derivative(const FpCtx& F, const FpVec& a) {
    if (a.size() <= 1) return {};
    FpVec r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i)
        r[i - 1] = F.mul(a[i], static_cast<long>(i % static_cast<std::size_t>(F.p)));
    fp_normalize(r);
    return r;
}

FpVec fp_powmod_x(const FpCtx& F, const FpVec& f, long e) {
    FpVec base = fp_mod(F, FpVec{0, 1}, f);
    FpVec acc{1};
    while (e > 0) {
        if (e & 1) acc = fp_mod(F, fp_mul(F, acc, base), f);
        base = fp_mod(F, fp_mul(F, base, base), f);
        e >>= 1;
    }
    return acc;
}

// Berlekamp factorization of a squarefree monic f over GF(p).
std::vector<FpVec> berlekamp(const FpCtx& F, const FpVec& f) {
    long n = fp_degree(f);
    if (n <= 1) return {f};
    std::size_t un = static_cast<std::size_t>(n);

    FpVec xp = fp_powmod_x(F, f, F.p);
    std::vector<FpVec> rows(un);
    FpVec cur{1};
    for (std::size_t i = 0; i < un; ++i) {
        FpVec row = cur;
        row.resize(un, 0);
        rows[i] = std::move(row);
        cur = fp_mod(F, fp_mul(F, cur, xp), f);
    }
    // Solve (Q^T - I) v = 0: v represents a polynomial with v(x)^p = v(x) mod f.
    std::vector<FpVec> m(un, FpVec(un, 0));
    for (std::size_t i = 0; i < un; ++i)
        for (std::size_t j = 0; j < un; ++j) {
            long v = rows[i][j];
            if (i == j) v = F.sub(v, 1);
            m[j][i] = v;
        }
    std::vector<long> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < un && rank < un; ++col) {
        std::size_t sel = un;
        for (std::size_t row = rank; row < un; ++row)
            if (m[row][col] != 0) { sel = row; break; }
        if (sel == un) continue;
        std::swap(m[sel], m[rank]);
        long inv = F.inv(m[rank][col]);
        for (std::size_t j = 0; j < un; ++j) m[rank][j] = F.mul(m[rank][j], inv);
        for (std::size_t row = 0; row < un; ++row) {
            if (row == rank) continue;
            long c = m[row][col];
            if (c == 0) continue;
            for (std::size_t j = 0; j < un; ++j)
                m[row][j] = F.sub(m[row][j], F.mul(c, m[rank][j]));
        }
        pivot_col.push_back(static_cast<long>(col));
        ++rank;
    }
    std::vector<FpVec> basis;
    std::vector<bool> is_pivot(un, false);
    for (long pc : pivot_col) is_pivot[static_cast<std::size_t>(pc)] = true;
    for (std::size_t col = 0; col < un; ++col) {
        if (is_pivot[col]) continue;
        FpVec v(un, 0);
        v[col] = 1;
        for (std::size_t r = 0; r < rank; ++r)
            v[static_cast<std::size_t>(pivot_col[r])] = F.sub(0, m[r][col]);
        fp_normalize(v);
        basis.push_back(v);
    }

    std::size_t target = basis.size();
    std::vector<FpVec> factors{f};
    if (target <= 1) return factors;
    for (const FpVec& v : basis) {
        if (factors.size() >= target) break;
        if (fp_degree(v) < 1) continue;
        std::vector<FpVec> next;
        for (const FpVec& g : factors) {
            if (fp_degree(g) <= 1) {
                next.push_back(g);
                continue;
            }
            FpVec rem = g;
            for (long s = 0; s < F.p && fp_degree(rem) > 0; ++s) {
                FpVec shifted = fp_mod(F, v, rem);
                if (shifted.empty()) shifted.assign(1, 0);
                shifted[0] = F.sub(shifted[0], s);
                fp_normalize(shifted);
                if (shifted.empty()) continue;
                FpVec h = fp_gcd(F, rem, shifted);
                if (fp_degree(h) > 0 && fp_degree(h) < fp_degree(rem)) {
                    next.push_back(h);
                    FpVec q;
                    fp_divrem(F, rem, h, &q, nullptr);
                    rem = std::move(q);
                }
            }
            if (fp_degree(rem) > 0) next.push_back(rem);
        }
        factors = std::move(next);
    }
    for (auto& g : factors) {
        long inv = F.inv(g.back());
        for (auto& c : g) c = F.mul(c, inv);
    }
    return factors;
}

// ---------------------------------------------------------------------------
// Arithmetic mod m with symmetric representatives, for Hensel lifting.

Integer sym_mod(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

ZVec zm_reduce(ZVec a, const Integer& m) {
    for (auto& c : a) c = sym_mod(c, m);
    z_normalize(a);
    return a;
}

ZVec zm_mul(const ZVec& a, const ZVec& b, const Integer& m) {
    if (a.empty() || b.empty()) return {};
    ZVec r(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return zm_reduce(std::move(r), m);
}

ZVec zm_add(const ZVec& a, const ZVec& b, const Integer& m) {
    ZVec r = a;
    if (r.size() < b.size()) r.resize(b.size(), Integer(0));
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return zm_reduce(std::move(r), m);
}

ZVec zm_sub(const ZVec& a, const ZVec& b, const Integer& m) {
    ZVec r = a;
    if (r.size() < b.size()) r.resize(b.size(), Integer(0));
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return zm_reduce(std::move(r), m);
}

Integer zm_inv_scalar(const Integer& a, const Integer& m) {
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (g != 1) raise(ErrorKind::domain, "non-invertible scalar modulo lifting modulus");
    return sym_mod(s, m);
}

void zm_divrem_monic(const ZVec& a, const ZVec& b, const Integer& m, ZVec* q, ZVec* r) {
    ZVec rem = a;
    long db = z_degree(b);
    ZVec quo(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Integer(0));
    for (long i = z_degree(rem); i >= db; --i) {
        Integer c = sym_mod(rem[static_cast<std::size_t>(i)], m);
        if (c == 0) continue;
        quo[static_cast<std::size_t>(i - db)] = c;
        for (long j = 0; j <= db; ++j)
            rem[static_cast<std::size_t>(i - db + j)] -= c * b[static_cast<std::size_t>(j)];
    }
    if (q) *q = zm_reduce(std::move(quo), m);
    if (r) *r = zm_reduce(std::move(rem), m);
}

struct HenselPair { ZVec g, h, s, t; };

// One quadratic step: data valid mod m becomes valid mod m^2 (h, g monic-led
// by construction: h monic, g carries the lead).
HenselPair hensel_step(const ZVec& f, const HenselPair& in, const Integer& m) {
    Integer m2 = m * m;
    ZVec e = zm_sub(f, zm_mul(in.g, in.h, m2), m2);
    ZVec q, r;
    zm_divrem_monic(zm_mul(in.s, e, m2), in.h, m2, &q, &r);
    ZVec g2 = zm_add(in.g, zm_add(zm_mul(in.t, e, m2), zm_mul(q, in.g, m2), m2), m2);
    ZVec h2 = zm_add(in.h, r, m2);
    ZVec b = zm_sub(zm_add(zm_mul(in.s, g2, m2), zm_mul(in.t, h2, m2), m2), ZVec{Integer(1)}, m2);
    ZVec c, d;
    zm_divrem_monic(zm_mul(in.s, b, m2), h2, m2, &c, &d);
    ZVec s2 = zm_sub(in.s, d, m2);
    ZVec t2 = zm_sub(in.t, zm_add(zm_mul(in.t, b, m2), zm_mul(c, g2, m2), m2), m2);
    return {g2, h2, s2, t2};
}

void fp_bezout(const FpCtx& F, const FpVec& g, const FpVec& h, ZVec* s_out, ZVec* t_out) {
    FpVec r0 = g, r1 = h;
    FpVec s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        FpVec q, r;
        fp_divrem(F, r0, r1, &q, &r);
        FpVec qs = fp_mul(F, q, s1), qt = fp_mul(F, q, t1);
        FpVec s2 = s0, t2 = t0;
        s2.resize(std::max(s2.size(), qs.size()), 0);
        for (std::size_t i = 0; i < qs.size(); ++i) s2[i] = F.sub(s2[i], qs[i]);
        fp_normalize(s2);
        t2.resize(std::max(t2.size(), qt.size()), 0);
        for (std::size_t i = 0; i < qt.size(); ++i) t2[i] = F.sub(t2[i], qt[i]);
        fp_normalize(t2);
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (fp_degree(r0) != 0)
        raise(ErrorKind::domain, "modular factors not coprime in Hensel setup");
    long inv = F.inv(r0[0]);
    ZVec s(s0.size()), t(t0.size());
    for (std::size_t i = 0; i < s0.size(); ++i) s[i] = Integer(F.mul(s0[i], inv));
    for (std::size_t i = 0; i < t0.size(); ++i) t[i] = Integer(F.mul(t0[i], inv));
    *s_out = std::move(s);
    *t_out = std::move(t);
}

// Lift all modular factors of monic `f_mod` (valid mod p^(2^rounds)) from
// their mod-p images by a binary product tree.
std::vector<ZVec> hensel_lift_tree(const FpCtx& F, const ZVec& f_mod,
                                   const std::vector<FpVec>& mod_factors,
                                   const Integer& p, int rounds) {
    if (mod_factors.size() == 1) return {f_mod};
    std::size_t half = mod_factors.size() / 2;
    std::vector<FpVec> left(mod_factors.begin(), mod_factors.begin() + static_cast<long>(half));
    std::vector<FpVec> right(mod_factors.begin() + static_cast<long>(half), mod_factors.end());
    FpVec gp{1}, hp{1};
    for (const auto& u : left) gp = fp_mul(F, gp, u);
    for (const auto& u : right) hp = fp_mul(F, hp, u);

    ZVec g(gp.size()), h(hp.size()), s, t;
    for (std::size_t i = 0; i < gp.size(); ++i) g[i] = Integer(gp[i]);
    for (std::size_t i = 0; i < hp.size(); ++i) h[i] = Integer(hp[i]);
    fp_bezout(F, gp, hp, &s, &t);

    HenselPair pair{zm_reduce(std::move(g), p), zm_reduce(std::move(h), p),
                    zm_reduce(std::move(s), p), zm_reduce(std::move(t), p)};
    Integer m = p;
    for (int i = 0; i < rounds; ++i) {
        pair = hensel_step(f_mod, pair, m);
        m *= m;
    }
    std::vector<ZVec> out = hensel_lift_tree(F, pair.g, left, p, rounds);
    std::vector<ZVec> rhs = hensel_lift_tree(F, pair.h, right, p, rounds);
    out.insert(out.end(), rhs.begin(), rhs.end());
    return out;
}

RPoly rpoly_from_z(const ZVec& v) {
    std::vector<Rational> c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = Rational(v[i]);
    return RPoly(std::move(c));
}

// Mignotte-style bound: any integer factor of P has coefficients bounded by
// 2^deg * ||P||_2; the recombination products also carry the lead factor.
Integer factor_coeff_bound(const ZVec& P) {
    Integer norm2(0);
    for (const auto& c : P) norm2 += c * c;
    Integer b = sqrt(norm2) + 1;
    for (long i = 0; i < z_degree(P); ++i) b *= 2;
    return b * abs(P.back());
}

std::vector<RPoly> factor_squarefree_integer(const ZVec& P) {
    long n = z_degree(P);
    if (n == 1) return {rpoly_from_z(P).make_monic()};

    static const long kPrimes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                                   53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107,
                                   109, 113, 127, 131, 137, 139, 149};
    FpCtx best{0};
    std::vector<FpVec> best_factors;
    int usable = 0;
    for (long p : kPrimes) {
        if (mpz_fdiv_ui(P.back().get_mpz_t(), static_cast<unsigned long>(p)) == 0) continue;
        FpCtx F{p};
        FpVec fp(P.size());
        for (std::size_t i = 0; i < P.size(); ++i)
            fp[i] = static_cast<long>(mpz_fdiv_ui(P[i].get_mpz_t(), static_cast<unsigned long>(p)));
        fp_normalize(fp);
        if (fp_degree(fp) != n) continue;
        FpVec d = fp_derivative(F, fp);
        if (d.empty() || fp_degree(fp_gcd(F, fp, d)) != 0) continue;
        long inv = F.inv(fp.back());
        for (auto& c : fp) c = F.mul(c, inv);
        std::vector<FpVec> fac = berlekamp(F, fp);
        if (best_factors.empty() || fac.size() < best_factors.size()) {
            best = F;
            best_factors = std::move(fac);
        }
        if (best_factors.size() == 1) return {rpoly_from_z(P).make_monic()};
        if (++usable >= 4) break;
    }
    if (best_factors.empty())
        raise(ErrorKind::unsupported, "no usable small prime for factorization");

    Integer bound = 2 * factor_coeff_bound(P);
    Integer p(best.p);
    Integer modulus = p;
    int rounds = 0;
    while (modulus <= bound) {
        modulus *= modulus;
        ++rounds;
    }
    ZVec f_monic(P.size());
    Integer lead_inv = zm_inv_scalar(sym_mod(P.back(), modulus), modulus);
    for (std::size_t i = 0; i < P.size(); ++i) f_monic[i] = sym_mod(P[i] * lead_inv, modulus);
    std::vector<ZVec> lifted = hensel_lift_tree(best, f_monic, best_factors, p, rounds);

    // Recombine lifted factors by subsets of increasing cardinality; each hit
    // peels a true irreducible factor off `remaining`.
    RPoly remaining = rpoly_from_z(P);
    std::vector<bool> used(lifted.size(), false);
    std::vector<RPoly> out;
    std::size_t card = 1;
    while (true) {
        std::vector<std::size_t> avail;
        for (std::size_t i = 0; i < lifted.size(); ++i)
            if (!used[i]) avail.push_back(i);
        if (avail.empty() || 2 * card > avail.size()) break;

        Integer lead = remaining.lead().get_num();
        bool hit = false;
        std::vector<std::size_t> sel(card);
        for (std::size_t i = 0; i < card; ++i) sel[i] = i;
        while (!hit) {
            ZVec prod{lead};
            for (std::size_t i = 0; i < card; ++i)
                prod = zm_mul(prod, lifted[avail[sel[i]]], modulus);
            RPoly cand = rpoly_from_z(zm_reduce(std::move(prod), modulus));
            if (!cand.is_zero()) {
                auto [pc, scale] = primitive_integer_coeffs(cand);
                RPoly cand_prim = rpoly_from_z(pc);
                RPoly q, r;
                RPoly::divrem(remaining, cand_prim, &q, &r);
                if (r.is_zero() && cand_prim.degree() > 0) {
                    out.push_back(cand_prim.make_monic());
                    for (std::size_t i = 0; i < card; ++i) used[avail[sel[i]]] = true;
                    auto [rp, rscale] = primitive_integer_coeffs(q);
                    remaining = rpoly_from_z(rp);
                    hit = true;
                    break;
                }
            }
            long pos = static_cast<long>(card) - 1;
            while (pos >= 0 &&
                   sel[static_cast<std::size_t>(pos)] ==
                       avail.size() - card + static_cast<std::size_t>(pos))
                --pos;
            if (pos < 0) break;
            ++sel[static_cast<std::size_t>(pos)];
            for (std::size_t i = static_cast<std::size_t>(pos) + 1; i < card; ++i)
                sel[i] = sel[i - 1] + 1;
        }
        if (!hit) ++card;
        if (remaining.degree() <= 0) break;
    }
    if (remaining.degree() > 0) out.push_back(remaining.make_monic());
    return out;
}

} // namespace

std::pair<std::vector<Integer>, Rational> primitive_integer_coeffs(const RPoly& p) {
    if (p.is_zero()) return {{}, Rational(0)};
    Integer lcm_den(1);
    for (const auto& c : p.coeffs()) {
        Integer d = c.get_den();
        Integer g = gcd(lcm_den, d);
        lcm_den = lcm_den / g * d;
    }
    std::vector<Integer> z(p.coeffs().size());
    Integer content(0);
    for (std::size_t i = 0; i < z.size(); ++i) {
        z[i] = p.coeffs()[i].get_num() * (lcm_den / p.coeffs()[i].get_den());
        content = gcd(content, z[i]);
    }
    if (z.back() < 0) content = -content;
    for (auto& c : z) c /= content;
    return {z, make_rational(content, lcm_den)};
}

std::vector<std::pair<RPoly, int>> squarefree_decomposition(const RPoly& p) {
    if (p.is_zero()) raise(ErrorKind::domain, "squarefree decomposition of zero");
    std::vector<std::pair<RPoly, int>> out;
    RPoly f = p.make_monic();
    if (f.degree() == 0) return out;
    RPoly fp = f.derivative();
    RPoly a = poly_gcd(f, fp);
    RPoly b = f / a;
    RPoly c = fp / a;
    RPoly d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        RPoly g = poly_gcd(b, d);
        if (g.degree() > 0) out.emplace_back(g, i);
        b = b / g;
        c = d / g;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

RationalFactorization factor_rational(const RPoly& p) {
    if (p.is_zero()) raise(ErrorKind::domain, "factorization of zero polynomial");
    if (p.degree() > Config::kFactorDegreeCap)
        raise(ErrorKind::unsupported,
              "factorization degree " + std::to_string(p.degree()) + " above cap " +
                  std::to_string(Config::kFactorDegreeCap));
    RationalFactorization out;
    out.lead = p.lead();
    if (p.degree() == 0) return out;
    for (const auto& [part, mult] : squarefree_decomposition(p)) {
        auto [z, scale] = primitive_integer_coeffs(part);
        for (const RPoly& irr : factor_squarefree_integer(z))
            out.factors.emplace_back(irr, mult);
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.coeffs() < b.first.coeffs();
    });
    return out;
}

bool is_irreducible(const RPoly& p) {
    if (p.degree() <= 0) return false;
    if (p.degree() == 1) return true;
    RationalFactorization f = factor_rational(p);
    return f.factors.size() == 1 && f.factors[0].second == 1;
}

} // namespace dyna
