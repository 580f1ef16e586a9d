#include "dynaheight/algebraic.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <utility>

namespace dyna {

namespace {

// Hard ceiling for adaptive working precision; hitting it means the input is
// outside the numeric comfort zone of this tool, so fail loudly.
constexpr long kPrecCap = 1L << 22;

BigFloat raise_precision(const BigFloat& x, long prec) {
    BigFloat r(prec);
    mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

std::vector<CFloat> to_cfloats(const RPoly& f, long prec) {
    std::vector<CFloat> out;
    out.reserve(f.coeffs().size());
    for (const auto& q : f.coeffs())
        out.emplace_back(BigFloat::from_rational(q, MPFR_RNDN, prec), BigFloat(prec));
    return out;
}

std::vector<ComplexBox> to_boxes(const RPoly& f, long prec) {
    std::vector<ComplexBox> out;
    out.reserve(f.coeffs().size());
    RealInterval zero = RealInterval::exact(0, prec);
    for (const auto& q : f.coeffs())
        out.emplace_back(RealInterval::from_rational(q, prec), zero);
    return out;
}

void cf_eval2(const std::vector<CFloat>& c, const CFloat& z, CFloat* val, CFloat* der) {
    CFloat v = c.back();
    CFloat d{BigFloat(z.re.precision()), BigFloat(z.re.precision())};
    for (long i = static_cast<long>(c.size()) - 2; i >= 0; --i) {
        d = d * z + v;
        v = v * z + c[static_cast<std::size_t>(i)];
    }
    *val = std::move(v);
    *der = std::move(d);
}

ComplexBox box_eval(const std::vector<ComplexBox>& c, const ComplexBox& z) {
    ComplexBox acc = c.back();
    for (long i = static_cast<long>(c.size()) - 2; i >= 0; --i)
        acc = acc * z + c[static_cast<std::size_t>(i)];
    return acc;
}

ComplexBox point_box(const CFloat& z) {
    return ComplexBox(RealInterval(z.re, z.re), RealInterval(z.im, z.im));
}

// Scale by a positive rational so coefficients are coprime integers; keeps
// every sign, which is what the sign-variation counts below rely on.
RPoly positive_primitive(const RPoly& p) {
    if (p.is_zero()) return p;
    Integer den(1);
    for (const auto& q : p.coeffs()) {
        Integer d = q.get_den();
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
    std::vector<Rational> v;
    v.reserve(p.coeffs().size());
    Integer content(0);
    for (const auto& q : p.coeffs()) {
        Rational r = q * Rational(den);
        Integer n = r.get_num();
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), n.get_mpz_t());
        v.push_back(std::move(r));
    }
    for (auto& r : v) r /= Rational(content);
    return RPoly(std::move(v));
}

std::vector<RPoly> sturm_chain(const RPoly& f) {
    std::vector<RPoly> chain;
    chain.push_back(positive_primitive(f));
    RPoly d = positive_primitive(f.derivative());
    if (d.is_zero()) return chain;
    chain.push_back(std::move(d));
    for (;;) {
        RPoly r = chain[chain.size() - 2] % chain.back();
        if (r.is_zero()) break;
        chain.push_back(positive_primitive(-r));
    }
    return chain;
}

int sign_variations(const std::vector<RPoly>& chain, const Rational& x) {
    int count = 0, last = 0;
    for (const auto& s : chain) {
        int sg = sgn(s.eval(x));
        if (sg == 0) continue;
        if (last != 0 && sg != last) ++count;
        last = sg;
    }
    return count;
}

// All roots lie strictly inside |z| < bound.
Rational cauchy_bound(const RPoly& f) {
    Rational m(0);
    Rational lead = abs(f.lead());
    for (long i = 0; i < f.degree(); ++i) {
        Rational c = abs(f.coeff(static_cast<std::size_t>(i))) / lead;
        if (c > m) m = std::move(c);
    }
    return m + 1;
}

// Certified enclosures for every root of a monic irreducible f (degree >= 2)
// from converged approximations z: inclusion disks of radius
// n*|f(z_i)| / |lead * prod_{j!=i}(z_i - z_j)| around each point.  Succeeds
// only when the disks are pairwise far apart (radius <= separation/8) and
// tighter than `targ`; roots on the real axis come back with an exactly-zero
// imaginary interval, pinned through a sign-variation count.
bool certify_roots(const RPoly& f, const std::vector<CFloat>& z, long wp,
                   const BigFloat& targ, std::vector<ComplexBox>* out) {
    const long n = f.degree();
    auto cb = to_boxes(f, wp);
    std::vector<ComplexBox> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (const auto& zz : z) pts.push_back(point_box(zz));

    std::vector<BigFloat> radius;
    radius.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        ComplexBox val = box_eval(cb, pts[static_cast<std::size_t>(i)]);
        ComplexBox prod = cb.back();
        for (long j = 0; j < n; ++j) {
            if (j == i) continue;
            prod = prod * (pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(j)]);
        }
        if (prod.contains_zero()) return false;
        BigFloat r = mul_long((val / prod).abs(), n).hi();
        if (r.is_nan() || r.is_inf()) return false;
        radius.push_back(std::move(r));
    }

    BigFloat sep_low = BigFloat::pos_inf(wp);
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j) {
            BigFloat d = (pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(j)]).abs().lo();
            BigFloat gap = bf_sub(d,
                                  bf_add(radius[static_cast<std::size_t>(i)],
                                         radius[static_cast<std::size_t>(j)], MPFR_RNDU),
                                  MPFR_RNDD);
            sep_low = bf_min(sep_low, gap);
        }
    if (n >= 2 && sep_low.sign() <= 0) return false;
    BigFloat rad_cap = n >= 2 ? bf_mul_2exp(sep_low, -3) : BigFloat::pos_inf(wp);
    for (const auto& r : radius)
        if (r > rad_cap || r > targ) return false;

    std::vector<RPoly> chain;
    out->clear();
    for (long i = 0; i < n; ++i) {
        const auto& zi = z[static_cast<std::size_t>(i)];
        const auto& ri = radius[static_cast<std::size_t>(i)];
        RealInterval re(bf_sub(zi.re, ri, MPFR_RNDD), bf_add(zi.re, ri, MPFR_RNDU));
        RealInterval im(bf_sub(zi.im, ri, MPFR_RNDD), bf_add(zi.im, ri, MPFR_RNDU));
        if (!im.contains_zero()) {
            out->emplace_back(std::move(re), std::move(im));
            continue;
        }
        // A disk this small touching the axis must hold a real root: a
        // non-real root here would put its conjugate within the certified
        // separation.  Pin it exactly with a sign-variation count.
        if (chain.empty()) chain = sturm_chain(f);
        Rational a = re.lo().to_rational();
        Rational b = re.hi().to_rational();
        if (sign_variations(chain, a) - sign_variations(chain, b) != 1) return false;
        Rational width = ri.to_rational();
        if (width == 0) width = b - a;
        int sa = sgn(f.eval(a));
        while (b - a > width) {
            Rational m = (a + b) / 2;
            int sm = sgn(f.eval(m));
            if (sm == 0) return false;  // irreducible non-linear: cannot happen
            if (sa * sm < 0) {
                b = std::move(m);
            } else {
                a = std::move(m);
                sa = sm;
            }
        }
        out->emplace_back(RealInterval(BigFloat::from_rational(a, MPFR_RNDD, wp),
                                       BigFloat::from_rational(b, MPFR_RNDU, wp)),
                          RealInterval::exact(0, wp));
    }
    return true;
}

// Simultaneous root refinement (Aberth-Ehrlich) with deterministic seeding,
// escalating working precision until the certificate above lands.
std::vector<ComplexBox> isolate_irreducible_fresh(const RPoly& f, long prec) {
    const long n = f.degree();
    if (n < 1) raise(ErrorKind::domain, "root isolation needs a non-constant polynomial");
    long wp = std::max(prec, 64L);
    BigFloat targ = bf_mul_2exp(BigFloat::from_long(1, 32), -(std::max(prec, 64L) / 4));

    if (n == 1) {
        Rational root = -f.coeff(0) / f.lead();
        for (;;) {
            if (wp > kPrecCap) raise(ErrorKind::precision, "rational enclosure exceeded precision cap");
            ComplexBox b = ComplexBox::from_rational(root, wp);
            if (b.disk_radius() <= targ) return {std::move(b)};
            wp *= 2;
        }
    }

    std::vector<CFloat> z;
    long seed_bump = 0;
    auto reseed = [&](long at) {
        z.clear();
        BigFloat r0 = BigFloat::from_rational(cauchy_bound(f), MPFR_RNDU, at);
        for (long k = 0; k < n; ++k) {
            auto dir = bf_unit_direction(4 * k + 1 + 2 * seed_bump, 4 * n, at);
            BigFloat rk = bf_mul(
                r0, BigFloat::from_double(0.35 + 0.55 * double(k + 1) / double(n + 1), at),
                MPFR_RNDN);
            z.emplace_back(bf_mul(rk, dir.first, MPFR_RNDN), bf_mul(rk, dir.second, MPFR_RNDN));
        }
    };
    reseed(wp);

    for (;;) {
        if (wp > kPrecCap) raise(ErrorKind::precision, "root isolation exceeded precision cap");
        auto cs = to_cfloats(f, wp);
        for (auto& zz : z) {
            zz.re = raise_precision(zz.re, wp);
            zz.im = raise_precision(zz.im, wp);
        }
        const CFloat one{BigFloat::from_long(1, wp), BigFloat(wp)};
        BigFloat tol2 = bf_mul_2exp(BigFloat::from_long(1, 32), -2 * (wp - 8));
        bool degenerate = false;
        for (long it = 0; it < 400 && !degenerate; ++it) {
            BigFloat worst(32);
            for (long i = 0; i < n; ++i) {
                CFloat val, der;
                cf_eval2(cs, z[static_cast<std::size_t>(i)], &val, &der);
                if (val.abs2().is_zero()) continue;
                if (der.abs2().is_zero()) { degenerate = true; break; }
                CFloat newton = val / der;
                CFloat s{BigFloat(wp), BigFloat(wp)};
                for (long j = 0; j < n; ++j) {
                    if (j == i) continue;
                    CFloat d = z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
                    if (d.abs2().is_zero()) { degenerate = true; break; }
                    s = s + one / d;
                }
                if (degenerate) break;
                CFloat denom = one - newton * s;
                CFloat w = denom.abs2().is_zero() ? newton : newton / denom;
                if (w.re.is_nan() || w.im.is_nan() || w.re.is_inf() || w.im.is_inf()) {
                    degenerate = true;
                    break;
                }
                z[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)] - w;
                BigFloat rel = bf_div(
                    w.abs2(),
                    bf_max(BigFloat::from_long(1, 32), z[static_cast<std::size_t>(i)].abs2()),
                    MPFR_RNDN);
                worst = bf_max(worst, rel);
            }
            if (!degenerate && worst <= tol2) break;
        }
        if (!degenerate) {
            std::vector<ComplexBox> boxes;
            if (certify_roots(f, z, wp, targ, &boxes)) return boxes;
        } else {
            ++seed_bump;
        }
        wp *= 2;
        if (degenerate) reseed(wp);
    }
}

std::vector<ComplexBox> isolate_irreducible_cached(const RPoly& f, long prec) {
    static std::mutex mu;
    static std::map<std::pair<std::string, long>, std::vector<ComplexBox>> memo;
    std::string key;
    for (const auto& q : f.coeffs()) {
        key += to_string(q);
        key += '|';
    }
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find({key, prec});
        if (it != memo.end()) return it->second;
    }
    auto boxes = isolate_irreducible_fresh(f, prec);
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(std::make_pair(std::move(key), prec), boxes);
    return boxes;
}

using QVec = std::vector<Rational>;

// Incremental row reduction that remembers how each reduced vector was built
// from the inserted ones; a vector reducing to zero hands back that recipe.
struct DependencyBasis {
    struct Row {
        QVec vec;
        QVec expr;
        std::size_t pivot;
    };
    std::vector<Row> rows;

    std::optional<QVec> insert(QVec vec, QVec expr) {
        for (const auto& row : rows) {
            Rational c = vec[row.pivot];
            if (c == 0) continue;
            for (std::size_t t = 0; t < vec.size(); ++t)
                if (row.vec[t] != 0) vec[t] -= c * row.vec[t];
            if (expr.size() < row.expr.size()) expr.resize(row.expr.size(), Rational(0));
            for (std::size_t t = 0; t < row.expr.size(); ++t)
                if (row.expr[t] != 0) expr[t] -= c * row.expr[t];
        }
        std::size_t piv = vec.size();
        for (std::size_t t = 0; t < vec.size(); ++t)
            if (vec[t] != 0) { piv = t; break; }
        if (piv == vec.size()) return expr;
        Rational inv = vec[piv];
        for (auto& x : vec) x /= inv;
        for (auto& x : expr) x /= inv;
        rows.push_back(Row{std::move(vec), std::move(expr), piv});
        return std::nullopt;
    }
};

// Monic minimal polynomial of an algebra element from the first linear
// dependency among its powers.  `mul` is multiplication by the element in
// coordinates; `unit` represents 1.
RPoly min_poly_from_powers(std::size_t dim, QVec unit,
                           const std::function<QVec(const QVec&)>& mul) {
    DependencyBasis basis;
    QVec cur = std::move(unit);
    for (std::size_t k = 0; k <= dim; ++k) {
        QVec expr(k + 1, Rational(0));
        expr[k] = 1;
        if (auto dep = basis.insert(cur, std::move(expr))) return RPoly(std::move(*dep));
        cur = mul(cur);
    }
    raise(ErrorKind::domain, "powers stayed independent beyond the algebra dimension");
}

// Multiplication by g in Q[y]/(m) on coefficient vectors.
std::function<QVec(const QVec&)> field_mul(const RPoly& m, const RPoly& g) {
    return [m, g](const QVec& v) {
        RPoly prod = (RPoly(QVec(v)) * g) % m;
        QVec out(static_cast<std::size_t>(m.degree()), Rational(0));
        for (long i = 0; i <= prod.degree(); ++i)
            out[static_cast<std::size_t>(i)] = prod.coeff(static_cast<std::size_t>(i));
        return out;
    };
}

// The ring Q[y]/(m1) tensor Q[y]/(m2) in the basis y^i z^j; both inputs are
// monic, so reduction rows come straight from their lower coefficients.
struct TensorRing {
    std::size_t d1, d2;
    const RPoly& m1;
    const RPoly& m2;

    QVec mul_y(const QVec& v) const {
        QVec out(d1 * d2, Rational(0));
        for (std::size_t i = 0; i < d1; ++i)
            for (std::size_t j = 0; j < d2; ++j) {
                const Rational& c = v[i * d2 + j];
                if (c == 0) continue;
                if (i + 1 < d1) {
                    out[(i + 1) * d2 + j] += c;
                } else {
                    for (std::size_t t = 0; t < d1; ++t)
                        out[t * d2 + j] -= c * m1.coeff(t);
                }
            }
        return out;
    }

    QVec mul_z(const QVec& v) const {
        QVec out(d1 * d2, Rational(0));
        for (std::size_t i = 0; i < d1; ++i)
            for (std::size_t j = 0; j < d2; ++j) {
                const Rational& c = v[i * d2 + j];
                if (c == 0) continue;
                if (j + 1 < d2) {
                    out[i * d2 + j + 1] += c;
                } else {
                    for (std::size_t t = 0; t < d2; ++t)
                        out[i * d2 + t] -= c * m2.coeff(t);
                }
            }
        return out;
    }
};

// Pick the root of one of the given irreducible polynomials that the value
// enclosed by `enclose` designates, escalating precision until the enclosure
// meets exactly one certified root box.  `enclose` may return nothing to ask
// for more precision (e.g. a divisor box still straddling zero).
AlgebraicNumber designate_root(const std::vector<RPoly>& factors,
                               const std::function<std::optional<ComplexBox>(long)>& enclose,
                               long prec0) {
    long wp = std::max(prec0, 64L);
    for (;;) {
        if (wp > kPrecCap) raise(ErrorKind::precision, "root designation exceeded precision cap");
        if (auto zbox = enclose(wp)) {
            const RPoly* poly = nullptr;
            ComplexBox hit;
            int hits = 0;
            for (const auto& f : factors) {
                auto boxes = isolate_irreducible_cached(f, wp);
                for (auto& b : boxes) {
                    if (!b.intersects(*zbox)) continue;
                    ++hits;
                    poly = &f;
                    hit = std::move(b);
                }
            }
            if (hits == 1) return AlgebraicNumber(*poly, std::move(hit), wp);
        }
        wp *= 2;
    }
}

AlgebraicNumber shifted(const AlgebraicNumber& a, const Rational& q) {
    if (q == 0) return a;
    RPoly line(QVec{-q, Rational(1)});
    RPoly m = poly_compose(a.min_poly(), line);
    ComplexBox box = a.box() + ComplexBox::from_rational(q, a.precision());
    return AlgebraicNumber(std::move(m), std::move(box), a.precision());
}

AlgebraicNumber scaled_by(const AlgebraicNumber& a, const Rational& q) {
    if (q == 0) return AlgebraicNumber::from_long(0);
    if (q == 1) return a;
    QVec coeffs;
    const long d = a.min_poly().degree();
    coeffs.reserve(static_cast<std::size_t>(d) + 1);
    for (long i = 0; i <= d; ++i)
        coeffs.push_back(a.min_poly().coeff(static_cast<std::size_t>(i)) * rational_pow(q, d - i));
    ComplexBox box = a.box() * ComplexBox::from_rational(q, a.precision());
    return AlgebraicNumber(RPoly(std::move(coeffs)), std::move(box), a.precision());
}

} // namespace

AlgebraicNumber::AlgebraicNumber(RPoly min_poly, ComplexBox box, long prec)
    : min_poly_(std::move(min_poly)), box_(std::move(box)), prec_(prec) {
    if (min_poly_.degree() < 1)
        raise(ErrorKind::domain, "minimal polynomial must be non-constant");
    if (!min_poly_.is_monic()) min_poly_ = min_poly_.make_monic();
}

AlgebraicNumber AlgebraicNumber::from_rational(const Rational& q) {
    RPoly m(std::vector<Rational>{-q, Rational(1)});
    long prec = Config::precision_bits();
    return AlgebraicNumber(std::move(m), ComplexBox::from_rational(q, prec), prec);
}

Rational AlgebraicNumber::rational_value() const {
    if (!is_rational()) raise(ErrorKind::domain, "value is irrational");
    return -min_poly_.coeff(0);
}

bool AlgebraicNumber::is_zero() const {
    return min_poly_.degree() == 1 && min_poly_.coeff(0) == 0;
}

int AlgebraicNumber::sign() const {
    if (!is_real()) raise(ErrorKind::domain, "sign of a non-real value");
    if (is_rational()) return sgn(rational_value());
    AlgebraicNumber cur = *this;
    for (long bits = 64; bits <= kPrecCap; bits *= 2) {
        int s = 0;
        if (cur.box_.re().certain_sign(&s)) return s;
        cur = cur.refined(bits);
    }
    raise(ErrorKind::precision, "sign undecidable within precision cap");
}

AlgebraicNumber AlgebraicNumber::refined(long bits) const {
    if (bits < 16) bits = 16;
    BigFloat targ = bf_mul_2exp(BigFloat::from_long(1, 32), -bits);
    if (box_.disk_radius() <= targ) return *this;
    if (is_rational()) {
        long wp = std::max(prec_, bits + 32);
        Rational q = rational_value();
        for (;;) {
            if (wp > kPrecCap) raise(ErrorKind::precision, "refinement exceeded precision cap");
            ComplexBox b = ComplexBox::from_rational(q, wp);
            if (b.disk_radius() <= targ) return AlgebraicNumber(min_poly_, std::move(b), wp);
            wp *= 2;
        }
    }
    long wp = std::max(prec_, 4 * (bits + 16));
    for (;;) {
        if (wp > kPrecCap) raise(ErrorKind::precision, "refinement exceeded precision cap");
        auto boxes = isolate_irreducible_cached(min_poly_, wp);
        const ComplexBox* hit = nullptr;
        int hits = 0;
        for (const auto& b : boxes)
            if (b.intersects(box_)) { hit = &b; ++hits; }
        if (hits == 1 && hit->disk_radius() <= targ)
            return AlgebraicNumber(min_poly_, *hit, wp);
        wp *= 2;
    }
}

bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    return a.min_poly_ == b.min_poly_ && a.box_.intersects(b.box_);
}

std::string AlgebraicNumber::str() const {
    if (min_poly_.degree() == 1) return to_string(rational_value());
    char buf[160];
    std::snprintf(buf, sizeof buf, "alg(deg %ld) ~ %.12g%+.12gi", degree(),
                  box_.re().midpoint().to_double(), box_.im().midpoint().to_double());
    return std::string(buf);
}

std::vector<AlgebraicNumber> isolate_roots(const RPoly& p, long prec) {
    if (p.is_zero()) raise(ErrorKind::domain, "every value is a root of the zero polynomial");
    std::vector<AlgebraicNumber> out;
    if (p.degree() == 0) return out;
    long wp = std::max(prec, 64L);
    auto fact = factor_rational(p);
    for (const auto& [f, mult] : fact.factors) {
        auto boxes = isolate_irreducible_cached(f, wp);
        for (const auto& b : boxes)
            for (int t = 0; t < mult; ++t) out.emplace_back(f, b, wp);
    }
    std::sort(out.begin(), out.end(), [](const AlgebraicNumber& x, const AlgebraicNumber& y) {
        int c = cmp(x.box().re().midpoint(), y.box().re().midpoint());
        if (c != 0) return c < 0;
        c = cmp(x.box().im().midpoint(), y.box().im().midpoint());
        if (c != 0) return c < 0;
        if (x.degree() != y.degree()) return x.degree() < y.degree();
        return x.min_poly().coeffs() < y.min_poly().coeffs();
    });
    return out;
}

std::vector<AlgebraicNumber> isolate_real_roots(const RPoly& p, long prec) {
    std::vector<AlgebraicNumber> out;
    for (auto& r : isolate_roots(p, prec))
        if (r.is_real()) out.push_back(std::move(r));
    return out;
}

int sturm_count(const RPoly& squarefree, const Rational& a, const Rational& b) {
    if (squarefree.is_zero()) raise(ErrorKind::domain, "sign variations of the zero polynomial");
    if (a > b) raise(ErrorKind::domain, "empty interval");
    if (a == b) return 0;
    RPoly f = squarefree;
    RPoly g = poly_gcd(f, f.derivative());
    if (g.degree() > 0) f = f / g;
    if (f.eval(a) == 0 || f.eval(b) == 0)
        raise(ErrorKind::domain, "interval endpoint is a root");
    auto chain = sturm_chain(f);
    return sign_variations(chain, a) - sign_variations(chain, b);
}

AlgebraicNumber algebraic_eval(const RPoly& p, const AlgebraicNumber& a) {
    if (p.is_zero()) return AlgebraicNumber::from_long(0);
    if (a.is_rational()) return AlgebraicNumber::from_rational(p.eval(a.rational_value()));
    RPoly rep = p % a.min_poly();
    if (rep.is_zero()) return AlgebraicNumber::from_long(0);
    if (rep.degree() == 0) return AlgebraicNumber::from_rational(rep.coeff(0));
    const std::size_t dim = static_cast<std::size_t>(a.min_poly().degree());
    QVec unit(dim, Rational(0));
    unit[0] = 1;
    RPoly m = min_poly_from_powers(dim, std::move(unit), field_mul(a.min_poly(), rep));
    if (m.degree() == 1) return AlgebraicNumber::from_rational(-m.coeff(0));
    auto enclose = [rep, a](long wp) -> std::optional<ComplexBox> {
        return box_eval(to_boxes(rep, wp), a.refined(wp).box());
    };
    return designate_root({std::move(m)}, enclose, a.precision());
}

AlgebraicNumber alg_add(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (a.is_rational() && b.is_rational())
        return AlgebraicNumber::from_rational(a.rational_value() + b.rational_value());
    if (b.is_rational()) return shifted(a, b.rational_value());
    if (a.is_rational()) return shifted(b, a.rational_value());
    TensorRing ring{static_cast<std::size_t>(a.min_poly().degree()),
                    static_cast<std::size_t>(b.min_poly().degree()), a.min_poly(), b.min_poly()};
    QVec unit(ring.d1 * ring.d2, Rational(0));
    unit[0] = 1;
    RPoly vanishing = min_poly_from_powers(ring.d1 * ring.d2, std::move(unit), [&](const QVec& v) {
        QVec y = ring.mul_y(v), z = ring.mul_z(v);
        for (std::size_t t = 0; t < y.size(); ++t) y[t] += z[t];
        return y;
    });
    auto fact = factor_rational(vanishing);
    std::vector<RPoly> factors;
    factors.reserve(fact.factors.size());
    for (auto& [f, mult] : fact.factors) factors.push_back(std::move(f));
    auto enclose = [a, b](long wp) -> std::optional<ComplexBox> {
        return a.refined(wp).box() + b.refined(wp).box();
    };
    return designate_root(factors, enclose, std::max(a.precision(), b.precision()));
}

AlgebraicNumber alg_sub(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    return alg_add(a, alg_neg(b));
}

AlgebraicNumber alg_mul(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (a.is_rational() && b.is_rational())
        return AlgebraicNumber::from_rational(a.rational_value() * b.rational_value());
    if (b.is_rational()) return scaled_by(a, b.rational_value());
    if (a.is_rational()) return scaled_by(b, a.rational_value());
    TensorRing ring{static_cast<std::size_t>(a.min_poly().degree()),
                    static_cast<std::size_t>(b.min_poly().degree()), a.min_poly(), b.min_poly()};
    QVec unit(ring.d1 * ring.d2, Rational(0));
    unit[0] = 1;
    RPoly vanishing = min_poly_from_powers(ring.d1 * ring.d2, std::move(unit), [&](const QVec& v) {
        return ring.mul_y(ring.mul_z(v));
    });
    auto fact = factor_rational(vanishing);
    std::vector<RPoly> factors;
    factors.reserve(fact.factors.size());
    for (auto& [f, mult] : fact.factors) factors.push_back(std::move(f));
    auto enclose = [a, b](long wp) -> std::optional<ComplexBox> {
        return a.refined(wp).box() * b.refined(wp).box();
    };
    return designate_root(factors, enclose, std::max(a.precision(), b.precision()));
}

AlgebraicNumber alg_div(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    return alg_mul(a, alg_inv(b));
}

AlgebraicNumber alg_neg(const AlgebraicNumber& a) {
    if (a.is_rational()) return AlgebraicNumber::from_rational(-a.rational_value());
    RPoly flip(std::vector<Rational>{Rational(0), Rational(-1)});
    RPoly m = poly_compose(a.min_poly(), flip).make_monic();
    return AlgebraicNumber(std::move(m), -a.box(), a.precision());
}

AlgebraicNumber alg_inv(const AlgebraicNumber& a) {
    if (a.is_zero()) raise(ErrorKind::domain, "inverse of zero");
    if (a.is_rational()) return AlgebraicNumber::from_rational(1 / a.rational_value());
    RPoly rev = poly_reverse(a.min_poly()).make_monic();
    auto enclose = [a](long wp) -> std::optional<ComplexBox> {
        ComplexBox b = a.refined(wp).box();
        if (b.contains_zero()) return std::nullopt;
        return ComplexBox::exact(1, 0, wp) / b;
    };
    return designate_root({std::move(rev)}, enclose, a.precision());
}

AlgebraicNumber alg_pow(const AlgebraicNumber& a, long e) {
    if (e == 0) return AlgebraicNumber::from_long(1);
    if (e < 0) return alg_pow(alg_inv(a), -e);
    if (a.is_rational())
        return AlgebraicNumber::from_rational(rational_pow(a.rational_value(), e));
    return algebraic_eval(RPoly::monomial(Rational(1), static_cast<std::size_t>(e)), a);
}

} // namespace dyna
