#include "dynaheight/commute.hpp"

#include <numeric>
#include <optional>

#include "dynaheight/errors.hpp"

namespace dyna {

namespace {

void require_normal_form(const RPoly& f, const char* who) {
    const long d = f.degree();
    if (d < 2) raise(ErrorKind::domain, std::string(who) + " requires a map of degree >= 2");
    if (!f.is_monic() || f.coeff(d - 1) != 0)
        raise(ErrorKind::domain,
              std::string(who) + " requires a map in normal form (monic, centered); "
                                 "apply the normal form first");
}

long gap_of_normal(const RPoly& f) {
    const long d = f.degree();
    for (long i = d - 2; i >= 0; --i)
        if (f.coeff(i) != 0) return d - i;
    return 0;  // pure power; callers reject via the disintegrated check
}

// gcd over the support of F of |i - 1|: mu x commutes with F exactly when
// the order of mu divides this.
long support_gcd(const RPoly& F) {
    long g = 0;
    for (long i = 0; i <= F.degree(); ++i) {
        if (F.coeff(i) == 0) continue;
        g = std::gcd(g, i > 1 ? i - 1 : 1 - i);
    }
    return g;
}

long mult_order(const NFElem& mu, long cap) {
    NFElem acc = mu;
    const NFElem one{Rational(1)};
    for (long o = 1; o <= cap; ++o) {
        if (acc == one) return o;
        acc = acc * mu;
    }
    raise(ErrorKind::internal, "root of unity has order beyond its group");
}

// Exact rational solutions y of y^n = c (n >= 1), empty when none exist.
std::vector<Rational> exact_nth_roots(const Rational& c, long n) {
    if (n == 1) return {c};
    if (c == 0) return {Rational(0)};
    const bool even = (n % 2 == 0);
    if (even && c < 0) return {};
    Integer num = c.get_num();
    Integer den = c.get_den();
    const int sign = num < 0 ? -1 : 1;
    if (num < 0) num = -num;
    Integer rn, rd;
    const bool ok_n = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(n)) != 0;
    const bool ok_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(n)) != 0;
    if (!ok_n || !ok_d) return {};
    Rational y = make_rational(sign < 0 ? Integer(-rn) : rn, rd);
    if (even) return {y, Rational(-y)};
    return {y};
}

// Iterates f, f^2, ... while the degree stays within the composition budget.
std::vector<RPoly> iterate_ladder(const RPoly& f, long k_max) {
    std::vector<RPoly> ladder;
    RPoly acc = f;
    long deg = f.degree();
    for (long k = 1; k <= k_max; ++k) {
        ladder.push_back(acc);
        if (deg > Config::kDefaultDegreeCap / f.degree() || k == k_max) break;
        acc = poly_compose(f, acc);
        deg *= f.degree();
    }
    return ladder;
}

// Attempt a degree-dt commuter of F by triangular back-substitution from the
// leading coefficient down; the affine probe at each layer is justified by
// the pivot deg(F)*lead(F)*b_dt^(deg F - 1) != 0.
std::optional<RPoly> solve_commuter(long dt, const RPoly& F) {
    const long dF = F.degree();
    for (const Rational& top : exact_nth_roots(rational_pow(F.lead(), dt - 1), dF - 1)) {
        if (top == 0) continue;
        std::vector<Rational> g_vec(static_cast<size_t>(dt) + 1, Rational(0));
        g_vec[static_cast<size_t>(dt)] = top;
        auto imbalance_at = [&](long pos, const Rational& u) {
            g_vec[static_cast<size_t>(pos)] = u;
            const RPoly g(g_vec);
            const RPoly diff = poly_compose(g, F) - poly_compose(F, g);
            return diff.coeff(dt * dF - (dt - pos));
        };
        for (long m = 1; m <= dt; ++m) {
            const long pos = dt - m;
            const Rational c0 = imbalance_at(pos, Rational(0));
            const Rational c1 = imbalance_at(pos, Rational(1));
            const Rational pivot = Rational(c1 - c0);
            if (pivot == 0)
                raise(ErrorKind::internal, "commuter layer lost its nonzero pivot");
            g_vec[static_cast<size_t>(pos)] = Rational(-c0 / pivot);
        }
        const RPoly g(g_vec);
        if (poly_compose(g, F) == poly_compose(F, g)) return g;
    }
    return std::nullopt;
}

} // namespace

size_t SymmetryGroup::generator_index() const {
    size_t best = 0;
    long best_order = 0;
    for (size_t i = 0; i < mus.size(); ++i) {
        const long o = mult_order(mus[i], order());
        if (o > best_order) {
            best_order = o;
            best = i;
        }
    }
    return best;
}

SymmetryGroup symmetry_group(const RPoly& f, long k_max) {
    require_normal_form(f, "symmetry group");
    if (classify(f).kind != MapClass::disintegrated)
        raise(ErrorKind::not_disintegrated, "symmetry group contract requires disintegrated f");

    const long d = f.degree();
    const long r = gap_of_normal(f);
    if (k_max <= 0) k_max = r * d;

    const std::vector<RPoly> ladder = iterate_ladder(f, k_max);

    // Order of the subgroup contributed by each iterate, and the union.
    std::vector<long> m_k;
    long m = 1;
    for (const RPoly& F : ladder) {
        const long mk = std::gcd(r, support_gcd(F));
        m_k.push_back(mk);
        m = std::lcm(m, mk);
    }

    SymmetryGroup out;
    out.gap = r;
    out.searched_k_max = static_cast<long>(ladder.size());

    if (m <= 2) {
        out.mus.push_back(NFElem(Rational(1)));
        if (m == 2) out.mus.push_back(NFElem(Rational(-1)));
    } else {
        out.field = cyclotomic_field(m);
        out.mus = roots_of_unity_in(out.field, m);
    }

    for (const NFElem& mu : out.mus) {
        const long o = mult_order(mu, m);
        long witness = 0;
        for (size_t k = 0; k < m_k.size(); ++k) {
            if (m_k[k] % o == 0) {
                witness = static_cast<long>(k) + 1;
                break;
            }
        }
        if (witness == 0)
            raise(ErrorKind::internal, "symmetry element lost its witness iterate");
        // Literal composition check F(mu x) = mu F(x) at the witness iterate:
        // with rational coefficients this is mu^i = mu on the support.
        const RPoly& F = ladder[static_cast<size_t>(witness - 1)];
        NFElem pw{Rational(1)};
        for (long i = 0; i <= F.degree(); ++i) {
            if (F.coeff(i) != 0 && pw != mu && i != 0)
                raise(ErrorKind::internal, "symmetry element failed exact composition");
            if (F.coeff(i) != 0 && i == 0 && mu != NFElem(Rational(1)))
                raise(ErrorKind::internal, "symmetry element failed exact composition");
            pw = pw * mu;
        }
        out.elements.push_back({mu.embed(), witness});
    }
    return out;
}

RPoly minimal_commuter(const RPoly& f, long k_max) {
    const long d = f.degree();
    if (d < 2) raise(ErrorKind::domain, "minimal commuter requires a map of degree >= 2");
    if (classify(f).kind != MapClass::disintegrated)
        raise(ErrorKind::not_disintegrated, "minimal commuter contract requires disintegrated f");

    std::vector<long> degrees;
    for (long dt = 2; dt < d; ++dt) {
        long p = dt;
        while (p < d) p *= dt;
        if (p == d) degrees.push_back(dt);
    }
    if (degrees.empty()) return f;

    if (k_max <= 0) k_max = normal_form(f).gap * d;
    const std::vector<RPoly> ladder = iterate_ladder(f, k_max);

    for (long dt : degrees) {
        for (const RPoly& F : ladder) {
            if (dt > Config::kDefaultDegreeCap / F.degree()) break;
            if (auto g = solve_commuter(dt, F)) return *g;
        }
    }
    return f;
}

CommuterSet commuters_up_to(const RPoly& f, long D, long k_max) {
    if (D < 1) raise(ErrorKind::domain, "commuter enumeration requires D >= 1");
    require_normal_form(f, "commuter enumeration");

    CommuterSet out;
    out.group = symmetry_group(f, k_max);
    out.base = minimal_commuter(f, k_max);

    const long d = f.degree();
    const long dt = out.base.degree();
    out.D_exponent = 1;
    for (long p = dt; p < d; p *= dt) ++out.D_exponent;

    if (k_max <= 0) k_max = out.group.gap * d;
    const std::vector<RPoly> ladder = iterate_ladder(f, k_max);
    std::vector<NFPoly> lifted;
    lifted.reserve(ladder.size());
    for (const RPoly& F : ladder) lifted.push_back(lift_poly(F));

    for (size_t i = 0; i < out.group.mus.size(); ++i) {
        out.elements.push_back({NFPoly(std::vector<NFElem>{NFElem(), out.group.mus[i]}),
                                out.group.elements[i].witness_k});
    }

    RPoly fm = out.base;
    for (long m = 1; ; ++m) {
        if (fm.degree() > D) break;
        const NFPoly fmK = lift_poly(fm);
        for (const NFElem& mu : out.group.mus) {
            const NFPoly cand = poly_compose(fmK, NFPoly(std::vector<NFElem>{NFElem(), mu}));
            long witness = 0;
            for (size_t k = 0; k < lifted.size(); ++k) {
                const long target_deg = ladder[k].degree();
                if (cand.degree() > Config::kDefaultDegreeCap / target_deg) break;
                if (poly_compose(cand, lifted[k]) == poly_compose(lifted[k], cand)) {
                    witness = static_cast<long>(k) + 1;
                    break;
                }
            }
            if (witness > 0) out.elements.push_back({cand, witness});
        }
        if (fm.degree() > D / dt) break;
        fm = poly_compose(out.base, fm);
    }
    return out;
}

} // namespace dyna
