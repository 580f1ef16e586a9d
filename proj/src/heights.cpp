#include "dynaheight/heights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dynaheight/errors.hpp"

namespace dyna {

namespace {

constexpr long kWorkingPrecCap = 1L << 20;
constexpr long kOrbitStepCap = 200;
// Per-value decimal digit budget for exact rational orbits (numerator plus
// denominator); beyond it the finite places raise instead of grinding.
constexpr std::size_t kOrbitDigitBudget = 200000;

Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Integer ipow(long base, long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
    return r;
}

RealInterval ri_max(const RealInterval& a, const RealInterval& b) {
    BigFloat lo = (a.lo() > b.lo()) ? a.lo() : b.lo();
    BigFloat hi = (a.hi() > b.hi()) ? a.hi() : b.hi();
    return RealInterval(lo, hi);
}

RealInterval ri_clamp_nonneg(const RealInterval& v, long prec) {
    if (v.lo().sign() >= 0) return v;
    return RealInterval(BigFloat::from_long(0, prec), v.hi());
}

std::size_t rational_digits(const Rational& q) {
    std::size_t n = (q.get_num() == 0) ? 1 : digit_size(q.get_num());
    return n + digit_size(Integer(q.get_den()));
}

ComplexBox eval_box(const RPoly& f, const ComplexBox& z, long prec) {
    ComplexBox acc = ComplexBox::from_rational(f.lead(), prec);
    for (long i = f.degree() - 1; i >= 0; --i)
        acc = acc * z + ComplexBox::from_rational(f.coeff(static_cast<std::size_t>(i)), prec);
    return acc;
}

// One rational whose log bounds |log+|f(x)| - d*log+|x|| everywhere on C:
// max of the overshoot constant (d+1)*max|c_i|, the small-|x| drop B^d with
// B = max(1, 2*sum_{i<d}|c_i| / |c_d|), and the escape drop 2/|c_d|.
Rational arch_step_envelope(const RPoly& f) {
    long d = f.degree();
    Rational maxc(0), lower_sum(0);
    for (long i = 0; i <= d; ++i) {
        Rational a = rational_abs(f.coeff(static_cast<std::size_t>(i)));
        maxc = std::max(maxc, a);
        if (i < d) lower_sum += a;
    }
    Rational lead = rational_abs(f.lead());
    Rational up = std::max(Rational(1), Rational(Rational(d + 1) * maxc));
    Rational b = std::max(Rational(1), Rational(Rational(2) * lower_sum / lead));
    Rational down = std::max(rational_pow(b, d), std::max(Rational(1), Rational(Rational(2) / lead)));
    return std::max(up, down);
}

// Smallest M with step_envelope / ((d-1) d^M) below eps; slack only tightens.
long choose_orbit_steps(const Rational& envelope, long d, double eps) {
    double g = RealInterval::log_of(envelope, 64).hi().to_double() * 1.001 + 1e-30;
    double bound = g / static_cast<double>(d - 1);
    long m = 0;
    while (bound > eps) {
        bound /= static_cast<double>(d);
        if (++m > 400) raise(ErrorKind::precision, "orbit length for the target error is out of range");
    }
    return m;
}

// Certified enclosure of the archimedean local height at z0, radius <= eps.
// make_start rebuilds the initial box at the requested working precision.
template <class MakeStart>
RealInterval lambda_arch(const RPoly& f, MakeStart make_start, double eps) {
    long d = f.degree();
    Rational envelope = arch_step_envelope(f);
    long steps = choose_orbit_steps(envelope, d, eps * 0.5);
    for (long wp = std::max<long>(Config::precision_bits(), 128); wp <= kWorkingPrecCap; wp *= 2) {
        ComplexBox z = make_start(wp);
        for (long k = 0; k < steps; ++k) z = eval_box(f, z, wp);
        RealInterval mag = z.abs();
        if (!mpfr_number_p(mag.hi().raw())) continue;  // overflow: retry tighter
        RealInterval den = RealInterval::from_integer(ipow(d, steps), wp);
        RealInterval est = mag.log_plus() / den;
        RealInterval tail = RealInterval::log_of(envelope, wp) / (den * RealInterval::exact(d - 1, wp));
        RealInterval out = ri_clamp_nonneg(est.widen(tail.hi()), wp);
        if (out.radius() <= BigFloat::from_double(eps, 64)) return out;
    }
    raise(ErrorKind::precision, "archimedean local height did not reach the target radius");
}

// ---- finite places of a rational point ----

struct FinitePlace {
    Integer p;
    long v_lead = 0;        // valuation of the leading coefficient
    bool integral = false;  // every coefficient p-integral
    Rational escape;        // -v(x) beyond this the orbit provably escapes
    Rational shift;         // v(lead)/(d-1), the telescoping offset
};

std::vector<FinitePlace> bad_places(const RPoly& f) {
    long d = f.degree();
    std::set<Integer> candidates;
    for (long i = 0; i <= d; ++i) {
        const Rational c = f.coeff(static_cast<std::size_t>(i));
        if (c == 0) continue;
        for (const Integer& p : prime_factors(Integer(c.get_den()))) candidates.insert(p);
    }
    for (const Integer& p : prime_factors(Integer(f.lead().get_num()))) candidates.insert(p);

    std::vector<FinitePlace> out;
    for (const Integer& p : candidates) {
        long vmin = 0;
        long vlead = p_valuation(p, f.lead());
        bool any_negative = false;
        Rational dominance(-1);  // max over i<d of (v(lead)-v(c_i))/(d-i)
        for (long i = 0; i <= d; ++i) {
            const Rational c = f.coeff(static_cast<std::size_t>(i));
            if (c == 0) continue;
            long v = p_valuation(p, c);
            vmin = std::min(vmin, v);
            if (v < 0) any_negative = true;
            if (i < d) dominance = std::max(dominance, make_rational(Integer(vlead - v), Integer(d - i)));
        }
        if (!any_negative && vlead == 0) continue;  // good reduction after all
        FinitePlace place;
        place.p = p;
        place.v_lead = vlead;
        place.integral = (vmin >= 0);
        place.shift = make_rational(Integer(vlead), Integer(d - 1));
        place.escape = std::max(dominance, place.shift);
        out.push_back(place);
    }
    return out;
}

// Exact local height at one bad prime, walking the exact orbit until the
// escape region or a p-integral landing decides it.
RealInterval lambda_bad_prime(const FinitePlace& place, const std::vector<Rational>& orbit,
                              long d, long prec, double best_so_far) {
    Rational log_p_coeff(0);
    bool decided = false;
    for (std::size_t k = 0; k < orbit.size() && !decided; ++k) {
        const Rational& x = orbit[k];
        if (x == 0) {  // v = +infinity: p-integral value
            if (place.integral) { log_p_coeff = 0; decided = true; }
            continue;
        }
        Rational m(-p_valuation(place.p, x));
        if (m > place.escape) {
            // From here |x_j| = |lead| |x_{j-1}|^d exactly, so the limit
            // telescopes: (m - shift)/d^k in log_p units.
            log_p_coeff = (m - place.shift) / Rational(ipow(d, static_cast<long>(k)));
            decided = true;
        } else if (place.integral && m <= 0) {
            log_p_coeff = 0;  // stays p-integral forever: log+ vanishes
            decided = true;
        }
    }
    if (!decided) {
        const Rational& last = orbit.back();
        double crude = 0.0;
        if (last != 0) {
            long mv = -p_valuation(place.p, last);
            if (mv > 0)
                crude = static_cast<double>(mv) *
                        RealInterval::log_of(Rational(place.p), 64).hi().to_double() /
                        std::pow(static_cast<double>(d), static_cast<double>(orbit.size() - 1));
        }
        std::ostringstream msg;
        msg << "finite place " << place.p.get_str()
            << " undecided within the exact-orbit budget; best height estimate "
            << (best_so_far + crude);
        raise(ErrorKind::iterate_too_large, msg.str());
    }
    if (log_p_coeff == 0) return RealInterval::zero(prec);
    return RealInterval::log_of(Rational(place.p), prec) * RealInterval::from_rational(log_p_coeff, prec);
}

struct OrbitProbe {
    std::vector<Rational> orbit;
    bool preperiodic = false;
};

OrbitProbe probe_orbit(const RPoly& f, const Rational& a, std::size_t digit_budget) {
    OrbitProbe out;
    std::set<Rational> seen;
    Rational x = a;
    for (long k = 0; k < kOrbitStepCap; ++k) {
        if (rational_digits(x) > digit_budget) break;
        if (!seen.insert(x).second) {
            out.preperiodic = true;
            break;
        }
        out.orbit.push_back(x);
        x = f.eval(x);
    }
    return out;
}

bool is_pure_power(const RPoly& f) {
    return f.degree() >= 2 && f.is_monic() && f.term_count() == 1;
}

bool is_monic_integer(const RPoly& f) {
    if (!f.is_monic()) return false;
    for (long i = 0; i <= f.degree(); ++i)
        if (!is_integer(f.coeff(static_cast<std::size_t>(i)))) return false;
    return true;
}

// lcm of the coefficient denominators: the leading coefficient of the
// primitive integer form of a monic rational polynomial.
Integer primitive_lead(const RPoly& monic) {
    Integer l(1);
    for (long i = 0; i <= monic.degree(); ++i) {
        Integer den = monic.coeff(static_cast<std::size_t>(i)).get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    return l;
}

HeightValue canonical_rational(const RPoly& f, const Rational& a, double eps) {
    long d = f.degree();
    long prec = std::max<long>(Config::precision_bits(), 128);

    // Preperiodic orbits stay small, so a short probe suffices unless some
    // finite place will need the exact orbit for its escape analysis.
    std::vector<FinitePlace> bad = bad_places(f);
    OrbitProbe probe = probe_orbit(f, a, bad.empty() ? 2000 : kOrbitDigitBudget);
    if (probe.preperiodic) return HeightValue::exact_log(Rational(1));
    if (probe.orbit.empty())
        raise(ErrorKind::iterate_too_large, "starting point exceeds the orbit digit budget");

    RealInterval total = RealInterval::zero(prec);

    // Archimedean place.
    total = total + lambda_arch(
        f, [&](long wp) { return ComplexBox::from_rational(a, wp); }, eps * 0.45);

    std::set<Integer> bad_set;
    for (const auto& place : bad) bad_set.insert(place.p);

    // Finite places with good reduction contribute log+|a|_p at step zero,
    // nonzero only under the denominator of a.
    for (const Integer& p : prime_factors(Integer(a.get_den()))) {
        if (bad_set.count(p)) continue;
        long e = -p_valuation(p, a);
        total = total + mul_long(RealInterval::log_of(Rational(p), prec), e);
    }

    // Finite places with defective reduction need the exact orbit.
    double running = total.midpoint().to_double();
    for (const auto& place : bad)
        total = total + lambda_bad_prime(place, probe.orbit, d, prec, running);

    return HeightValue::enclosed(ri_clamp_nonneg(total, prec));
}

HeightValue canonical_algebraic(const RPoly& f, const AlgebraicNumber& a, double eps) {
    if (!is_monic_integer(f))
        raise(ErrorKind::unsupported,
              "canonical heights of irrational algebraic points require a monic "
              "integer-coefficient polynomial");
    long prec = std::max<long>(Config::precision_bits(), 128);
    const RPoly& minp = a.min_poly();
    long deg = minp.degree();

    // Monic integer maps have good reduction everywhere, so the finite part
    // collapses to the leading coefficient of the primitive integer form of
    // the minimal polynomial, and the archimedean part sums over conjugates.
    RealInterval total = RealInterval::zero(prec);
    Integer lead = primitive_lead(minp);
    if (lead != 1) total = total + RealInterval::log_of(Rational(lead), prec);

    std::vector<AlgebraicNumber> conjugates = isolate_roots(minp, prec);
    // Radii average over the conjugates, so each one may spend most of eps.
    double each = eps * 0.9;
    for (const auto& conj : conjugates) {
        total = total + lambda_arch(
            f, [&](long wp) { return conj.refined(wp).box(); }, each);
    }
    total = total / RealInterval::exact(deg, prec);
    return HeightValue::enclosed(ri_clamp_nonneg(total, prec));
}

} // namespace

// ---- HeightValue ----

HeightValue HeightValue::exact_log(Rational arg, long prec) {
    if (arg < 1) raise(ErrorKind::domain, "exact height must be the log of a rational >= 1");
    RealInterval v = (arg == 1) ? RealInterval::zero(prec) : RealInterval::log_of(arg, prec);
    return HeightValue(std::move(v), true, std::move(arg), false);
}

HeightValue HeightValue::enclosed(RealInterval v) {
    long prec = Config::precision_bits();
    return HeightValue(ri_clamp_nonneg(v, prec), false, Rational(1), false);
}

HeightValue HeightValue::infinite() {
    BigFloat inf = BigFloat::from_double(std::numeric_limits<double>::infinity(), 64);
    return HeightValue(RealInterval(inf, inf), false, Rational(1), true);
}

const Rational& HeightValue::exact_log_arg() const {
    if (!exact_) raise(ErrorKind::domain, "height value is not exact");
    return log_arg_;
}

BigFloat HeightValue::radius() const {
    if (exact_ || infinite_) return BigFloat::from_long(0, 64);
    return v_.radius();
}

HeightValue operator+(const HeightValue& x, const HeightValue& y) {
    if (x.infinite_ || y.infinite_) return HeightValue::infinite();
    if (x.exact_ && y.exact_) return HeightValue::exact_log(x.log_arg_ * y.log_arg_);
    return HeightValue::enclosed(x.v_ + y.v_);
}

std::string HeightValue::str() const {
    if (infinite_) return "+inf";
    if (exact_) return "log(" + to_string(log_arg_) + ")";
    return v_.str();
}

// ---- Weil heights ----

HeightValue weil_height(const P1Point& a) {
    if (a.is_infinity()) return HeightValue::exact_log(Rational(1));
    const AlgebraicNumber& x = a.value();
    if (x.is_rational()) {
        Rational q = x.rational_value();
        Integer num = rational_abs(q).get_num();
        Integer den = q.get_den();
        return HeightValue::exact_log(Rational(num > den ? num : den));
    }

    const RPoly& minp = x.min_poly();
    long deg = minp.degree();
    Integer lead = primitive_lead(minp);
    BigFloat target = BigFloat::from_double(std::ldexp(1.0, -48), 64);
    for (long wp = std::max<long>(Config::precision_bits(), 128); wp <= kWorkingPrecCap; wp *= 2) {
        RealInterval total = (lead == 1) ? RealInterval::zero(wp)
                                         : RealInterval::log_of(Rational(lead), wp);
        for (const auto& conj : isolate_roots(minp, wp))
            total = total + conj.refined(wp).box().abs().log_plus();
        total = total / RealInterval::exact(deg, wp);
        total = ri_clamp_nonneg(total, wp);
        if (total.radius() <= target) return HeightValue::enclosed(total);
    }
    raise(ErrorKind::precision, "height enclosure did not reach the target radius");
}

HeightValue height_n(const std::vector<P1Point>& pts) {
    if (pts.empty()) raise(ErrorKind::domain, "height of an empty tuple");
    HeightValue total = HeightValue::exact_log(Rational(1));
    for (const auto& p : pts) total = total + weil_height(p);
    return total;
}

// ---- inequality constants ----

RealInterval height_expansion_constant(const RPoly& f) {
    if (f.degree() < 2) raise(ErrorKind::domain, "height expansion needs degree >= 2");
    long prec = Config::precision_bits();
    if (is_pure_power(f)) return RealInterval::zero(prec);
    long d = f.degree();

    // Ascent side: log(d+1) + sum_v log+ of the largest coefficient; the
    // finite places contribute exactly the lcm of the denominators.
    Rational maxc(0);
    Integer lcm_den(1);
    for (long i = 0; i <= d; ++i) {
        Rational c = f.coeff(static_cast<std::size_t>(i));
        maxc = std::max(maxc, rational_abs(c));
        Integer den = c.get_den();
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
    }
    Rational up_arg = Rational(d + 1) * Rational(lcm_den) * std::max(Rational(1), maxc);
    RealInterval up = RealInterval::log_of(up_arg, prec);

    // Descent side: the archimedean envelope plus one exact term per bad prime.
    Rational lead = rational_abs(f.lead());
    Rational lower_sum(0);
    for (long i = 0; i < d; ++i)
        lower_sum += rational_abs(f.coeff(static_cast<std::size_t>(i)));
    Rational b = std::max(Rational(1), Rational(Rational(2) * lower_sum / lead));
    Rational down_arg =
        std::max(rational_pow(b, d), std::max(Rational(1), Rational(Rational(2) / lead)));
    RealInterval down = RealInterval::log_of(down_arg, prec);
    for (const auto& place : bad_places(f)) {
        Rational dominance = place.escape;  // max(r_p, v/(d-1)); both pieces below
        Rational coeff = std::max(
            Rational(0), std::max(Rational(Rational(d) * dominance), Rational(place.v_lead)));
        if (coeff == 0) continue;
        down = down + RealInterval::log_of(Rational(place.p), prec) *
                          RealInterval::from_rational(coeff, prec);
    }

    return ri_max(up, down);
}

RealInterval lemma32_upper_constant(const MultiPoly& F) {
    if (F.is_zero()) raise(ErrorKind::domain, "upper height constant of the zero form");
    long prec = Config::precision_bits();
    Integer lcm_den(1);
    Rational maxc(0);
    for (const auto& [exps, c] : F.terms()) {
        (void)exps;
        Integer den = c.get_den();
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
        maxc = std::max(maxc, rational_abs(c));
    }
    Rational arg = Rational(static_cast<long>(F.term_count())) * Rational(lcm_den) *
                   std::max(Rational(1), maxc);
    if (arg == 1) return RealInterval::zero(prec);
    return RealInterval::log_of(arg, prec);
}

RealInterval lemma32_lower_constant(const MultiPoly& F, std::size_t pivot) {
    if (F.is_zero()) raise(ErrorKind::domain, "lower height constant of the zero form");
    if (pivot >= F.var_count()) raise(ErrorKind::domain, "pivot variable out of range");
    if (F.degree_in(pivot) < 1)
        raise(ErrorKind::domain, "pivot variable must appear in the form");
    long prec = Config::precision_bits();

    std::vector<MultiPoly> layers = F.coefficients_in(pivot);
    RealInterval log2 = RealInterval::log_of(Rational(2), prec);
    bool have = false;
    RealInterval best = RealInterval::zero(prec);
    for (std::size_t i = 1; i < layers.size(); ++i) {
        if (layers[i].is_zero()) continue;
        RealInterval cand = lemma32_upper_constant(layers[i]);
        std::vector<MultiPoly> prefix(layers.begin(), layers.begin() + static_cast<long>(i));
        MultiPoly q = MultiPoly::assemble_in(pivot, prefix);
        if (!q.is_zero()) cand = cand + lemma32_upper_constant(q) + log2;
        best = have ? ri_max(best, cand) : cand;
        have = true;
    }
    if (!have) raise(ErrorKind::internal, "no pivot layer despite positive pivot degree");
    return best;
}

RealInterval corollary34_constant(const MultiPoly& F, const RPoly& f, std::size_t pivot) {
    long prec = Config::precision_bits();
    RealInterval c2 = lemma32_lower_constant(F, pivot);
    RealInterval c4 = height_expansion_constant(f) / RealInterval::exact(f.degree() - 1, prec);
    long padded = 1;
    for (std::size_t j = 0; j < F.var_count(); ++j) {
        if (j == pivot) continue;
        long dj = F.degree_in(j);
        if (dj > 0) padded += 2 * dj;
    }
    return c2 + c4 * RealInterval::exact(padded, prec);
}

InequalityConstants inequality_constants(const MultiPoly& F, const RPoly& f, std::size_t pivot) {
    InequalityConstants out;
    long prec = Config::precision_bits();
    out.c1 = lemma32_upper_constant(F);
    out.c2 = lemma32_lower_constant(F, pivot);
    out.c4 = height_expansion_constant(f) / RealInterval::exact(f.degree() - 1, prec);
    out.c5 = corollary34_constant(F, f, pivot);
    out.provenance = {
        {"C1", "log(term count of F) + sum over places of log+ of its largest coefficient"},
        {"C2", "max over pivot layers i >= 1 with F_i != 0 of C1(F_i) "
               "+ (lower layers present: C1(sum_{j<i} F_j x^j) + log 2)"},
        {"C4", "C_f / (d - 1), C_f the two-sided height expansion constant of f"},
        {"C5", "C2 + C4 * (1 + sum_{j != pivot} 2 deg_{x_j} F), padded-degree form"},
    };
    return out;
}

// ---- canonical heights ----

HeightValue canonical_height(const RPoly& f, const P1Point& a, double target_error) {
    if (f.degree() < 2) raise(ErrorKind::domain, "canonical height needs degree >= 2");
    if (!(target_error > 0) || !(target_error < 1))
        raise(ErrorKind::domain, "target error must lie in (0, 1)");
    if (a.is_infinity()) return HeightValue::infinite();
    if (is_pure_power(f)) return weil_height(a);  // the limit equals the height itself
    const AlgebraicNumber& x = a.value();
    if (x.is_rational()) return canonical_rational(f, x.rational_value(), target_error);
    return canonical_algebraic(f, x, target_error);
}

} // namespace dyna
