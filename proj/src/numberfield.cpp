#include "dynaheight/numberfield.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#include "dynaheight/errors.hpp"

namespace dyna {

namespace {

bool same_field(const std::shared_ptr<const NumberField>& a,
                const std::shared_ptr<const NumberField>& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->min_poly() == b->min_poly() && a->generator() == b->generator();
}

// Common field for a binary operation; raises when both sides carry distinct
// nontrivial fields.
std::shared_ptr<const NumberField> merge_fields(const NFElem& a, const NFElem& b) {
    if (!a.field()) return b.field();
    if (!b.field()) return a.field();
    if (same_field(a.field(), b.field())) return a.field();
    raise(ErrorKind::unsupported, "cannot combine elements of two different number fields");
}

RPoly reduce_rep(const std::shared_ptr<const NumberField>& field, RPoly rep) {
    if (!field) return rep;
    if (rep.degree() < field->degree()) return rep;
    return rep % field->min_poly();
}

} // namespace

std::shared_ptr<const NumberField> NumberField::make(AlgebraicNumber generator) {
    if (generator.degree() < 1)
        raise(ErrorKind::domain, "number field needs a designated generator");
    return std::shared_ptr<const NumberField>(new NumberField(std::move(generator)));
}

NFElem::NFElem(std::shared_ptr<const NumberField> field, RPoly rep)
    : field_(std::move(field)), rep_(reduce_rep(field_, std::move(rep))) {
    if (!field_ && rep_.degree() > 0)
        raise(ErrorKind::domain, "nonconstant representation without a field");
    if (field_ && rep_.degree() <= 0) field_.reset();  // rationals stay field-free
}

NFElem NFElem::generator(const std::shared_ptr<const NumberField>& field) {
    if (!field) raise(ErrorKind::domain, "generator of the empty field");
    return NFElem(field, RPoly::identity());
}

Rational NFElem::rational_value() const {
    if (!is_rational()) raise(ErrorKind::domain, "element is not rational");
    return rep_.is_zero() ? Rational(0) : rep_.coeff(0);
}

NFElem operator+(const NFElem& a, const NFElem& b) {
    return NFElem(merge_fields(a, b), a.rep_ + b.rep_);
}

NFElem operator-(const NFElem& a, const NFElem& b) {
    return NFElem(merge_fields(a, b), a.rep_ - b.rep_);
}

NFElem operator-(const NFElem& a) { return NFElem(a.field_, -a.rep_); }

NFElem operator*(const NFElem& a, const NFElem& b) {
    return NFElem(merge_fields(a, b), a.rep_ * b.rep_);
}

NFElem operator/(const NFElem& a, const NFElem& b) { return a * b.inverse(); }

bool operator==(const NFElem& a, const NFElem& b) {
    merge_fields(a, b);  // reject cross-field comparison
    return a.rep_ == b.rep_;
}

NFElem NFElem::inverse() const {
    if (is_zero()) raise(ErrorKind::domain, "inverse of zero");
    if (!field_) return NFElem(Rational(1) / rational_value());
    RPoly u, v;
    RPoly g = poly_xgcd(rep_, field_->min_poly(), &u, &v);
    if (g.degree() != 0)
        raise(ErrorKind::internal, "reducible minimal polynomial in number field");
    return NFElem(field_, u.scaled(Rational(1) / g.coeff(0)));
}

NFElem NFElem::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    NFElem acc(1L);
    NFElem base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

AlgebraicNumber NFElem::embed() const {
    if (!field_) return AlgebraicNumber::from_rational(rational_value());
    if (rep_.is_zero()) return AlgebraicNumber::from_long(0);
    return algebraic_eval(rep_, field_->generator());
}

std::string NFElem::str() const {
    if (is_rational()) return rational_value().get_str();
    std::ostringstream out;
    bool first = true;
    for (long i = rep_.degree(); i >= 0; --i) {
        Rational c = rep_.coeff(static_cast<std::size_t>(i));
        if (c == 0) continue;
        if (!first) out << (c > 0 ? " + " : " - ");
        else if (c < 0) out << "-";
        first = false;
        Rational ac = abs(c);
        if (i == 0 || ac != 1) out << ac.get_str();
        if (i > 0 && ac != 1) out << "*";
        if (i > 0) out << "a";
        if (i > 1) out << "^" << i;
    }
    return out.str();
}

NFPoly lift_poly(const RPoly& p) {
    std::vector<NFElem> c;
    c.reserve(static_cast<std::size_t>(p.degree() + 1));
    for (long i = 0; i <= p.degree(); ++i) c.emplace_back(p.coeff(static_cast<std::size_t>(i)));
    return NFPoly(std::move(c));
}

RPoly rational_poly(const NFPoly& p) {
    std::vector<Rational> c;
    c.reserve(static_cast<std::size_t>(p.degree() + 1));
    for (long i = 0; i <= p.degree(); ++i) {
        NFElem e = p.coeff(static_cast<std::size_t>(i));
        if (!e.is_rational())
            raise(ErrorKind::domain, "polynomial has irrational coefficients");
        c.push_back(e.rational_value());
    }
    return RPoly(std::move(c));
}

RPoly cyclotomic_poly(long r) {
    if (r < 1) raise(ErrorKind::domain, "cyclotomic index must be positive");
    if (r > Config::kDefaultDegreeCap)
        raise(ErrorKind::iterate_too_large, "cyclotomic index exceeds the degree budget");
    static std::mutex mu;
    static std::map<long, RPoly> memo;
    std::scoped_lock lock(mu);
    auto it = memo.find(r);
    if (it != memo.end()) return it->second;

    // (x^r - 1) divided by the cyclotomic polynomials of the proper divisors.
    std::function<RPoly(long)> compute = [&](long n) -> RPoly {
        auto hit = memo.find(n);
        if (hit != memo.end()) return hit->second;
        std::vector<Rational> xn(static_cast<std::size_t>(n + 1), Rational(0));
        xn[0] = Rational(-1);
        xn[static_cast<std::size_t>(n)] = Rational(1);
        RPoly acc(std::move(xn));
        for (long d = 1; d < n; ++d) {
            if (n % d != 0) continue;
            acc = acc / compute(d);
        }
        memo.emplace(n, acc);
        return acc;
    };
    return compute(r);
}

std::shared_ptr<const NumberField> cyclotomic_field(long r) {
    if (r < 1) raise(ErrorKind::domain, "cyclotomic index must be positive");
    RPoly phi = cyclotomic_poly(r);
    long prec = Config::precision_bits();
    std::vector<AlgebraicNumber> roots = isolate_roots(phi, prec);

    // Designate exp(2*pi*i/r): among roots in the open upper half plane the
    // one of largest real part (r <= 2 gives the rational root directly).
    AlgebraicNumber zeta;
    if (r <= 2) {
        zeta = roots.at(0);
    } else {
        std::vector<AlgebraicNumber> upper;
        for (const auto& root : roots) {
            if (root.is_real()) continue;
            if (root.box().im().lo().sign() > 0) upper.push_back(root);
        }
        if (upper.empty()) raise(ErrorKind::internal, "no upper-half-plane cyclotomic root");
        std::size_t best = 0;
        for (std::size_t i = 1; i < upper.size(); ++i) {
            // Certified comparison of real parts; refine until disjoint.
            long wp = prec;
            for (;;) {
                RealInterval ri = upper[i].box().re();
                RealInterval rb = upper[best].box().re();
                if (ri.lo() > rb.hi()) { best = i; break; }
                if (ri.hi() < rb.lo()) break;
                wp *= 2;
                upper[i] = upper[i].refined(wp);
                upper[best] = upper[best].refined(wp);
            }
        }
        zeta = upper[best];
    }

    auto field = std::shared_ptr<NumberField>(new NumberField(std::move(zeta)));
    field->cyclotomic_order_ = r;
    return field;
}

std::vector<NFElem> roots_of_unity_in(const std::shared_ptr<const NumberField>& field, long m) {
    if (m < 1) raise(ErrorKind::domain, "root-of-unity order must be positive");
    std::vector<NFElem> out;
    auto add_sign_choices = [&]() {
        out.emplace_back(1L);
        if (m % 2 == 0) out.emplace_back(-1L);
    };
    if (!field) {
        add_sign_choices();
        return out;
    }
    long r = field->cyclotomic_order();
    if (r > 0) {
        // All roots of unity in Q(zeta_r) form a cyclic group of order
        // lcm(2, r), generated by zeta_r when r is even and by -zeta_r when
        // r is odd.  (Generator of a degree-1 field collapses to a rational.)
        long n = (r % 2 == 0) ? r : 2 * r;
        NFElem gen = NFElem::generator(field);
        if (r % 2 != 0) gen = -gen;
        NFElem u(1L);
        for (long j = 0; j < n; ++j) {
            if ((j * m) % n == 0) out.push_back(u);
            u = u * gen;
        }
        return out;
    }
    if (field->generator().is_real()) {
        add_sign_choices();
        return out;
    }
    raise(ErrorKind::unsupported,
          "roots of unity are only enumerated over Q, real fields, and cyclotomic fields");
}

} // namespace dyna
