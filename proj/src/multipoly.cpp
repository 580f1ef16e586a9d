#include "dynaheight/multipoly.hpp"

#include <algorithm>

namespace dyna {

namespace {

void check_same_space(const MultiPoly& a, const MultiPoly& b) {
    if (a.var_count() != b.var_count())
        raise(ErrorKind::domain, "polynomials live in different variable sets");
}

} // namespace

MultiPoly::MultiPoly(std::size_t nvars, TermMap terms) : nvars_(nvars), terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first.size() != nvars_)
            raise(ErrorKind::domain, "exponent vector size mismatch");
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
}

MultiPoly MultiPoly::constant(std::size_t nvars, const Rational& c) {
    MultiPoly p(nvars);
    if (c != 0) p.terms_[Exponents(nvars, 0)] = c;
    return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) raise(ErrorKind::domain, "variable index out of range");
    MultiPoly p(nvars);
    Exponents e(nvars, 0);
    e[index] = 1;
    p.terms_[e] = 1;
    return p;
}

MultiPoly MultiPoly::from_unipoly(const RPoly& p, std::size_t nvars, std::size_t index) {
    if (index >= nvars) raise(ErrorKind::domain, "variable index out of range");
    MultiPoly out(nvars);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        if (p.coeffs()[i] == 0) continue;
        Exponents e(nvars, 0);
        e[index] = static_cast<unsigned>(i);
        out.terms_[e] = p.coeffs()[i];
    }
    return out;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
}

Rational MultiPoly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) raise(ErrorKind::domain, "constant_value of non-constant polynomial");
    return terms_.begin()->second;
}

long MultiPoly::degree_in(std::size_t var) const {
    if (terms_.empty()) return -1;
    long d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long>(e[var]));
    return d;
}

long MultiPoly::total_degree() const {
    if (terms_.empty()) return -1;
    long d = 0;
    for (const auto& [e, c] : terms_) {
        long t = 0;
        for (unsigned x : e) t += x;
        d = std::max(d, t);
    }
    return d;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
    if (e.size() != nvars_) raise(ErrorKind::domain, "exponent vector size mismatch");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    check_same_space(a, b);
    MultiPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    check_same_space(a, b);
    MultiPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
}

MultiPoly operator-(const MultiPoly& a) {
    MultiPoly r(a.nvars_);
    for (const auto& [e, c] : a.terms_) r.terms_[e] = -c;
    return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    check_same_space(a, b);
    MultiPoly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            MultiPoly::Exponents e(a.nvars_);
            for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
    MultiPoly r(nvars_);
    if (c == 0) return r;
    for (const auto& [e, coef] : terms_) r.terms_[e] = coef * c;
    return r;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t var) const {
    long d = degree_in(var);
    std::vector<MultiPoly> out(static_cast<std::size_t>(d + 1), MultiPoly(nvars_));
    if (d < 0) return out;
    for (const auto& [e, c] : terms_) {
        Exponents e2 = e;
        unsigned k = e2[var];
        e2[var] = 0;
        out[k].add_term(e2, c);
    }
    return out;
}

MultiPoly MultiPoly::assemble_in(std::size_t var, const std::vector<MultiPoly>& coeffs) {
    if (coeffs.empty()) raise(ErrorKind::domain, "assemble with no coefficients");
    MultiPoly r(coeffs[0].var_count());
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        for (const auto& [e, c] : coeffs[k].terms_) {
            Exponents e2 = e;
            e2[var] += static_cast<unsigned>(k);
            r.add_term(e2, c);
        }
    }
    return r;
}

RPoly MultiPoly::univariate_view(std::size_t var) const {
    std::vector<Rational> coeffs(static_cast<std::size_t>(std::max(degree_in(var), 0L)) + 1,
                                 Rational(0));
    for (const auto& [e, c] : terms_) {
        for (std::size_t v = 0; v < nvars_; ++v)
            if (v != var && e[v] != 0)
                raise(ErrorKind::domain, "univariate view of a multivariate polynomial");
        coeffs[e[var]] = c;
    }
    return RPoly(std::move(coeffs));
}

long MultiPoly::sole_variable() const {
    long found = -1;
    for (const auto& [e, c] : terms_)
        for (std::size_t v = 0; v < nvars_; ++v)
            if (e[v] != 0) {
                if (found >= 0 && found != static_cast<long>(v))
                    raise(ErrorKind::domain, "polynomial depends on several variables");
                found = static_cast<long>(v);
            }
    return found;
}

MultiPoly MultiPoly::substitute(std::size_t var, const Rational& value) const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        Exponents e2 = e;
        unsigned k = e2[var];
        e2[var] = 0;
        r.add_term(e2, c * rational_pow(value, k));
    }
    return r;
}

MultiPoly MultiPoly::substitute(std::size_t var, const RPoly& g, std::size_t target_var) const {
    MultiPoly image = MultiPoly::from_unipoly(g, nvars_, target_var);
    MultiPoly r(nvars_);
    // Cache powers of the image to avoid re-multiplying per term.
    std::vector<MultiPoly> pow = {MultiPoly::constant(nvars_, 1)};
    long dmax = degree_in(var);
    for (long k = 1; k <= dmax; ++k) pow.push_back(pow.back() * image);
    for (const auto& [e, c] : terms_) {
        Exponents e2 = e;
        unsigned k = e2[var];
        e2[var] = 0;
        MultiPoly term(nvars_);
        term.add_term(e2, c);
        r = r + term * pow[k];
    }
    return r;
}

Rational MultiPoly::eval(const std::vector<Rational>& point) const {
    if (point.size() != nvars_) raise(ErrorKind::domain, "evaluation point arity mismatch");
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t v = 0; v < nvars_; ++v)
            if (e[v] != 0) t *= rational_pow(point[v], e[v]);
        acc += t;
    }
    return acc;
}

MultiPoly MultiPoly::primitive_normalized() const {
    if (terms_.empty()) return *this;
    Integer lcm_den(1);
    for (const auto& [e, c] : terms_) {
        Integer d = c.get_den();
        Integer g = gcd(lcm_den, d);
        lcm_den = lcm_den / g * d;
    }
    Integer content(0);
    for (const auto& [e, c] : terms_) {
        Integer n = c.get_num() * (lcm_den / c.get_den());
        content = gcd(content, n);
    }
    if (content == 0) content = 1;
    Rational scale(lcm_den, content);
    MultiPoly r = scaled(scale);
    // Sign convention: lex-leading coefficient positive.
    if (r.terms_.rbegin()->second < 0) r = r.scaled(Rational(-1));
    return r;
}

MultiPoly MultiPoly::drop_variable(std::size_t var) const {
    if (degree_in(var) > 0) raise(ErrorKind::domain, "dropping a variable the polynomial uses");
    MultiPoly r(nvars_ - 1);
    for (const auto& [e, c] : terms_) {
        Exponents e2;
        e2.reserve(nvars_ - 1);
        for (std::size_t v = 0; v < nvars_; ++v)
            if (v != var) e2.push_back(e[v]);
        r.terms_[e2] = c;
    }
    return r;
}

MultiPoly MultiPoly::insert_variable(std::size_t var) const {
    if (var > nvars_) raise(ErrorKind::domain, "insert position out of range");
    MultiPoly r(nvars_ + 1);
    for (const auto& [e, c] : terms_) {
        Exponents e2;
        e2.reserve(nvars_ + 1);
        for (std::size_t v = 0; v <= nvars_; ++v) {
            if (v == var) e2.push_back(0);
            if (v < nvars_) e2.push_back(e[v]);
        }
        r.terms_[e2] = c;
    }
    return r;
}

MultiPoly multipoly_derivative(const MultiPoly& a, std::size_t var) {
    MultiPoly r(a.var_count());
    for (const auto& [e, c] : a.terms()) {
        if (e[var] == 0) continue;
        MultiPoly::Exponents e2 = e;
        unsigned k = e2[var];
        e2[var] = k - 1;
        r.add_term(e2, c * Rational(k));
    }
    return r;
}

namespace {

// Exact division helper: view both through the highest variable the divisor
// depends on and long-divide, recursing on coefficient divisions.
bool try_exact_div(const MultiPoly& a, const MultiPoly& b, MultiPoly* out) {
    if (b.is_zero()) raise(ErrorKind::domain, "division by zero polynomial");
    if (a.is_zero()) {
        *out = a;
        return true;
    }
    if (b.is_constant()) {
        *out = a.scaled(Rational(1) / b.constant_value());
        return true;
    }
    long main = -1;
    for (long v = static_cast<long>(b.var_count()) - 1; v >= 0; --v)
        if (b.degree_in(static_cast<std::size_t>(v)) > 0) {
            main = v;
            break;
        }
    std::size_t var = static_cast<std::size_t>(main);
    std::vector<MultiPoly> ra = a.coefficients_in(var);
    std::vector<MultiPoly> rb = b.coefficients_in(var);
    long da = static_cast<long>(ra.size()) - 1, db = static_cast<long>(rb.size()) - 1;
    if (da < db) return false;
    std::vector<MultiPoly> q(static_cast<std::size_t>(da - db) + 1, MultiPoly(a.var_count()));
    for (long i = da; i >= db; --i) {
        const MultiPoly& top = ra[static_cast<std::size_t>(i)];
        if (top.is_zero()) continue;
        MultiPoly qi;
        if (!try_exact_div(top, rb[static_cast<std::size_t>(db)], &qi)) return false;
        q[static_cast<std::size_t>(i - db)] = qi;
        for (long j = 0; j <= db; ++j)
            ra[static_cast<std::size_t>(i - db + j)] =
                ra[static_cast<std::size_t>(i - db + j)] - qi * rb[static_cast<std::size_t>(j)];
    }
    for (const auto& rem : ra)
        if (!rem.is_zero()) return false;
    *out = MultiPoly::assemble_in(var, q);
    return true;
}

// Pseudo-remainder of a by b in variable `var`: lead(b)^(da-db+1) * a mod b.
MultiPoly pseudo_rem(const MultiPoly& a, const MultiPoly& b, std::size_t var) {
    std::vector<MultiPoly> ra = a.coefficients_in(var);
    std::vector<MultiPoly> rb = b.coefficients_in(var);
    long da = static_cast<long>(ra.size()) - 1, db = static_cast<long>(rb.size()) - 1;
    if (db < 0) raise(ErrorKind::domain, "pseudo-division by zero");
    if (da < db) return a;
    const MultiPoly& lb = rb[static_cast<std::size_t>(db)];
    MultiPoly r = a;
    long steps = da - db + 1;
    for (long s = 0; s < steps; ++s) {
        std::vector<MultiPoly> rr = r.coefficients_in(var);
        long dr = static_cast<long>(rr.size()) - 1;
        if (dr < db) {
            // Finished early; keep multiplying to honor the exact factor.
            r = r * lb;
            continue;
        }
        MultiPoly lr = rr[static_cast<std::size_t>(dr)];
        MultiPoly xshift = MultiPoly::variable(a.var_count(), var);
        MultiPoly shifted(a.var_count());
        {
            MultiPoly term = lr;
            for (long k = 0; k < dr - db; ++k) term = term * xshift;
            shifted = term * b;
        }
        r = r * lb - shifted;
    }
    return r;
}

MultiPoly multipoly_content(const MultiPoly& a, std::size_t var) {
    std::vector<MultiPoly> cs = a.coefficients_in(var);
    MultiPoly g(a.var_count());
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : multipoly_gcd(g, c);
        if (g.is_constant()) break;
    }
    if (g.is_zero()) return MultiPoly::constant(a.var_count(), 1);
    return g;
}

} // namespace

MultiPoly multipoly_exact_div(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly q;
    if (!try_exact_div(a, b, &q))
        raise(ErrorKind::domain, "inexact polynomial division");
    return q;
}

MultiPoly multipoly_gcd(const MultiPoly& a, const MultiPoly& b) {
    check_same_space(a, b);
    if (a.is_zero()) return b.primitive_normalized();
    if (b.is_zero()) return a.primitive_normalized();
    if (a.is_constant() || b.is_constant())
        return MultiPoly::constant(a.var_count(), 1);
    long main = -1;
    for (long v = static_cast<long>(a.var_count()) - 1; v >= 0 && main < 0; --v)
        if (a.degree_in(static_cast<std::size_t>(v)) > 0 && b.degree_in(static_cast<std::size_t>(v)) > 0)
            main = v;
    if (main < 0) return MultiPoly::constant(a.var_count(), 1);
    std::size_t var = static_cast<std::size_t>(main);

    MultiPoly ca = multipoly_content(a, var);
    MultiPoly cb = multipoly_content(b, var);
    MultiPoly pa = multipoly_exact_div(a, ca);
    MultiPoly pb = multipoly_exact_div(b, cb);
    // Primitive PRS.
    MultiPoly f = pa, g = pb;
    if (f.degree_in(var) < g.degree_in(var)) std::swap(f, g);
    while (!g.is_zero() && g.degree_in(var) > 0) {
        MultiPoly r = pseudo_rem(f, g, var);
        if (r.is_zero()) {
            f = g;
            g = MultiPoly(a.var_count());
            break;
        }
        r = multipoly_exact_div(r, multipoly_content(r, var)).primitive_normalized();
        f = g;
        g = r;
    }
    MultiPoly result = (g.is_zero() ? f : MultiPoly::constant(a.var_count(), 1));
    result = multipoly_exact_div(result, multipoly_content(result, var));
    return (result * multipoly_gcd(ca, cb)).primitive_normalized();
}

MultiPoly multipoly_squarefree(const MultiPoly& g) {
    MultiPoly cur = g.primitive_normalized();
    for (std::size_t v = 0; v < g.var_count(); ++v) {
        if (cur.degree_in(v) <= 0) continue;
        MultiPoly d = multipoly_derivative(cur, v);
        if (d.is_zero()) continue;
        MultiPoly common = multipoly_gcd(cur, d);
        if (!common.is_constant()) cur = multipoly_exact_div(cur, common).primitive_normalized();
    }
    return cur;
}

namespace {

// Nodes 0, 1, -1, 2, -2, ... as rationals.
Rational node_value(std::size_t i) {
    if (i == 0) return Rational(0);
    long k = static_cast<long>((i + 1) / 2);
    return (i % 2 == 1) ? Rational(k) : Rational(-k);
}

} // namespace

MultiPoly multipoly_resultant(const MultiPoly& a, const MultiPoly& b, std::size_t var) {
    check_same_space(a, b);
    std::size_t nv = a.var_count();
    if (a.is_zero() || b.is_zero()) return MultiPoly(nv);
    long da = a.degree_in(var), db = b.degree_in(var);
    if (da == 0 && db == 0) return MultiPoly::constant(nv, 1);
    if (db == 0) {
        // res_var(a, c) = c^{deg_var a}
        MultiPoly r = MultiPoly::constant(nv, 1);
        for (long i = 0; i < da; ++i) r = r * b;
        return r;
    }
    if (da == 0) {
        MultiPoly r = MultiPoly::constant(nv, 1);
        for (long i = 0; i < db; ++i) r = r * a;
        // res(a,b) = (-1)^{da db} res(b,a) with da = 0: sign +.
        return r;
    }

    // Find another variable the inputs depend on; base case is bivariate-free
    // (univariate in `var`): direct field resultant.
    long other = -1;
    for (std::size_t v = 0; v < nv && other < 0; ++v)
        if (v != var && (a.degree_in(v) > 0 || b.degree_in(v) > 0)) other = static_cast<long>(v);
    if (other < 0) {
        Rational r = resultant(a.univariate_view(var), b.univariate_view(var));
        return MultiPoly::constant(nv, r);
    }

    // Interpolate the resultant in x_other at enough good nodes.
    std::size_t ov = static_cast<std::size_t>(other);
    long bound = a.degree_in(ov) * db + b.degree_in(ov) * da;
    std::vector<MultiPoly> lead_a = a.coefficients_in(var);
    std::vector<MultiPoly> lead_b = b.coefficients_in(var);
    const MultiPoly& la = lead_a.back();
    const MultiPoly& lb = lead_b.back();

    std::vector<Rational> nodes;
    std::vector<MultiPoly> values;
    std::size_t trial = 0;
    while (nodes.size() < static_cast<std::size_t>(bound) + 1) {
        Rational t = node_value(trial++);
        if (trial > 8 * static_cast<std::size_t>(bound) + 64)
            raise(ErrorKind::degenerate, "resultant interpolation could not find good nodes");
        if (la.substitute(ov, t).is_zero() || lb.substitute(ov, t).is_zero()) continue;
        nodes.push_back(t);
        values.push_back(multipoly_resultant(a.substitute(ov, t), b.substitute(ov, t), var));
    }

    // Lagrange interpolation in x_other with MultiPoly values.
    MultiPoly acc(nv);
    MultiPoly xv = MultiPoly::variable(nv, ov);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        MultiPoly basis = MultiPoly::constant(nv, 1);
        Rational denom(1);
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (i == j) continue;
            basis = basis * (xv - MultiPoly::constant(nv, nodes[j]));
            denom *= nodes[i] - nodes[j];
        }
        acc = acc + (values[i] * basis).scaled(Rational(1) / denom);
    }
    return acc;
}

} // namespace dyna
