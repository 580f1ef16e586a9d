#include "dynaheight/io.hpp"

#include <cctype>
#include <cfenv>
#include <cstdlib>
#include <optional>

namespace dyna {

namespace {

struct Token {
    enum Kind { number, variable, plus, minus, star, slash, caret, lparen, rparen, end } kind;
    std::string text;   // number digits
    std::size_t index;  // variable index (0-based)
    std::size_t col;    // 1-based column for error messages
};

[[noreturn]] void parse_fail(const std::string& what, std::size_t col) {
    raise(ErrorKind::parse, what + " at line 1, column " + std::to_string(col));
}

class Lexer {
  public:
    Lexer(const std::string& text, std::size_t nvars) : s_(text), nvars_(nvars) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::size_t col = pos_ + 1;
        if (pos_ >= s_.size()) {
            tok_ = {Token::end, "", 0, col};
            return;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            tok_ = {Token::number, s_.substr(start, pos_ - start), 0, col};
            return;
        }
        if (c == 'x' || c == 'X') {
            ++pos_;
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string digits = s_.substr(start, pos_ - start);
            std::size_t index;
            if (digits.empty()) {
                if (nvars_ != 1)
                    parse_fail("bare 'x' is ambiguous with " + std::to_string(nvars_) +
                                   " variables (use x1..x" + std::to_string(nvars_) + ")",
                               col);
                index = 0;
            } else {
                long k = std::strtol(digits.c_str(), nullptr, 10);
                if (k < 1 || static_cast<std::size_t>(k) > nvars_)
                    parse_fail("variable x" + digits + " out of range (have " +
                                   std::to_string(nvars_) + ")",
                               col);
                index = static_cast<std::size_t>(k - 1);
            }
            tok_ = {Token::variable, "", index, col};
            return;
        }
        ++pos_;
        switch (c) {
            case '+': tok_ = {Token::plus, "", 0, col}; return;
            case '-': tok_ = {Token::minus, "", 0, col}; return;
            case '*': tok_ = {Token::star, "", 0, col}; return;
            case '/': tok_ = {Token::slash, "", 0, col}; return;
            case '^': tok_ = {Token::caret, "", 0, col}; return;
            case '(': tok_ = {Token::lparen, "", 0, col}; return;
            case ')': tok_ = {Token::rparen, "", 0, col}; return;
            default: parse_fail(std::string("unexpected character '") + c + "'", col);
        }
    }

    const std::string& s_;
    std::size_t nvars_;
    std::size_t pos_ = 0;
    Token tok_;
};

class Parser {
  public:
    Parser(const std::string& text, std::size_t nvars) : lex_(text, nvars), nvars_(nvars) {}

    MultiPoly parse() {
        MultiPoly p = expr();
        if (lex_.peek().kind != Token::end) parse_fail("trailing input", lex_.peek().col);
        return p;
    }

  private:
    MultiPoly expr() {
        MultiPoly acc = term();
        for (;;) {
            Token::Kind k = lex_.peek().kind;
            if (k == Token::plus) {
                lex_.take();
                acc = acc + term();
            } else if (k == Token::minus) {
                lex_.take();
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    MultiPoly term() {
        MultiPoly acc = factor();
        for (;;) {
            Token::Kind k = lex_.peek().kind;
            if (k == Token::star) {
                lex_.take();
                acc = acc * factor();
            } else if (k == Token::slash) {
                std::size_t col = lex_.take().col;
                MultiPoly d = factor();
                if (!d.is_constant()) parse_fail("division by a non-constant", col);
                Rational c = d.constant_value();
                if (c == 0) parse_fail("division by zero", col);
                acc = acc.scaled(1 / c);
            } else if (k == Token::variable || k == Token::lparen || k == Token::number) {
                // juxtaposition: 2x^2, (x+1)(x-1), 2(x+1)
                acc = acc * factor();
            } else {
                return acc;
            }
        }
    }

    MultiPoly factor() {
        const Token& t = lex_.peek();
        if (t.kind == Token::minus) {
            lex_.take();
            return -factor();
        }
        MultiPoly base = primary();
        if (lex_.peek().kind == Token::caret) {
            std::size_t col = lex_.take().col;
            const Token& e = lex_.peek();
            if (e.kind != Token::number) parse_fail("exponent must be a nonnegative integer", col);
            long exp = std::strtol(lex_.take().text.c_str(), nullptr, 10);
            if (exp < 0 || exp > Config::kDefaultDegreeCap)
                parse_fail("exponent out of range", col);
            MultiPoly acc = MultiPoly::constant(nvars_, Rational(1));
            for (long i = 0; i < exp; ++i) acc = acc * base;
            return acc;
        }
        return base;
    }

    MultiPoly primary() {
        Token t = lex_.take();
        switch (t.kind) {
            case Token::number: {
                Rational q(t.text);
                q.canonicalize();
                return MultiPoly::constant(nvars_, q);
            }
            case Token::variable:
                return MultiPoly::variable(nvars_, t.index);
            case Token::lparen: {
                MultiPoly inner = expr();
                if (lex_.peek().kind != Token::rparen) parse_fail("missing ')'", lex_.peek().col);
                lex_.take();
                return inner;
            }
            default:
                parse_fail("expected a number, variable, or '('", t.col);
        }
    }

    Lexer lex_;
    std::size_t nvars_;
};

void append_coefficient(std::string* out, const Rational& c, bool lead_term, bool has_vars) {
    Rational a = abs(c);
    if (lead_term) {
        if (c < 0) *out += "-";
    } else {
        *out += c < 0 ? " - " : " + ";
    }
    if (a != 1 || !has_vars) {
        *out += to_string(a);
        if (has_vars) *out += "*";
    }
}

} // namespace

RPoly parse_poly(const std::string& text) {
    return Parser(text, 1).parse().univariate_view(0);
}

MultiPoly parse_multipoly(const std::string& text, int nvars) {
    if (nvars < 1) raise(ErrorKind::parse, "need at least one variable");
    return Parser(text, static_cast<std::size_t>(nvars)).parse();
}

std::string poly_to_string(const RPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool lead = true;
    for (long i = p.degree(); i >= 0; --i) {
        Rational c = p.coeff(static_cast<std::size_t>(i));
        if (c == 0) continue;
        append_coefficient(&out, c, lead, i > 0);
        if (i > 1)
            out += "x^" + std::to_string(i);
        else if (i == 1)
            out += "x";
        lead = false;
    }
    return out;
}

std::string multipoly_to_string(const MultiPoly& p) {
    if (p.is_zero()) return "0";
    if (p.var_count() == 1) return poly_to_string(p.univariate_view(0));
    // descending lexicographic on exponent vectors, so leading terms first
    std::string out;
    bool lead = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [expo, c] = *it;
        bool has_vars = false;
        for (unsigned e : expo)
            if (e > 0) has_vars = true;
        append_coefficient(&out, c, lead, has_vars);
        bool first_var = true;
        for (std::size_t v = 0; v < expo.size(); ++v) {
            if (expo[v] == 0) continue;
            if (!first_var) out += "*";
            out += "x" + std::to_string(v + 1);
            if (expo[v] > 1) out += "^" + std::to_string(expo[v]);
            first_var = false;
        }
        lead = false;
    }
    return out;
}

double radius_to_double(const BigFloat& r) {
    return mpfr_get_d(r.raw(), MPFR_RNDU);
}

nlohmann::json algebraic_to_json(const AlgebraicNumber& a) {
    return nlohmann::json{
        {"minpoly", poly_to_string(a.min_poly())},
        {"approx",
         {a.box().re().midpoint().to_double(), a.box().im().midpoint().to_double()}},
        {"radius", radius_to_double(a.box().disk_radius())},
    };
}

} // namespace dyna
