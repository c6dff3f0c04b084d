#pragma once

// The identity DSL: syntax tree, recursive-descent parser, printer,
// series evaluation and the line-oriented corpus format.
//
//   identity := expr "=" expr
//   expr     := ["-"] term (("+" | "-") term)*
//   term     := factor (("*" | "/") factor)*
//   factor   := "-" factor | atom ["^" exponent]
//   exponent := ["-"] int ["/" posint] | "(" ["-"] int ["/" posint] ")"
//   atom     := pi(n) | sqrt(expr) | lam(a,b) | lam4(a,b) | dl3() | sodd()
//             | E2(m) | E4(m) | subst(expr, j) | int ["/" posint] | "(" expr ")"

#include "piq/etaq.hpp"
#include "piq/quasimod.hpp"

#include <cctype>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace piq {

class ParseError : public Error {
public:
    ParseError(const std::string &msg, long line, long column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line), column_(column)
    {
    }
    long line() const { return line_; }
    long column() const { return column_; }

private:
    long line_;
    long column_;
};

class SemanticError : public ParseError {
public:
    using ParseError::ParseError;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Const, Pi, Sqrt, Lambert, Subst, Neg, Add, Mul, Pow };

    Kind kind = Kind::Const;
    Rational value;   // Const value, Pow exponent
    long n = 0;       // Pi index, Subst exponent
    LambertSpec spec; // Lambert atom
    std::vector<ExprPtr> children;

    static ExprPtr constant(const Rational &c)
    {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Const;
        e->value = c;
        return e;
    }
    static ExprPtr pi(long n)
    {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Pi;
        e->n = n;
        return e;
    }
    static ExprPtr lambert(const LambertSpec &s)
    {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Lambert;
        e->spec = s;
        return e;
    }
    static ExprPtr unary(Kind k, ExprPtr child)
    {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->children.push_back(std::move(child));
        return e;
    }
    static ExprPtr sqrt(ExprPtr child) { return unary(Kind::Sqrt, std::move(child)); }
    static ExprPtr neg(ExprPtr child) { return unary(Kind::Neg, std::move(child)); }
    static ExprPtr subst(ExprPtr child, long j)
    {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Subst;
        e->n = j;
        e->children.push_back(std::move(child));
        return e;
    }
    static ExprPtr pow(ExprPtr base, const Rational &ex)
    {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Pow;
        e->value = ex;
        e->children.push_back(std::move(base));
        return e;
    }
    static ExprPtr nary(Kind k, std::vector<ExprPtr> children)
    {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->children = std::move(children);
        return e;
    }
    static ExprPtr add(std::vector<ExprPtr> c) { return nary(Kind::Add, std::move(c)); }
    static ExprPtr mul(std::vector<ExprPtr> c) { return nary(Kind::Mul, std::move(c)); }
};

inline bool structurally_equal(const Expr &a, const Expr &b)
{
    if (a.kind != b.kind || a.children.size() != b.children.size()) {
        return false;
    }
    switch (a.kind) {
    case Expr::Kind::Const:
        if (a.value != b.value) {
            return false;
        }
        break;
    case Expr::Kind::Pi:
    case Expr::Kind::Subst:
        if (a.n != b.n) {
            return false;
        }
        break;
    case Expr::Kind::Lambert:
        if (a.spec != b.spec) {
            return false;
        }
        break;
    case Expr::Kind::Pow:
        if (a.value != b.value) {
            return false;
        }
        break;
    default:
        break;
    }
    for (std::size_t i = 0; i < a.children.size(); ++i) {
        if (!structurally_equal(*a.children[i], *b.children[i])) {
            return false;
        }
    }
    return true;
}

/// Verification hints carried by a corpus record.
struct Hints {
    std::optional<long> subst;          // forced substitution exponent m
    std::optional<PiMonomial> clear;    // extra clearing multiplier
    std::optional<std::string> mode;    // "proof" or "check"
};

struct IdentityRecord {
    std::string id;
    std::string source;
    ExprPtr lhs;
    ExprPtr rhs;
    Hints hints;
};

namespace detail {

class Parser {
public:
    Parser(std::string_view text, long line = 1, long column = 1)
        : text_(text), line0_(line), col0_(column)
    {
    }

    ExprPtr parse_expression_only()
    {
        auto e = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("expected one of '+', '-', '*', '/', '^' or end of input");
        }
        return e;
    }

    std::pair<ExprPtr, ExprPtr> parse_identity()
    {
        auto l = expr();
        expect('=', "'='");
        auto r = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("expected one of '+', '-', '*', '/', '^' or end of input");
        }
        return {l, r};
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    long line0_;
    long col0_;

    [[noreturn]] void fail(const std::string &what, std::size_t at) const
    {
        long line = line0_, col = col0_;
        for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(what, line, col);
    }
    [[noreturn]] void fail(const std::string &what) const
    {
        std::size_t at = pos_;
        while (at < text_.size() && std::isspace(static_cast<unsigned char>(text_[at]))) {
            ++at;
        }
        fail(what, at);
    }
    [[noreturn]] void semantic(const std::string &what, std::size_t at) const
    {
        try {
            fail(what, at);
        } catch (const ParseError &e) {
            throw SemanticError(what, e.line(), e.column());
        }
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool peek(char c)
    {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c)
    {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char *name)
    {
        if (!accept(c)) {
            fail(std::string("expected ") + name);
        }
    }

    bool peek_digit()
    {
        skip_ws();
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    Integer integer()
    {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected integer");
        }
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    long small_integer()
    {
        std::size_t at = pos_;
        Integer z = integer();
        if (!z.fits_slong_p() || z > 1000000000) {
            fail("integer too large", at);
        }
        return z.get_si();
    }

    // int ["/" posint], the "/" only taken when a digit follows
    Rational rational_literal()
    {
        Integer num = integer();
        std::size_t save = pos_;
        if (accept('/')) {
            if (peek_digit()) {
                std::size_t at = pos_;
                Integer den = integer();
                if (den == 0) {
                    semantic("zero denominator", at);
                }
                return make_rational(num, den);
            }
            pos_ = save;
        }
        return Rational(num);
    }

    ExprPtr expr()
    {
        std::vector<ExprPtr> parts;
        if (accept('-')) {
            parts.push_back(negate(term()));
        } else {
            parts.push_back(term());
        }
        while (true) {
            if (accept('+')) {
                parts.push_back(term());
            } else if (accept('-')) {
                parts.push_back(negate(term()));
            } else {
                break;
            }
        }
        return parts.size() == 1 ? parts.front() : Expr::add(std::move(parts));
    }

    static ExprPtr negate(ExprPtr e)
    {
        if (e->kind == Expr::Kind::Const) {
            return Expr::constant(-e->value);
        }
        return Expr::neg(std::move(e));
    }

    ExprPtr term()
    {
        std::vector<ExprPtr> parts{factor()};
        while (true) {
            if (accept('*')) {
                parts.push_back(factor());
            } else if (accept('/')) {
                parts.push_back(Expr::pow(factor(), -1));
            } else {
                break;
            }
        }
        return parts.size() == 1 ? parts.front() : Expr::mul(std::move(parts));
    }

    ExprPtr factor()
    {
        if (accept('-')) {
            return negate(factor());
        }
        auto base = atom();
        if (accept('^')) {
            Rational e;
            if (accept('(')) {
                bool minus = accept('-');
                e = rational_literal();
                if (minus) {
                    e = -e;
                }
                expect(')', "')'");
            } else {
                bool minus = accept('-');
                e = rational_literal();
                if (minus) {
                    e = -e;
                }
            }
            return Expr::pow(base, e);
        }
        return base;
    }

    std::string identifier()
    {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    ExprPtr atom()
    {
        skip_ws();
        if (pos_ >= text_.size()) {
            fail("expected expression");
        }
        if (accept('(')) {
            auto e = expr();
            expect(')', "')'");
            return e;
        }
        if (peek_digit()) {
            return Expr::constant(rational_literal());
        }
        std::size_t at = pos_;
        std::string name = identifier();
        if (name.empty()) {
            fail("expected one of pi, sqrt, lam, lam4, dl3, sodd, E2, E4, subst, number or '('");
        }
        expect('(', "'('");
        ExprPtr out;
        if (name == "pi") {
            long n = small_integer();
            if (n == 0) {
                semantic("pi index must be positive", at);
            }
            out = Expr::pi(n);
        } else if (name == "sqrt") {
            out = Expr::sqrt(expr());
        } else if (name == "lam" || name == "lam4") {
            long a = small_integer();
            expect(',', "','");
            long b = small_integer();
            if (a == 0 || b >= a) {
                semantic(name + "(a,b) needs 0 <= b < a", at);
            }
            out = Expr::lambert(name == "lam" ? LambertSpec::lam(a, b) : LambertSpec::lam4(a, b));
        } else if (name == "dl3") {
            out = Expr::lambert(LambertSpec::dl3());
        } else if (name == "sodd") {
            out = Expr::lambert(LambertSpec::sodd());
        } else if (name == "E2" || name == "E4") {
            long m = small_integer();
            if (m == 0) {
                semantic(name + " scale must be positive", at);
            }
            out = Expr::lambert(name == "E2" ? LambertSpec::e2(m) : LambertSpec::e4(m));
        } else if (name == "subst") {
            auto inner = expr();
            expect(',', "','");
            std::size_t jat = pos_;
            long j = small_integer();
            if (j == 0) {
                semantic("subst exponent must be positive", jat);
            }
            out = Expr::subst(inner, j);
        } else {
            fail("unknown function '" + name + "'", at);
        }
        expect(')', "')'");
        return out;
    }
};

enum Prec { kPrecSum = 0, kPrecTerm = 1, kPrecFactor = 2, kPrecAtom = 3 };

inline std::string print(const Expr &e, int context);

inline std::string wrap(const Expr &e, int context, int own)
{
    std::string s = print(e, own);
    return own < context ? "(" + s + ")" : s;
}

inline std::string exponent_text(const Rational &r)
{
    if (is_integer(r) && r >= 0) {
        return r.get_str();
    }
    return "(" + r.get_str() + ")";
}

inline std::string print(const Expr &e, int context)
{
    switch (e.kind) {
    case Expr::Kind::Const: {
        std::string s = e.value.get_str();
        if (e.value < 0) {
            return context > kPrecSum ? "(" + s + ")" : s;
        }
        if (!is_integer(e.value) && context > kPrecTerm) {
            return "(" + s + ")";
        }
        return s;
    }
    case Expr::Kind::Pi:
        return "pi(" + std::to_string(e.n) + ")";
    case Expr::Kind::Lambert:
        return e.spec.to_string();
    case Expr::Kind::Sqrt:
        return "sqrt(" + print(*e.children[0], kPrecSum) + ")";
    case Expr::Kind::Subst:
        return "subst(" + print(*e.children[0], kPrecSum) + ", " + std::to_string(e.n) + ")";
    case Expr::Kind::Neg: {
        const Expr &c = *e.children[0];
        bool paren = c.kind == Expr::Kind::Add || c.kind == Expr::Kind::Neg ||
                     (c.kind == Expr::Kind::Const && c.value < 0);
        std::string s = "-" + (paren ? "(" + print(c, kPrecSum) + ")" : print(c, kPrecTerm));
        return context > kPrecSum ? "(" + s + ")" : s;
    }
    case Expr::Kind::Add: {
        std::string s;
        for (std::size_t i = 0; i < e.children.size(); ++i) {
            const Expr &c = *e.children[i];
            if (i == 0) {
                s += c.kind == Expr::Kind::Add ? "(" + print(c, kPrecSum) + ")" : print(c, kPrecSum);
            } else if (c.kind == Expr::Kind::Neg) {
                const Expr &body = *c.children[0];
                bool paren = body.kind == Expr::Kind::Add || body.kind == Expr::Kind::Neg ||
                             (body.kind == Expr::Kind::Const && body.value < 0);
                s += " - " + (paren ? "(" + print(body, kPrecSum) + ")" : print(body, kPrecTerm));
            } else if (c.kind == Expr::Kind::Add || (c.kind == Expr::Kind::Const && c.value < 0)) {
                s += " + (" + print(c, kPrecSum) + ")";
            } else {
                s += " + " + print(c, kPrecTerm);
            }
        }
        return context > kPrecSum ? "(" + s + ")" : s;
    }
    case Expr::Kind::Mul: {
        std::string s;
        for (std::size_t i = 0; i < e.children.size(); ++i) {
            const Expr &c = *e.children[i];
            if (i > 0 && c.kind == Expr::Kind::Pow && c.value == -1) {
                const Expr &base = *c.children[0];
                bool plain = base.kind == Expr::Kind::Pi || base.kind == Expr::Kind::Lambert ||
                             base.kind == Expr::Kind::Sqrt || base.kind == Expr::Kind::Subst;
                s += "/" + (plain ? print(base, kPrecAtom) : "(" + print(base, kPrecSum) + ")");
                continue;
            }
            if (i > 0) {
                s += "*";
            }
            bool paren = c.kind == Expr::Kind::Add || c.kind == Expr::Kind::Mul ||
                         c.kind == Expr::Kind::Neg || (c.kind == Expr::Kind::Const && c.value < 0) ||
                         (i > 0 && c.kind == Expr::Kind::Const && !is_integer(c.value));
            s += paren ? "(" + print(c, kPrecSum) + ")" : print(c, kPrecTerm);
        }
        return context > kPrecTerm ? "(" + s + ")" : s;
    }
    case Expr::Kind::Pow: {
        const Expr &base = *e.children[0];
        bool plain = base.kind == Expr::Kind::Pi || base.kind == Expr::Kind::Lambert ||
                     base.kind == Expr::Kind::Sqrt || base.kind == Expr::Kind::Subst ||
                     (base.kind == Expr::Kind::Const && is_integer(base.value) && base.value >= 0);
        std::string s = (plain ? print(base, kPrecAtom) : "(" + print(base, kPrecSum) + ")") + "^" +
                        exponent_text(e.value);
        return context > kPrecFactor ? "(" + s + ")" : s;
    }
    }
    return "?";
}

} // namespace detail

inline ExprPtr parse_expression(std::string_view text)
{
    return detail::Parser(text).parse_expression_only();
}

inline std::pair<ExprPtr, ExprPtr> parse_identity(std::string_view text, long line = 1,
                                                  long column = 1)
{
    return detail::Parser(text, line, column).parse_identity();
}

/// Parses "lhs = rhs" into a record with the given id.
inline IdentityRecord parse(std::string_view text, std::string id = "")
{
    auto [l, r] = parse_identity(text);
    IdentityRecord rec;
    rec.id = std::move(id);
    rec.lhs = l;
    rec.rhs = r;
    return rec;
}

inline std::string to_dsl(const Expr &e) { return detail::print(e, detail::kPrecSum); }

inline std::string to_dsl(const IdentityRecord &rec)
{
    return to_dsl(*rec.lhs) + " = " + to_dsl(*rec.rhs);
}

/// The monomial an expression denotes, if it is a product of Pi powers
/// (possibly under sqrt) with coefficient 1.
inline std::optional<PiMonomial> as_pi_monomial(const Expr &e)
{
    switch (e.kind) {
    case Expr::Kind::Const:
        if (e.value == 1) {
            return PiMonomial{};
        }
        return std::nullopt;
    case Expr::Kind::Pi: {
        PiMonomial p;
        p.exponents[e.n] = 1;
        return p;
    }
    case Expr::Kind::Sqrt: {
        auto inner = as_pi_monomial(*e.children[0]);
        if (!inner) {
            return std::nullopt;
        }
        return inner->power(make_rational(1, 2));
    }
    case Expr::Kind::Pow: {
        auto inner = as_pi_monomial(*e.children[0]);
        if (!inner) {
            return std::nullopt;
        }
        return inner->power(e.value);
    }
    case Expr::Kind::Mul: {
        PiMonomial p;
        for (const auto &c : e.children) {
            auto f = as_pi_monomial(*c);
            if (!f) {
                return std::nullopt;
            }
            p *= *f;
        }
        return p;
    }
    case Expr::Kind::Subst: {
        auto inner = as_pi_monomial(*e.children[0]);
        if (!inner) {
            return std::nullopt;
        }
        return inner->scaled(e.n);
    }
    default:
        return std::nullopt;
    }
}

/// Series value of an expression with `terms` units of q of relative
/// precision requested at the leaves.  The result carries whatever precision
/// the operations justify; callers compare only within it.
inline ScaledSeries evaluate(const Expr &e, long terms)
{
    switch (e.kind) {
    case Expr::Kind::Const:
        return ScaledSeries::constant(e.value);
    case Expr::Kind::Pi: {
        PiMonomial p;
        p.exponents[e.n] = 1;
        return expand(p, terms);
    }
    case Expr::Kind::Lambert:
        return expand_lambert(e.spec, terms);
    case Expr::Kind::Sqrt:
    case Expr::Kind::Pow: {
        Rational ex = e.kind == Expr::Kind::Sqrt ? make_rational(1, 2) : e.value;
        auto base = evaluate(*e.children[0], terms);
        if (base.is_exact() && !(is_integer(ex) && ex > 0) && base.coefficients().size() > 1) {
            base = base.with_relative_precision(terms);
        }
        return pow(base, ex);
    }
    case Expr::Kind::Subst:
        return subst_power(evaluate(*e.children[0], terms), e.n);
    case Expr::Kind::Neg:
        return -evaluate(*e.children[0], terms);
    case Expr::Kind::Add: {
        ScaledSeries s;
        for (const auto &c : e.children) {
            s = s + evaluate(*c, terms);
        }
        return s;
    }
    case Expr::Kind::Mul: {
        ScaledSeries s = ScaledSeries::constant(1);
        for (const auto &c : e.children) {
            s = s * evaluate(*c, terms);
        }
        return s;
    }
    }
    throw Error("bad expression node");
}

// ---------------------------------------------------------------------------
// Corpus files

inline constexpr std::string_view kCorpusHeader = "piqdsl 1";

inline std::vector<IdentityRecord> parse_corpus(std::string_view text)
{
    std::vector<IdentityRecord> out;
    std::istringstream in{std::string(text)};
    std::string line;
    long lineno = 0;
    bool header = false;
    IdentityRecord current;
    bool open = false;
    bool have_dsl = false;
    long record_line = 0;

    auto finish = [&]() {
        if (!open) {
            return;
        }
        if (current.id.empty()) {
            throw ParseError("record without id", record_line, 1);
        }
        if (!have_dsl) {
            throw ParseError("record '" + current.id + "' has no dsl field", record_line, 1);
        }
        for (const auto &r : out) {
            if (r.id == current.id) {
                throw ParseError("duplicate id '" + current.id + "'", record_line, 1);
            }
        }
        out.push_back(std::move(current));
        current = IdentityRecord{};
        open = false;
        have_dsl = false;
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        std::string_view view(line);
        std::size_t first = view.find_first_not_of(" \t");
        if (first == std::string_view::npos) {
            finish();
            continue;
        }
        if (view[first] == '#') {
            continue;
        }
        if (!header) {
            if (view.substr(first) != kCorpusHeader) {
                throw ParseError("expected header '" + std::string(kCorpusHeader) + "'", lineno,
                                 static_cast<long>(first) + 1);
            }
            header = true;
            continue;
        }
        std::size_t colon = view.find(':', first);
        if (colon == std::string_view::npos) {
            throw ParseError("expected 'field: value'", lineno, static_cast<long>(first) + 1);
        }
        std::string key(view.substr(first, colon - first));
        std::size_t vstart = view.find_first_not_of(" \t", colon + 1);
        std::string_view value = vstart == std::string_view::npos ? std::string_view{}
                                                                   : view.substr(vstart);
        long vcol = static_cast<long>(vstart == std::string_view::npos ? view.size() : vstart) + 1;
        if (!open) {
            open = true;
            record_line = lineno;
        }
        if (key == "id") {
            current.id = std::string(value);
        } else if (key == "source") {
            current.source = std::string(value);
        } else if (key == "dsl") {
            auto [l, r] = parse_identity(value, lineno, vcol);
            current.lhs = l;
            current.rhs = r;
            have_dsl = true;
        } else if (key == "hint.subst") {
            auto z = detail::Parser(value, lineno, vcol).parse_expression_only();
            if (z->kind != Expr::Kind::Const || !is_integer(z->value) || z->value < 1) {
                throw ParseError("hint.subst must be a positive integer", lineno, vcol);
            }
            current.hints.subst = to_long(z->value);
        } else if (key == "hint.clear") {
            auto z = detail::Parser(value, lineno, vcol).parse_expression_only();
            auto mono = as_pi_monomial(*z);
            if (!mono) {
                throw ParseError("hint.clear must be a pi monomial", lineno, vcol);
            }
            current.hints.clear = *mono;
        } else if (key == "hint.mode") {
            if (value != "proof" && value != "check") {
                throw ParseError("hint.mode must be proof or check", lineno, vcol);
            }
            current.hints.mode = std::string(value);
        } else {
            throw ParseError("unknown field '" + key + "'", lineno, static_cast<long>(first) + 1);
        }
    }
    finish();
    if (!header) {
        throw ParseError("expected header '" + std::string(kCorpusHeader) + "'", 1, 1);
    }
    return out;
}

inline std::string write_corpus(const std::vector<IdentityRecord> &records)
{
    std::string out(kCorpusHeader);
    out += "\n";
    for (const auto &r : records) {
        out += "\nid: " + r.id + "\n";
        if (!r.source.empty()) {
            out += "source: " + r.source + "\n";
        }
        out += "dsl: " + to_dsl(r) + "\n";
        if (r.hints.subst) {
            out += "hint.subst: " + std::to_string(*r.hints.subst) + "\n";
        }
        if (r.hints.clear) {
            out += "hint.clear: " + r.hints.clear->to_string() + "\n";
        }
        if (r.hints.mode) {
            out += "hint.mode: " + *r.hints.mode + "\n";
        }
    }
    return out;
}

/// Natural ordering of ids: digit runs compare numerically ("L12-2" < "L12-10").
inline bool natural_less(std::string_view a, std::string_view b)
{
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        bool da = std::isdigit(static_cast<unsigned char>(a[i]));
        bool db = std::isdigit(static_cast<unsigned char>(b[j]));
        if (da && db) {
            std::size_t i2 = i, j2 = j;
            while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) {
                ++i2;
            }
            while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) {
                ++j2;
            }
            auto x = std::stoll(std::string(a.substr(i, i2 - i)));
            auto y = std::stoll(std::string(b.substr(j, j2 - j)));
            if (x != y) {
                return x < y;
            }
            i = i2;
            j = j2;
        } else {
            if (a[i] != b[j]) {
                return a[i] < b[j];
            }
            ++i;
            ++j;
        }
    }
    return a.size() - i < b.size() - j;
}

} // namespace piq
