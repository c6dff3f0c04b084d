#pragma once

// Polynomial normal form of identity sides: sums of rational multiples of
// atoms Pi-monomial * Lambert factors * square-root symbols.  Each side
// becomes a quotient num/den of such polynomials; quotients by monomials are
// absorbed into (possibly negative, possibly half-integral) Pi exponents.

#include "piq/ident.hpp"

#include <map>
#include <set>
#include <vector>

namespace piq {

class NotPolynomializable : public Error {
public:
    using Error::Error;
};

struct Atom {
    PiMonomial pi;
    std::map<LambertSpec, int> lam;
    std::map<int, int> roots; // root symbol id -> exponent

    bool pure_pi() const { return lam.empty() && roots.empty(); }

    friend bool operator==(const Atom &, const Atom &) = default;
    friend bool operator<(const Atom &a, const Atom &b)
    {
        if (auto c = a.pi <=> b.pi; c != 0) {
            return c < 0;
        }
        if (a.lam != b.lam) {
            return a.lam < b.lam;
        }
        return a.roots < b.roots;
    }

    Atom &operator*=(const Atom &o)
    {
        pi *= o.pi;
        for (const auto &[s, e] : o.lam) {
            if ((lam[s] += e) == 0) {
                lam.erase(s);
            }
        }
        for (const auto &[r, e] : o.roots) {
            if ((roots[r] += e) == 0) {
                roots.erase(r);
            }
        }
        return *this;
    }
};

using Poly = std::map<Atom, Rational>;

inline Poly poly_constant(const Rational &c)
{
    Poly p;
    if (c != 0) {
        p[Atom{}] = c;
    }
    return p;
}

inline Poly poly_monomial(const PiMonomial &m, const Rational &c = 1)
{
    Poly p;
    if (c != 0) {
        p[Atom{m, {}, {}}] = c;
    }
    return p;
}

inline void poly_add_term(Poly &p, const Atom &a, const Rational &c)
{
    if (c == 0) {
        return;
    }
    auto [it, inserted] = p.emplace(a, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            p.erase(it);
        }
    }
}

inline Poly operator+(const Poly &a, const Poly &b)
{
    Poly out = a;
    for (const auto &[atom, c] : b) {
        poly_add_term(out, atom, c);
    }
    return out;
}

inline Poly operator-(const Poly &a)
{
    Poly out = a;
    for (auto &[atom, c] : out) {
        c = -c;
    }
    return out;
}

inline Poly operator-(const Poly &a, const Poly &b) { return a + (-b); }

inline Poly scale(const Poly &a, const Rational &c)
{
    if (c == 0) {
        return {};
    }
    Poly out = a;
    for (auto &[atom, x] : out) {
        x *= c;
    }
    return out;
}

inline Poly multiply_by_monomial(const Poly &a, const PiMonomial &m)
{
    Poly out;
    for (const auto &[atom, c] : a) {
        Atom t = atom;
        t.pi *= m;
        out.emplace(std::move(t), c);
    }
    return out;
}

inline bool is_one(const Poly &p)
{
    return p.size() == 1 && p.begin()->first == Atom{} && p.begin()->second == 1;
}

/// Registry of square-root symbols S_i with S_i^2 = inner_i.
class RootRegistry {
public:
    int intern(const Poly &inner)
    {
        for (std::size_t i = 0; i < inners_.size(); ++i) {
            if (inners_[i] == inner) {
                return static_cast<int>(i);
            }
        }
        inners_.push_back(inner);
        return static_cast<int>(inners_.size() - 1);
    }

    const Poly &inner(int id) const { return inners_.at(static_cast<std::size_t>(id)); }
    std::size_t size() const { return inners_.size(); }

private:
    std::vector<Poly> inners_;
};

inline Poly multiply(const Poly &a, const Poly &b, const RootRegistry &reg);

/// Rewrites S^e (e >= 2) as inner^(e/2) * S^(e mod 2).
inline Poly reduce_roots(const Poly &p, const RootRegistry &reg)
{
    bool needed = false;
    for (const auto &[atom, c] : p) {
        for (const auto &[r, e] : atom.roots) {
            if (e >= 2 || e < 0) {
                needed = true;
            }
        }
    }
    if (!needed) {
        return p;
    }
    Poly out;
    for (const auto &[atom, c] : p) {
        Atom base = atom;
        Poly factor = poly_constant(1);
        for (const auto &[r, e] : atom.roots) {
            if (e < 0) {
                throw NotPolynomializable("negative power of a square root");
            }
            if (e >= 2) {
                for (int i = 0; i < e / 2; ++i) {
                    factor = multiply(factor, reg.inner(r), reg);
                }
                if (e % 2 == 0) {
                    base.roots.erase(r);
                } else {
                    base.roots[r] = 1;
                }
            }
        }
        Poly term;
        term[base] = c;
        out = out + multiply(term, factor, reg);
    }
    return out;
}

inline Poly multiply(const Poly &a, const Poly &b, const RootRegistry &reg)
{
    Poly out;
    bool roots = false;
    for (const auto &[x, cx] : a) {
        for (const auto &[y, cy] : b) {
            Atom t = x;
            t *= y;
            if (!t.roots.empty()) {
                roots = true;
            }
            poly_add_term(out, t, cx * cy);
        }
    }
    return roots ? reduce_roots(out, reg) : out;
}

inline Poly power(const Poly &a, long e, const RootRegistry &reg)
{
    Poly result = poly_constant(1);
    Poly base = a;
    while (e > 0) {
        if (e & 1) {
            result = multiply(result, base, reg);
        }
        e >>= 1;
        if (e > 0) {
            base = multiply(base, base, reg);
        }
    }
    return result;
}

/// A single pure-Pi term c * monomial, if the polynomial is one.
inline std::optional<std::pair<Rational, PiMonomial>> as_monomial_term(const Poly &p)
{
    if (p.size() != 1 || !p.begin()->first.pure_pi()) {
        return std::nullopt;
    }
    return std::make_pair(p.begin()->second, p.begin()->first.pi);
}

/// q -> q^j on every atom; root symbols are re-interned with substituted inners.
inline Poly subst_poly(const Poly &p, long j, RootRegistry &reg)
{
    Poly out;
    for (const auto &[atom, c] : p) {
        Atom t;
        t.pi = atom.pi.scaled(j);
        for (const auto &[s, e] : atom.lam) {
            t.lam[s.scaled(j)] = e;
        }
        for (const auto &[r, e] : atom.roots) {
            Poly inner = subst_poly(reg.inner(r), j, reg);
            t.roots[reg.intern(inner)] = e;
        }
        poly_add_term(out, t, c);
    }
    return out;
}

struct RationalForm {
    Poly num;
    Poly den;
};

namespace detail {

class Normalizer {
public:
    explicit Normalizer(RootRegistry &reg) : reg_(reg) {}

    RationalForm run(const Expr &e)
    {
        switch (e.kind) {
        case Expr::Kind::Const:
            return {poly_constant(e.value), poly_constant(1)};
        case Expr::Kind::Pi: {
            PiMonomial m;
            m.exponents[e.n] = 1;
            return {poly_monomial(m), poly_constant(1)};
        }
        case Expr::Kind::Lambert: {
            Atom a;
            a.lam[e.spec] = 1;
            Poly p;
            p[a] = 1;
            return {p, poly_constant(1)};
        }
        case Expr::Kind::Neg: {
            auto f = run(*e.children[0]);
            return {-f.num, f.den};
        }
        case Expr::Kind::Add: {
            RationalForm acc{{}, poly_constant(1)};
            for (const auto &c : e.children) {
                auto f = run(*c);
                if (f.den == acc.den) {
                    acc.num = acc.num + f.num;
                } else {
                    acc.num = multiply(acc.num, f.den, reg_) + multiply(f.num, acc.den, reg_);
                    acc.den = multiply(acc.den, f.den, reg_);
                }
            }
            return simplify(acc);
        }
        case Expr::Kind::Mul: {
            RationalForm acc{poly_constant(1), poly_constant(1)};
            for (const auto &c : e.children) {
                auto f = run(*c);
                acc.num = multiply(acc.num, f.num, reg_);
                acc.den = multiply(acc.den, f.den, reg_);
            }
            return simplify(acc);
        }
        case Expr::Kind::Subst: {
            auto f = run(*e.children[0]);
            return {subst_poly(f.num, e.n, reg_), subst_poly(f.den, e.n, reg_)};
        }
        case Expr::Kind::Sqrt:
            return sqrt_of(run(*e.children[0]));
        case Expr::Kind::Pow:
            return pow_of(run(*e.children[0]), e.value);
        }
        throw Error("bad expression node");
    }

private:
    RootRegistry &reg_;

    // Absorbs a single-term pure-Pi denominator into the numerator.
    RationalForm simplify(RationalForm f)
    {
        if (is_one(f.den)) {
            return f;
        }
        if (auto m = as_monomial_term(f.den)) {
            Poly num = multiply_by_monomial(f.num, m->second.power(-1));
            return {scale(num, Rational(1) / m->first), poly_constant(1)};
        }
        return f;
    }

    RationalForm invert(const RationalForm &f)
    {
        if (f.num.empty()) {
            throw NotInvertible("division by an expression that normalizes to zero");
        }
        return simplify({f.den, f.num});
    }

    RationalForm pow_of(const RationalForm &f, const Rational &e)
    {
        if (is_integer(e)) {
            long n = to_long(e);
            RationalForm base = n < 0 ? invert(f) : f;
            long k = n < 0 ? -n : n;
            return simplify({power(base.num, k, reg_), power(base.den, k, reg_)});
        }
        if (is_one(f.den)) {
            if (auto m = as_monomial_term(f.num)) {
                auto root = exact_root(m->first, static_cast<unsigned long>(to_long(Integer(e.get_den()))));
                if (root && *root > 0) {
                    Rational c = rational_pow(*root, to_long(Integer(e.get_num())));
                    return {poly_monomial(m->second.power(e), c), poly_constant(1)};
                }
            }
        }
        if (e.get_den() == 2) {
            auto s = sqrt_of(f);
            return pow_of(s, Rational(e.get_num()));
        }
        throw NotPolynomializable("power " + e.get_str() + " of a non-monomial expression");
    }

    RationalForm sqrt_of(const RationalForm &f)
    {
        if (is_one(f.den)) {
            if (auto m = as_monomial_term(f.num)) {
                auto root = exact_root(m->first, 2);
                if (root && *root > 0) {
                    return {poly_monomial(m->second.power(make_rational(1, 2)), *root),
                            poly_constant(1)};
                }
            }
        }
        // sqrt(num/den) = sqrt(num*den)/den
        Poly inner = is_one(f.den) ? f.num : multiply(f.num, f.den, reg_);
        if (inner.empty()) {
            return {{}, poly_constant(1)};
        }
        for (const auto &[atom, c] : inner) {
            if (!atom.roots.empty()) {
                throw NotPolynomializable("nested square roots");
            }
        }
        Atom a;
        a.roots[reg_.intern(inner)] = 1;
        Poly s;
        s[a] = 1;
        return {s, f.den};
    }
};

} // namespace detail

inline RationalForm normalize_form(const Expr &e, RootRegistry &reg)
{
    return detail::Normalizer(reg).run(e);
}

/// Largest power of each Pi index dividing every term with a negative
/// exponent: the least monomial making all exponents nonnegative.
inline PiMonomial least_clearing_monomial(const std::vector<const Poly *> &polys)
{
    std::map<long, Rational> worst;
    for (const Poly *p : polys) {
        for (const auto &[atom, c] : *p) {
            for (const auto &[n, k] : atom.pi.exponents) {
                if (k < 0) {
                    auto it = worst.find(n);
                    if (it == worst.end() || k < it->second) {
                        worst[n] = k;
                    }
                }
            }
        }
    }
    PiMonomial m;
    for (const auto &[n, k] : worst) {
        m.exponents[n] = -k;
    }
    return m;
}

/// Root symbols occurring to an odd power.
inline std::set<int> root_parity(const Atom &a)
{
    std::set<int> out;
    for (const auto &[r, e] : a.roots) {
        if (e % 2 != 0) {
            out.insert(r);
        }
    }
    return out;
}

/// Fractional parts of Pi exponents, the coset of a term mod integer exponents.
inline std::map<long, Rational> exponent_coset(const PiMonomial &m)
{
    std::map<long, Rational> out;
    for (const auto &[n, k] : m.exponents) {
        Rational f = k - Rational(floor_of(k));
        if (f != 0) {
            out[n] = f;
        }
    }
    return out;
}

struct Signature {
    std::map<long, Rational> coset;
    std::set<int> roots;

    friend bool operator<(const Signature &a, const Signature &b)
    {
        if (a.roots != b.roots) {
            return a.roots < b.roots;
        }
        auto ia = a.coset.begin();
        auto ib = b.coset.begin();
        for (; ia != a.coset.end() && ib != b.coset.end(); ++ia, ++ib) {
            if (ia->first != ib->first) {
                return ia->first < ib->first;
            }
            if (ia->second != ib->second) {
                return ia->second < ib->second;
            }
        }
        return a.coset.size() < b.coset.size();
    }
};

inline std::map<Signature, Poly> group_by_signature(const Poly &p)
{
    std::map<Signature, Poly> groups;
    for (const auto &[atom, c] : p) {
        Signature s{exponent_coset(atom.pi), root_parity(atom)};
        groups[s][atom] = c;
    }
    return groups;
}

/// Result of turning an identity into polynomial form.
struct PolyIdentity {
    Poly left;                     // the two sides after cross-multiplication,
    Poly right;                    // squaring and clearing
    std::vector<Poly> denominators;// non-monomial denominators that were multiplied out
    bool squared = false;
    Poly root_u;                   // when squared: left - right = U + V before squaring,
    Poly root_v;                   // and the unsquared identity is U = -V
    PiMonomial clearing;           // monomial multiplied through
    RootRegistry roots;
};

/// Normalizes both sides, cross-multiplies denominators, performs at most one
/// squaring round, and clears negative Pi exponents with the least monomial
/// (times the optional extra multiplier).
inline PolyIdentity normalize_polynomial(const IdentityRecord &rec,
                                         const std::optional<PiMonomial> &extra = std::nullopt)
{
    PolyIdentity out;
    auto l = normalize_form(*rec.lhs, out.roots);
    auto r = normalize_form(*rec.rhs, out.roots);
    Poly left = l.num, right = r.num;
    if (!is_one(r.den)) {
        left = multiply(left, r.den, out.roots);
        out.denominators.push_back(r.den);
    }
    if (!is_one(l.den)) {
        right = multiply(right, l.den, out.roots);
        out.denominators.push_back(l.den);
    }

    Poly diff = left - right;
    auto groups = group_by_signature(diff);
    if (groups.size() > 2) {
        throw NotPolynomializable("more than two square-root classes; one squaring round is not enough");
    }
    if (groups.size() == 2) {
        out.squared = true;
        out.root_u = groups.begin()->second;
        out.root_v = std::next(groups.begin())->second;
        // keep U on the side where its terms came from: U = -V
        left = multiply(out.root_u, out.root_u, out.roots);
        right = multiply(out.root_v, out.root_v, out.roots);
    } else if (groups.size() == 1 && !groups.begin()->first.roots.empty()) {
        // a common square-root factor: multiply it through once more
        Poly s = poly_constant(1);
        for (int id : groups.begin()->first.roots) {
            Atom a;
            a.roots[id] = 1;
            Poly f;
            f[a] = 1;
            s = multiply(s, f, out.roots);
        }
        left = multiply(left, s, out.roots);
        right = multiply(right, s, out.roots);
    }
    for (const Poly *p : {&left, &right}) {
        for (const auto &[atom, c] : *p) {
            if (!atom.roots.empty()) {
                throw NotPolynomializable("square roots survive the squaring round");
            }
        }
    }
    PiMonomial clear = least_clearing_monomial({&left, &right});
    if (extra) {
        clear *= *extra;
    }
    out.left = multiply_by_monomial(left, clear);
    out.right = multiply_by_monomial(right, clear);
    out.clearing = clear;
    return out;
}

} // namespace piq
