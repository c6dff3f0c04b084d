#pragma once

// Proof engine: polynomial normal form -> Eisenstein/Pi terms -> modularity
// certificate -> Sturm-bounded coefficient comparison.

#include "piq/polyform.hpp"

#include <cstdlib>
#include <sstream>

namespace piq {

enum class Verdict { Proven, Refuted, Checked, Uncertified, Error };

inline std::string verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Proven:
        return "PROVEN";
    case Verdict::Refuted:
        return "REFUTED";
    case Verdict::Checked:
        return "CHECKED";
    case Verdict::Uncertified:
        return "UNCERTIFIED";
    case Verdict::Error:
        return "ERROR";
    }
    return "?";
}

struct ProofReport {
    std::string id;
    Verdict verdict = Verdict::Error;
    std::string detail;
    long weight = 0;
    long level = 0;
    long subst_exponent = 1;
    std::optional<PiMonomial> clearing_multiplier;
    long sturm_bound = 0;
    long coefficients_compared = 0;
    // REFUTED: first mismatching exponent (in the variable after q -> q^m) and both coefficients
    std::optional<Rational> mismatch_exponent;
    Rational lhs_coefficient = 0;
    Rational rhs_coefficient = 0;
    bool squared = false;
    std::optional<bool> root_matched;
    std::vector<std::string> certificate;

    std::string verdict_string() const
    {
        std::string s = verdict_name(verdict);
        if (verdict == Verdict::Refuted && mismatch_exponent) {
            s += "(" + mismatch_exponent->get_str() + "," + lhs_coefficient.get_str() + "," +
                 rhs_coefficient.get_str() + ")";
        } else if (verdict == Verdict::Checked) {
            s += "(" + std::to_string(coefficients_compared) + ")";
        } else if ((verdict == Verdict::Uncertified || verdict == Verdict::Error) && !detail.empty()) {
            s += "(" + detail + ")";
        }
        return s;
    }
};

struct ProveConfig {
    long max_clear_weight = 16;
    long max_coefficients = 2000;
    long check_terms = 100; // fallback comparison length for uncertified identities
};

/// Precision ceiling: PIQ_MAX_TERMS overrides the configured maximum.
inline long max_terms(const ProveConfig &cfg)
{
    if (const char *env = std::getenv("PIQ_MAX_TERMS")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) {
            return v;
        }
    }
    return cfg.max_coefficients;
}

/// Leading exponents and leading coefficients agree (the real branch of an
/// ell-th root of unity).
inline bool root_match(const ScaledSeries &f, const ScaledSeries &g, long ell = 2)
{
    (void)ell;
    if (f.is_zero() || g.is_zero()) {
        return f.is_zero() && g.is_zero();
    }
    return f.leading_exponent() == g.leading_exponent() &&
           f.leading_coefficient() == g.leading_coefficient();
}

/// Compares the first T coefficients of both sides, starting at the smaller
/// leading exponent.
inline ProofReport check(const IdentityRecord &rec, long terms)
{
    ProofReport rep;
    rep.id = rec.id;
    if (terms < 1) {
        throw PreconditionViolated("check needs at least one term");
    }
    try {
        for (long extra = 10;; extra *= 2) {
            auto l = evaluate(*rec.lhs, terms + extra);
            auto r = evaluate(*rec.rhs, terms + extra);
            Rational lead = 0;
            if (!l.is_zero() || !r.is_zero()) {
                lead = l.is_zero()   ? r.leading_exponent()
                       : r.is_zero() ? l.leading_exponent()
                                     : std::min(l.leading_exponent(), r.leading_exponent());
            }
            Rational end = lead + terms;
            auto d = l - r;
            if (!d.is_zero() && d.leading_exponent() < end) {
                Rational e = d.leading_exponent();
                rep.verdict = Verdict::Refuted;
                rep.mismatch_exponent = e;
                rep.lhs_coefficient = l.coefficient(e);
                rep.rhs_coefficient = r.coefficient(e);
                rep.coefficients_compared = terms;
                return rep;
            }
            if (d.is_exact() || d.precision_bound() >= end) {
                rep.verdict = Verdict::Checked;
                rep.coefficients_compared = terms;
                return rep;
            }
            if (extra > 4 * terms + 1000) {
                throw InsufficientPrecision("cannot reach the requested number of terms");
            }
        }
    } catch (const Error &e) {
        rep.verdict = Verdict::Error;
        rep.detail = e.what();
    }
    return rep;
}

namespace detail {

// Pi-monomial times products of E2(dz) and E4(dz) powers.
struct EisKey {
    PiMonomial pi;
    std::map<long, int> e2;
    std::map<long, int> e4;

    friend bool operator<(const EisKey &a, const EisKey &b)
    {
        if (auto c = a.pi <=> b.pi; c != 0) {
            return c < 0;
        }
        if (a.e2 != b.e2) {
            return a.e2 < b.e2;
        }
        return a.e4 < b.e4;
    }
    friend bool operator==(const EisKey &, const EisKey &) = default;

    long e2_degree() const
    {
        long d = 0;
        for (const auto &[s, p] : e2) {
            d += p;
        }
        return d;
    }
    long e4_degree() const
    {
        long d = 0;
        for (const auto &[s, p] : e4) {
            d += p;
        }
        return d;
    }
    Rational weight() const { return pi.weight() + 2 * e2_degree() + 4 * e4_degree(); }
};

using EisPoly = std::map<EisKey, Rational>;

inline void eis_add(EisPoly &p, const EisKey &k, const Rational &c)
{
    if (c == 0) {
        return;
    }
    auto [it, inserted] = p.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            p.erase(it);
        }
    }
}

class Uncertifiable : public Error {
public:
    using Error::Error;
};

// Rule R1 on every group of terms sharing a cofactor with a single Lambert factor.
inline Poly apply_cube_rule_poly(const Poly &p, std::vector<std::string> &cert)
{
    std::map<Atom, LambertFragment> frags;
    Poly out;
    bool any = false;
    for (const auto &[atom, c] : p) {
        if (atom.lam.size() == 1 && atom.lam.begin()->second == 1) {
            Atom cof = atom;
            cof.lam.clear();
            frags[cof][atom.lam.begin()->first] += c;
            if (atom.lam.begin()->first.kind == LambertKind::Lam4) {
                any = true;
            }
        } else {
            for (const auto &[s, e] : atom.lam) {
                if (s.kind == LambertKind::Lam4) {
                    throw Uncertifiable("irreducible Lambert pattern: " + s.to_string() + "^" +
                                        std::to_string(e));
                }
            }
            poly_add_term(out, atom, c);
        }
    }
    if (!any) {
        return p;
    }
    for (const auto &[cof, frag] : frags) {
        auto reduced = apply_cube_rule(frag);
        if (!reduced) {
            throw Uncertifiable("irreducible Lambert pattern: lam4 without matching lam partner");
        }
        if (*reduced != frag) {
            cert.push_back("R1: 6c*lam4(2b,b) + c*lam(2b,b) = c*dl3(b)");
        }
        for (const auto &[spec, c] : *reduced) {
            Atom a = cof;
            a.lam[spec] = 1;
            poly_add_term(out, a, c);
        }
    }
    return out;
}

inline EisPoly to_eisenstein(const Poly &p, std::vector<std::string> &cert)
{
    Poly reduced = apply_cube_rule_poly(p, cert);
    EisPoly out;
    std::set<std::string> cited;
    for (const auto &[atom, c] : reduced) {
        if (!atom.roots.empty()) {
            throw Uncertifiable("square root left in a squared identity");
        }
        EisPoly acc;
        acc[EisKey{atom.pi, {}, {}}] = c;
        for (const auto &[spec, e] : atom.lam) {
            auto combo = reduce_lambert(spec);
            if (!combo) {
                throw Uncertifiable("irreducible Lambert pattern: " + spec.to_string());
            }
            cited.insert(spec.to_string() + " -> Eisenstein combination");
            for (int i = 0; i < e; ++i) {
                EisPoly next;
                for (const auto &[key, x] : acc) {
                    eis_add(next, key, x * combo->constant);
                    for (const auto &[d, a] : combo->e2) {
                        EisKey k = key;
                        ++k.e2[d];
                        eis_add(next, k, x * a);
                    }
                    for (const auto &[d, b] : combo->e4) {
                        EisKey k = key;
                        ++k.e4[d];
                        eis_add(next, k, x * b);
                    }
                }
                acc = std::move(next);
            }
        }
        for (const auto &[k, x] : acc) {
            eis_add(out, k, x);
        }
    }
    cert.insert(cert.end(), cited.begin(), cited.end());
    return out;
}

// Smallest m in {1,2,4,8} with m * sum k_i n_i = 0 mod 4.
inline long minimal_subst(const PiMonomial &pi)
{
    Rational c = 0;
    for (const auto &[n, k] : pi.exponents) {
        c += k * n;
    }
    for (long m : {1L, 2L, 4L, 8L}) {
        Rational x = c * m / 4;
        if (is_integer(x)) {
            return m;
        }
    }
    throw Uncertifiable("exponent sum " + c.get_str() + " has no admissible substitution");
}

// Squarefree class of prod n_i^(2 k_i), which fixes the character beyond (-1)^k.
inline std::set<long> character_class(const PiMonomial &pi)
{
    std::map<long, long> parity;
    for (const auto &[n, k] : pi.exponents) {
        long e = to_long(2 * k);
        long x = n;
        for (long p : prime_divisors(n)) {
            long v = 0;
            while (x % p == 0) {
                x /= p;
                ++v;
            }
            parity[p] += v * e;
        }
    }
    std::set<long> out;
    for (const auto &[p, v] : parity) {
        if (v % 2 != 0) {
            out.insert(p);
        }
    }
    return out;
}

// The E2-polynomial of each (Pi, E4) group must be invariant under the
// simultaneous shift E2(dz) -> E2(dz) + t/d; that is, its derivative in the
// direction (1/d)_d vanishes.
inline std::optional<std::string> e2_obstruction(const EisPoly &d)
{
    std::map<std::pair<PiMonomial, std::map<long, int>>, std::map<std::map<long, int>, Rational>> deriv;
    for (const auto &[key, c] : d) {
        for (const auto &[s, p] : key.e2) {
            std::map<long, int> nu = key.e2;
            if (--nu[s] == 0) {
                nu.erase(s);
            }
            deriv[{key.pi, key.e4}][nu] += c * p / s;
        }
    }
    for (const auto &[group, poly] : deriv) {
        for (const auto &[nu, x] : poly) {
            if (x != 0) {
                return "E2 combination is not modular at " + group.first.to_string();
            }
        }
    }
    return std::nullopt;
}

struct SeriesCache {
    long terms;
    std::map<std::pair<long, Rational>, ScaledSeries> pi_powers;
    std::map<std::pair<long, int>, ScaledSeries> e2_powers, e4_powers;

    const ScaledSeries &pi_power(long n, const Rational &k)
    {
        auto key = std::make_pair(n, k);
        auto it = pi_powers.find(key);
        if (it == pi_powers.end()) {
            PiMonomial m;
            m.exponents[n] = k;
            it = pi_powers.emplace(key, expand(m, terms)).first;
        }
        return it->second;
    }

    const ScaledSeries &e_power(bool four, long d, int p)
    {
        auto &cache = four ? e4_powers : e2_powers;
        auto key = std::make_pair(d, p);
        auto it = cache.find(key);
        if (it == cache.end()) {
            auto base = four ? expand_e4(d, terms) : expand_e2(d, terms);
            it = cache.emplace(key, pow(base, Rational(p))).first;
        }
        return it->second;
    }

    ScaledSeries eval(const EisKey &k)
    {
        ScaledSeries s = ScaledSeries::constant(1);
        for (const auto &[n, e] : k.pi.exponents) {
            s = s * pi_power(n, e);
        }
        for (const auto &[d, p] : k.e2) {
            s = s * e_power(false, d, p);
        }
        for (const auto &[d, p] : k.e4) {
            s = s * e_power(true, d, p);
        }
        return s.truncated(Rational(terms));
    }

    ScaledSeries eval(const EisPoly &p)
    {
        ScaledSeries s;
        for (const auto &[k, c] : p) {
            s = s + c * eval(k);
        }
        return s.truncated(Rational(terms));
    }
};

// Evaluates a polynomial form with square-root symbols (used for root matching).
inline ScaledSeries evaluate_poly(const Poly &p, const RootRegistry &reg, long terms)
{
    ScaledSeries out;
    for (const auto &[atom, c] : p) {
        ScaledSeries s = expand(atom.pi, terms);
        for (const auto &[spec, e] : atom.lam) {
            s = s * pow(expand_lambert(spec, terms + 1).with_relative_precision(terms), Rational(e));
        }
        for (const auto &[r, e] : atom.roots) {
            auto inner = evaluate_poly(reg.inner(r), reg, terms);
            s = s * pow(inner, make_rational(e, 2));
        }
        out = out + c * s;
    }
    return out;
}

struct Setup {
    long weight = 0;
    long m = 1;
    long level = 1;
};

// Weight, substitution and level of a set of terms; throws Uncertifiable when
// the terms do not share one space of modular forms.
inline Setup modular_setup(const std::vector<const EisPoly *> &polys, std::optional<long> forced_m)
{
    Setup s;
    std::optional<Rational> weight;
    std::optional<std::set<long>> chi;
    long m = 1;
    long level = 1;
    bool any = false;
    for (const EisPoly *p : polys) {
        for (const auto &[k, c] : *p) {
            any = true;
            for (const auto &[n, e] : k.pi.exponents) {
                if (!is_integer(2 * e)) {
                    throw Uncertifiable("Pi exponent " + e.get_str() + " is not half-integral");
                }
            }
            Rational w = k.weight();
            if (!is_integer(w)) {
                throw Uncertifiable("term " + k.pi.to_string() + " has non-integral weight");
            }
            if (weight && *weight != w) {
                throw Uncertifiable("non-homogeneous weights " + weight->get_str() + " and " +
                                    w.get_str());
            }
            weight = w;
            auto cls = character_class(k.pi);
            if (chi && *chi != cls) {
                throw Uncertifiable("terms carry different characters");
            }
            chi = cls;
            m = std::lcm(m, minimal_subst(k.pi));
            for (const auto &[n, e] : k.pi.exponents) {
                level = std::lcm(level, 2 * n);
            }
            for (const auto &[d, p2] : k.e2) {
                level = std::lcm(level, d);
            }
            for (const auto &[d, p4] : k.e4) {
                level = std::lcm(level, d);
            }
        }
    }
    if (!any) {
        return s;
    }
    if (forced_m) {
        if (*forced_m % m != 0) {
            throw Uncertifiable("hinted substitution " + std::to_string(*forced_m) +
                                " does not satisfy the residue condition");
        }
        m = *forced_m;
    }
    if (*weight < 0) {
        throw Uncertifiable("negative weight");
    }
    s.weight = to_long(*weight);
    s.m = m;
    s.level = level * m;
    return s;
}

inline bool holomorphic_at_cusps(const std::vector<const EisPoly *> &polys, const PiMonomial &extra,
                                 long m, long level)
{
    auto cs = cusps(level);
    std::set<PiMonomial> seen;
    for (const EisPoly *p : polys) {
        for (const auto &[k, c] : *p) {
            if (!seen.insert(k.pi).second) {
                continue;
            }
            PiMonomial t = (k.pi * extra).scaled(m);
            for (const auto &cusp : cs) {
                if (pi_order_at_cusp(t, cusp, level) < 0) {
                    return false;
                }
            }
        }
    }
    return true;
}

// Breadth-first search by added weight for a multiplier with nonnegative
// orders at every cusp; lexicographically smallest exponent vector first.
inline std::optional<PiMonomial> search_clearing(const std::vector<const EisPoly *> &polys, long m,
                                                 long level, long max_weight)
{
    long l = 1;
    for (const EisPoly *p : polys) {
        for (const auto &[k, c] : *p) {
            l = std::lcm(l, k.pi.index_lcm());
        }
    }
    auto ds = divisors(l);
    for (long w = 1; w <= max_weight; ++w) {
        std::vector<long> e(ds.size(), 0);
        std::optional<PiMonomial> found;
        // exponent vectors of total w in lexicographic order
        auto rec = [&](auto &&self, std::size_t i, long left) -> bool {
            if (i + 1 == ds.size()) {
                e[i] = left;
                PiMonomial cand;
                for (std::size_t j = 0; j < ds.size(); ++j) {
                    if (e[j] != 0) {
                        cand.exponents[ds[j]] = e[j];
                    }
                }
                long lvl = std::lcm(level, 2 * m * l);
                if (holomorphic_at_cusps(polys, cand, m, lvl)) {
                    found = cand;
                    return true;
                }
                return false;
            }
            for (long x = 0; x <= left; ++x) {
                e[i] = x;
                if (self(self, i + 1, left - x)) {
                    return true;
                }
            }
            return false;
        };
        if (rec(rec, 0, w)) {
            return found;
        }
    }
    return std::nullopt;
}

inline EisPoly times_monomial(const EisPoly &p, const PiMonomial &m)
{
    EisPoly out;
    for (const auto &[k, c] : p) {
        EisKey t = k;
        t.pi *= m;
        out.emplace(std::move(t), c);
    }
    return out;
}

// First exponent (after q -> q^m) in [0, count) where the sides differ.
struct Comparison {
    std::optional<Rational> exponent;
    Rational lhs = 0, rhs = 0;
};

inline Comparison compare_sides(const EisPoly &left, const EisPoly &right, long m, long count)
{
    long terms = (count + m - 1) / m + 2;
    SeriesCache cache{terms, {}, {}, {}};
    auto l = cache.eval(left);
    auto r = cache.eval(right);
    auto d = l - r;
    Comparison out;
    Rational end = make_rational(count, m);
    if (!d.is_zero() && d.leading_exponent() < end) {
        Rational e = d.leading_exponent();
        out.exponent = e * m;
        out.lhs = l.coefficient(e);
        out.rhs = r.coefficient(e);
    }
    if (!d.is_exact() && d.precision_bound() < end) {
        throw InsufficientPrecision("comparison did not reach the required exponent");
    }
    return out;
}

} // namespace detail

/// Proof-mode verification of one identity.
inline ProofReport prove(const IdentityRecord &rec, const ProveConfig &cfg = {})
{
    using namespace detail;
    ProofReport rep;
    rep.id = rec.id;
    if (rec.hints.mode && *rec.hints.mode == "check") {
        auto r = check(rec, cfg.check_terms);
        r.id = rec.id;
        return r;
    }
    std::optional<std::string> reason;
    std::optional<Setup> setup;
    EisPoly left, right;
    PolyIdentity form;
    try {
        form = normalize_polynomial(rec, rec.hints.clear);
    } catch (const NotPolynomializable &e) {
        auto c = check(rec, cfg.check_terms);
        if (c.verdict == Verdict::Refuted) {
            c.detail = e.what();
            return c;
        }
        rep.verdict = Verdict::Uncertified;
        rep.detail = e.what();
        rep.coefficients_compared = c.coefficients_compared;
        return rep;
    } catch (const Error &e) {
        rep.verdict = Verdict::Error;
        rep.detail = e.what();
        return rep;
    }
    rep.squared = form.squared;
    try {
        // denominators multiplied through must not vanish
        for (const auto &den : form.denominators) {
            if (evaluate_poly(den, form.roots, 20).is_zero()) {
                rep.verdict = Verdict::Error;
                rep.detail = "denominator vanishes";
                return rep;
            }
        }
        if (form.squared) {
            rep.certificate.push_back("squared once: (U)^2 = (V)^2 with U = -V to be matched");
        }
        try {
            left = to_eisenstein(form.left, rep.certificate);
            right = to_eisenstein(form.right, rep.certificate);
            EisPoly diff = left;
            for (const auto &[k, c] : right) {
                eis_add(diff, k, -c);
            }
            // terms cancelling between the sides play no part in the certificate
            const EisPoly *basis = diff.empty() ? nullptr : &diff;
            std::vector<const EisPoly *> terms = basis ? std::vector<const EisPoly *>{basis}
                                                       : std::vector<const EisPoly *>{&left, &right};
            if (diff.empty()) {
                rep.certificate.push_back("sides agree term by term");
                try {
                    setup = modular_setup(terms, rec.hints.subst);
                } catch (const Uncertifiable &) {
                    // nothing left to certify
                }
            } else {
                setup = modular_setup(terms, rec.hints.subst);
            }
            if (auto obstruction = e2_obstruction(diff)) {
                throw Uncertifiable(*obstruction);
            }
            PiMonomial extra;
            if (setup && !holomorphic_at_cusps(terms, extra, setup->m, setup->level)) {
                auto found = search_clearing(terms, setup->m, setup->level, cfg.max_clear_weight);
                if (!found) {
                    throw Uncertifiable("clearing search exhausted");
                }
                left = times_monomial(left, *found);
                right = times_monomial(right, *found);
                diff = times_monomial(diff, *found);
                form.clearing *= *found;
                setup = modular_setup(terms, rec.hints.subst);
            }
        } catch (const Uncertifiable &e) {
            reason = e.what();
        }
        rep.clearing_multiplier = form.clearing;
        if (setup) {
            rep.weight = setup->weight;
            rep.level = setup->level;
            rep.subst_exponent = setup->m;
            rep.sturm_bound = sturm_bound(setup->level, setup->weight);
            if (rep.sturm_bound > max_terms(cfg)) {
                rep.verdict = Verdict::Error;
                rep.detail = "Sturm bound " + std::to_string(rep.sturm_bound) + " exceeds the precision ceiling";
                return rep;
            }
            auto cmp = compare_sides(left, right, setup->m, rep.sturm_bound);
            rep.coefficients_compared = rep.sturm_bound;
            if (cmp.exponent) {
                rep.verdict = Verdict::Refuted;
                rep.mismatch_exponent = cmp.exponent;
                rep.lhs_coefficient = cmp.lhs;
                rep.rhs_coefficient = cmp.rhs;
                return rep;
            }
        }
        if (!reason) {
            if (form.squared) {
                long t = 3;
                auto u = evaluate_poly(form.root_u, form.roots, t);
                auto v = evaluate_poly(-form.root_v, form.roots, t);
                rep.root_matched = root_match(u, v, 2);
                if (!*rep.root_matched) {
                    rep.verdict = Verdict::Refuted;
                    rep.detail = "square roots on opposite branches";
                    rep.mismatch_exponent = u.is_zero() ? Rational(0) : u.leading_exponent();
                    rep.lhs_coefficient = u.is_zero() ? Rational(0) : u.leading_coefficient();
                    rep.rhs_coefficient = v.is_zero() ? Rational(0) : v.coefficient(*rep.mismatch_exponent);
                    return rep;
                }
            }
            rep.verdict = Verdict::Proven;
            return rep;
        }
        // not certifiable: a longer plain comparison can still refute
        auto c = check(rec, cfg.check_terms);
        if (c.verdict == Verdict::Refuted) {
            c.id = rec.id;
            c.detail = *reason;
            c.weight = rep.weight;
            c.level = rep.level;
            c.subst_exponent = rep.subst_exponent;
            c.sturm_bound = rep.sturm_bound;
            c.clearing_multiplier = rep.clearing_multiplier;
            return c;
        }
        rep.verdict = Verdict::Uncertified;
        rep.detail = *reason;
        rep.coefficients_compared = std::max(rep.coefficients_compared, c.coefficients_compared);
        return rep;
    } catch (const Error &e) {
        rep.verdict = Verdict::Error;
        rep.detail = e.what();
        return rep;
    }
}

/// One-line text report: id verdict weight level m clearing sturm checked.
inline std::string format_text(const ProofReport &r)
{
    std::ostringstream os;
    std::string clear = r.clearing_multiplier && !r.clearing_multiplier->empty()
                            ? r.clearing_multiplier->to_string()
                            : "-";
    os << r.id << ' ' << r.verdict_string() << ' ' << r.weight << ' ' << r.level << ' '
       << r.subst_exponent << ' ' << clear << ' ' << r.sturm_bound << ' ' << r.coefficients_compared;
    if (r.squared) {
        os << " squared";
    }
    return os.str();
}

inline constexpr const char *kTsvVersion = "# piq report 1";
inline constexpr const char *kTsvHeader = "id\tverdict\tweight\tlevel\tm\tsturm\tchecked";

inline std::string format_tsv(const ProofReport &r)
{
    std::ostringstream os;
    os << r.id << '\t' << r.verdict_string() << '\t' << r.weight << '\t' << r.level << '\t'
       << r.subst_exponent << '\t' << r.sturm_bound << '\t' << r.coefficients_compared;
    return os.str();
}

} // namespace piq
