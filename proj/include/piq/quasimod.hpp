#pragma once

// Lambert series, Eisenstein series E2/E4, and the rewrite rules that turn
// Lambert sums into certified combinations of E2(dz) and E4(dz).

#include "piq/series.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>

namespace piq {

/// Divisor power sum sigma_s(n).
inline Integer sigma(unsigned long s, long n)
{
    Integer total = 0;
    Integer p;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0) {
            continue;
        }
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), s);
        total += p;
        long e = n / d;
        if (e != d) {
            mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(e), s);
            total += p;
        }
    }
    return total;
}

enum class LambertKind { Lam, Lam4, Dl3, Sodd, E2, E4 };

/// Lam(a,b)  = sum_n q^(an-b)/(1-q^(an-b))^2
/// Lam4(a,b) = sum_n q^(2(an-b))/(1-q^(an-b))^4
/// Dl3, Sodd, E2, E4 take a single scale in `a` (q -> q^a); b is unused.
struct LambertSpec {
    LambertKind kind = LambertKind::Lam;
    long a = 1;
    long b = 0;

    static LambertSpec lam(long a, long b) { return {LambertKind::Lam, a, b}; }
    static LambertSpec lam4(long a, long b) { return {LambertKind::Lam4, a, b}; }
    static LambertSpec dl3(long m = 1) { return {LambertKind::Dl3, m, 0}; }
    static LambertSpec sodd(long m = 1) { return {LambertKind::Sodd, m, 0}; }
    static LambertSpec e2(long m) { return {LambertKind::E2, m, 0}; }
    static LambertSpec e4(long m) { return {LambertKind::E4, m, 0}; }

    bool two_parameter() const { return kind == LambertKind::Lam || kind == LambertKind::Lam4; }

    /// q -> q^j.
    LambertSpec scaled(long j) const { return {kind, a * j, b * j}; }

    friend auto operator<=>(const LambertSpec &, const LambertSpec &) = default;

    std::string to_string() const
    {
        switch (kind) {
        case LambertKind::Lam:
            return "lam(" + std::to_string(a) + "," + std::to_string(b) + ")";
        case LambertKind::Lam4:
            return "lam4(" + std::to_string(a) + "," + std::to_string(b) + ")";
        case LambertKind::Dl3:
            return a == 1 ? "dl3()" : "subst(dl3()," + std::to_string(a) + ")";
        case LambertKind::Sodd:
            return a == 1 ? "sodd()" : "subst(sodd()," + std::to_string(a) + ")";
        case LambertKind::E2:
            return "E2(" + std::to_string(a) + ")";
        case LambertKind::E4:
            return "E4(" + std::to_string(a) + ")";
        }
        return "?";
    }
};

/// E2(mz) = 1 - 24 sum sigma(n) q^(mn), known below q^terms.
inline ScaledSeries expand_e2(long m, long terms)
{
    std::vector<Rational> c(static_cast<std::size_t>(terms), Rational(0));
    c[0] = 1;
    for (long n = 1; m * n < terms; ++n) {
        c[static_cast<std::size_t>(m * n)] = Rational(-24 * sigma(1, n));
    }
    return ScaledSeries::from_integer_coefficients(std::move(c), terms);
}

/// E4(mz) = 1 + 240 sum sigma_3(n) q^(mn), known below q^terms.
inline ScaledSeries expand_e4(long m, long terms)
{
    std::vector<Rational> c(static_cast<std::size_t>(terms), Rational(0));
    c[0] = 1;
    for (long n = 1; m * n < terms; ++n) {
        c[static_cast<std::size_t>(m * n)] = Rational(240 * sigma(3, n));
    }
    return ScaledSeries::from_integer_coefficients(std::move(c), terms);
}

/// Exact expansion below q^terms by direct enumeration of the defining sums.
inline ScaledSeries expand_lambert(const LambertSpec &spec, long terms)
{
    if (terms < 1) {
        throw Error("lambert expansion needs terms >= 1");
    }
    std::vector<Rational> c(static_cast<std::size_t>(terms), Rational(0));
    const long m = spec.a;
    switch (spec.kind) {
    case LambertKind::Lam:
    case LambertKind::Lam4: {
        bool four = spec.kind == LambertKind::Lam4;
        for (long n = 1; spec.a * n - spec.b < terms; ++n) {
            long base = spec.a * n - spec.b;
            for (long k = four ? 2 : 1; k * base < terms; ++k) {
                c[static_cast<std::size_t>(k * base)] += four ? (k * k * k - k) / 6 : k;
            }
        }
        break;
    }
    case LambertKind::Dl3:
        for (long n = 1; m * n < terms; ++n) {
            Integer v = sigma(3, n);
            if (n % 2 == 0) {
                v -= sigma(3, n / 2);
            }
            c[static_cast<std::size_t>(m * n)] = Rational(v);
        }
        break;
    case LambertKind::Sodd:
        for (long n = 1; m * n < terms; n += 2) {
            c[static_cast<std::size_t>(m * n)] = Rational(sigma(1, n));
        }
        break;
    case LambertKind::E2:
        return expand_e2(m, terms);
    case LambertKind::E4:
        return expand_e4(m, terms);
    }
    return ScaledSeries::from_integer_coefficients(std::move(c), terms);
}

/// constant + sum_d a_d E2(dz).
struct E2Combo {
    std::map<long, Rational> terms;
    Rational constant = 0;

    void add(long d, const Rational &a)
    {
        Rational &slot = terms[d];
        slot += a;
        if (slot == 0) {
            terms.erase(d);
        }
    }
};

inline bool is_modular_combo(const E2Combo &c)
{
    Rational s = 0;
    for (const auto &[d, a] : c.terms) {
        s += a / d;
    }
    return s == 0;
}

/// Rewrites Lam(a,0), Lam(2b,b), Sodd and E2 into E2 combinations;
/// nullopt for anything else (Lam4 and Dl3 go through the combination rules).
inline std::optional<E2Combo> reduce_to_e2(const LambertSpec &spec)
{
    E2Combo c;
    Rational k = make_rational(1, 24);
    switch (spec.kind) {
    case LambertKind::Lam:
        if (spec.b == 0) {
            c.constant = k;
            c.add(spec.a, -k);
            return c;
        }
        if (spec.a == 2 * spec.b) {
            c.add(spec.a, k);
            c.add(spec.b, -k);
            return c;
        }
        return std::nullopt;
    case LambertKind::Sodd:
        c.add(2 * spec.a, 3 * k);
        c.add(spec.a, -k);
        c.add(4 * spec.a, -2 * k);
        return c;
    case LambertKind::E2:
        c.add(spec.a, 1);
        return c;
    default:
        return std::nullopt;
    }
}

/// constant + sum a_d E2(dz) + sum b_d E4(dz).
struct EisensteinCombo {
    Rational constant = 0;
    std::map<long, Rational> e2;
    std::map<long, Rational> e4;
};

/// Every Lambert atom except Lam4 (and unrecognized Lam patterns) reduces here;
/// Dl3 uses Dl3(m) = (E4(mz) - E4(2mz))/240.
inline std::optional<EisensteinCombo> reduce_lambert(const LambertSpec &spec)
{
    EisensteinCombo out;
    if (spec.kind == LambertKind::Dl3) {
        out.e4[spec.a] = make_rational(1, 240);
        out.e4[2 * spec.a] = make_rational(-1, 240);
        return out;
    }
    if (spec.kind == LambertKind::E4) {
        out.e4[spec.a] = 1;
        return out;
    }
    auto e2 = reduce_to_e2(spec);
    if (!e2) {
        return std::nullopt;
    }
    out.constant = e2->constant;
    out.e2 = e2->terms;
    return out;
}

/// A linear combination of Lambert atoms.
using LambertFragment = std::map<LambertSpec, Rational>;

/// Rule R1: 6c Lam4(2b,b) + c Lam(2b,b) -> c Dl3(b).  Fires on every Lam4 in
/// the fragment or returns nullopt when some Lam4 has no exactly matching partner.
inline std::optional<LambertFragment> apply_cube_rule(const LambertFragment &frag)
{
    LambertFragment out = frag;
    for (const auto &[spec, coeff] : frag) {
        if (spec.kind != LambertKind::Lam4) {
            continue;
        }
        if (spec.a != 2 * spec.b) {
            return std::nullopt;
        }
        auto partner = out.find(LambertSpec::lam(spec.a, spec.b));
        Rational c = coeff / 6;
        if (partner == out.end() || partner->second != c) {
            return std::nullopt;
        }
        out.erase(partner);
        out.erase(spec);
        out[LambertSpec::dl3(spec.b)] += c;
    }
    std::erase_if(out, [](const auto &kv) { return kv.second == 0; });
    return out;
}

} // namespace piq
