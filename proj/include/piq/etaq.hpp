#pragma once

// Eta quotients prod eta(delta z)^(r_delta) and Pi-monomials
// prod Pi_{q^n}^(k_n), with their modularity conditions and cusp orders.
// Here Pi_q = q^(1/4) psi(q)^2 = eta(2z)^4 / eta(z)^2.

#include "piq/series.hpp"

#include <map>
#include <string>
#include <vector>

namespace piq {

class LevelMismatch : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public Error {
public:
    using Error::Error;
};

struct EtaQuotient {
    long level = 1;
    std::map<long, long> exponents; // delta -> r_delta, nonzero

    Rational weight() const
    {
        long sum = 0;
        for (const auto &[d, r] : exponents) {
            sum += r;
        }
        return make_rational(sum, 2);
    }

    friend bool operator==(const EtaQuotient &, const EtaQuotient &) = default;
};

/// Product of Pi_{q^n}^(k_n); exponents may be any rationals, but only
/// half-integral ones correspond to eta quotients.
struct PiMonomial {
    std::map<long, Rational> exponents; // n -> k_n, nonzero

    bool empty() const { return exponents.empty(); }

    Rational weight() const
    {
        Rational w = 0;
        for (const auto &[n, k] : exponents) {
            w += k;
        }
        return w;
    }

    /// lcm of the indices n (1 for the empty monomial).
    long index_lcm() const
    {
        long l = 1;
        for (const auto &[n, k] : exponents) {
            l = std::lcm(l, n);
        }
        return l;
    }

    PiMonomial &operator*=(const PiMonomial &o)
    {
        for (const auto &[n, k] : o.exponents) {
            Rational &slot = exponents[n];
            slot += k;
            if (slot == 0) {
                exponents.erase(n);
            }
        }
        return *this;
    }

    friend PiMonomial operator*(PiMonomial a, const PiMonomial &b) { return a *= b; }

    PiMonomial power(const Rational &e) const
    {
        PiMonomial out;
        if (e == 0) {
            return out;
        }
        for (const auto &[n, k] : exponents) {
            out.exponents[n] = k * e;
        }
        return out;
    }

    /// q -> q^j multiplies every index by j.
    PiMonomial scaled(long j) const
    {
        PiMonomial out;
        for (const auto &[n, k] : exponents) {
            out.exponents[n * j] = k;
        }
        return out;
    }

    std::string to_string() const
    {
        if (exponents.empty()) {
            return "1";
        }
        std::string s;
        for (const auto &[n, k] : exponents) {
            if (!s.empty()) {
                s += "*";
            }
            s += "pi(" + std::to_string(n) + ")";
            if (k != 1) {
                s += is_integer(k) && k > 0 ? "^" + k.get_str() : "^(" + k.get_str() + ")";
            }
        }
        return s;
    }

    friend bool operator==(const PiMonomial &, const PiMonomial &) = default;
    friend auto operator<=>(const PiMonomial &a, const PiMonomial &b)
    {
        // std::map of mpq_class lacks <=>; compare entrywise.
        auto ia = a.exponents.begin();
        auto ib = b.exponents.begin();
        for (; ia != a.exponents.end() && ib != b.exponents.end(); ++ia, ++ib) {
            if (ia->first != ib->first) {
                return ia->first <=> ib->first;
            }
            if (ia->second != ib->second) {
                return ia->second < ib->second ? std::strong_ordering::less
                                               : std::strong_ordering::greater;
            }
        }
        return a.exponents.size() <=> b.exponents.size();
    }
};

struct Cusp {
    long r = 1;
    long s = 1;

    friend bool operator==(const Cusp &, const Cusp &) = default;
};

/// "∞", "0" or "r/s".
inline std::string cusp_label(const Cusp &c, long level)
{
    if (c.s == level) {
        return "∞";
    }
    if (c.s == 1) {
        return "0";
    }
    return std::to_string(c.r) + "/" + std::to_string(c.s);
}

struct ModularityFacts {
    Rational weight;
    long level = 1;
    bool condition_a = true;
    bool condition_b = true;
    Integer character_disc = 1;
};

inline std::vector<long> divisors(long n)
{
    std::vector<long> small, large;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) {
                large.push_back(n / d);
            }
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

inline std::vector<long> prime_divisors(long n)
{
    std::vector<long> out;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) {
                n /= p;
            }
        }
    }
    if (n > 1) {
        out.push_back(n);
    }
    return out;
}

/// Kronecker symbol (a/n).
inline int kronecker(const Integer &a, const Integer &n)
{
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

inline EtaQuotient pi_to_eta(const PiMonomial &p, long level)
{
    EtaQuotient e;
    e.level = level;
    for (const auto &[n, k] : p.exponents) {
        if (level % (2 * n) != 0) {
            throw LevelMismatch("2*" + std::to_string(n) + " does not divide level " +
                                std::to_string(level));
        }
        Rational four = 4 * k;
        Rational two = 2 * k;
        if (!is_integer(two)) {
            throw Error("Pi exponent " + k.get_str() + " is not a half-integer");
        }
        e.exponents[2 * n] += to_long(four);
        e.exponents[n] -= to_long(two);
    }
    std::erase_if(e.exponents, [](const auto &kv) { return kv.second == 0; });
    return e;
}

inline ModularityFacts modularity_facts(const EtaQuotient &e)
{
    ModularityFacts f;
    f.level = e.level;
    f.weight = e.weight();
    long a = 0, b = 0;
    Integer s = 1;
    for (const auto &[d, r] : e.exponents) {
        a += d * r;
        b += (e.level / d) * r;
        // prod delta^(r_delta) up to squares; Kronecker symbols only see the class.
        if (r % 2 != 0) {
            s *= d;
        }
    }
    f.condition_a = a % 24 == 0;
    f.condition_b = b % 24 == 0;
    if (is_integer(f.weight) && to_long(f.weight) % 2 != 0) {
        s = -s;
    }
    f.character_disc = s;
    return f;
}

inline long index_gamma0(long level)
{
    long idx = level;
    for (long p : prime_divisors(level)) {
        idx = idx / p * (p + 1);
    }
    return idx;
}

/// Sturm bound floor(k * index / 12) + 1 for integral weight k >= 0.
inline long sturm_bound(long level, long weight)
{
    return weight * index_gamma0(level) / 12 + 1;
}

/// Infinity first (as 1/N), then s ascending with r ascending.
inline std::vector<Cusp> cusps(long level)
{
    std::vector<Cusp> out;
    out.push_back({1, level});
    for (long s : divisors(level)) {
        if (s == level) {
            continue;
        }
        long g = std::gcd(s, level / s);
        for (long u = 0; u < g; ++u) {
            if (std::gcd(u, g) != 1) {
                continue;
            }
            long r = u;
            while (std::gcd(r, s) != 1) {
                r += g;
            }
            out.push_back({r, s});
        }
    }
    return out;
}

inline bool cusps_equivalent(const Cusp &a, const Cusp &b, long level)
{
    if (a.s != b.s) {
        return false;
    }
    long g = std::gcd(a.s, level / a.s);
    return ((a.r - b.r) % g + g) % g == 0;
}

inline long cusp_width(const Cusp &c, long level)
{
    return level / std::gcd(c.s * c.s, level);
}

/// Order at r/s without checking the modularity conditions.
inline Rational eta_order_unchecked(const EtaQuotient &e, const Cusp &c)
{
    const long n = e.level;
    Rational sum = 0;
    for (const auto &[d, r] : e.exponents) {
        long g = std::gcd(c.s, d);
        sum += make_rational(g * g * r, d);
    }
    return sum * n / (24 * std::gcd(c.s, n / c.s) * c.s);
}

inline Rational order_at_cusp(const EtaQuotient &e, const Cusp &c)
{
    auto f = modularity_facts(e);
    if (!f.condition_a || !f.condition_b) {
        throw PreconditionViolated("eta quotient fails the mod-24 conditions at level " +
                                   std::to_string(e.level));
    }
    return eta_order_unchecked(e, c);
}

inline Rational pi_order_at_cusp(const PiMonomial &p, const Cusp &c, long level)
{
    Rational sum = 0;
    for (const auto &[n, k] : p.exponents) {
        long g2 = std::gcd(c.s, 2 * n);
        long g1 = std::gcd(c.s, n);
        sum += 2 * k / n * (g2 * g2 - g1 * g1);
    }
    return sum * level / (24 * c.s * std::gcd(c.s, level / c.s));
}

/// q-expansion with `terms` units of q of relative precision.
inline ScaledSeries expand(const EtaQuotient &e, long terms)
{
    long lead = 0;
    ScaledSeries product = ScaledSeries::constant(1).with_relative_precision(terms);
    for (const auto &[d, r] : e.exponents) {
        lead += d * r;
        if (d >= terms) {
            continue; // factor is 1 + O(q^terms)
        }
        product = product * pow(eta_product_part(d, terms), Rational(r));
    }
    return ScaledSeries::monomial(1, make_rational(lead, 24)) * product;
}

/// Expansion of a Pi-monomial with any rational exponents.
inline ScaledSeries expand(const PiMonomial &p, long terms)
{
    ScaledSeries product = ScaledSeries::constant(1).with_relative_precision(terms);
    Rational lead = 0;
    for (const auto &[n, k] : p.exponents) {
        lead += k * n / 4;
        if (2 * n >= terms && n >= terms) {
            continue;
        }
        // Pi_{q^n} / q^(n/4) = (q^(2n);q^(2n))^4 / (q^n;q^n)^2
        if (is_integer(2 * k)) {
            product = product * pow(eta_product_part(2 * n, terms), Rational(4 * k)) *
                      pow(eta_product_part(n, terms), Rational(-2 * k));
        } else {
            auto base = pow(eta_product_part(2 * n, terms), Rational(4)) *
                        pow(eta_product_part(n, terms), Rational(-2));
            product = product * pow(base, k);
        }
    }
    return ScaledSeries::monomial(1, lead) * product;
}

} // namespace piq
