#pragma once

// Relation mining among Pi-monomials of fixed degree, split by the residue
// of sum k_i n_i mod 4; every relation found is certified by prove().

#include "piq/linalg.hpp"
#include "piq/verify.hpp"

namespace piq {

class Unbounded : public Error {
public:
    using Error::Error;
};

struct DiscoveryQuery {
    std::vector<long> indices; // strictly increasing
    long max_degree = 6;
};

struct DiscoveredRelation {
    long degree = 0;
    int residue_class = 0;
    std::vector<PiMonomial> monomials;
    IntegerVector coefficients;
    ProofReport certificate;

    /// "positive terms = negated negative terms" in the identity DSL.
    std::string to_dsl() const
    {
        auto side = [&](int sign) {
            std::string s;
            for (std::size_t i = 0; i < monomials.size(); ++i) {
                Integer c = coefficients[i] * sign;
                if (c <= 0) {
                    continue;
                }
                if (!s.empty()) {
                    s += " + ";
                }
                if (c != 1) {
                    s += c.get_str() + "*";
                }
                s += monomials[i].to_string();
            }
            return s.empty() ? std::string("0") : s;
        };
        return side(1) + " = " + side(-1);
    }
};

inline int residue_class(const PiMonomial &m)
{
    Rational c = 0;
    for (const auto &[n, k] : m.exponents) {
        c += k * n;
    }
    long r = to_long(c) % 4;
    return static_cast<int>(r < 0 ? r + 4 : r);
}

/// All exponent vectors of total degree d, in decreasing lexicographic order,
/// grouped by residue class.
inline std::map<int, std::vector<PiMonomial>> enumerate_monomials(const DiscoveryQuery &q, long d)
{
    std::map<int, std::vector<PiMonomial>> out;
    std::vector<long> e(q.indices.size(), 0);
    auto rec = [&](auto &&self, std::size_t i, long left) -> void {
        if (i + 1 == q.indices.size()) {
            e[i] = left;
            PiMonomial m;
            for (std::size_t j = 0; j < e.size(); ++j) {
                if (e[j] != 0) {
                    m.exponents[q.indices[j]] = e[j];
                }
            }
            out[residue_class(m)].push_back(m);
            return;
        }
        for (long x = left; x >= 0; --x) {
            e[i] = x;
            self(self, i + 1, left - x);
        }
    };
    if (!q.indices.empty() && d >= 0) {
        rec(rec, 0, d);
    }
    return out;
}

/// Smallest k with binom(2k+m-1, m-1) > 2kn prod_{p|n, p>2}(1+1/p) + 1, n = lcm.
inline long gosper_bound(const DiscoveryQuery &q)
{
    const long m = static_cast<long>(q.indices.size());
    if (m <= 2) {
        throw Unbounded("fewer than three indices: no degree is guaranteed");
    }
    long n = 1;
    for (long x : q.indices) {
        n = std::lcm(n, x);
    }
    Rational factor = n;
    for (long p : prime_divisors(n)) {
        if (p > 2) {
            factor *= make_rational(p + 1, p);
        }
    }
    for (long k = 1;; ++k) {
        Integer count;
        mpz_bin_uiui(count.get_mpz_t(), static_cast<unsigned long>(2 * k + m - 1),
                     static_cast<unsigned long>(m - 1));
        if (Rational(count) > 2 * k * factor + 1) {
            return k;
        }
    }
}

namespace detail {

struct MiningBasis {
    long rows = 0;
    long lcm = 1;
    std::map<long, ScaledSeries> pi; // Pi_{q^n}, known to `rows` units
    std::map<std::pair<long, long>, ScaledSeries> powers;

    const ScaledSeries &power(long n, long k)
    {
        auto key = std::make_pair(n, k);
        auto it = powers.find(key);
        if (it == powers.end()) {
            auto &base = pi.at(n);
            it = powers.emplace(key, pow(base, Rational(k))).first;
        }
        return it->second;
    }

    ScaledSeries eval(const PiMonomial &m)
    {
        ScaledSeries s = ScaledSeries::constant(1);
        for (const auto &[n, k] : m.exponents) {
            s = s * power(n, to_long(k));
        }
        return s;
    }
};

// Rows: coefficients at exponents c/4 + j, j < rows.
inline RationalMatrix mining_matrix(MiningBasis &basis, const std::vector<PiMonomial> &mons, int residue)
{
    RationalMatrix mat(static_cast<std::size_t>(basis.rows), std::vector<Rational>(mons.size()));
    for (std::size_t c = 0; c < mons.size(); ++c) {
        auto s = basis.eval(mons[c]);
        for (long j = 0; j < basis.rows; ++j) {
            mat[static_cast<std::size_t>(j)][c] = s.coefficient(make_rational(residue, 4) + j);
        }
    }
    return mat;
}

} // namespace detail

/// Mines all degrees 1..max_degree.  Relations implied by lower-degree ones
/// (times monomials) are suppressed.  Output is ordered by degree, residue
/// class, then kernel basis order.
inline std::vector<DiscoveredRelation> mine(const DiscoveryQuery &q, const ProveConfig &cfg = {})
{
    std::vector<DiscoveredRelation> found;
    if (q.indices.size() < 2) {
        return found;
    }
    long lcm = 1;
    for (long n : q.indices) {
        lcm = std::lcm(lcm, n);
    }
    for (long d = 1; d <= q.max_degree; ++d) {
        detail::MiningBasis basis;
        basis.rows = sturm_bound(8 * lcm, d) + 5;
        basis.lcm = lcm;
        long terms = basis.rows + 2;
        for (long n : q.indices) {
            PiMonomial m;
            m.exponents[n] = 1;
            basis.pi.emplace(n, expand(m, terms));
        }
        auto classes = enumerate_monomials(q, d);
        for (const auto &[residue, mons] : classes) {
            if (mons.size() < 2) {
                continue;
            }
            auto mat = detail::mining_matrix(basis, mons, residue);
            auto ker = kernel(mat, mons.size());
            if (ker.empty()) {
                continue;
            }
            std::map<PiMonomial, std::size_t> column;
            for (std::size_t i = 0; i < mons.size(); ++i) {
                column[mons[i]] = i;
            }
            // span of earlier relations times complementary monomials
            RationalMatrix span;
            for (const auto &rel : found) {
                auto comp = enumerate_monomials(q, d - rel.degree);
                for (const auto &[cr, cms] : comp) {
                    if ((cr + rel.residue_class) % 4 != residue) {
                        continue;
                    }
                    for (const auto &cm : cms) {
                        std::vector<Rational> v(mons.size(), Rational(0));
                        for (std::size_t i = 0; i < rel.monomials.size(); ++i) {
                            v[column.at(rel.monomials[i] * cm)] += Rational(rel.coefficients[i]);
                        }
                        span.push_back(std::move(v));
                    }
                }
            }
            std::size_t r = span.empty() ? 0 : rank(span, mons.size());
            for (const auto &v : ker) {
                span.emplace_back(v.begin(), v.end());
                std::size_t r2 = rank(span, mons.size());
                if (r2 == r) {
                    span.pop_back();
                    continue;
                }
                r = r2;
                DiscoveredRelation rel;
                rel.degree = d;
                rel.residue_class = residue;
                for (std::size_t i = 0; i < mons.size(); ++i) {
                    if (v[i] != 0) {
                        rel.monomials.push_back(mons[i]);
                        rel.coefficients.push_back(v[i]);
                    }
                }
                auto rec = parse(rel.to_dsl(), "mined-" + std::to_string(d) + "-" +
                                                   std::to_string(residue));
                rel.certificate = prove(rec, cfg);
                if (rel.certificate.verdict == Verdict::Proven) {
                    found.push_back(std::move(rel));
                }
            }
        }
    }
    return found;
}

} // namespace piq
