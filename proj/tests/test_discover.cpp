#include "piq/discover.hpp"

#include <gtest/gtest.h>

using namespace piq;

namespace {

PiMonomial mono(std::initializer_list<std::pair<long, long>> e)
{
    PiMonomial m;
    for (auto [n, k] : e) {
        m.exponents[n] = k;
    }
    return m;
}

std::map<PiMonomial, Integer> as_map(const DiscoveredRelation &r)
{
    std::map<PiMonomial, Integer> out;
    for (std::size_t i = 0; i < r.monomials.size(); ++i) {
        out[r.monomials[i]] = r.coefficients[i];
    }
    return out;
}

bool same_up_to_sign(std::map<PiMonomial, Integer> a, const std::map<PiMonomial, Integer> &b)
{
    if (a == b) {
        return true;
    }
    for (auto &[m, c] : a) {
        c = -c;
    }
    return a == b;
}

// Brute-force oracle for the smallest k in the degree guarantee.
long brute_gosper(long m, long n, Rational factor)
{
    for (long k = 1;; ++k) {
        // binom(2k+m-1, m-1) by the multiplicative formula
        Rational b = 1;
        for (long i = 1; i <= m - 1; ++i) {
            b = b * (2 * k + i) / i;
        }
        if (b > 2 * k * n * factor + 1) {
            return k;
        }
    }
}

} // namespace

TEST(Discover, EnumerationCounts)
{
    DiscoveryQuery q{{1, 2, 3, 6}, 2};
    auto classes = enumerate_monomials(q, 2);
    std::size_t total = 0;
    for (const auto &[r, ms] : classes) {
        total += ms.size();
        for (const auto &m : ms) {
            EXPECT_EQ(residue_class(m), r);
        }
    }
    EXPECT_EQ(total, 10u);
    std::vector<PiMonomial> zero = {mono({{1, 1}, {3, 1}}), mono({{2, 2}}), mono({{2, 1}, {6, 1}}),
                                    mono({{6, 2}})};
    EXPECT_EQ(classes[0], zero);

    DiscoveryQuery q2{{1, 2, 5, 10}, 4};
    total = 0;
    for (const auto &[r, ms] : enumerate_monomials(q2, 4)) {
        total += ms.size();
    }
    EXPECT_EQ(total, 35u);

    auto singles = enumerate_monomials(q, 1);
    EXPECT_EQ(singles[1].size(), 1u);
    EXPECT_EQ(singles[2].size(), 2u);
    EXPECT_EQ(singles[3].size(), 1u);
}

TEST(Discover, GosperBound)
{
    EXPECT_EQ(gosper_bound({{1, 2, 5, 10}, 0}), 3);
    EXPECT_EQ(gosper_bound({{1, 2, 3}, 0}), 7);
    EXPECT_EQ(brute_gosper(3, 6, make_rational(4, 3)), 7);
    EXPECT_EQ(brute_gosper(4, 10, make_rational(6, 5)), 3);
    EXPECT_EQ(gosper_bound({{1, 3, 9}, 0}), brute_gosper(3, 9, make_rational(4, 3)));
    EXPECT_THROW(gosper_bound({{1, 2}, 0}), Unbounded);
}

TEST(Discover, LevelTwelveDegreeTwo)
{
    auto rels = mine({{1, 2, 3, 6}, 2});
    ASSERT_EQ(rels.size(), 1u);
    std::map<PiMonomial, Integer> expect = {{mono({{2, 2}}), 1},
                                            {mono({{2, 1}, {6, 1}}), 2},
                                            {mono({{1, 1}, {3, 1}}), -1},
                                            {mono({{6, 2}}), -3}};
    EXPECT_TRUE(same_up_to_sign(as_map(rels[0]), expect)) << rels[0].to_dsl();
    EXPECT_EQ(rels[0].certificate.verdict, Verdict::Proven);
    EXPECT_EQ(rels[0].residue_class, 0);
    auto again = parse(rels[0].to_dsl());
    EXPECT_EQ(prove(again).verdict, Verdict::Proven);
}

TEST(Discover, ScaledRelationIsFound)
{
    auto rels = mine({{2, 4, 6, 12}, 2});
    std::map<PiMonomial, Integer> expect = {{mono({{4, 2}}), 1},
                                            {mono({{4, 1}, {12, 1}}), 2},
                                            {mono({{2, 1}, {6, 1}}), -1},
                                            {mono({{12, 2}}), -3}};
    bool seen = false;
    for (const auto &r : rels) {
        seen = seen || same_up_to_sign(as_map(r), expect);
    }
    EXPECT_TRUE(seen);
}

TEST(Discover, TwoIndicesGiveNothing)
{
    EXPECT_TRUE(mine({{1, 2}, 6}).empty());
}

TEST(Discover, LevelTwentySpanContainsKnownRelation)
{
    auto rels = mine({{1, 2, 5, 10}, 4});
    ASSERT_FALSE(rels.empty());
    for (const auto &r : rels) {
        EXPECT_EQ(r.certificate.verdict, Verdict::Proven) << r.to_dsl();
        for (const auto &m : r.monomials) {
            EXPECT_EQ(residue_class(m), r.residue_class);
        }
    }
    // (P1 P10 - P2 P5)^2 - P2 P10 (P5 - P1)(5 P5 - P1), expanded by hand
    std::map<PiMonomial, Rational> target = {
        {mono({{1, 2}, {10, 2}}), 1},  {mono({{1, 1}, {2, 1}, {5, 1}, {10, 1}}), 4},
        {mono({{2, 2}, {5, 2}}), 1},   {mono({{2, 1}, {5, 2}, {10, 1}}), -5},
        {mono({{1, 2}, {2, 1}, {10, 1}}), -1},
    };
    // collect the degree-4 relations of the matching class together with the
    // inherited ones and test membership by rank
    std::vector<PiMonomial> cols;
    for (const auto &[m, c] : target) {
        cols.push_back(m);
    }
    auto col_of = [&](const PiMonomial &m) -> long {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (cols[i] == m) {
                return static_cast<long>(i);
            }
        }
        cols.push_back(m);
        return static_cast<long>(cols.size() - 1);
    };
    std::vector<std::map<long, Rational>> rows;
    for (const auto &r : rels) {
        for (const auto &[cr, cms] : enumerate_monomials({{1, 2, 5, 10}, 4}, 4 - r.degree)) {
            for (const auto &cm : cms) {
                std::map<long, Rational> row;
                for (std::size_t i = 0; i < r.monomials.size(); ++i) {
                    row[col_of(r.monomials[i] * cm)] += Rational(r.coefficients[i]);
                }
                rows.push_back(row);
            }
        }
    }
    auto dense = [&](const std::vector<std::map<long, Rational>> &rs) {
        RationalMatrix m;
        for (const auto &r : rs) {
            std::vector<Rational> v(cols.size(), Rational(0));
            for (const auto &[c, x] : r) {
                v[static_cast<std::size_t>(c)] = x;
            }
            m.push_back(v);
        }
        return m;
    };
    std::map<long, Rational> t;
    for (const auto &[m, c] : target) {
        t[col_of(m)] += c;
    }
    auto base = rank(dense(rows), cols.size());
    rows.push_back(t);
    EXPECT_EQ(rank(dense(rows), cols.size()), base);
}
