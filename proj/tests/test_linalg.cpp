#include "piq/linalg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace piq;

namespace {

// Plain Gauss-Jordan over the rationals, used as an independent oracle.
std::size_t naive_rank(RationalMatrix m, std::size_t cols)
{
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) {
            ++p;
        }
        if (p == m.size()) {
            continue;
        }
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i != r && m[i][c] != 0) {
                Rational f = m[i][c] / m[r][c];
                for (std::size_t j = 0; j < cols; ++j) {
                    m[i][j] -= f * m[r][j];
                }
            }
        }
        ++r;
    }
    return r;
}

bool annihilates(const RationalMatrix &m, const IntegerVector &v)
{
    for (const auto &row : m) {
        Rational s = 0;
        for (std::size_t c = 0; c < row.size(); ++c) {
            s += row[c] * Rational(v[c]);
        }
        if (s != 0) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST(Linalg, SimpleKernel)
{
    RationalMatrix m = {{1, 2, 3}, {2, 4, 6}};
    auto k = kernel(m, 3);
    ASSERT_EQ(k.size(), 2u);
    for (const auto &v : k) {
        EXPECT_TRUE(annihilates(m, v));
    }
    EXPECT_EQ(rank(m, 3), 1u);
}

TEST(Linalg, PrimitiveNormalization)
{
    auto v = primitive_integer_vector({make_rational(-1, 2), make_rational(-1, 3), 0});
    EXPECT_EQ(v, (IntegerVector{3, 2, 0}));
    RationalMatrix m = {{make_rational(1, 2), make_rational(-1, 3)}};
    auto k = kernel(m, 2);
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(k[0], (IntegerVector{2, 3}));
}

TEST(Linalg, FullRankHasEmptyKernel)
{
    RationalMatrix m = {{1, 0}, {0, 1}, {1, 1}};
    EXPECT_TRUE(kernel(m, 2).empty());
    EXPECT_EQ(rank(m, 2), 2u);
}

TEST(Linalg, RandomMatricesAgreeWithOracle)
{
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-4, 4), dim(1, 7);
    for (int t = 0; t < 200; ++t) {
        std::size_t rows = static_cast<std::size_t>(dim(rng));
        std::size_t cols = static_cast<std::size_t>(dim(rng));
        RationalMatrix m(rows, std::vector<Rational>(cols));
        for (auto &row : m) {
            for (auto &x : row) {
                x = make_rational(d(rng), 1 + (d(rng) + 4) % 3);
            }
        }
        // make some rows dependent
        if (rows > 2) {
            for (std::size_t c = 0; c < cols; ++c) {
                m[2][c] = m[0][c] * 3 - m[1][c];
            }
        }
        std::size_t r = naive_rank(m, cols);
        ASSERT_EQ(rank(m, cols), r);
        auto k = kernel(m, cols);
        ASSERT_EQ(k.size(), cols - r);
        for (const auto &v : k) {
            EXPECT_TRUE(annihilates(m, v));
        }
        if (!k.empty()) {
            RationalMatrix kb;
            for (const auto &v : k) {
                kb.push_back({v.begin(), v.end()});
            }
            EXPECT_EQ(naive_rank(kb, cols), k.size());
        }
    }
}
