#pragma once

// Exact kernels of rational matrices by fraction-free (Bareiss) elimination.

#include "piq/rational.hpp"

#include <vector>

namespace piq {

using RationalMatrix = std::vector<std::vector<Rational>>;
using IntegerVector = std::vector<Integer>;

namespace detail {

// Rows scaled to integers, then reduced in place to echelon form.
// Returns the pivot column of each nonzero row.
inline std::vector<std::size_t> bareiss_echelon(std::vector<std::vector<Integer>> &a, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    Integer prev = 1;
    std::size_t row = 0;
    const std::size_t rows = a.size();
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t p = row;
        while (p < rows && a[p][col] == 0) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        std::swap(a[p], a[row]);
        for (std::size_t r = row + 1; r < rows; ++r) {
            for (std::size_t c = col + 1; c < cols; ++c) {
                a[r][c] = (a[row][col] * a[r][c] - a[r][col] * a[row][c]);
                mpz_divexact(a[r][c].get_mpz_t(), a[r][c].get_mpz_t(), prev.get_mpz_t());
            }
            a[r][col] = 0;
        }
        prev = a[row][col];
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::vector<std::vector<Integer>> integer_rows(const RationalMatrix &m, std::size_t cols)
{
    std::vector<std::vector<Integer>> a;
    a.reserve(m.size());
    for (const auto &row : m) {
        Integer l = 1;
        for (const auto &x : row) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        }
        std::vector<Integer> r(cols, Integer(0));
        for (std::size_t c = 0; c < row.size() && c < cols; ++c) {
            r[c] = row[c].get_num() * (l / row[c].get_den());
        }
        a.push_back(std::move(r));
    }
    return a;
}

} // namespace detail

/// Scales a rational vector to coprime integers with positive first nonzero entry.
inline IntegerVector primitive_integer_vector(const std::vector<Rational> &v)
{
    Integer l = 1;
    for (const auto &x : v) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    }
    IntegerVector out;
    Integer g = 0;
    for (const auto &x : v) {
        out.push_back(x.get_num() * (l / x.get_den()));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
    }
    if (g == 0) {
        return out;
    }
    int sign = 1;
    for (const auto &x : out) {
        if (x != 0) {
            sign = x > 0 ? 1 : -1;
            break;
        }
    }
    for (auto &x : out) {
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        if (sign < 0) {
            x = -x;
        }
    }
    return out;
}

inline std::size_t rank(const RationalMatrix &m, std::size_t cols)
{
    auto a = detail::integer_rows(m, cols);
    return detail::bareiss_echelon(a, cols).size();
}

/// Basis of {x : m x = 0}, one primitive integer vector per free column,
/// ordered by free column index.
inline std::vector<IntegerVector> kernel(const RationalMatrix &m, std::size_t cols)
{
    auto a = detail::integer_rows(m, cols);
    auto pivots = detail::bareiss_echelon(a, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) {
        is_pivot[p] = true;
    }
    std::vector<IntegerVector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        std::vector<Rational> x(cols, Rational(0));
        x[f] = 1;
        for (std::size_t i = pivots.size(); i-- > 0;) {
            std::size_t pc = pivots[i];
            Rational s = 0;
            for (std::size_t c = pc + 1; c < cols; ++c) {
                if (a[i][c] != 0 && x[c] != 0) {
                    s += Rational(a[i][c]) * x[c];
                }
            }
            x[pc] = -s / Rational(a[i][pc]);
        }
        basis.push_back(primitive_integer_vector(x));
    }
    return basis;
}

} // namespace piq
