#pragma once

// Exact integer/rational scalars shared by every module.

#include <gmpxx.h>

#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace piq {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Rational make_rational(long num, long den = 1)
{
    if (den == 0) {
        throw Error("zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Integer &num, const Integer &den)
{
    if (den == 0) {
        throw Error("zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational &r) { return r.get_den() == 1; }

inline Integer floor_of(const Rational &r)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Integer ceil_of(const Rational &r)
{
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

/// Converts to long, throwing if the value is not an integer in range.
inline long to_long(const Rational &r)
{
    if (!is_integer(r) || !r.get_num().fits_slong_p()) {
        throw Error("value " + r.get_str() + " is not a machine integer");
    }
    return r.get_num().get_si();
}

inline long to_long(const Integer &z)
{
    if (!z.fits_slong_p()) {
        throw Error("integer " + z.get_str() + " out of range");
    }
    return z.get_si();
}

/// "3", "-1/4": the canonical text form used in every output format.
inline std::string to_string(const Rational &r) { return r.get_str(); }

/// Exact ell-th root of an integer, if any (negative values allowed for odd ell).
inline std::optional<Integer> exact_root(const Integer &z, unsigned long ell)
{
    if (ell == 0) {
        return std::nullopt;
    }
    if (z < 0 && ell % 2 == 0) {
        return std::nullopt;
    }
    Integer a = abs(z);
    Integer root;
    if (mpz_root(root.get_mpz_t(), a.get_mpz_t(), ell) == 0) {
        return std::nullopt;
    }
    if (z < 0) {
        root = -root;
    }
    return root;
}

/// Real ell-th root of a rational with rational value, choosing the positive
/// branch when ell is even.
inline std::optional<Rational> exact_root(const Rational &r, unsigned long ell)
{
    auto num = exact_root(r.get_num(), ell);
    auto den = exact_root(r.get_den(), ell);
    if (!num || !den) {
        return std::nullopt;
    }
    return make_rational(*num, *den);
}

/// r^e for an integer exponent (negative allowed for nonzero r).
inline Rational rational_pow(const Rational &r, long e)
{
    if (e < 0) {
        if (r == 0) {
            throw Error("zero to a negative power");
        }
        return rational_pow(Rational(1) / r, -e);
    }
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), r.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), r.get_den_mpz_t(), static_cast<unsigned long>(e));
    return make_rational(num, den);
}

inline long lcm_long(long a, long b) { return std::lcm(a, b); }

/// Parses "p" or "p/q" with optional sign.
inline Rational parse_rational(const std::string &text)
{
    Rational r;
    if (r.set_str(text, 10) != 0) {
        throw Error("malformed rational '" + text + "'");
    }
    if (r.get_den() == 0) {
        throw Error("zero denominator in '" + text + "'");
    }
    r.canonicalize();
    return r;
}

} // namespace piq
