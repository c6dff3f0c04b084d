#pragma once

// Truncated formal power series in q^(1/D) with exact rational coefficients.
//
// A ScaledSeries with scale D, offset v and coefficient list c_0..c_{L-1}
// stands for
//
//     sum_i c_i q^((v+i)/D) + O(q^(B/D))
//
// where B >= v + L is the absolute precision bound.  Everything below q^(v/D)
// is known to vanish; everything at or above q^(B/D) is unknown.  Exact
// series (constants, polynomials) carry B = kExact.

#include "piq/rational.hpp"

#include <algorithm>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace piq {

class InsufficientPrecision : public Error {
public:
    using Error::Error;
};

class NonRootLeadingCoefficient : public Error {
public:
    using Error::Error;
};

class NotInvertible : public Error {
public:
    using Error::Error;
};

class ScaledSeries {
public:
    static constexpr long kExact = std::numeric_limits<long>::max() / 8;

    /// Exact zero.
    ScaledSeries() = default;

    static ScaledSeries constant(const Rational &c)
    {
        ScaledSeries s;
        if (c != 0) {
            s.coeffs_.push_back(c);
        }
        return s;
    }

    /// Exact c * q^exponent.
    static ScaledSeries monomial(const Rational &c, const Rational &exponent)
    {
        ScaledSeries s;
        if (c == 0) {
            return s;
        }
        s.scale_ = to_long(Rational(exponent.get_den()));
        s.offset_ = to_long(Rational(exponent.get_num()));
        s.coeffs_.push_back(c);
        return s;
    }

    /// Builds sum_i coeffs[i] q^((offset+i)/scale) + O(q^(bound/scale)).
    /// Pass bound = kExact for an exact polynomial.
    static ScaledSeries from_coefficients(long scale, long offset, std::vector<Rational> coeffs,
                                          long bound)
    {
        if (scale < 1) {
            throw Error("series scale must be positive");
        }
        ScaledSeries s;
        s.scale_ = scale;
        s.offset_ = offset;
        s.bound_ = bound;
        if (bound < kExact && offset + static_cast<long>(coeffs.size()) > bound) {
            coeffs.resize(static_cast<std::size_t>(std::max(0L, bound - offset)));
        }
        s.coeffs_ = std::move(coeffs);
        s.canonicalize();
        return s;
    }

    /// Integer-exponent series sum_i coeffs[i] q^i known below q^terms.
    static ScaledSeries from_integer_coefficients(std::vector<Rational> coeffs, long terms)
    {
        return from_coefficients(1, 0, std::move(coeffs), terms);
    }

    long scale() const { return scale_; }
    long offset() const { return offset_; }
    std::span<const Rational> coefficients() const { return coeffs_; }
    bool is_exact() const { return bound_ >= kExact; }

    /// Number of tracked coefficient slots (in units of q^(1/D)) from the offset.
    long precision() const { return is_exact() ? kExact : bound_ - offset_; }

    /// Absolute precision bound as an exponent of q; meaningless for exact series.
    Rational precision_bound() const
    {
        if (is_exact()) {
            throw Error("exact series has no precision bound");
        }
        return make_rational(bound_, scale_);
    }

    /// True when no nonzero coefficient is known.
    bool is_zero() const { return coeffs_.empty(); }

    Rational leading_exponent() const
    {
        if (coeffs_.empty()) {
            throw InsufficientPrecision("series vanishes to its known precision");
        }
        return make_rational(offset_, scale_);
    }

    const Rational &leading_coefficient() const
    {
        if (coeffs_.empty()) {
            throw InsufficientPrecision("series vanishes to its known precision");
        }
        return coeffs_.front();
    }

    /// Coefficient of q^exponent; throws if the exponent is beyond the known precision.
    Rational coefficient(const Rational &exponent) const
    {
        if (!is_exact() && exponent >= make_rational(bound_, scale_)) {
            throw InsufficientPrecision("coefficient of q^" + piq::to_string(exponent) +
                                        " requested beyond precision q^" +
                                        piq::to_string(make_rational(bound_, scale_)));
        }
        Rational idx = exponent * scale_;
        if (!is_integer(idx)) {
            return 0;
        }
        long i = to_long(idx) - offset_;
        if (i < 0 || i >= static_cast<long>(coeffs_.size())) {
            return 0;
        }
        return coeffs_[static_cast<std::size_t>(i)];
    }

    /// Nonzero (exponent, coefficient) pairs in increasing exponent order.
    std::vector<std::pair<Rational, Rational>> terms() const
    {
        std::vector<std::pair<Rational, Rational>> out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] != 0) {
                out.emplace_back(make_rational(offset_ + static_cast<long>(i), scale_), coeffs_[i]);
            }
        }
        return out;
    }

    /// Forgets everything at or above q^bound.
    ScaledSeries truncated(const Rational &bound) const
    {
        long common = lcm_long(scale_, to_long(Rational(bound.get_den())));
        ScaledSeries s = rescaled(common);
        long b = to_long(Rational(bound * common));
        if (b < s.bound_) {
            s.bound_ = b;
            if (s.offset_ + static_cast<long>(s.coeffs_.size()) > b) {
                s.coeffs_.resize(static_cast<std::size_t>(std::max(0L, b - s.offset_)));
            }
        }
        s.canonicalize();
        return s;
    }

    /// Gives an exact series a finite precision of `terms` units of q past its offset.
    ScaledSeries with_relative_precision(long terms) const
    {
        Rational start = coeffs_.empty() ? Rational(0) : leading_exponent();
        return truncated(start + terms);
    }

    /// Same series written over q^(1/new_scale); new_scale must be a multiple of scale().
    ScaledSeries rescaled(long new_scale) const
    {
        if (new_scale % scale_ != 0) {
            throw Error("rescale target is not a multiple of the scale");
        }
        long f = new_scale / scale_;
        if (f == 1) {
            return *this;
        }
        ScaledSeries s;
        s.scale_ = new_scale;
        s.offset_ = offset_ * f;
        s.bound_ = is_exact() ? kExact : bound_ * f;
        if (!coeffs_.empty()) {
            s.coeffs_.assign((coeffs_.size() - 1) * static_cast<std::size_t>(f) + 1, Rational(0));
            for (std::size_t i = 0; i < coeffs_.size(); ++i) {
                s.coeffs_[i * static_cast<std::size_t>(f)] = coeffs_[i];
            }
        }
        return s;
    }

    ScaledSeries operator-() const
    {
        ScaledSeries s = *this;
        for (auto &c : s.coeffs_) {
            c = -c;
        }
        return s;
    }

    friend ScaledSeries operator+(const ScaledSeries &a, const ScaledSeries &b) { return add(a, b); }
    friend ScaledSeries operator-(const ScaledSeries &a, const ScaledSeries &b) { return add(a, -b); }
    friend ScaledSeries operator*(const ScaledSeries &a, const ScaledSeries &b) { return mul(a, b); }
    friend ScaledSeries operator*(const Rational &c, const ScaledSeries &a) { return scaled_by(a, c); }

    static ScaledSeries scaled_by(const ScaledSeries &a, const Rational &c)
    {
        ScaledSeries s = a;
        if (c == 0) {
            s.coeffs_.clear();
        } else {
            for (auto &x : s.coeffs_) {
                x *= c;
            }
        }
        s.canonicalize();
        return s;
    }

    static ScaledSeries add(const ScaledSeries &a, const ScaledSeries &b)
    {
        long common = lcm_long(a.scale_, b.scale_);
        ScaledSeries x = a.rescaled(common);
        ScaledSeries y = b.rescaled(common);
        ScaledSeries s;
        s.scale_ = common;
        s.bound_ = std::min(x.bound_, y.bound_);
        if (x.coeffs_.empty() && y.coeffs_.empty()) {
            s.offset_ = s.is_exact() ? 0 : s.bound_;
            s.canonicalize();
            return s;
        }
        long start = std::numeric_limits<long>::max();
        long end = std::numeric_limits<long>::min();
        for (const ScaledSeries *p : {&x, &y}) {
            if (!p->coeffs_.empty()) {
                start = std::min(start, p->offset_);
                end = std::max(end, p->offset_ + static_cast<long>(p->coeffs_.size()));
            }
        }
        end = std::min(end, s.bound_);
        s.offset_ = start;
        if (end <= start) {
            s.offset_ = s.bound_;
            s.canonicalize();
            return s;
        }
        s.coeffs_.assign(static_cast<std::size_t>(end - start), Rational(0));
        for (const ScaledSeries *p : {&x, &y}) {
            for (std::size_t i = 0; i < p->coeffs_.size(); ++i) {
                long k = p->offset_ + static_cast<long>(i) - start;
                if (k < static_cast<long>(s.coeffs_.size())) {
                    s.coeffs_[static_cast<std::size_t>(k)] += p->coeffs_[i];
                }
            }
        }
        s.canonicalize();
        return s;
    }

    static ScaledSeries mul(const ScaledSeries &a, const ScaledSeries &b)
    {
        if ((a.coeffs_.empty() && a.is_exact()) || (b.coeffs_.empty() && b.is_exact())) {
            return ScaledSeries();
        }
        long common = lcm_long(a.scale_, b.scale_);
        ScaledSeries x = a.rescaled(common);
        ScaledSeries y = b.rescaled(common);
        ScaledSeries s;
        s.scale_ = common;
        s.offset_ = x.offset_ + y.offset_;
        s.bound_ = std::min(shifted_bound(x.offset_, y.bound_), shifted_bound(y.offset_, x.bound_));
        if (x.coeffs_.empty() || y.coeffs_.empty()) {
            s.offset_ = s.bound_;
            s.canonicalize();
            return s;
        }
        long len = static_cast<long>(x.coeffs_.size() + y.coeffs_.size()) - 1;
        if (!s.is_exact()) {
            len = std::min(len, s.bound_ - s.offset_);
        }
        if (len <= 0) {
            s.offset_ = s.bound_;
            s.coeffs_.clear();
            s.canonicalize();
            return s;
        }
        s.coeffs_.assign(static_cast<std::size_t>(len), Rational(0));
        std::vector<std::size_t> nx = nonzero_indices(x.coeffs_);
        std::vector<std::size_t> ny = nonzero_indices(y.coeffs_);
        Rational tmp;
        for (std::size_t i : nx) {
            for (std::size_t j : ny) {
                std::size_t k = i + j;
                if (static_cast<long>(k) >= len) {
                    break;
                }
                mpq_mul(tmp.get_mpq_t(), x.coeffs_[i].get_mpq_t(), y.coeffs_[j].get_mpq_t());
                mpq_add(s.coeffs_[k].get_mpq_t(), s.coeffs_[k].get_mpq_t(), tmp.get_mpq_t());
            }
        }
        s.canonicalize();
        return s;
    }

    /// Formal power a^e.  Positive integer powers use binary exponentiation;
    /// all other exponents go through the power-series recurrence for
    /// (1+u)^e, with the positive real branch of the leading coefficient.
    static ScaledSeries pow(const ScaledSeries &a, const Rational &e)
    {
        if (e == 0) {
            return constant(1);
        }
        if (is_integer(e) && e > 0) {
            long n = to_long(e);
            ScaledSeries result = constant(1);
            ScaledSeries base = a;
            while (n > 0) {
                if (n & 1) {
                    result = mul(result, base);
                }
                n >>= 1;
                if (n > 0) {
                    base = mul(base, base);
                }
            }
            return result;
        }
        if (a.coeffs_.empty()) {
            throw NotInvertible("leading coefficient vanishes within tracked precision");
        }
        if (a.is_exact() && a.coeffs_.size() > 1) {
            throw InsufficientPrecision("power of an exact polynomial needs a finite precision");
        }
        long p = to_long(Rational(e.get_num()));
        long ell = to_long(Rational(e.get_den()));
        const Rational &c0 = a.coeffs_.front();
        auto root = exact_root(c0, static_cast<unsigned long>(ell));
        if (!root) {
            throw NonRootLeadingCoefficient("leading coefficient " + piq::to_string(c0) +
                                            " has no rational root of order " + std::to_string(ell));
        }
        Rational lead = rational_pow(*root, p);

        ScaledSeries s;
        s.scale_ = a.scale_ * ell;
        s.offset_ = a.offset_ * p;
        if (a.is_exact()) {
            // monomial input
            s.bound_ = kExact;
            s.coeffs_.push_back(lead);
            s.canonicalize();
            return s;
        }
        long rel = a.bound_ - a.offset_;
        s.bound_ = s.offset_ + rel * ell;

        std::vector<Rational> g(static_cast<std::size_t>(rel), Rational(0));
        for (std::size_t k = 0; k < a.coeffs_.size() && static_cast<long>(k) < rel; ++k) {
            g[k] = a.coeffs_[k] / c0;
        }
        std::vector<std::size_t> nz;
        for (std::size_t k = 1; k < g.size(); ++k) {
            if (g[k] != 0) {
                nz.push_back(k);
            }
        }
        std::vector<Rational> f(static_cast<std::size_t>(rel), Rational(0));
        f[0] = 1;
        Rational e1 = e + 1;
        Rational acc, w, tmp;
        for (long n = 1; n < rel; ++n) {
            acc = 0;
            for (std::size_t k : nz) {
                if (static_cast<long>(k) > n) {
                    break;
                }
                if (f[static_cast<std::size_t>(n) - k] == 0) {
                    continue;
                }
                w = e1 * static_cast<long>(k) - n;
                tmp = w * g[k];
                tmp *= f[static_cast<std::size_t>(n) - k];
                acc += tmp;
            }
            f[static_cast<std::size_t>(n)] = acc / n;
        }
        s.coeffs_.assign(static_cast<std::size_t>((rel - 1) * ell + 1), Rational(0));
        for (long n = 0; n < rel; ++n) {
            s.coeffs_[static_cast<std::size_t>(n * ell)] = lead * f[static_cast<std::size_t>(n)];
        }
        s.canonicalize();
        return s;
    }

    /// q -> q^j.
    static ScaledSeries subst_power(const ScaledSeries &a, long j)
    {
        if (j < 1) {
            throw Error("substitution exponent must be positive");
        }
        ScaledSeries s;
        s.scale_ = a.scale_;
        s.offset_ = a.offset_ * j;
        s.bound_ = a.is_exact() ? kExact : a.bound_ * j;
        if (!a.coeffs_.empty()) {
            s.coeffs_.assign((a.coeffs_.size() - 1) * static_cast<std::size_t>(j) + 1, Rational(0));
            for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
                s.coeffs_[i * static_cast<std::size_t>(j)] = a.coeffs_[i];
            }
        }
        s.canonicalize();
        return s;
    }

    /// Representation-independent equality (scale, offset, coefficients and bound).
    friend bool operator==(const ScaledSeries &a, const ScaledSeries &b)
    {
        return a.scale_ == b.scale_ && a.offset_ == b.offset_ && a.bound_ == b.bound_ &&
               a.coeffs_ == b.coeffs_;
    }

    std::string to_string() const
    {
        std::ostringstream os;
        bool first = true;
        for (const auto &[ex, c] : terms()) {
            os << (first ? "" : " + ") << c.get_str() << "*q^(" << ex.get_str() << ")";
            first = false;
        }
        if (first) {
            os << "0";
        }
        if (!is_exact()) {
            os << " + O(q^(" << precision_bound().get_str() << "))";
        }
        return os.str();
    }

private:
    long scale_ = 1;
    long offset_ = 0;
    long bound_ = kExact;
    std::vector<Rational> coeffs_;

    static long shifted_bound(long offset, long bound)
    {
        return bound >= kExact ? kExact : offset + bound;
    }

    static std::vector<std::size_t> nonzero_indices(const std::vector<Rational> &v)
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] != 0) {
                out.push_back(i);
            }
        }
        return out;
    }

    // Strips leading/trailing zeros and divides the scale by every common
    // stride of the exponents actually present (and of the bound).
    void canonicalize()
    {
        if (!is_exact() && offset_ + static_cast<long>(coeffs_.size()) > bound_) {
            coeffs_.resize(static_cast<std::size_t>(std::max(0L, bound_ - offset_)));
        }
        std::size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead] == 0) {
            ++lead;
        }
        if (lead == coeffs_.size()) {
            coeffs_.clear();
            offset_ = is_exact() ? 0 : bound_;
        } else {
            if (lead > 0) {
                coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
                offset_ += static_cast<long>(lead);
            }
            while (!coeffs_.empty() && coeffs_.back() == 0) {
                coeffs_.pop_back();
            }
        }
        long g = scale_;
        if (!coeffs_.empty()) {
            g = std::gcd(g, offset_);
            for (std::size_t i = 1; i < coeffs_.size() && g > 1; ++i) {
                if (coeffs_[i] != 0) {
                    g = std::gcd(g, static_cast<long>(i));
                }
            }
        } else if (is_exact()) {
            scale_ = 1;
            offset_ = 0;
            return;
        }
        if (!is_exact()) {
            g = std::gcd(g, bound_);
            if (coeffs_.empty()) {
                g = std::gcd(g, offset_);
            }
        }
        if (g > 1) {
            scale_ /= g;
            offset_ /= g;
            if (!is_exact()) {
                bound_ /= g;
            }
            if (!coeffs_.empty()) {
                std::vector<Rational> packed((coeffs_.size() - 1) / static_cast<std::size_t>(g) + 1);
                for (std::size_t i = 0; i < packed.size(); ++i) {
                    packed[i] = std::move(coeffs_[i * static_cast<std::size_t>(g)]);
                }
                coeffs_ = std::move(packed);
            }
        }
    }
};

inline ScaledSeries add(const ScaledSeries &a, const ScaledSeries &b) { return ScaledSeries::add(a, b); }
inline ScaledSeries mul(const ScaledSeries &a, const ScaledSeries &b) { return ScaledSeries::mul(a, b); }
inline ScaledSeries pow(const ScaledSeries &a, const Rational &e) { return ScaledSeries::pow(a, e); }
inline ScaledSeries subst_power(const ScaledSeries &a, long j) { return ScaledSeries::subst_power(a, j); }

/// True when a and b agree on every coefficient both of them know.
inline bool agree_to_precision(const ScaledSeries &a, const ScaledSeries &b)
{
    return (a - b).is_zero();
}

/// prod_{n>=1} (1 - q^(delta n)) known below q^terms, from the pentagonal
/// number theorem: sum_k (-1)^k q^(delta k(3k-1)/2) over all integers k.
inline ScaledSeries eta_product_part(long delta, long terms)
{
    if (delta < 1 || terms < 1) {
        throw Error("eta expansion needs delta >= 1 and terms >= 1");
    }
    std::vector<Rational> c(static_cast<std::size_t>(terms), Rational(0));
    c[0] = 1;
    for (long k = 1;; ++k) {
        long e1 = delta * k * (3 * k - 1) / 2;
        long e2 = delta * k * (3 * k + 1) / 2;
        if (e1 >= terms) {
            break;
        }
        Rational sign = (k % 2 == 0) ? 1 : -1;
        c[static_cast<std::size_t>(e1)] += sign;
        if (e2 < terms) {
            c[static_cast<std::size_t>(e2)] += sign;
        }
    }
    return ScaledSeries::from_integer_coefficients(std::move(c), terms);
}

/// eta(delta z) = q^(delta/24) prod_{n>=1}(1 - q^(delta n)), known for
/// exponents below delta/24 + terms.
inline ScaledSeries eta_expansion(long delta, long terms)
{
    return mul(ScaledSeries::monomial(1, make_rational(delta, 24)), eta_product_part(delta, terms));
}

/// psi(q) = sum_{n>=0} q^(n(n+1)/2), known below q^terms.
inline ScaledSeries psi_expansion(long terms)
{
    if (terms < 1) {
        throw Error("psi expansion needs terms >= 1");
    }
    std::vector<Rational> c(static_cast<std::size_t>(terms), Rational(0));
    for (long n = 0; n * (n + 1) / 2 < terms; ++n) {
        c[static_cast<std::size_t>(n * (n + 1) / 2)] = 1;
    }
    return ScaledSeries::from_integer_coefficients(std::move(c), terms);
}

} // namespace piq
