#pragma once

// Genus-zero levels: hauptmodul candidacy, cusp-order tables, and exact
// rational-function fits target = P(h)/Q(h), each certified by prove().

#include "piq/linalg.hpp"
#include "piq/verify.hpp"

namespace piq {

class NotAnEtaQuotient : public Error {
public:
    using Error::Error;
};

class NoFitWithinBounds : public Error {
public:
    using Error::Error;
};

class NotWeightZero : public Error {
public:
    using Error::Error;
};

/// Levels N with X_0(N) of genus zero.
inline bool genus_zero_level(long n)
{
    return (n >= 1 && n <= 10) || n == 12 || n == 13 || n == 16 || n == 18 || n == 25;
}

inline PiMonomial require_monomial(const Expr &e)
{
    auto m = as_pi_monomial(e);
    if (!m) {
        throw NotAnEtaQuotient(to_dsl(e) + " is not a single Pi-monomial");
    }
    return *m;
}

struct HauptCheck {
    long level = 1;
    EtaQuotient eta;
    std::vector<Rational> orders; // over cusps(level), infinity first
    bool weight_zero = false;
    bool simple_pole_at_infinity = false; // sum delta r_delta = -24
    bool holomorphic_elsewhere = false;
    bool eta_conditions = false;

    bool pass() const
    {
        return weight_zero && simple_pole_at_infinity && holomorphic_elsewhere && eta_conditions;
    }
};

inline HauptCheck haupt_candidate_check(const Expr &h, long level)
{
    HauptCheck c;
    c.level = level;
    auto m = require_monomial(h);
    try {
        c.eta = pi_to_eta(m, level);
    } catch (const Error &e) {
        throw NotAnEtaQuotient(e.what());
    }
    long sum = 0;
    for (const auto &[d, r] : c.eta.exponents) {
        sum += d * r;
    }
    auto facts = modularity_facts(c.eta);
    c.weight_zero = facts.weight == 0;
    c.simple_pole_at_infinity = sum == -24;
    c.eta_conditions = facts.condition_a && facts.condition_b;
    c.holomorphic_elsewhere = true;
    for (const auto &cusp : cusps(level)) {
        Rational o = eta_order_unchecked(c.eta, cusp);
        c.orders.push_back(o);
        if (cusp.s != level && o < 0) {
            c.holomorphic_elsewhere = false;
        }
    }
    return c;
}

/// Orders at the cusps of Gamma_0(level); rows follow `functions`.
inline std::vector<std::vector<Rational>> cusp_table(long level, const std::vector<ExprPtr> &functions)
{
    auto cs = cusps(level);
    std::vector<std::vector<Rational>> out;
    for (const auto &f : functions) {
        auto m = require_monomial(*f);
        std::vector<Rational> row;
        for (const auto &c : cs) {
            row.push_back(pi_order_at_cusp(m, c, level));
        }
        out.push_back(std::move(row));
    }
    return out;
}

inline std::string format_cusp_table(long level, const std::vector<std::string> &names,
                                     const std::vector<std::vector<Rational>> &rows)
{
    std::ostringstream os;
    os << "cusp";
    for (const auto &c : cusps(level)) {
        os << '\t' << cusp_label(c, level);
    }
    os << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        os << (i < names.size() ? names[i] : "f" + std::to_string(i + 1));
        for (const auto &x : rows[i]) {
            os << '\t' << x.get_str();
        }
        os << '\n';
    }
    return os.str();
}

/// Coefficients c_0 + c_1 h + ... as "c_k*h^k + ... + c_0".
inline std::string poly_in_h(const IntegerVector &c, const std::string &h = "h")
{
    std::string s;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) {
            continue;
        }
        Integer a = abs(c[i]);
        if (s.empty()) {
            s += c[i] < 0 ? "-" : "";
        } else {
            s += c[i] < 0 ? " - " : " + ";
        }
        std::string pw = i == 0 ? "" : i == 1 ? h : h + "^" + std::to_string(i);
        if (i == 0) {
            s += a.get_str();
        } else if (a == 1) {
            s += pw;
        } else {
            s += a.get_str() + "*" + pw;
        }
    }
    return s.empty() ? "0" : s;
}

struct HauptFit {
    long level = 1;
    ExprPtr hauptmodul;
    ExprPtr target;
    IntegerVector numerator;   // P, constant term first
    IntegerVector denominator; // Q, constant term first
    ProofReport certificate;

    /// The cleared identity target*Q(h) = P(h) in the DSL.
    std::string identity() const
    {
        std::string h = "(" + to_dsl(*hauptmodul) + ")";
        return "(" + to_dsl(*target) + ")*(" + poly_in_h(denominator, h) + ") = " +
               poly_in_h(numerator, h);
    }

    std::string to_string() const
    {
        std::string p = poly_in_h(numerator);
        if (denominator.size() == 1 && denominator[0] == 1) {
            return p;
        }
        return "(" + p + ")/(" + poly_in_h(denominator) + ")";
    }
};

struct FitConfig {
    long max_degree = 8; // for P and Q each
    ProveConfig prove;
};

/// Rows of the fitting window for total degree s.
inline long fit_window(long s) { return 40 + 4 * s; }

inline HauptFit fit_rational(const ExprPtr &target, const ExprPtr &h, long level, const FitConfig &cfg = {})
{
    if (!genus_zero_level(level)) {
        throw PreconditionViolated("level " + std::to_string(level) + " does not have genus zero");
    }
    auto check = haupt_candidate_check(*h, level);
    if (!check.pass()) {
        throw PreconditionViolated(to_dsl(*h) + " is not a hauptmodul candidate at level " +
                                   std::to_string(level));
    }
    auto tm = require_monomial(*target);
    if (tm.weight() != 0) {
        throw NotWeightZero(to_dsl(*target) + " has weight " + tm.weight().get_str());
    }
    for (long s = 0; s <= 2 * cfg.max_degree; ++s) {
        long w = fit_window(s);
        long terms = w + 2;
        auto hs = expand(require_monomial(*h), terms);
        auto ts = expand(tm, terms);
        std::vector<ScaledSeries> hp = {ScaledSeries::constant(1).with_relative_precision(terms)};
        for (long j = 1; j <= s; ++j) {
            hp.push_back(hp.back() * hs);
        }
        for (long dq = 0; dq <= std::min(s, cfg.max_degree); ++dq) {
            long dp = s - dq;
            if (dp > cfg.max_degree) {
                continue;
            }
            std::vector<ScaledSeries> cols;
            for (long j = 0; j <= dq; ++j) {
                cols.push_back(ts * hp[static_cast<std::size_t>(j)]);
            }
            for (long i = 0; i <= dp; ++i) {
                cols.push_back(Rational(-1) * hp[static_cast<std::size_t>(i)]);
            }
            Rational lo = 0;
            long scale = 1;
            bool first = true;
            for (const auto &c : cols) {
                scale = std::lcm(scale, c.scale());
                if (!c.is_zero() && (first || c.leading_exponent() < lo)) {
                    lo = c.leading_exponent();
                    first = false;
                }
            }
            RationalMatrix mat;
            for (long t = 0; t < w * scale; ++t) {
                Rational e = lo + make_rational(t, scale);
                std::vector<Rational> row;
                bool nonzero = false;
                for (const auto &c : cols) {
                    row.push_back(c.coefficient(e));
                    nonzero = nonzero || row.back() != 0;
                }
                if (nonzero) {
                    mat.push_back(std::move(row));
                }
            }
            auto ker = kernel(mat, cols.size());
            if (ker.size() != 1) {
                continue;
            }
            const auto &v = ker[0];
            HauptFit fit;
            fit.level = level;
            fit.hauptmodul = h;
            fit.target = target;
            fit.denominator.assign(v.begin(), v.begin() + dq + 1);
            fit.numerator.assign(v.begin() + dq + 1, v.end());
            if (fit.denominator.back() == 0 || fit.numerator.back() == 0) {
                continue; // a lower-degree fit in disguise
            }
            if (fit.denominator.back() < 0) {
                for (auto &x : fit.denominator) {
                    x = -x;
                }
                for (auto &x : fit.numerator) {
                    x = -x;
                }
            }
            fit.certificate = prove(parse(fit.identity(), "fit"), cfg.prove);
            if (fit.certificate.verdict == Verdict::Proven) {
                return fit;
            }
        }
    }
    throw NoFitWithinBounds("no certified fit with degrees up to " + std::to_string(cfg.max_degree));
}

} // namespace piq
