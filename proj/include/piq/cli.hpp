#pragma once

// Command-line front end.  run_cli() holds all the logic so tests can drive it
// with string streams; tools/piq.cpp only forwards main().

#include "piq/discover.hpp"
#include "piq/haupt.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>

#ifndef PIQ_DEFAULT_CORPUS
#define PIQ_DEFAULT_CORPUS "data/gosper.piq"
#endif

namespace piq {

namespace detail {

struct VerifyArgs {
    std::string corpus;
    std::string dsl;
    std::vector<std::string> ids;
    std::string mode = "proof";
    std::string report = "text";
    long terms = 100;
    long max_clear_weight = 16;
    unsigned jobs = 1;
    bool verbose = false;
};

inline std::string read_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline int cmd_verify(const VerifyArgs &a, std::ostream &out, std::ostream &err)
{
    std::vector<IdentityRecord> recs;
    if (!a.dsl.empty()) {
        recs.push_back(parse(a.dsl, "input"));
    } else {
        std::string path = a.corpus.empty() ? PIQ_DEFAULT_CORPUS : a.corpus;
        std::string text;
        try {
            text = read_file(path);
        } catch (const std::exception &e) {
            err << "error: " << e.what() << '\n';
            return 2;
        }
        recs = parse_corpus(text);
    }
    if (!a.ids.empty()) {
        std::vector<IdentityRecord> keep;
        for (const auto &id : a.ids) {
            auto it = std::find_if(recs.begin(), recs.end(), [&](const auto &r) { return r.id == id; });
            if (it == recs.end()) {
                err << "error: no record with id " << id << '\n';
                return 2;
            }
            keep.push_back(*it);
        }
        recs = std::move(keep);
    }
    std::sort(recs.begin(), recs.end(),
              [](const auto &x, const auto &y) { return natural_less(x.id, y.id); });

    ProveConfig cfg;
    cfg.max_clear_weight = a.max_clear_weight;
    cfg.check_terms = a.terms;
    std::vector<ProofReport> reports(recs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < recs.size(); i = next++) {
            reports[i] = a.mode == "check" ? check(recs[i], a.terms) : prove(recs[i], cfg);
        }
    };
    unsigned jobs = std::max(1u, a.jobs);
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }

    if (a.report == "tsv") {
        out << kTsvVersion << '\n' << kTsvHeader << '\n';
    }
    Verdict want = a.mode == "check" ? Verdict::Checked : Verdict::Proven;
    int code = 0;
    for (const auto &r : reports) {
        out << (a.report == "tsv" ? format_tsv(r) : format_text(r)) << '\n';
        if (a.verbose) {
            for (const auto &c : r.certificate) {
                out << "  " << c << '\n';
            }
            if (r.root_matched) {
                out << "  root match: " << (*r.root_matched ? "yes" : "no") << '\n';
            }
        }
        if (r.verdict != want) {
            code = 1;
        }
    }
    return code;
}

inline int cmd_expand(const std::string &dsl, long terms, std::ostream &out)
{
    auto s = evaluate(*parse_expression(dsl), terms);
    Rational end = s.is_zero() ? Rational(terms) : s.leading_exponent() + terms;
    for (const auto &[e, c] : s.terms()) {
        if (e < end) {
            out << e.get_str() << ' ' << c.get_str() << '\n';
        }
    }
    return 0;
}

inline std::vector<long> parse_indices(const std::string &text)
{
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        long v = std::stol(item, &pos);
        if (pos != item.size() || v < 1 || (!out.empty() && v <= out.back())) {
            throw CLI::ValidationError("indices", "expected strictly increasing positive integers");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw CLI::ValidationError("indices", "no indices given");
    }
    return out;
}

inline int cmd_discover(const std::string &indices, long max_degree, bool verbose, std::ostream &out)
{
    DiscoveryQuery q{parse_indices(indices), max_degree};
    for (const auto &r : mine(q)) {
        out << r.to_dsl() << '\n';
        if (verbose) {
            out << "  degree " << r.degree << ", class " << r.residue_class << ": "
                << format_text(r.certificate) << '\n';
        }
    }
    return 0;
}

inline int cmd_haupt(long level, const std::string &target, const std::string &h, std::ostream &out)
{
    auto fit = fit_rational(parse_expression(target), parse_expression(h), level);
    out << "F = " << fit.to_string() << '\n';
    out << fit.identity() << '\n';
    out << format_text(fit.certificate) << '\n';
    return 0;
}

inline int cmd_cusps(long level, const std::vector<std::string> &functions, std::ostream &out)
{
    if (functions.empty()) {
        for (const auto &c : cusps(level)) {
            out << cusp_label(c, level) << " width " << cusp_width(c, level) << '\n';
        }
        return 0;
    }
    std::vector<ExprPtr> fs;
    for (const auto &f : functions) {
        fs.push_back(parse_expression(f));
    }
    out << format_cusp_table(level, functions, cusp_table(level, fs));
    return 0;
}

} // namespace detail

/// Runs one command; returns the exit code (0 ok, 1 mathematical failure, 2 usage or parse error).
inline int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Exact verification and discovery of Pi_q identities", "piq"};
    app.require_subcommand(1, 1);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "print certificates");

    detail::VerifyArgs va;
    auto *verify = app.add_subcommand("verify", "prove or check corpus records");
    verify->add_option("corpus", va.corpus, "corpus file (default: shipped corpus)");
    verify->add_option("--dsl", va.dsl, "verify a single inline identity");
    verify->add_option("--id", va.ids, "restrict to these record ids");
    verify->add_option("--mode", va.mode, "proof (default) or check")->check(CLI::IsMember({"proof", "check"}));
    verify->add_option("--report", va.report, "text (default) or tsv")->check(CLI::IsMember({"text", "tsv"}));
    verify->add_option("--terms", va.terms, "coefficients compared in check mode")->check(CLI::PositiveNumber);
    verify->add_option("--max-clear-weight", va.max_clear_weight, "weight ceiling for the clearing search")->check(CLI::NonNegativeNumber);
    verify->add_option("--jobs", va.jobs, "worker threads")->check(CLI::PositiveNumber);
    verify->add_flag("-v,--verbose", va.verbose, "print certificates");

    std::string expr;
    long terms = 10;
    auto *expand = app.add_subcommand("expand", "print exponent/coefficient pairs");
    expand->add_option("expr", expr)->required();
    expand->add_option("terms", terms, "number of terms (default 10)")->check(CLI::PositiveNumber);

    std::string indices;
    long max_degree = 6;
    auto *discover = app.add_subcommand("discover", "mine relations among Pi-monomials");
    discover->add_option("indices", indices, "comma separated, e.g. 1,2,3,6")->required();
    discover->add_option("--max-degree", max_degree, "highest degree mined (default 6)")->check(CLI::PositiveNumber);
    discover->add_flag("-v,--verbose", verbose);

    long level = 1;
    std::string target, h;
    auto *haupt = app.add_subcommand("haupt", "express a weight-0 function in a hauptmodul");
    haupt->add_option("level", level)->required()->check(CLI::PositiveNumber);
    haupt->add_option("target", target)->required();
    haupt->add_option("hauptmodul", h)->required();

    std::vector<std::string> functions;
    auto *cusp_cmd = app.add_subcommand("cusps", "list cusps, or tabulate orders of functions");
    cusp_cmd->add_option("level", level)->required()->check(CLI::PositiveNumber);
    cusp_cmd->add_option("functions", functions);

    long weight = 0;
    auto *sturm = app.add_subcommand("sturm", "Sturm bound for Gamma_0(level)");
    sturm->add_option("level", level)->required()->check(CLI::PositiveNumber);
    sturm->add_option("weight", weight)->required()->check(CLI::NonNegativeNumber);

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i >= 1; --i) {
            args.emplace_back(argv[i]);
        }
        app.parse(args);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (verify->parsed()) {
            va.verbose = va.verbose || verbose;
            return detail::cmd_verify(va, out, err);
        }
        if (expand->parsed()) {
            return detail::cmd_expand(expr, terms, out);
        }
        if (discover->parsed()) {
            return detail::cmd_discover(indices, max_degree, verbose, out);
        }
        if (haupt->parsed()) {
            return detail::cmd_haupt(level, target, h, out);
        }
        if (cusp_cmd->parsed()) {
            return detail::cmd_cusps(level, functions, out);
        }
        if (sturm->parsed()) {
            out << sturm_bound(level, weight) << '\n';
            return 0;
        }
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << '\n'; // what() starts with line:col
        return 2;
    } catch (const CLI::Error &e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const NoFitWithinBounds &e) {
        err << "no fit: " << e.what() << '\n';
        return 1;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

} // namespace piq
