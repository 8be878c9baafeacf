#pragma once

// The disctrace command-line tool: kernel, test, lemmas, extend.
// Exit codes: 0 pass, 1 verification failure, 2 usage error.

#include "disctrace/error.hpp"
#include "disctrace/io.hpp"
#include "disctrace/lemma_suite.hpp"
#include "disctrace/moments.hpp"
#include "disctrace/verification.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace disctrace::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

namespace detail {

inline std::string sci(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

inline std::vector<Complex2> parse_points(const std::vector<std::string>& texts) {
    std::vector<Complex2> pts;
    for (const auto& t : texts) pts.push_back(io::parse_point(t));
    return pts;
}

} // namespace detail

struct KernelArgs {
    std::vector<std::string> points;
    int degree = 4;
    int discs = 60;
    double tol = 1e-8;
    double min_gap = 1e3;
    std::uint64_t seed = 0;
    std::string out;
};

inline int cmd_kernel(const KernelArgs& a, std::ostream& out, std::ostream& err) {
    const auto pts = detail::parse_points(a.points);
    if (pts.size() != 3) throw Error(ErrorKind::InvalidArgument, "kernel needs exactly three points");
    if (a.degree < 0 || a.degree > boundary::kDefaultDegreeCap) throw Error(ErrorKind::InvalidArgument, "degree must lie in [0, 12]");
    verification::require_non_collinear(pts[0], pts[1], pts[2]);
    verification::ExperimentConfig cfg;
    cfg.points = pts;
    cfg.degree = a.degree;
    cfg.discs_per_point = a.discs;
    cfg.svd_tol = a.tol;
    cfg.min_gap = a.min_gap;
    cfg.seed = a.seed;
    verification::KernelReport r;
    try {
        r = verification::family_kernel(cfg);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegenerateSample) throw;
        err << "kernel: " << e.what() << "\n";
        return kFail;
    }
    const bool ok = r.kernel_dimension == r.holomorphic_dimension && r.max_principal_angle && *r.max_principal_angle < a.tol;
    if (!a.out.empty()) io::write_text(a.out, io::dump(io::kernel_report_to_json(r)));
    out << "kernel_dimension " << r.kernel_dimension << "\n"
        << "holomorphic_dimension " << r.holomorphic_dimension << "\n"
        << "max_principal_angle " << (r.max_principal_angle ? detail::sci(*r.max_principal_angle) : std::string("n/a")) << "\n"
        << "spectral_gap " << (r.spectral_gap ? detail::sci(*r.spectral_gap) : std::string("n/a")) << "\n"
        << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kPass : kFail;
}

struct TestArgs {
    std::string function;
    std::string point = "0,0";
    std::vector<std::string> directions;
    int discs = 100;
    double tol = moments::kExactTolerance;
    std::uint64_t seed = 0;
    std::string out;
};

inline int cmd_test(const TestArgs& a, std::ostream& out, std::ostream&) {
    const auto f = io::read_function_file(a.function);
    const Complex2 p = io::parse_point(a.point);
    if (!(p.norm() < 1.0)) throw Error(ErrorKind::OutsideBall, "point must be interior");
    if (!(a.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    std::vector<StraightDisc> discs;
    if (a.directions.empty()) {
        discs = verification::sample_disc_family(p, a.discs, a.seed);
    } else {
        for (const auto& d : detail::parse_points(a.directions)) discs.push_back(disc_from_line(p, d));
    }
    std::ostringstream csv;
    csv << "disc_id,max_negative_modulus,verdict\n";
    std::size_t passed = 0;
    for (std::size_t i = 0; i < discs.size(); ++i) {
        const auto r = moments::extendibility_test(f, discs[i], a.tol);
        passed += r.verdict ? 1 : 0;
        csv << i << "," << detail::sci(r.max_negative_modulus) << "," << (r.verdict ? "true" : "false") << "\n";
    }
    const bool ok = passed == discs.size();
    csv << "# summary " << passed << "/" << discs.size() << " " << (ok ? "PASS" : "FAIL") << "\n";
    out << csv.str();
    if (!a.out.empty()) io::write_text(a.out, csv.str());
    return ok ? kPass : kFail;
}

struct LemmaArgs {
    int samples = 200;
    double tol = 1e-10;
    std::uint64_t seed = 0;
    bool json_only = false;
    std::string out;
};

inline int cmd_lemmas(const LemmaArgs& a, std::ostream& out, std::ostream&) {
    if (a.samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be positive");
    if (!(a.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    const auto report = verification::lemma_suite({a.seed, a.samples, a.tol});
    const std::string text = io::dump(io::lemma_report_to_json(report, a.tol));
    if (!a.out.empty()) io::write_text(a.out, text);
    if (a.json_only) {
        out << text;
    } else {
        for (const auto& c : report.checks)
            out << (c.passed ? "PASS " : "FAIL ") << c.name << " " << detail::sci(c.measured) << " "
                << verification::to_string(c.relation) << " " << detail::sci(c.threshold) << "\n";
        out << report.checks.size() << " checks, " << (report.all_passed() ? "all passed" : "FAILURES") << "\n";
    }
    return report.all_passed() ? kPass : kFail;
}

/// Agreement required between the extension values along the three discs.
inline constexpr double kConsistencyTolerance = 1e-8;

struct ExtendArgs {
    std::string function;
    std::vector<std::string> points;
    std::string at;
    int discs = 60;
    double tol = moments::kExactTolerance;
    std::uint64_t seed = 0;
    std::string out;
};

inline int cmd_extend(const ExtendArgs& a, std::ostream& out, std::ostream& err) {
    const auto f = io::read_function_file(a.function);
    const auto pts = detail::parse_points(a.points);
    if (pts.size() != 3) throw Error(ErrorKind::InvalidArgument, "extend needs exactly three points");
    verification::require_non_collinear(pts[0], pts[1], pts[2]);
    const Complex2 z = io::parse_point(a.at);
    if (a.discs < 1) throw Error(ErrorKind::InvalidArgument, "need at least one disc per point");
    if (!(a.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    verification::ConsistencyResult r;
    try {
        r = verification::extension_consistency(f, {pts[0], pts[1], pts[2]}, z, a.discs, a.tol, a.seed);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotExtendible) throw;
        err << "extend: " << e.what() << "\n";
        return kFail;
    }
    const bool ok = r.discrepancy < kConsistencyTolerance;
    const cplx v = r.values.front();
    out << "value " << io::detail::format_real(v.real()) << " " << io::detail::format_real(v.imag()) << "\n"
        << "discrepancy " << detail::sci(r.discrepancy) << "\n"
        << (ok ? "PASS" : "FAIL") << "\n";
    if (!a.out.empty()) {
        io::json points = io::json::array();
        for (const auto& p : pts) points.push_back(io::point_to_json(p));
        io::json values = io::json::array();
        for (const auto& w : r.values) values.push_back({w.real(), w.imag()});
        const io::json doc = {{"schema", io::kSchemaVersion},
                              {"config", {{"points", points}, {"at", io::point_to_json(z)}, {"discs_per_point", a.discs},
                                          {"tol", a.tol}, {"seed", a.seed}, {"function", io::function_to_json(f)}}},
                              {"value", {v.real(), v.imag()}},
                              {"values", values},
                              {"discrepancy", r.discrepancy},
                              {"passed", ok}};
        io::write_text(a.out, io::dump(doc));
    }
    return ok ? kPass : kFail;
}

/// Parses argv-style arguments (without the program name) and runs a command.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Straight-disc families, lifts and moment tests in the unit ball of C^2", "disctrace"};
    app.require_subcommand(1);

    KernelArgs ka;
    auto* kernel = app.add_subcommand("kernel", "joint kernel of the moment conditions along three disc families");
    kernel->add_option("--points", ka.points, "three interior points ('re,im;re,im' or 'x,y')")->required()->expected(3);
    kernel->add_option("--degree", ka.degree, "polynomial degree")->capture_default_str();
    kernel->add_option("--discs", ka.discs, "discs per point")->capture_default_str();
    kernel->add_option("--tol", ka.tol, "relative SVD threshold")->capture_default_str();
    kernel->add_option("--min-gap", ka.min_gap, "required spectral gap")->capture_default_str();
    kernel->add_option("--seed", ka.seed, "random seed")->capture_default_str();
    kernel->add_option("--out", ka.out, "JSON report path");

    TestArgs ta;
    auto* test = app.add_subcommand("test", "moment test of a function along discs through a point");
    test->add_option("--function", ta.function, "function JSON file")->required();
    test->add_option("--point", ta.point, "family center")->capture_default_str();
    test->add_option("--direction", ta.directions, "explicit disc directions (replaces sampling)");
    test->add_option("--discs", ta.discs, "number of sampled discs")->capture_default_str();
    test->add_option("--tol", ta.tol, "threshold on negative coefficients")->capture_default_str();
    test->add_option("--seed", ta.seed, "random seed")->capture_default_str();
    test->add_option("--out", ta.out, "CSV output path");

    LemmaArgs la;
    auto* lemmas = app.add_subcommand("lemmas", "numerical checks of the lift and conormal identities");
    lemmas->add_option("--samples", la.samples, "random samples per check")->capture_default_str();
    lemmas->add_option("--tol", la.tol, "tolerance for exact identities")->capture_default_str();
    lemmas->add_option("--seed", la.seed, "random seed")->capture_default_str();
    lemmas->add_flag("--json-only", la.json_only, "print only the JSON report");
    lemmas->add_option("--out", la.out, "JSON report path");

    ExtendArgs ea;
    auto* extend = app.add_subcommand("extend", "extension value at a point and its consistency across families");
    extend->add_option("--function", ea.function, "function JSON file")->required();
    extend->add_option("--points", ea.points, "three interior points")->required()->expected(3);
    extend->add_option("--at", ea.at, "evaluation point")->required();
    extend->add_option("--discs", ea.discs, "discs per point for the moment check")->capture_default_str();
    extend->add_option("--tol", ea.tol, "threshold on negative coefficients")->capture_default_str();
    extend->add_option("--seed", ea.seed, "random seed")->capture_default_str();
    extend->add_option("--out", ea.out, "JSON report path");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        if (kernel->parsed()) return cmd_kernel(ka, out, err);
        if (test->parsed()) return cmd_test(ta, out, err);
        if (lemmas->parsed()) return cmd_lemmas(la, out, err);
        return cmd_extend(ea, out, err);
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFail;
    }
}

} // namespace disctrace::cli
