#pragma once

// Text formats: C² points on the command line, function files, and the JSON
// reports written by the command-line tool.

#include "disctrace/boundary_functions.hpp"
#include "disctrace/error.hpp"
#include "disctrace/geometry.hpp"
#include "disctrace/lemma_suite.hpp"
#include "disctrace/verification.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace disctrace::io {

using nlohmann::json;

inline constexpr std::string_view kSchemaVersion = "v1";

namespace detail {

inline double parse_real(std::string_view text) {
    const std::string s(text);
    if (s.empty() || std::isspace(static_cast<unsigned char>(s.front())))
        throw Error(ErrorKind::MalformedInput, "expected a number, got '" + s + "'");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v)) throw Error(ErrorKind::MalformedInput, "expected a number, got '" + s + "'");
    return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == sep) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    return parts;
}

inline cplx parse_pair(std::string_view s) {
    const auto parts = split(s, ',');
    if (parts.size() != 2) throw Error(ErrorKind::MalformedInput, "expected 're,im', got '" + std::string(s) + "'");
    return {parse_real(parts[0]), parse_real(parts[1])};
}

inline std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace detail

/// "re,im;re,im" is (re + i·im, re + i·im); a bare "x,y" is the real point (x, y).
inline Complex2 parse_point(std::string_view text) {
    const auto coords = detail::split(text, ';');
    if (coords.size() == 1) {
        const cplx p = detail::parse_pair(coords[0]);
        return {p.real(), p.imag()};
    }
    if (coords.size() != 2) throw Error(ErrorKind::MalformedInput, "expected 're,im;re,im', got '" + std::string(text) + "'");
    return {detail::parse_pair(coords[0]), detail::parse_pair(coords[1])};
}

inline std::string format_point(const Complex2& p) {
    using detail::format_real;
    return format_real(p.z1.real()) + "," + format_real(p.z1.imag()) + ";" + format_real(p.z2.real()) + "," + format_real(p.z2.imag());
}

// ---------------------------------------------------------------------------
// Function files: {"terms":[{"alpha":[a1,a2],"beta":[b1,b2],"re":x,"im":y}, ...]}

inline boundary::HermitianPolynomial function_from_json(const json& doc) {
    auto bad = [](const std::string& what) { return Error(ErrorKind::MalformedInput, "function file: " + what); };
    if (!doc.is_object() || !doc.contains("terms") || !doc["terms"].is_array()) throw bad("expected an object with a 'terms' array");
    auto exponent_pair = [&](const json& term, const char* key) {
        if (!term.contains(key) || !term[key].is_array() || term[key].size() != 2) throw bad(std::string("'") + key + "' must be [int, int]");
        std::array<int, 2> e{};
        for (std::size_t i = 0; i < 2; ++i) {
            const json& v = term[key][i];
            if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > boundary::kDefaultDegreeCap)
                throw bad(std::string("'") + key + "' entries must be integers in [0, 12]");
            e[i] = v.get<int>();
        }
        return e;
    };
    auto real_field = [&](const json& term, const char* key) {
        if (!term.contains(key) || !term[key].is_number()) throw bad(std::string("'") + key + "' must be a number");
        const double v = term[key].get<double>();
        if (!std::isfinite(v)) throw bad(std::string("'") + key + "' must be finite");
        return v;
    };
    boundary::HermitianPolynomial f;
    for (const auto& term : doc["terms"]) {
        if (!term.is_object()) throw bad("each term must be an object");
        f.add_term({exponent_pair(term, "alpha"), exponent_pair(term, "beta")}, {real_field(term, "re"), real_field(term, "im")});
    }
    boundary::detail::check_degree(f, boundary::kDefaultDegreeCap);
    return f;
}

inline json function_to_json(const boundary::HermitianPolynomial& f) {
    json terms = json::array();
    for (const auto& [m, c] : f.terms())
        terms.push_back({{"alpha", {m.alpha[0], m.alpha[1]}}, {"beta", {m.beta[0], m.beta[1]}}, {"re", c.real()}, {"im", c.imag()}});
    return {{"terms", terms}};
}

inline boundary::HermitianPolynomial read_function_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::MalformedInput, "cannot open function file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::MalformedInput, std::string("function file is not valid JSON: ") + e.what());
    }
    return function_from_json(doc);
}

// ---------------------------------------------------------------------------
// Reports

inline json point_to_json(const Complex2& p) { return json::array({{p.z1.real(), p.z1.imag()}, {p.z2.real(), p.z2.imag()}}); }

/// Finite numbers as numbers, ±infinity as the strings "inf"/"-inf".
inline json real_to_json(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

inline json kernel_report_to_json(const verification::KernelReport& r, bool include_basis = true) {
    json points = json::array();
    for (const auto& p : r.config.points) points.push_back(point_to_json(p));
    json doc;
    doc["schema"] = kSchemaVersion;
    doc["config"] = {{"points", points},
                     {"degree", r.config.degree},
                     {"discs_per_point", r.config.discs_per_point},
                     {"svd_tol", r.config.svd_tol},
                     {"min_gap", r.config.min_gap},
                     {"seed", r.config.seed},
                     {"check_stability", r.config.check_stability}};
    doc["kernel_dimension"] = r.kernel_dimension;
    doc["holomorphic_dimension"] = r.holomorphic_dimension;
    doc["max_principal_angle"] = r.max_principal_angle ? json(*r.max_principal_angle) : json(nullptr);
    doc["holomorphic_containment_angle"] = r.holomorphic_containment_angle;
    doc["spectral_gap"] = r.spectral_gap ? real_to_json(*r.spectral_gap) : json(nullptr);
    doc["doubled_kernel_dimension"] = r.doubled_kernel_dimension ? json(*r.doubled_kernel_dimension) : json(nullptr);
    doc["singular_values"] = r.singular_values;
    if (include_basis) {
        json basis = json::array();
        for (Eigen::Index c = 0; c < r.kernel_basis.cols(); ++c)
            basis.push_back(function_to_json(verification::polynomial_from_coefficients(r.columns, r.kernel_basis.col(c))));
        doc["kernel_basis"] = basis;
    }
    return doc;
}

inline json lemma_report_to_json(const verification::LemmaReport& r, double tol) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name},
                          {"measured", real_to_json(c.measured)},
                          {"threshold", c.threshold},
                          {"relation", std::string(verification::to_string(c.relation))},
                          {"passed", c.passed},
                          {"values", c.values}});
    return {{"schema", kSchemaVersion},
            {"config", {{"seed", r.seed}, {"samples", r.samples}, {"tol", tol}}},
            {"checks", checks},
            {"all_passed", r.all_passed()}};
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
    out << text;
}

inline std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

} // namespace disctrace::io
