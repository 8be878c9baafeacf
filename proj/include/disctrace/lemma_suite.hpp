#pragma once

// Numerical checks of the conormal structure of the lifted disc families:
// lift formulas, the ω and ω̃ bases, pointing directions, transport of normal
// directions, edge transversality and sweeping.

#include "disctrace/cr_lifts.hpp"
#include "disctrace/discs.hpp"
#include "disctrace/geometry.hpp"
#include "disctrace/moments.hpp"
#include "disctrace/sampling.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace disctrace::verification {

enum class Relation { Below, Equal, Above };

constexpr std::string_view to_string(Relation r) {
    switch (r) {
    case Relation::Below: return "<";
    case Relation::Equal: return "==";
    case Relation::Above: return ">";
    }
    return "?";
}

struct LemmaCheck {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    Relation relation = Relation::Below;
    bool passed = false;
    std::vector<double> values;  // extra recorded numbers (coefficients, windings, ...)
};

struct LemmaReport {
    std::uint64_t seed = 0;
    int samples = 0;
    std::vector<LemmaCheck> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return !checks.empty();
    }
};

struct LemmaConfig {
    std::uint64_t seed = 0;
    int samples = 200;
    double identity_tol = 1e-10;
};

namespace lemmas {

inline LemmaCheck make_check(std::string name, double measured, double threshold, Relation rel, std::vector<double> values = {}) {
    bool ok = false;
    switch (rel) {
    case Relation::Below: ok = measured < threshold; break;
    case Relation::Equal: ok = measured == threshold; break;
    case Relation::Above: ok = measured > threshold; break;
    }
    return {std::move(name), measured, threshold, rel, ok, std::move(values)};
}

/// Largest chordal distance between lift fibers over a disc through 0 and [conj b].
inline double lift_constancy_through_origin(sampling::Sampler& s, int samples) {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const StraightDisc disc = s.disc_through({});
        const CP1Point expected = CP1Point::from_vector(disc.b().conj());
        for (int k = 0; k < 8; ++k) worst = std::max(worst, cp1_distance(lift(disc, s.in_disc(1.0)).zeta, expected));
    }
    return worst;
}

inline double boundary_conormal_defect(sampling::Sampler& s, int samples) {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const StraightDisc disc = s.disc();
        for (int k = 0; k < 16; ++k) {
            const cplx tau = s.on_circle();
            worst = std::max(worst, cp1_distance(lift(disc, tau).zeta, CP1Point::from_vector(disc(tau).conj())));
        }
    }
    return worst;
}

inline double sphere_attachment_defect(sampling::Sampler& s, int samples) {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const StraightDisc disc = s.disc();
        for (int k = 0; k < 256; ++k)
            worst = std::max(worst, std::abs(boundary_point(disc, 2.0 * std::numbers::pi * k / 256).squared_norm() - 1.0));
    }
    return worst;
}

/// Minimum sampled distance between the lifts of two discs through the same
/// point, over samples whose base points are at least `exclusion` from it.
inline double lift_curve_separation(const StraightDisc& d1, const StraightDisc& d2, const Complex2& center, double exclusion = 1e-3,
                                    int radial = 12, int angular = 24) {
    auto samples = [&](const StraightDisc& d) {
        std::vector<LiftPoint> pts;
        for (int i = 1; i <= radial; ++i)
            for (int j = 0; j < angular; ++j) {
                const cplx tau = std::polar(static_cast<double>(i) / (radial + 1), 2.0 * std::numbers::pi * j / angular);
                LiftPoint p = lift(d, tau);
                if ((p.z - center).norm() > exclusion) pts.push_back(p);
            }
        return pts;
    };
    const auto a = samples(d1);
    const auto b = samples(d2);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : a)
        for (const auto& q : b) best = std::min(best, lift_distance(p, q));
    return best;
}

inline double lift_injectivity_margin(sampling::Sampler& s, int pairs) {
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < pairs; ++i) {
        const Complex2 p = s.in_ball(0.9);
        worst = std::min(worst, lift_curve_separation(s.disc_through(p), s.disc_through(p), p));
    }
    return worst;
}

inline double lift_round_trip_defect(sampling::Sampler& s, int samples) {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const StraightDisc disc = s.disc();
        const cplx tau = s.in_disc(0.999);
        const LiftPoint l = lift(disc, tau);
        const auto back = disc_from_lift_point(l.z, l.zeta);
        worst = std::max({worst, (back.disc.a() - disc.a()).norm(), (back.disc.b() - disc.b()).norm(), std::abs(back.tau - tau)});
    }
    return worst;
}

inline double m0_membership_defect(sampling::Sampler& s, int samples) {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const StraightDisc disc = s.disc_through({});
        for (int k = 0; k < 8; ++k) {
            const LiftPoint l = lift(disc, s.in_annulus(0.05, 1.0));
            worst = std::max(worst, std::abs(cr::m0_defining_value(l.z.z1, l.z.z2, *l.z3())));
        }
    }
    return worst;
}

/// Along the axis disc, ω₁(z₁, 0) and ω₂(z₁, 0) are meromorphic with at most a
/// simple pole over the center: on circles |z₁| = r the Fourier coefficients of
/// index ≤ −2 vanish, and z₁·ω has no negative coefficients.
inline double omega_pole_order_defect() {
    double worst = 0.0;
    for (double r : {0.3, 0.6, 0.9})
        for (int which = 0; which < 2; ++which)
            for (int comp = 0; comp < 3; ++comp)
                for (bool times_z : {false, true}) {
                    const auto coeffs = moments::numeric_moments(
                        [&](double theta) {
                            const cplx z1 = std::polar(r, theta);
                            const auto [w1, w2] = cr::omega_basis(z1, 0.0);
                            const cplx c = (which == 0 ? w1 : w2)[comp];
                            return times_z ? z1 * c : c;
                        },
                        64);
                    const int first_checked = times_z ? -1 : -2;
                    for (int k = coeffs.min_degree(); k <= first_checked; ++k) worst = std::max(worst, std::abs(coeffs.coefficient(k)));
                }
    return worst;
}

/// Largest |∂²Re r/∂zᵢ∂z̄ⱼ| over random points, by Richardson-extrapolated
/// central differences.
inline double pluriharmonic_defect(sampling::Sampler& s, int samples) {
    auto re_r = [](const Eigen::Matrix<double, 6, 1>& x) {
        return cr::m0_defining_value(cplx(x(0), x(3)), cplx(x(1), x(4)), cplx(x(2), x(5))).real();
    };
    auto mixed = [&](const Eigen::Matrix<double, 6, 1>& x, int a, int b, double h) {
        Eigen::Matrix<double, 6, 1> ea = Eigen::Matrix<double, 6, 1>::Zero();
        Eigen::Matrix<double, 6, 1> eb = Eigen::Matrix<double, 6, 1>::Zero();
        ea(a) = h;
        eb(b) = h;
        return (re_r(x + ea + eb) - re_r(x + ea - eb) - re_r(x - ea + eb) + re_r(x - ea - eb)) / (4.0 * h * h);
    };
    auto wirtinger = [&](const Eigen::Matrix<double, 6, 1>& x, int i, int j, double h) {
        const double re = mixed(x, i, j, h) + mixed(x, i + 3, j + 3, h);
        const double im = mixed(x, i, j + 3, h) - mixed(x, i + 3, j, h);
        return 0.25 * cplx(re, im);
    };
    double worst = 0.0;
    const double h = 4e-3;
    for (int n = 0; n < samples; ++n) {
        const cplx z1 = s.in_annulus(0.5, 0.9);
        const cplx z2 = s.in_disc(0.5);
        const cplx z3 = s.in_disc(1.0);
        Eigen::Matrix<double, 6, 1> x;
        x << z1.real(), z2.real(), z3.real(), z1.imag(), z2.imag(), z3.imag();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const cplx d = (4.0 * wirtinger(x, i, j, h / 2) - wirtinger(x, i, j, h)) / 3.0;
                worst = std::max(worst, std::abs(d));
            }
    }
    return worst;
}

/// Relative size of Re⟨ω̃ᵢ, t⟩ for tangent vectors t of the family through
/// (ζ₀, 0) along the z₁-axis lift; zero means ω̃ is conormal there.
inline double omega_tilde_conormality_defect(sampling::Sampler& s, int samples) {
    double worst = 0.0;
    for (int n = 0; n < samples; ++n) {
        const cplx center = s.in_disc(0.8);
        const cr::FamilyChart family({center, 0.0});
        const Complex2 dir{1.0, 0.0};
        cplx z1 = s.in_disc(1.0);
        while (std::abs(z1 - center) < 0.05) z1 = s.in_disc(1.0);
        const cplx tau = family.parameter_of(dir, {z1, 0.0});
        const auto jac = family.real_jacobian(dir, tau, cr::FiberChart::First);
        const auto [w1, w2] = cr::omega_tilde_basis(z1, center);
        const Eigen::Matrix<double, 2, 6> forms = cr::real_forms(w1, w2);
        const Eigen::Matrix<double, 2, 4> pairing = forms * jac;
        worst = std::max(worst, pairing.cwiseAbs().maxCoeff() / (forms.norm() * jac.norm()));
    }
    return worst;
}

/// Coefficients (x, y) with ω̃ = x ω₁(z₁,0) + y ω₂(z₁,0) from the last two
/// components; returns (x, y) and the residual in the first component.
struct SpanSolve {
    cplx x, y;
    double residual;
};

inline SpanSolve span_coefficients(const cr::Covector3& target, cplx z1) {
    const auto [o1, o2] = cr::omega_basis(z1, 0.0);
    Eigen::Matrix2cd m;
    m << o1[1], o2[1], o1[2], o2[2];
    const Eigen::Vector2cd rhs(target[1], target[2]);
    const Eigen::Vector2cd sol = m.fullPivLu().solve(rhs);
    const double residual = std::max((m * sol - rhs).norm(), std::abs(sol(0) * o1[0] + sol(1) * o2[0] - target[0]));
    return {sol(0), sol(1), residual};
}

/// Worst of |imaginary part of the coefficients| and the solve residual, over
/// random z₁ on the unit circle and interior ζ₀.
inline double span_equality_defect(sampling::Sampler& s, int samples) {
    double worst = 0.0;
    for (int n = 0; n < samples; ++n) {
        const cplx z1 = s.on_circle();
        const cplx center = s.in_disc(0.9);
        const auto [t1, t2] = cr::omega_tilde_basis(z1, center);
        for (const auto& t : {t1, t2}) {
            const SpanSolve sol = span_coefficients(t, z1);
            worst = std::max({worst, std::abs(sol.x.imag()), std::abs(sol.y.imag()), sol.residual});
        }
    }
    return worst;
}

struct ContractionSample {
    cplx z2, zeta, center;
};

inline ContractionSample random_contraction_sample(sampling::Sampler& s) {
    return {s.in_annulus(0.05, 0.95), s.on_circle(), s.in_disc(0.9)};
}

inline double contraction_realness_defect(sampling::Sampler& s, int samples) {
    double worst = 0.0;
    for (int n = 0; n < samples; ++n) {
        const auto [z2, zeta, center] = random_contraction_sample(s);
        const auto v = cr::pointing_direction(z2, zeta);
        const auto [t1, t2] = cr::omega_tilde_basis(zeta, center);
        worst = std::max({worst, std::abs(cr::contract(t1, v).imag()), std::abs(cr::contract(t2, v).imag())});
    }
    return worst;
}

/// ⟨ω̃₁(ζ), v_ζ⟩ = −2 Re w/(1+|z₂|²), ⟨ω̃₂(ζ), v_ζ⟩ = 2 Im w/(1+|z₂|²), w = z₂/(ζ − ζ₀).
inline double contraction_identity_defect(sampling::Sampler& s, int samples) {
    double worst = 0.0;
    for (int n = 0; n < samples; ++n) {
        const auto [z2, zeta, center] = random_contraction_sample(s);
        const auto v = cr::pointing_direction(z2, zeta);
        const auto [t1, t2] = cr::omega_tilde_basis(zeta, center);
        const cplx w = z2 / (zeta - center);
        const double scale = 1.0 + std::norm(z2);
        worst = std::max({worst, std::abs(cr::contract(t1, v) - (-2.0 * w.real() / scale)),
                          std::abs(cr::contract(t2, v) - (2.0 * w.imag() / scale))});
    }
    return worst;
}

/// Closed-form lift of the disc through (0, z₂) and (ζ, 0), with τ = 1 at (ζ, 0):
/// (|z₂|²ζ + τζ, z₂ − τz₂)/(1+|z₂|²) and fiber coordinate
/// conj(z₂)(τ − 1)/(conj(ζ)(|z₂|²τ + 1)).
inline cr::Vector3 reference_lift_curve(cplx z2, cplx zeta, cplx tau) {
    const double n2 = std::norm(z2);
    const double s = 1.0 / (1.0 + n2);
    return {{s * (n2 * zeta + tau * zeta), s * (z2 - tau * z2), std::conj(z2) * (tau - 1.0) / (std::conj(zeta) * (n2 * tau + 1.0))}};
}

inline double pointing_direction_fd_defect(sampling::Sampler& s, int samples) {
    double worst = 0.0;
    const double h = 1e-5;
    for (int n = 0; n < samples; ++n) {
        const cplx z2 = s.in_annulus(0.05, 0.95);
        const cplx zeta = s.on_circle();
        const auto plus = reference_lift_curve(z2, zeta, 1.0 + h);
        const auto minus = reference_lift_curve(z2, zeta, 1.0 - h);
        const auto v = cr::pointing_direction(z2, zeta);
        for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(-(plus[i] - minus[i]) / (2.0 * h) - v[i]));
    }
    return worst;
}

inline std::array<double, 2> pairings(const cr::Vector3& w, cplx at, cplx center) {
    const auto [t1, t2] = cr::omega_tilde_basis(at, center);
    return {cr::contract(t1, w).real(), cr::contract(t2, w).real()};
}

inline double transport_defect(sampling::Sampler& s, int samples, bool identity) {
    double worst = 0.0;
    for (int n = 0; n < samples; ++n) {
        const auto [z2, zeta, center] = random_contraction_sample(s);
        const cplx target = identity ? zeta : s.in_disc(1.0);
        const auto v = cr::pointing_direction(z2, zeta);
        const auto [t1, t2] = cr::omega_tilde_basis(target, center);
        const auto w = cr::transported_direction(v, zeta, target, center, cr::coordinate_complement(t1, t2));
        const auto src = pairings(v, zeta, center);
        const auto dst = pairings(w, target, center);
        worst = std::max({worst, std::abs(src[0] - dst[0]), std::abs(src[1] - dst[1])});
    }
    return worst;
}

} // namespace lemmas

/// Runs every check and collects measured values against pinned thresholds.
inline LemmaReport lemma_suite(const LemmaConfig& cfg = {}) {
    using namespace lemmas;
    LemmaReport report;
    report.seed = cfg.seed;
    report.samples = cfg.samples;
    sampling::Sampler s(cfg.seed);
    const int n = cfg.samples;
    const double tol = cfg.identity_tol;
    auto& out = report.checks;

    out.push_back(make_check("lift_constant_through_origin", lift_constancy_through_origin(s, n), 1e-12, Relation::Below));
    out.push_back(make_check("boundary_lift_is_sphere_conormal", boundary_conormal_defect(s, n), 1e-12, Relation::Below));
    out.push_back(make_check("sphere_attachment", sphere_attachment_defect(s, n), 1e-12, Relation::Below));
    out.push_back(make_check("lift_injectivity", lift_injectivity_margin(s, std::max(1, n / 4)), 1e-6, Relation::Above));
    out.push_back(make_check("lift_point_round_trip", lift_round_trip_defect(s, n), 1e-9, Relation::Below));
    out.push_back(make_check("m0_membership_of_lifts", m0_membership_defect(s, n), 1e-12, Relation::Below));
    out.push_back(make_check("omega_simple_pole_along_axis", omega_pole_order_defect(), tol, Relation::Below));
    out.push_back(make_check("m0_defining_function_pluriharmonic", pluriharmonic_defect(s, std::max(1, n / 10)), 1e-8, Relation::Below));
    out.push_back(make_check("omega_tilde_conormal_along_axis", omega_tilde_conormality_defect(s, std::max(1, n / 4)), 1e-7,
                             Relation::Below));
    out.push_back(make_check("span_equality_boundary", span_equality_defect(s, n), tol, Relation::Below));
    {
        const auto [t1, t2] = cr::omega_tilde_basis(1.0, 0.5);
        const SpanSolve sol = span_coefficients(t1, 1.0);
        const double dev = std::max({std::abs(sol.x - 2.0), std::abs(sol.y), sol.residual});
        out.push_back(make_check("span_equality_instance", dev, tol, Relation::Below, {sol.x.real(), sol.y.real()}));
    }
    out.push_back(make_check("contraction_realness", contraction_realness_defect(s, n), 1e-12, Relation::Below));
    out.push_back(make_check("contraction_identities", contraction_identity_defect(s, n), tol, Relation::Below));
    out.push_back(make_check("pointing_direction_finite_difference", pointing_direction_fd_defect(s, n), 1e-8, Relation::Below));
    out.push_back(make_check("transport_identity", transport_defect(s, n, true), tol, Relation::Below));
    out.push_back(make_check("transport_preserves_pairings", transport_defect(s, n, false), tol, Relation::Below));
    {
        const auto v = cr::pointing_direction(0.5, 1.0);
        const auto [t1, t2] = cr::omega_tilde_basis(-1.0, 0.5);
        const auto w = cr::transported_direction(v, 1.0, -1.0, 0.5, cr::coordinate_complement(t1, t2));
        const auto dst = pairings(w, -1.0, 0.5);
        const double dev = std::max(std::abs(dst[0] + 1.6), std::abs(dst[1]));
        out.push_back(make_check("transport_instance", dev, tol, Relation::Below, {dst[0], dst[1]}));
    }
    {
        const int w = cr::direction_sweep_winding(0.5, 0.5, -0.3, 256);
        out.push_back(make_check("sweep_winding", std::abs(w), 1.0, Relation::Equal, {static_cast<double>(w)}));
        int nonzero = 0;
        const int trials = std::max(1, n / 2);
        for (int k = 0; k < trials; ++k) {
            const cplx z2 = s.in_annulus(0.05, 0.95);
            const cplx center = s.in_disc(0.9);
            cplx target = s.in_disc(1.0);
            while (std::abs(target - center) < 0.05) target = s.in_disc(1.0);
            if (cr::direction_sweep_winding(z2, center, target, 256) != 0) ++nonzero;
        }
        out.push_back(make_check("sweep_winding_random_nonzero", nonzero, trials, Relation::Equal));
    }
    {
        const int reference = cr::transversality_rank({0.5, 0.0}, {0.0, 0.5}, {1.0, 0.0});
        out.push_back(make_check("edge_transversality_rank", reference, 5.0, Relation::Equal, {static_cast<double>(reference)}));
        int hits = 0;
        const int trials = std::max(1, n / 10);
        for (int k = 0; k < trials; ++k) {
            const Complex2 p1 = s.in_ball(0.9);
            Complex2 p2 = s.in_ball(0.9);
            while ((p1 - p2).norm() < 0.05) p2 = s.in_ball(0.9);
            const Complex2 z = s.unit_vector();
            if (cr::transversality_rank(p1, p2, z) == 5) ++hits;
        }
        out.push_back(make_check("edge_transversality_rank_random", hits, trials, Relation::Equal));
        const int same = cr::transversality_rank({0.5, 0.0}, {0.5, 0.0}, {1.0, 0.0});
        out.push_back(make_check("same_family_rank", same, 4.0, Relation::Equal, {static_cast<double>(same)}));
    }
    return report;
}

} // namespace disctrace::verification
