// Runs every acceptance criterion at its pinned tolerance and prints one
// PASS/FAIL line per criterion. Usage: acceptance <path-to-disctrace-cli> <work-dir>

#include "disctrace/boundary_functions.hpp"
#include "disctrace/cr_lifts.hpp"
#include "disctrace/discs.hpp"
#include "disctrace/lemma_suite.hpp"
#include "disctrace/moments.hpp"
#include "disctrace/sampling.hpp"
#include "disctrace/verification.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

using namespace disctrace;
using boundary::HermitianPolynomial;
using boundary::MultiIndexPair;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            detail << " [failed: " << what << "]";
        }
    }
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

const Complex2 kP1{0.0, 0.0}, kP2{0.5, 0.0}, kP3{0.0, 0.5};

HermitianPolynomial random_polynomial(sampling::Sampler& s, int degree) {
    HermitianPolynomial f;
    for (const auto& m : boundary::reduced_basis(degree))
        if (s.uniform() < 0.6) f.add_term(m, cplx(s.normal(), s.normal()));
    return f;
}

// 1. Kernel of three families is the holomorphic span.
Outcome three_point_kernel() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    const auto r = verification::kernel_experiment(kP1, kP2, kP3, 4, 60, 1e-8, 7);
    const auto reseeded = verification::kernel_experiment(kP1, kP2, kP3, 4, 60, 1e-8, 8);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double angle = r.max_principal_angle.value_or(1.0);
    const double gap = r.spectral_gap.value_or(0.0);
    o.detail << "kernel_dimension=" << r.kernel_dimension << " expected=15 gap=" << sci(gap) << " angle=" << sci(angle)
             << " doubled=" << r.doubled_kernel_dimension.value_or(-1) << " reseeded=" << reseeded.kernel_dimension
             << " runtime=" << sci(seconds) << "s";
    o.require(r.kernel_dimension == 15, "kernel dimension");
    o.require(gap > 1e3, "spectral gap");
    o.require(angle < 1e-8, "principal angle");
    o.require(r.doubled_kernel_dimension == 15, "doubling stability");
    o.require(reseeded.kernel_dimension == 15 && reseeded.max_principal_angle.value_or(1.0) < 1e-8, "reseeding");
    o.require(seconds < 60.0, "runtime");
    return o;
}

// 2. One family through the origin leaves the |α| ≥ |β| span.
Outcome one_point() {
    Outcome o;
    const auto r = verification::one_point_control({}, 4, 60, 7);
    int brute = 0;
    for (int a1 = 0; a1 <= 4; ++a1)
        for (int a2 = 0; a2 <= 4; ++a2)
            for (int b1 = 0; b1 <= 4; ++b1)
                for (int b2 = 0; b2 <= 4; ++b2)
                    if (a1 + a2 + b1 + b2 <= 4 && std::min(a1, b1) == 0 && a1 + a2 >= b1 + b2) ++brute;
    const double angle = r.angle_to_prediction.value_or(1.0);
    o.detail << "kernel_dimension=" << r.kernel.kernel_dimension << " enumerated=" << brute << " angle=" << sci(angle);
    o.require(brute == 32 && r.kernel.kernel_dimension == brute, "dimension");
    o.require(r.kernel.kernel_dimension > 15, "strictly larger than holomorphic");
    o.require(angle < 1e-8, "angle to predicted span");
    return o;
}

// 3. The disc through (0, 0.5) and (1, 0) and its lift.
Outcome reference_disc() {
    Outcome o;
    const auto r = disc_through_two_points({0.0, 0.5}, {1.0, 0.0});
    const double da = (r.disc.a() - Complex2(0.2, 0.4)).norm();
    const double db = (r.disc.b() - Complex2(0.8, -0.4)).norm();
    const double dtau = std::abs(std::abs(r.tau_q) - 1.0);
    const double hit = (r.disc(1.0) - Complex2(1.0, 0.0)).norm();
    double lift_err = 0.0;
    for (int k = 0; k < 16; ++k) {
        const cplx tau = std::polar(0.2 + 0.8 * (k % 5) / 4.0, 2.0 * std::numbers::pi * (k + 0.5) / 16);
        const auto z3 = lift(r.disc, tau).z3();
        lift_err = std::max(lift_err, z3 ? std::abs(*z3 - 0.5 * (tau - 1.0) / (0.25 * tau + 1.0)) : 1.0);
    }
    o.detail << "|a-a*|=" << sci(da) << " |b-b*|=" << sci(db) << " ||tau|-1|=" << sci(dtau) << " |A(1)-P|=" << sci(hit)
             << " lift=" << sci(lift_err);
    o.require(da < 1e-12 && db < 1e-12, "disc coefficients");
    o.require(dtau < 1e-12 && hit < 1e-12, "boundary parameter");
    o.require(lift_err < 1e-12, "lift coordinate");
    return o;
}

// 4. Lifts through the origin are constant; boundary lifts are conormal.
Outcome lift_structure() {
    Outcome o;
    sampling::Sampler s(4004);
    const double constant = verification::lemmas::lift_constancy_through_origin(s, 1000);
    const double conormal = verification::lemmas::boundary_conormal_defect(s, 1000);
    o.detail << "max_constancy=" << sci(constant) << " max_conormal=" << sci(conormal);
    o.require(constant < 1e-12, "constancy");
    o.require(conormal < 1e-12, "conormal");
    return o;
}

// 5. Identities, transversality, sweeping, lemma suite.
Outcome identity_suite(const std::string& cli, const fs::path& work) {
    namespace lm = verification::lemmas;
    Outcome o;
    sampling::Sampler s(5005);
    const double realness = lm::contraction_realness_defect(s, 1000);
    const double identities = lm::contraction_identity_defect(s, 1000);
    const double span = lm::span_equality_defect(s, 1000);
    const auto [t1, t2] = cr::omega_tilde_basis(1.0, 0.5);
    const auto inst = lm::span_coefficients(t1, 1.0);
    const double inst_err = std::max({std::abs(inst.x - 2.0), std::abs(inst.y), inst.residual});

    int rank6 = 0;
    std::set<int> ranks;
    for (int i = 0; i < 100; ++i) {
        Complex2 p1 = s.in_ball(0.9), p2 = s.in_ball(0.9), p3 = s.in_ball(0.9);
        while ((p1 - p2).norm() < 0.05 || verification::distance_to_complex_line(p1, p2, p3) < 0.05) {
            p2 = s.in_ball(0.9);
            p3 = s.in_ball(0.9);
        }
        const int rank = cr::transversality_rank(p1, p2, s.unit_vector());
        ranks.insert(rank);
        rank6 += rank == 6 ? 1 : 0;
    }

    int winding_nonzero = 0;
    for (int i = 0; i < 100; ++i) {
        const cplx z2 = s.in_annulus(0.05, 0.95), c = s.in_disc(0.9);
        cplx target = s.in_disc(1.0);
        while (std::abs(target - c) < 0.05) target = s.in_disc(1.0);
        winding_nonzero += cr::direction_sweep_winding(z2, c, target, 256) != 0 ? 1 : 0;
    }

    const std::string out = (work / "c5_lemmas.json").string();
    const int raw = std::system((cli + " lemmas --out " + out + " > " + (work / "c5_lemmas.txt").string()).c_str());
    const int lemma_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;

    std::ostringstream rank_list;
    for (int r : ranks) rank_list << (rank_list.tellp() > 0 ? "," : "") << r;
    o.detail << "realness=" << sci(realness) << " identities=" << sci(identities) << " span=" << sci(span)
             << " instance=(" << inst.x.real() << "," << inst.y.real() << ") rank6_scenes=" << rank6
             << "/100 observed_ranks={" << rank_list.str() << "} winding_nonzero=" << winding_nonzero
             << "/100 lemmas_exit=" << lemma_code;
    o.require(realness < 1e-12, "contraction realness");
    o.require(identities < 1e-10, "contraction identities");
    o.require(span < 1e-10, "span equality");
    o.require(inst_err < 1e-10, "span instance (2,0)");
    o.require(rank6 == 100, "transversality rank = 6");
    o.require(winding_nonzero == 100, "sweep winding");
    o.require(lemma_code == 0, "lemma suite exit code");
    return o;
}

// 6. Lifts of distinct discs through a point are disjoint off the center fiber.
Outcome lift_injectivity() {
    Outcome o;
    sampling::Sampler s(6006);
    double worst = std::numeric_limits<double>::infinity();
    double base_meet = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Complex2 p = s.in_ball(0.9);
        const auto d1 = s.disc_through(p), d2 = s.disc_through(p);
        worst = std::min(worst, verification::lemmas::lift_curve_separation(d1, d2, p, 1e-3, 8, 16));
        base_meet = std::max({base_meet, d1.distance_to_line(p), d2.distance_to_line(p)});
    }
    o.detail << "min_lift_separation=" << sci(worst) << " base_intersection_residual=" << sci(base_meet);
    o.require(worst > 1e-6, "separation");
    o.require(base_meet < 1e-12, "base discs meet at the center");
    return o;
}

// 7. Disc-wise extensions of kernel elements glue to a function of z alone.
Outcome gluing() {
    Outcome o;
    const auto report = verification::kernel_experiment(kP1, kP2, kP3, 4, 60, 1e-8, 7);
    sampling::Sampler s(7007);
    double worst = 0.0;
    for (int e = 0; e < 10; ++e) {
        Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(report.kernel_basis.rows());
        for (Eigen::Index c = 0; c < report.kernel_basis.cols(); ++c) coeffs += cplx(s.normal(), s.normal()) * report.kernel_basis.col(c);
        const auto f = verification::polynomial_from_coefficients(report.columns, coeffs);
        for (int k = 0; k < 20; ++k)
            worst = std::max(worst, verification::extension_consistency(f, {kP1, kP2, kP3}, s.in_ball(0.95), 60, moments::kExactTolerance,
                                                                        static_cast<std::uint64_t>(e))
                                        .discrepancy);
    }
    const auto zz = HermitianPolynomial::z2() * HermitianPolynomial::zbar2();
    const double counter = verification::extension_discrepancy(
        zz, {{disc_from_line({}, {0.0, 1.0}), 0.0}, {disc_from_line({}, {1.0, 0.0}), 0.0}});
    o.detail << "max_discrepancy=" << sci(worst) << " counterexample=" << counter;
    o.require(worst < 1e-8, "kernel elements");
    o.require(counter == 1.0, "counterexample equals 1");
    return o;
}

// Normalized sphere integral in Hopf coordinates: Gauss–Legendre in η and a
// 64×64 trapezoid in the two angles.
cplx hopf_integral(const std::function<cplx(const Complex2&)>& g) {
    constexpr int n = 64;
    auto slice = [&](double eta) {
        cplx sum = 0.0;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                sum += g({std::polar(std::cos(eta), 2.0 * std::numbers::pi * j / n), std::polar(std::sin(eta), 2.0 * std::numbers::pi * k / n)});
        return sum / static_cast<double>(n * n) * 2.0 * std::sin(eta) * std::cos(eta);
    };
    using Q = boost::math::quadrature::gauss<double, 30>;
    const double re = Q::integrate([&](double e) { return slice(e).real(); }, 0.0, std::numbers::pi / 2);
    const double im = Q::integrate([&](double e) { return slice(e).imag(); }, 0.0, std::numbers::pi / 2);
    return {re, im};
}

// 8. Exact restriction and inner products against independent oracles.
Outcome exactness() {
    Outcome o;
    sampling::Sampler s(8008);
    double fft_err = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto d = s.disc();
        for (int deg = 0; deg <= 6; ++deg) {
            const auto f = random_polynomial(s, deg);
            const auto exact = moments::restrict_to_disc(f, d);
            const auto sampled =
                moments::numeric_moments([&](double t) { return boundary::evaluate(f, boundary_point(d, t)); }, 64);
            for (int k = -32; k < 32; ++k) fft_err = std::max(fft_err, std::abs(exact.coefficient(k) - sampled.coefficient(k)));
        }
    }
    double quad_err = 0.0;
    for (int i = 0; i < 6; ++i) {
        const auto f = boundary::normal_form(random_polynomial(s, 4));
        const auto g = boundary::normal_form(random_polynomial(s, 4));
        const cplx exact = boundary::sphere_inner_product(f, g);
        const cplx quad =
            hopf_integral([&](const Complex2& z) { return boundary::evaluate_anywhere(f, z) * std::conj(boundary::evaluate_anywhere(g, z)); });
        quad_err = std::max(quad_err, std::abs(exact - quad));
    }
    const auto basis = boundary::reduced_basis(4);
    std::set<MultiIndexPair> brute;
    for (int a1 = 0; a1 <= 4; ++a1)
        for (int a2 = 0; a2 <= 4; ++a2)
            for (int b1 = 0; b1 <= 4; ++b1)
                for (int b2 = 0; b2 <= 4; ++b2)
                    if (a1 + a2 + b1 + b2 <= 4 && std::min(a1, b1) == 0) brute.insert(MultiIndexPair{{a1, a2}, {b1, b2}});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(boundary::gram_matrix(basis));
    const double min_eig = es.eigenvalues().minCoeff();
    o.detail << "restrict_vs_fft=" << sci(fft_err) << " inner_vs_quadrature=" << sci(quad_err) << " basis_size=" << basis.size()
             << " brute=" << brute.size() << " gram_min_eigenvalue=" << sci(min_eig);
    o.require(fft_err < 1e-12, "restriction vs FFT");
    o.require(quad_err < 1e-6, "inner products vs quadrature");
    o.require(basis.size() == 55 && brute.size() == 55 && std::set<MultiIndexPair>(basis.begin(), basis.end()) == brute, "basis size");
    o.require(min_eig > 0.0, "Gram positive definite");
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 9. Reports are byte-identical across worker counts.
Outcome determinism(const std::string& cli, const fs::path& work, const fs::path& samples) {
    Outcome o;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"kernel", "kernel --points 0,0 0.5,0 0,0.5 --degree 4 --discs 60 --seed 7"},
        {"test", "test --function " + (samples / "z2_zbar2.json").string() + " --point 0.5,0 --discs 100 --seed 3"},
        {"lemmas", "lemmas --seed 1"},
        {"extend", "extend --function " + (samples / "holomorphic_mix.json").string() + " --points 0,0 0.5,0 0,0.5 --at 0.1,0.2 --seed 2"},
    };
    int identical = 0;
    for (const auto& [name, args] : commands) {
        std::string reports[2], stdouts[2];
        int codes[2];
        const char* threads[2] = {"1", "4"};
        for (int t = 0; t < 2; ++t) {
            const fs::path report = work / (name + ".out");
            const fs::path console = work / (name + ".stdout");
            fs::remove(report);
            setenv("DISCTRACE_THREADS", threads[t], 1);
            const int raw = std::system((cli + " " + args + " --out " + report.string() + " > " + console.string()).c_str());
            codes[t] = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
            reports[t] = slurp(report);
            stdouts[t] = slurp(console);
        }
        const bool same = !reports[0].empty() && reports[0] == reports[1] && stdouts[0] == stdouts[1] && codes[0] == codes[1];
        identical += same ? 1 : 0;
        o.detail << " " << name << "=" << (same ? "identical" : "DIFFERENT") << "(exit " << codes[0] << ")";
        o.require(same, name);
    }
    unsetenv("DISCTRACE_THREADS");
    o.detail << " commands_identical=" << identical << "/" << commands.size();
    return o;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <disctrace-cli> <work-dir> [samples-dir]\n";
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path work = argv[2];
    const fs::path samples = argc > 3 ? fs::path(argv[3]) : fs::path(DISCTRACE_SAMPLES_DIR);
    fs::create_directories(work);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"C1 three-point kernel equals holomorphic span", three_point_kernel},
        {"C2 one-point control", one_point},
        {"C3 reference disc and lift", reference_disc},
        {"C4 lift structure", lift_structure},
        {"C5 conormal identity suite", [&] { return identity_suite(cli, work); }},
        {"C6 lift injectivity", lift_injectivity},
        {"C7 gluing consistency", gluing},
        {"C8 exactness oracles", exactness},
        {"C9 determinism across thread counts", [&] { return determinism(cli, work, samples); }},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.passed = false;
            o.detail << " exception: " << e.what();
        }
        failures += o.passed ? 0 : 1;
        std::cout << (o.passed ? "PASS " : "FAIL ") << name << ": " << o.detail.str() << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
