#pragma once

// Desk-scale experiments on the moment conditions along families of discs
// through fixed interior points: kernel dimension of the stacked moment
// matrix, principal angles against the holomorphic traces, and the
// consistency of disc-wise extension values.

#include "disctrace/boundary_functions.hpp"
#include "disctrace/discs.hpp"
#include "disctrace/error.hpp"
#include "disctrace/geometry.hpp"
#include "disctrace/moments.hpp"
#include "disctrace/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

namespace disctrace::verification {

using boundary::HermitianPolynomial;
using boundary::MultiIndexPair;

// ---------------------------------------------------------------------------
// Seeding

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits; std distributions are not
/// reproducible across standard libraries.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// ---------------------------------------------------------------------------
// Disc families

/// n discs through P. Directions come from a Fibonacci lattice on the sphere
/// S² ≅ CP¹, each point jittered tangentially by at most a fifth of the
/// lattice spacing, then mapped to CP¹ by (θ, φ) ↦ [cos(θ/2) : sin(θ/2)e^{iφ}].
inline std::vector<StraightDisc> sample_disc_family(const Complex2& center, int count, std::uint64_t seed) {
    if (count < 1) throw Error(ErrorKind::InvalidArgument, "need at least one disc");
    if (!(center.norm() < 1.0)) throw Error(ErrorKind::OutsideBall, "family center must be interior");
    std::mt19937_64 rng(splitmix64(seed));
    const double spacing = std::sqrt(4.0 * std::numbers::pi / count);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    std::vector<StraightDisc> discs;
    discs.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / count;
        const double phi = golden * i;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        Eigen::Vector3d x(r * std::cos(phi), r * std::sin(phi), z);
        const Eigen::Vector3d e_theta(z * std::cos(phi), z * std::sin(phi), -r);
        const Eigen::Vector3d e_phi(-std::sin(phi), std::cos(phi), 0.0);
        const double psi = 2.0 * std::numbers::pi * uniform01(rng);
        const double radius = 0.2 * spacing * uniform01(rng);
        x = (x + radius * (std::cos(psi) * e_theta + std::sin(psi) * e_phi)).normalized();
        const double planar = std::hypot(x.x(), x.y());
        const cplx phase = planar > 0.0 ? cplx(x.x(), x.y()) / planar : cplx(1.0);
        const Complex2 u{std::sqrt(std::max(0.0, (1.0 + x.z()) / 2.0)), std::sqrt(std::max(0.0, (1.0 - x.z()) / 2.0)) * phase};
        discs.push_back(disc_from_line(center, u));
    }
    return discs;
}

// ---------------------------------------------------------------------------
// Moment matrices

struct RowLabel {
    std::size_t disc;
    int k;  // the row holds coefficients at degree −k
};

struct MomentMatrix {
    Eigen::MatrixXcd values;
    std::vector<MultiIndexPair> columns;
    std::vector<RowLabel> rows;
    std::vector<StraightDisc> discs;
};

/// Row (disc i, k) holds the τ^{−k} coefficient, k = 1..d, of every reduced
/// monomial of degree ≤ d restricted to disc i.
inline MomentMatrix build_moment_matrix(int degree, const std::vector<StraightDisc>& discs,
                                        unsigned workers = worker_count()) {
    if (degree < 0) throw Error(ErrorKind::InvalidArgument, "negative degree");
    MomentMatrix m;
    m.columns = boundary::reduced_basis(degree);
    m.discs = discs;
    const auto ncols = static_cast<Eigen::Index>(m.columns.size());
    m.values = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(discs.size()) * degree, ncols);
    for (std::size_t i = 0; i < discs.size(); ++i)
        for (int k = 1; k <= degree; ++k) m.rows.push_back({i, k});
    parallel_for(
        discs.size(),
        [&](std::size_t i) {
            for (Eigen::Index c = 0; c < ncols; ++c) {
                const auto r = moments::restrict_to_disc(HermitianPolynomial::monomial(m.columns[static_cast<std::size_t>(c)]), discs[i]);
                for (int k = 1; k <= degree; ++k)
                    m.values(static_cast<Eigen::Index>(i) * degree + (k - 1), c) = r.coefficient(-k);
            }
        },
        workers);
    return m;
}

/// Coefficient vector of f on the given monomial columns (f must be supported there).
inline Eigen::VectorXcd coefficients_of(const HermitianPolynomial& f, const std::vector<MultiIndexPair>& columns) {
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(columns.size()));
    std::size_t matched = 0;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        const cplx c = f.coefficient(columns[i]);
        if (c != cplx{}) ++matched;
        x(static_cast<Eigen::Index>(i)) = c;
    }
    if (matched != f.terms().size()) throw Error(ErrorKind::InvalidArgument, "polynomial has terms outside the column basis");
    return x;
}

inline HermitianPolynomial polynomial_from_coefficients(const std::vector<MultiIndexPair>& columns, const Eigen::VectorXcd& x) {
    HermitianPolynomial f;
    for (std::size_t i = 0; i < columns.size(); ++i) f.add_term(columns[i], x(static_cast<Eigen::Index>(i)));
    return f;
}

// ---------------------------------------------------------------------------
// Subspace geometry in L²(sphere)

/// Orthonormal basis, in Euclidean coordinates y = R x with G = R* R, of the
/// column span of `coeffs` under the sphere inner product.
inline Eigen::MatrixXcd orthonormal_in_sphere_metric(const Eigen::MatrixXcd& coeffs, const Eigen::MatrixXcd& upper) {
    if (coeffs.cols() == 0) return Eigen::MatrixXcd(coeffs.rows(), 0);
    const Eigen::MatrixXcd y = upper * coeffs;
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(y);
    return qr.householderQ() * Eigen::MatrixXcd::Identity(y.rows(), y.cols());
}

/// Largest angle between a vector of span(sub) and span(super), i.e. the
/// containment angle asin ‖(I − Q_sup Q_sup*) Q_sub‖₂. When the dimensions
/// agree it is the largest principal angle.
inline double containment_angle(const Eigen::MatrixXcd& sub_orthonormal, const Eigen::MatrixXcd& super_orthonormal) {
    if (sub_orthonormal.cols() == 0) return 0.0;
    const Eigen::MatrixXcd residual =
        sub_orthonormal - super_orthonormal * (super_orthonormal.adjoint() * sub_orthonormal);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(residual);
    return std::asin(std::min(1.0, svd.singularValues()(0)));
}

/// Upper Cholesky factor R (G = R* R) of the Gram matrix of `columns`.
inline Eigen::MatrixXcd sphere_metric_factor(const std::vector<MultiIndexPair>& columns) {
    Eigen::LLT<Eigen::MatrixXcd> llt(boundary::gram_matrix(columns));
    if (llt.info() != Eigen::Success) throw Error(ErrorKind::InvalidArgument, "Gram matrix is not positive definite");
    return llt.matrixU();
}

/// Selector matrix of the columns satisfying `keep`.
template <class Pred>
Eigen::MatrixXcd column_selector(const std::vector<MultiIndexPair>& columns, Pred keep) {
    std::vector<Eigen::Index> idx;
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (keep(columns[i])) idx.push_back(static_cast<Eigen::Index>(i));
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(columns.size()), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) s(idx[j], static_cast<Eigen::Index>(j)) = 1.0;
    return s;
}

inline int holomorphic_dimension(int degree) { return (degree + 1) * (degree + 2) / 2; }

/// dim span{reduced z^α conj(z)^β : |α| ≥ |β|, degree ≤ d} = Σ_{m+n ≤ d, m ≥ n} (m + n + 1).
inline int through_origin_dimension(int degree) {
    int total = 0;
    for (int m = 0; m <= degree; ++m)
        for (int n = 0; m + n <= degree && n <= m; ++n) total += m + n + 1;
    return total;
}

// ---------------------------------------------------------------------------
// Kernel experiments

struct ExperimentConfig {
    std::vector<Complex2> points;
    int degree = 4;
    int discs_per_point = 60;
    double svd_tol = 1e-8;
    double min_gap = 1e3;
    std::uint64_t seed = 0;
    bool check_stability = true;
};

struct KernelReport {
    ExperimentConfig config;
    int kernel_dimension = 0;
    int holomorphic_dimension = 0;
    /// Largest principal angle to the holomorphic span; only when the dimensions agree.
    std::optional<double> max_principal_angle;
    /// Largest angle of a holomorphic trace to the kernel (0 when contained).
    double holomorphic_containment_angle = 0.0;
    std::vector<double> singular_values;
    /// σ(last kept)/σ(first discarded); absent when nothing is kept or discarded.
    std::optional<double> spectral_gap;
    std::optional<int> doubled_kernel_dimension;
    std::vector<MultiIndexPair> columns;
    /// Kernel basis as coefficient vectors (Euclidean-orthonormal columns).
    Eigen::MatrixXcd kernel_basis;
};

namespace detail {

struct KernelResult {
    Eigen::MatrixXcd basis;
    std::vector<double> singular_values;
    std::optional<double> gap;
};

inline std::vector<StraightDisc> stacked_families(const ExperimentConfig& cfg, int per_point) {
    std::vector<StraightDisc> discs;
    for (std::size_t j = 0; j < cfg.points.size(); ++j) {
        auto fam = sample_disc_family(cfg.points[j], per_point, splitmix64(cfg.seed + j));
        discs.insert(discs.end(), fam.begin(), fam.end());
    }
    return discs;
}

inline KernelResult kernel_of(const MomentMatrix& mm, double svd_tol) {
    Eigen::MatrixXcd a = mm.values;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        const double n = a.row(r).norm();
        if (n > 0.0) a.row(r) /= n;
    }
    const Eigen::Index ncols = a.cols();
    KernelResult out;
    if (a.rows() == 0) {
        out.basis = Eigen::MatrixXcd::Identity(ncols, ncols);
        return out;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    out.singular_values.assign(sv.data(), sv.data() + sv.size());
    const double cutoff = sv.size() > 0 ? svd_tol * sv(0) : 0.0;
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    if (rank > 0 && rank < ncols) {
        const double discarded = rank < sv.size() ? sv(rank) : 0.0;
        out.gap = discarded > 0.0 ? sv(rank - 1) / discarded : std::numeric_limits<double>::infinity();
    }
    out.basis = svd.matrixV().rightCols(ncols - rank);
    return out;
}

} // namespace detail

/// Kernel of the stacked, row-normalized moment matrix of the families through
/// every configured point. With check_stability, the experiment is repeated
/// with twice the discs and must give the same kernel dimension.
inline KernelReport family_kernel(const ExperimentConfig& cfg, unsigned workers = worker_count()) {
    if (cfg.degree < 0 || cfg.degree > boundary::kDefaultDegreeCap)
        throw Error(ErrorKind::InvalidArgument, "degree must lie in [0, 12]");
    if (cfg.discs_per_point < 1) throw Error(ErrorKind::InvalidArgument, "need at least one disc per point");
    if (!(cfg.svd_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "svd tolerance must be positive");
    if (cfg.points.empty()) throw Error(ErrorKind::InvalidArgument, "no points");
    for (const auto& p : cfg.points)
        if (!(p.norm() < 1.0)) throw Error(ErrorKind::OutsideBall, "points must be interior");

    const MomentMatrix mm = build_moment_matrix(cfg.degree, detail::stacked_families(cfg, cfg.discs_per_point), workers);
    const detail::KernelResult k = detail::kernel_of(mm, cfg.svd_tol);
    if (k.gap && *k.gap < cfg.min_gap)
        throw Error(ErrorKind::DegenerateSample, "spectral gap " + std::to_string(*k.gap) + " below " + std::to_string(cfg.min_gap));

    KernelReport report;
    report.config = cfg;
    report.columns = mm.columns;
    report.kernel_basis = k.basis;
    report.kernel_dimension = static_cast<int>(k.basis.cols());
    report.holomorphic_dimension = holomorphic_dimension(cfg.degree);
    report.singular_values = k.singular_values;
    report.spectral_gap = k.gap;

    const Eigen::MatrixXcd upper = sphere_metric_factor(mm.columns);
    const Eigen::MatrixXcd q_kernel = orthonormal_in_sphere_metric(k.basis, upper);
    const Eigen::MatrixXcd q_holo =
        orthonormal_in_sphere_metric(column_selector(mm.columns, [](const MultiIndexPair& m) { return m.is_holomorphic(); }), upper);
    report.holomorphic_containment_angle = containment_angle(q_holo, q_kernel);
    if (report.kernel_dimension == report.holomorphic_dimension)
        report.max_principal_angle = containment_angle(q_kernel, q_holo);

    if (cfg.check_stability) {
        const MomentMatrix doubled =
            build_moment_matrix(cfg.degree, detail::stacked_families(cfg, 2 * cfg.discs_per_point), workers);
        const int dim2 = static_cast<int>(detail::kernel_of(doubled, cfg.svd_tol).basis.cols());
        report.doubled_kernel_dimension = dim2;
        if (dim2 != report.kernel_dimension)
            throw Error(ErrorKind::DegenerateSample, "kernel dimension changed from " + std::to_string(report.kernel_dimension) +
                                                         " to " + std::to_string(dim2) + " when doubling the discs");
    }
    return report;
}

/// Distance from r to the complex line through p and q.
inline double distance_to_complex_line(const Complex2& p, const Complex2& q, const Complex2& r) {
    const Complex2 v = q - p;
    const Complex2 w = r - p;
    return (w - (hermitian_inner(w, v) / v.squared_norm()) * v).norm();
}

inline void require_non_collinear(const Complex2& p1, const Complex2& p2, const Complex2& p3) {
    if ((p1 - p2).norm() < 1e-14 || (p1 - p3).norm() < 1e-14 || (p2 - p3).norm() < 1e-14)
        throw Error(ErrorKind::CoincidentPoints, "points must be pairwise distinct");
    if (distance_to_complex_line(p1, p2, p3) < 1e-10)
        throw Error(ErrorKind::CollinearPoints, "the three points lie on one complex line");
}

/// Families through three non-collinear points: the kernel should be exactly
/// the holomorphic polynomials of degree ≤ d.
inline KernelReport kernel_experiment(const Complex2& p1, const Complex2& p2, const Complex2& p3, int degree, int discs_per_point,
                                      double svd_tol, std::uint64_t seed, unsigned workers = worker_count()) {
    require_non_collinear(p1, p2, p3);
    ExperimentConfig cfg;
    cfg.points = {p1, p2, p3};
    cfg.degree = degree;
    cfg.discs_per_point = discs_per_point;
    cfg.svd_tol = svd_tol;
    cfg.seed = seed;
    return family_kernel(cfg, workers);
}

struct OnePointReport {
    KernelReport kernel;
    int predicted_dimension = 0;
    /// Principal angle to span{|α| ≥ |β|}; only for the center 0, where that span is known.
    std::optional<double> angle_to_prediction;
};

/// A single family does not suffice: for the center 0 the kernel is spanned by
/// the reduced monomials with |α| ≥ |β|, since on the disc τ ↦ τb the monomial
/// restricts to b^α conj(b)^β τ^{|α|−|β|}.
inline OnePointReport one_point_control(const Complex2& center, int degree, int discs, std::uint64_t seed,
                                        double svd_tol = 1e-8, unsigned workers = worker_count()) {
    ExperimentConfig cfg;
    cfg.points = {center};
    cfg.degree = degree;
    cfg.discs_per_point = discs;
    cfg.svd_tol = svd_tol;
    cfg.seed = seed;
    OnePointReport out;
    out.kernel = family_kernel(cfg, workers);
    out.predicted_dimension = through_origin_dimension(degree);
    if (center.norm() == 0.0 && out.kernel.kernel_dimension == out.predicted_dimension) {
        const auto& cols = out.kernel.columns;
        const Eigen::MatrixXcd upper = sphere_metric_factor(cols);
        const Eigen::MatrixXcd predicted = orthonormal_in_sphere_metric(
            column_selector(cols, [](const MultiIndexPair& m) { return m.holomorphic_degree() >= m.antiholomorphic_degree(); }),
            upper);
        out.angle_to_prediction = containment_angle(orthonormal_in_sphere_metric(out.kernel.kernel_basis, upper), predicted);
    }
    return out;
}

/// Two families; reported for context only.
inline KernelReport two_point_probe(const Complex2& p1, const Complex2& p2, int degree, int discs, std::uint64_t seed,
                                    double svd_tol = 1e-8, unsigned workers = worker_count()) {
    if ((p1 - p2).norm() < 1e-14) throw Error(ErrorKind::CoincidentPoints, "points must be distinct");
    ExperimentConfig cfg;
    cfg.points = {p1, p2};
    cfg.degree = degree;
    cfg.discs_per_point = discs;
    cfg.svd_tol = svd_tol;
    cfg.seed = seed;
    return family_kernel(cfg, workers);
}

// ---------------------------------------------------------------------------
// Gluing

struct DiscEvaluation {
    StraightDisc disc;
    cplx tau;
};

/// Largest pairwise difference of the disc-wise extension values.
inline double extension_discrepancy(const HermitianPolynomial& f, const std::vector<DiscEvaluation>& evaluations,
                                    double tol = moments::kExactTolerance) {
    std::vector<cplx> values;
    for (const auto& e : evaluations) values.push_back(moments::extension_value(f, e.disc, e.tau, tol));
    double worst = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j) worst = std::max(worst, std::abs(values[i] - values[j]));
    return worst;
}

struct ConsistencyResult {
    std::vector<cplx> values;
    double discrepancy = 0.0;
};

/// Checks the moment hypothesis on `discs_per_point` sampled discs through
/// each P_j, then compares the extension values at z along the discs through
/// z and P_j. Agreement means the glued function depends on z alone.
inline ConsistencyResult extension_consistency(const HermitianPolynomial& f, const std::array<Complex2, 3>& points, const Complex2& z,
                                               int discs_per_point, double tol = moments::kExactTolerance, std::uint64_t seed = 0) {
    if (!(z.norm() < 1.0)) throw Error(ErrorKind::OutsideBall, "evaluation point must be interior");
    for (std::size_t j = 0; j < points.size(); ++j)
        for (const auto& disc : sample_disc_family(points[j], discs_per_point, splitmix64(seed + j)))
            if (!moments::extendibility_test(f, disc, tol).verdict)
                throw Error(ErrorKind::NotExtendible, "moment condition fails on a disc through P" + std::to_string(j + 1));
    ConsistencyResult out;
    for (std::size_t j = 0; j < points.size(); ++j) {
        const Complex2& partner = (points[j] - z).norm() > 1e-12 ? points[j] : points[(j + 1) % points.size()];
        const auto through = disc_through_two_points(z, partner);
        out.values.push_back(moments::extension_value(f, through.disc, through.tau_p, tol));
    }
    for (std::size_t i = 0; i < out.values.size(); ++i)
        for (std::size_t j = i + 1; j < out.values.size(); ++j)
            out.discrepancy = std::max(out.discrepancy, std::abs(out.values[i] - out.values[j]));
    return out;
}

} // namespace disctrace::verification
