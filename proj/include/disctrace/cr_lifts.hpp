#pragma once

// Conormal computations on the lifted families M_P = ∪ lifts of the discs
// through P, in the chart PT*C² ≅ C³, (z₁, z₂, [ζ]) ↦ (z₁, z₂, ζ₂/ζ₁).

#include "disctrace/discs.hpp"
#include "disctrace/error.hpp"
#include "disctrace/geometry.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

namespace disctrace::cr {

/// Holomorphic covector on C³.
struct Covector3 {
    std::array<cplx, 3> w{};
    cplx operator[](int i) const { return w[static_cast<std::size_t>(i)]; }
    bool is_finite() const {
        for (const auto& c : w)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
        return true;
    }
};

/// Tangent vector on C³.
struct Vector3 {
    std::array<cplx, 3> v{};
    cplx operator[](int i) const { return v[static_cast<std::size_t>(i)]; }

    friend Vector3 operator+(const Vector3& x, const Vector3& y) {
        return {{x.v[0] + y.v[0], x.v[1] + y.v[1], x.v[2] + y.v[2]}};
    }
    friend Vector3 operator*(double s, const Vector3& x) { return {{s * x.v[0], s * x.v[1], s * x.v[2]}}; }

    /// Real coordinates (Re v₁, Re v₂, Re v₃, Im v₁, Im v₂, Im v₃).
    Eigen::Matrix<double, 6, 1> to_real() const {
        Eigen::Matrix<double, 6, 1> r;
        for (int i = 0; i < 3; ++i) {
            r(i) = v[static_cast<std::size_t>(i)].real();
            r(i + 3) = v[static_cast<std::size_t>(i)].imag();
        }
        return r;
    }
    static Vector3 from_real(const Eigen::Matrix<double, 6, 1>& r) {
        return {{cplx(r(0), r(3)), cplx(r(1), r(4)), cplx(r(2), r(5))}};
    }
};

/// Bilinear pairing Σ wᵢvᵢ (no conjugation).
inline cplx contract(const Covector3& w, const Vector3& v) { return w.w[0] * v.v[0] + w.w[1] * v.v[1] + w.w[2] * v.v[2]; }

/// r(z) = z₃ − conj(z₂)/conj(z₁); M₀ (lifts of discs through 0) is {r = 0}.
inline cplx m0_defining_value(cplx z1, cplx z2, cplx z3) {
    if (z1 == cplx{}) throw Error(ErrorKind::PoleAtAxis, "z1 = 0");
    return z3 - std::conj(z2) / std::conj(z1);
}

/// ω₁ = (z₂/z₁², −1/z₁, 1),  ω₂ = (1/i)(−z₂/z₁², 1/z₁, 1).
inline std::pair<Covector3, Covector3> omega_basis(cplx z1, cplx z2) {
    if (z1 == cplx{}) throw Error(ErrorKind::PoleAtAxis, "z1 = 0");
    const cplx q = z2 / (z1 * z1);
    const cplx inv = 1.0 / z1;
    return {Covector3{{q, -inv, 1.0}}, Covector3{{-q / kI, inv / kI, 1.0 / kI}}};
}

/// ω̃₁ = (0, −1/(z₁−ζ₀), 1/(1 − z₁·conj ζ₀)),
/// ω̃₂ = (0, 1/(i(z₁−ζ₀)), 1/(i(1 − z₁·conj ζ₀))).
/// Conormal to the family through (ζ₀, 0) along the z₁-axis lift.
inline std::pair<Covector3, Covector3> omega_tilde_basis(cplx z1, cplx center) {
    if (std::abs(z1 - center) == 0.0) throw Error(ErrorKind::SingularAtCenter, "z1 = zeta0");
    const cplx reflected = 1.0 - z1 * std::conj(center);
    if (std::abs(reflected) == 0.0) throw Error(ErrorKind::SingularAtReflectedPole, "z1 * conj(zeta0) = 1");
    const cplx p = 1.0 / (z1 - center);
    const cplx s = 1.0 / reflected;
    return {Covector3{{0.0, -p, s}}, Covector3{{0.0, p / kI, s / kI}}};
}

/// v_ζ = −(ζ, −z₂, conj(z₂)/conj(ζ)) / (1 + |z₂|²): minus the τ-derivative at
/// τ = 1 of the lift of the disc through (0, z₂) and (ζ, 0), parametrized so
/// that τ = 1 lands on (ζ, 0).
inline Vector3 pointing_direction(cplx z2, cplx zeta) {
    if (std::abs(std::abs(zeta) - 1.0) > 1e-12) throw Error(ErrorKind::BoundaryParameterOffCircle, "|zeta| != 1");
    if (z2 == cplx{}) throw Error(ErrorKind::InvalidArgument, "z2 = 0");
    const double s = -1.0 / (1.0 + std::norm(z2));
    return {{s * zeta, -s * z2, s * std::conj(z2) / std::conj(zeta)}};
}

/// Real 2×6 matrix of the forms Re⟨ω̃ᵢ, ·⟩ on R⁶ = C³.
inline Eigen::Matrix<double, 2, 6> real_forms(const Covector3& w1, const Covector3& w2) {
    Eigen::Matrix<double, 2, 6> m;
    const std::array<const Covector3*, 2> ws{&w1, &w2};
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 3; ++k) {
            const cplx c = (*ws[static_cast<std::size_t>(i)])[k];
            m(i, k) = c.real();       // d/d(Re v_k) of Re(c v_k)
            m(i, k + 3) = -c.imag();  // d/d(Im v_k)
        }
    return m;
}

/// Two real coordinate directions of C³ spanning a complement of ker Re⟨ω̃ᵢ, ·⟩,
/// chosen by column-pivoted QR on the 2×6 form matrix.
inline std::array<Vector3, 2> coordinate_complement(const Covector3& w1, const Covector3& w2) {
    const Eigen::Matrix<double, 2, 6> m = real_forms(w1, w2);
    Eigen::ColPivHouseholderQR<Eigen::Matrix<double, 2, 6>> qr(m);
    std::array<Vector3, 2> out;
    for (int j = 0; j < 2; ++j) {
        Eigen::Matrix<double, 6, 1> e = Eigen::Matrix<double, 6, 1>::Zero();
        e(qr.colsPermutation().indices()(j)) = 1.0;
        out[static_cast<std::size_t>(j)] = Vector3::from_real(e);
    }
    return out;
}

/// Transports a normal direction v given at boundary parameter ζ to the target
/// ζ_Q by keeping its coordinates Re⟨ω̃ᵢ, ·⟩ fixed; the result is the
/// representative in span_R(complement).
inline Vector3 transported_direction(const Vector3& v, cplx zeta, cplx target, cplx center,
                                     const std::array<Vector3, 2>& complement) {
    if (std::abs(target - center) == 0.0) throw Error(ErrorKind::SingularAtCenter, "target = zeta0");
    const auto [s1, s2] = omega_tilde_basis(zeta, center);
    const auto [t1, t2] = omega_tilde_basis(target, center);
    Eigen::Matrix2d m;
    Eigen::Vector2d rhs;
    rhs << contract(s1, v).real(), contract(s2, v).real();
    for (int j = 0; j < 2; ++j) {
        m(0, j) = contract(t1, complement[static_cast<std::size_t>(j)]).real();
        m(1, j) = contract(t2, complement[static_cast<std::size_t>(j)]).real();
    }
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(m);
    const auto sv = svd.singularValues();
    if (!(sv(1) > 0.0) || sv(0) / sv(1) > 1e12) throw Error(ErrorKind::DegenerateComplement, "complement is degenerate");
    const Eigen::Vector2d x = m.partialPivLu().solve(rhs);
    return x(0) * complement[0] + x(1) * complement[1];
}

/// Winding number about 0 of the transported-direction curve ζ ↦ [w_ζ] at ζ_Q,
/// read in the coordinates of the pivoted coordinate complement, as ζ runs once
/// around the unit circle. The scene is the normalized one: the reference disc
/// is the z₁-axis, the first family is centered at (ζ₀, 0), the second at (0, z₂).
inline int direction_sweep_winding(cplx z2, cplx center, cplx target, int samples) {
    if (samples < 16) throw Error(ErrorKind::InvalidArgument, "need at least 16 samples");
    if (!(std::abs(center) < 1.0)) throw Error(ErrorKind::InvalidArgument, "zeta0 must be interior");
    const auto [t1, t2] = omega_tilde_basis(target, center);
    const auto complement = coordinate_complement(t1, t2);
    auto coords = [&](int k) {
        const cplx zeta = std::polar(1.0, 2.0 * std::numbers::pi * k / samples);
        const Vector3 w = transported_direction(pointing_direction(z2, zeta), zeta, target, center, complement);
        Eigen::Matrix<double, 6, 1> r = w.to_real();
        Eigen::Vector2d xy;
        // Coordinates in the complement basis: the pivot entries.
        for (int j = 0; j < 2; ++j) xy(j) = complement[static_cast<std::size_t>(j)].to_real().dot(r);
        if (xy.norm() < 1e-12) throw Error(ErrorKind::CurveThroughOrigin, "direction curve meets the origin");
        return xy;
    };
    double total = 0.0;
    Eigen::Vector2d prev = coords(0);
    for (int k = 1; k <= samples; ++k) {
        const Eigen::Vector2d cur = coords(k % samples);
        total += std::atan2(prev.x() * cur.y() - prev.y() * cur.x(), prev.dot(cur));
        prev = cur;
    }
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

/// Which affine chart of CP¹ the C³ coordinates use.
enum class FiberChart { First, Second };

/// C³ coordinates (z₁, z₂, ζ₂/ζ₁) or (z₁, z₂, ζ₁/ζ₂).
inline Vector3 chart_coordinates(const Complex2& z, const Complex2& zeta, FiberChart chart) {
    const cplx f = chart == FiberChart::First ? zeta.z2 / zeta.z1 : zeta.z1 / zeta.z2;
    return {{z.z1, z.z2, f}};
}

/// Step of the central finite differences used for chart Jacobians.
inline constexpr double kChartStep = 1e-5;

/// Exclusion radius around the parameter of the family center.
inline constexpr double kSingularFiberRadius = 1e-6;

/// Lifts of the discs through a fixed interior point P. A chart near a
/// direction u₀ is (s, τ) ↦ lift of the disc through P with direction
/// u₀ + s·u₀⊥, evaluated at τ. The direction is used as given (no canonical
/// phase), which keeps the chart smooth.
class FamilyChart {
public:
    explicit FamilyChart(const Complex2& center) : center_(center) {
        if (!(center.norm() < 1.0)) throw Error(ErrorKind::OutsideBall, "family center must be interior");
    }

    const Complex2& center() const { return center_; }

    /// (base point, homogeneous covector) for direction u at parameter τ; τ may
    /// leave the closed disc slightly so that boundary Jacobians are central.
    std::pair<Complex2, Complex2> evaluate(const Complex2& direction, cplx tau) const {
        const double n = direction.norm();
        if (!(n > 0.0)) throw Error(ErrorKind::ChartEvaluationFailure, "zero direction");
        const Complex2 u = direction / n;
        const Complex2 a = center_ - hermitian_inner(center_, u) * u;
        const double aa = a.squared_norm();
        if (!(aa < 1.0)) throw Error(ErrorKind::ChartEvaluationFailure, "line misses the ball");
        const Complex2 b = std::sqrt(1.0 - aa) * u;
        const cplx tau_center = hermitian_inner(center_ - a, b) / b.squared_norm();
        if (std::abs(tau - tau_center) < kSingularFiberRadius)
            throw Error(ErrorKind::ChartEvaluationFailure, "evaluation on the singular fiber over the center");
        return {a + tau * b, tau * a.conj() + b.conj()};
    }

    /// Parameter of `z` on the disc through the center with direction u.
    cplx parameter_of(const Complex2& direction, const Complex2& z) const {
        const Complex2 u = direction / direction.norm();
        const Complex2 a = center_ - hermitian_inner(center_, u) * u;
        const Complex2 b = std::sqrt(1.0 - a.squared_norm()) * u;
        return hermitian_inner(z - a, b) / b.squared_norm();
    }

    /// Real 6×4 Jacobian of (Re s, Im s, Re τ, Im τ) ↦ C³ coordinates at s = 0.
    Eigen::Matrix<double, 6, 4> real_jacobian(const Complex2& direction, cplx tau, FiberChart chart) const {
        const Complex2 u0 = direction / direction.norm();
        const Complex2 perp{-std::conj(u0.z2), std::conj(u0.z1)};
        auto at = [&](cplx s, cplx t) {
            const auto [z, zeta] = evaluate(u0 + s * perp, t);
            return chart_coordinates(z, zeta, chart).to_real();
        };
        const std::array<std::pair<cplx, cplx>, 4> steps{{
            {kChartStep, 0.0}, {cplx(0.0, kChartStep), 0.0}, {0.0, kChartStep}, {0.0, cplx(0.0, kChartStep)}}};
        Eigen::Matrix<double, 6, 4> j;
        for (int k = 0; k < 4; ++k) {
            const auto [ds, dt] = steps[static_cast<std::size_t>(k)];
            j.col(k) = (at(ds, tau + dt) - at(-ds, tau - dt)) / (2.0 * kChartStep);
        }
        return j;
    }

private:
    Complex2 center_;
};

/// Numerical real rank of the stacked Jacobians [J₁ | J₂] of the families
/// through P₁ and P₂ at the common boundary lift point (z, [conj z]), |z| = 1.
/// Both families have the 3-dimensional edge {(w, [conj w]) : |w| = 1} as
/// boundary, so the rank of two transversal families is 4 + 4 − 3 = 5; equal
/// families give 4.
inline int transversality_rank(const Complex2& p1, const Complex2& p2, const Complex2& boundary_point) {
    if (std::abs(boundary_point.norm() - 1.0) > 1e-10)
        throw Error(ErrorKind::ChartEvaluationFailure, "evaluation point is not on the sphere");
    const Complex2 zeta = boundary_point.conj();
    const FiberChart chart = std::abs(zeta.z1) >= std::abs(zeta.z2) ? FiberChart::First : FiberChart::Second;
    Eigen::Matrix<double, 6, 8> stacked;
    const std::array<Complex2, 2> centers{p1, p2};
    for (int j = 0; j < 2; ++j) {
        const FamilyChart family(centers[static_cast<std::size_t>(j)]);
        const Complex2 dir = boundary_point - family.center();
        if (!(dir.norm() > 1e-12)) throw Error(ErrorKind::ChartEvaluationFailure, "center on the sphere");
        stacked.block<6, 4>(0, 4 * j) = family.real_jacobian(dir, family.parameter_of(dir, boundary_point), chart);
    }
    Eigen::JacobiSVD<Eigen::Matrix<double, 6, 8>> svd(stacked);
    const auto sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-8 * sv(0)) ++rank;
    return rank;
}

} // namespace disctrace::cr
