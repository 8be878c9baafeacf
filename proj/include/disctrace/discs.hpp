#pragma once

// Straight discs of the ball (sections of B² by complex lines) and their lifts
// to the projectivized cotangent space PT*C² ≅ C² × CP¹.

#include "disctrace/error.hpp"
#include "disctrace/geometry.hpp"

#include <cmath>
#include <optional>
#include <tuple>

namespace disctrace {

/// Interior/boundary classification slack for disc parameters.
inline constexpr double kTauSlack = 1e-10;

/// τ ↦ a + τ b for |τ| ≤ 1, with ⟨a,b⟩ = 0, |a|² + |b|² = 1, b ≠ 0 and b in
/// canonical phase. The unit circle is mapped into the sphere.
class StraightDisc {
public:
    /// Validates the invariants and puts b into canonical phase.
    static StraightDisc from_components(const Complex2& a, const Complex2& b) {
        if (!a.is_finite() || !b.is_finite()) throw Error(ErrorKind::InvalidArgument, "non-finite disc data");
        if (!(b.norm() > 0.0)) throw Error(ErrorKind::ZeroDirection, "disc direction vanishes");
        if (std::abs(hermitian_inner(a, b)) > 1e-12) throw Error(ErrorKind::InvalidArgument, "foot point not orthogonal to direction");
        if (std::abs(a.squared_norm() + b.squared_norm() - 1.0) > 1e-12)
            throw Error(ErrorKind::InvalidArgument, "|a|^2 + |b|^2 must equal 1");
        return StraightDisc(a, canonical_phase(b));
    }

    const Complex2& a() const { return a_; }
    const Complex2& b() const { return b_; }

    Complex2 operator()(cplx tau) const { return a_ + tau * b_; }

    /// Parameter of the orthogonal projection of z onto the disc's line.
    cplx parameter_of(const Complex2& z) const { return hermitian_inner(z - a_, b_) / b_.squared_norm(); }

    /// Euclidean distance from z to the complex line carrying the disc.
    double distance_to_line(const Complex2& z) const { return (z - (*this)(parameter_of(z))).norm(); }

private:
    StraightDisc(const Complex2& a, const Complex2& b) : a_(a), b_(b) {}
    Complex2 a_;
    Complex2 b_;
};

/// A point (z, [ζ]) of PT*C².
struct LiftPoint {
    Complex2 z;
    CP1Point zeta;

    /// Affine fiber coordinate z₃ = ζ₂/ζ₁ when ζ₁ ≠ 0.
    std::optional<cplx> z3() const { return zeta.affine(); }
};

/// The disc cut out by the line {p + t v}.
inline StraightDisc disc_from_line(const Complex2& p, const Complex2& v) {
    if (!p.is_finite() || !v.is_finite()) throw Error(ErrorKind::InvalidArgument, "non-finite line data");
    const double vv = v.squared_norm();
    if (vv == 0.0) throw Error(ErrorKind::ZeroDirection, "line direction vanishes");
    const Complex2 u = canonical_phase(v / std::sqrt(vv));
    const Complex2 a = p - hermitian_inner(p, u) * u;
    const double aa = a.squared_norm();
    if (!(std::sqrt(aa) < 1.0 - 1e-12)) throw Error(ErrorKind::LineMissesBall, "line does not meet the open ball");
    return StraightDisc::from_components(a, std::sqrt(1.0 - aa) * u);
}

struct DiscThroughTwo {
    StraightDisc disc;
    cplx tau_p;
    cplx tau_q;
};

/// The disc through p and q. The foot point is computed from the midpoint and
/// the phase-fixed direction, so swapping p and q yields bitwise-identical (a, b).
inline DiscThroughTwo disc_through_two_points(const Complex2& p, const Complex2& q) {
    if ((p - q).norm() < 1e-14) throw Error(ErrorKind::CoincidentPoints, "points coincide");
    const Complex2 mid = 0.5 * (p + q);
    const StraightDisc disc = disc_from_line(mid, q - p);
    return {disc, disc.parameter_of(p), disc.parameter_of(q)};
}

inline Complex2 boundary_point(const StraightDisc& disc, double theta) {
    return disc(std::polar(1.0, theta));
}

/// The lift τ ↦ (a + τb, [τ·conj(a) + conj(b)]). On |τ| = 1 the fiber point is
/// τ·conj(A(τ)), i.e. the conormal [conj(z)] of the sphere. The covector never
/// vanishes because |τ·conj(a) + conj(b)|² = |τ|²|a|² + |b|² > 0.
inline LiftPoint lift(const StraightDisc& disc, cplx tau) {
    if (std::abs(tau) > 1.0 + kTauSlack) throw Error(ErrorKind::InvalidArgument, "lift parameter outside the closed disc");
    return {disc(tau), CP1Point::from_vector(tau * disc.a().conj() + disc.b().conj())};
}

struct DiscAndParameter {
    StraightDisc disc;
    cplx tau;
};

/// Recovers the unique straight disc whose lift passes through (z, [ζ]).
///
/// For a unit direction u through z the lift covector at z is proportional to
/// conj(M u) with M = (1 − |z|²) I + z z*. M is Hermitian with eigenvalues
/// 1 − |z|² and 1, so u ∝ M⁻¹ conj(ζ) ∝ η − ⟨η, z⟩ z with η = conj(ζ).
inline DiscAndParameter disc_from_lift_point(const Complex2& z, const CP1Point& zeta) {
    if (!z.is_finite()) throw Error(ErrorKind::InvalidArgument, "non-finite base point");
    if (!(z.norm() < 1.0)) throw Error(ErrorKind::OutsideBall, "base point must be interior");
    const Complex2 eta = zeta.representative().conj();
    const Complex2 u = eta - hermitian_inner(eta, z) * z;
    const StraightDisc disc = disc_from_line(z, u);
    const cplx tau = disc.parameter_of(z);
    const double residual = cp1_distance(lift(disc, tau).zeta, zeta);
    if (!(residual < 1e-10)) throw Error(ErrorKind::NoSolution, "lift residual " + std::to_string(residual));
    return {disc, tau};
}

/// Distance on PT*C² used to compare lift curves: Euclidean in the base,
/// chordal in the fiber.
inline double lift_distance(const LiftPoint& p, const LiftPoint& q) {
    return std::hypot((p.z - q.z).norm(), cp1_distance(p.zeta, q.zeta));
}

} // namespace disctrace
