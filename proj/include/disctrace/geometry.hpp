#pragma once

// Hermitian geometry of C², the projective line CP¹ and automorphisms of the
// unit ball B² ⊂ C².
//
// Inner product convention, used everywhere in the library:
//     ⟨u, v⟩ = u₁·conj(v₁) + u₂·conj(v₂)
// (linear in the first slot, conjugate-linear in the second).

#include "disctrace/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>

namespace disctrace {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

/// A point or vector of C².
struct Complex2 {
    cplx z1{};
    cplx z2{};

    friend constexpr Complex2 operator+(const Complex2& u, const Complex2& v) { return {u.z1 + v.z1, u.z2 + v.z2}; }
    friend constexpr Complex2 operator-(const Complex2& u, const Complex2& v) { return {u.z1 - v.z1, u.z2 - v.z2}; }
    friend constexpr Complex2 operator-(const Complex2& u) { return {-u.z1, -u.z2}; }
    friend constexpr Complex2 operator*(cplx s, const Complex2& u) { return {s * u.z1, s * u.z2}; }
    friend constexpr Complex2 operator*(const Complex2& u, cplx s) { return {s * u.z1, s * u.z2}; }
    friend constexpr Complex2 operator/(const Complex2& u, cplx s) { return {u.z1 / s, u.z2 / s}; }
    friend bool operator==(const Complex2&, const Complex2&) = default;

    double squared_norm() const { return std::norm(z1) + std::norm(z2); }
    double norm() const { return std::hypot(std::abs(z1), std::abs(z2)); }
    Complex2 conj() const { return {std::conj(z1), std::conj(z2)}; }
    bool is_finite() const {
        return std::isfinite(z1.real()) && std::isfinite(z1.imag()) && std::isfinite(z2.real()) &&
               std::isfinite(z2.imag());
    }

    Eigen::Vector2cd to_eigen() const { return {z1, z2}; }
    static Complex2 from_eigen(const Eigen::Vector2cd& v) { return {v(0), v(1)}; }
};

inline cplx hermitian_inner(const Complex2& u, const Complex2& v) {
    return u.z1 * std::conj(v.z1) + u.z2 * std::conj(v.z2);
}

/// |u₁v₂ − u₂v₁|, the modulus of the complex wedge.
inline double wedge_modulus(const Complex2& u, const Complex2& v) { return std::abs(u.z1 * v.z2 - u.z2 * v.z1); }

/// Components below this modulus count as zero when fixing phases.
inline constexpr double kPhaseThreshold = 1e-14;

/// Multiplies `v` by the unit scalar that makes its first component with
/// modulus above kPhaseThreshold real positive.
inline Complex2 canonical_phase(const Complex2& v) {
    const cplx lead = std::abs(v.z1) > kPhaseThreshold ? v.z1 : v.z2;
    const double m = std::abs(lead);
    if (m <= kPhaseThreshold) return v;
    const cplx rot = std::conj(lead) / m;
    Complex2 out{v.z1 * rot, v.z2 * rot};
    if (std::abs(v.z1) > kPhaseThreshold) out.z1 = std::abs(v.z1);
    else out.z2 = std::abs(v.z2);
    return out;
}

/// A point [ζ₁ : ζ₂] of CP¹, stored as its canonical unit representative.
class CP1Point {
public:
    CP1Point() : rep_{1.0, 0.0} {}

    static CP1Point from_homogeneous(cplx zeta1, cplx zeta2) { return from_vector({zeta1, zeta2}); }

    static CP1Point from_vector(const Complex2& v) {
        if (!v.is_finite()) throw Error(ErrorKind::InvalidArgument, "non-finite homogeneous coordinates");
        const double n = v.norm();
        if (n == 0.0) throw Error(ErrorKind::ZeroDirection, "[0:0] is not a point of CP1");
        return CP1Point(canonical_phase(v / n));
    }

    cplx zeta1() const { return rep_.z1; }
    cplx zeta2() const { return rep_.z2; }
    const Complex2& representative() const { return rep_; }

    /// Affine coordinate ζ₂/ζ₁; absent at [0:1].
    std::optional<cplx> affine() const {
        if (std::abs(rep_.z1) <= kPhaseThreshold) return std::nullopt;
        return rep_.z2 / rep_.z1;
    }

private:
    explicit CP1Point(const Complex2& unit) : rep_(unit) {}
    Complex2 rep_;
};

/// Chordal (Fubini–Study sine) distance sqrt(1 − |⟨p,q⟩|²), evaluated through
/// the equivalent wedge |p₁q₂ − p₂q₁| so that tiny distances keep their digits.
inline double cp1_distance(const CP1Point& p, const CP1Point& q) {
    return std::min(1.0, wedge_modulus(p.representative(), q.representative()));
}

/// Tolerance for |z| ≤ 1 checks on inputs to automorphisms.
inline constexpr double kClosedBallSlack = 1e-12;

/// The ball automorphism z ↦ U·φ_a(z), where φ_a is the involution exchanging
/// a and 0:
///     φ_a(z) = (a − P_a z − s_a Q_a z) / (1 − ⟨z, a⟩),   s_a = sqrt(1 − |a|²),
/// with P_a the orthogonal projection onto C·a and Q_a = I − P_a.
class BallAutomorphism {
public:
    BallAutomorphism() : BallAutomorphism(identity()) {}

    static BallAutomorphism make(const Complex2& center, const Eigen::Matrix2cd& unitary) {
        if (!(center.squared_norm() < 1.0)) throw Error(ErrorKind::OutsideBall, "automorphism center must satisfy |a| < 1");
        const double defect = (unitary.adjoint() * unitary - Eigen::Matrix2cd::Identity()).norm();
        if (!(defect < 1e-10)) throw Error(ErrorKind::InvalidArgument, "unitary factor is not unitary");
        return BallAutomorphism(center, unitary);
    }

    static BallAutomorphism identity() {
        // φ_0 = −id, so the unitary factor −I makes the composite the identity.
        return BallAutomorphism({}, -Eigen::Matrix2cd::Identity());
    }

    /// The involution φ_a alone.
    static BallAutomorphism involution(const Complex2& a) { return make(a, Eigen::Matrix2cd::Identity()); }

    /// The linear map z ↦ V z for unitary V.
    static BallAutomorphism unitary_map(const Eigen::Matrix2cd& v) { return make({}, -v); }

    const Complex2& center() const { return center_; }
    const Eigen::Matrix2cd& unitary() const { return unitary_; }

    /// Evaluates the map with no range check; callers guarantee 1 − ⟨z,a⟩ ≠ 0.
    Complex2 evaluate(const Complex2& z) const {
        return Complex2::from_eigen(unitary_ * involution_at(center_, z).to_eigen());
    }

    BallAutomorphism inverse() const {
        // (U φ_a)⁻¹ = φ_a U* = U* φ_{Ua}.
        const Complex2 moved = Complex2::from_eigen(unitary_ * center_.to_eigen());
        return BallAutomorphism(moved, unitary_.adjoint());
    }

    /// The composite outer ∘ inner, re-expressed in (center, unitary) form.
    friend BallAutomorphism compose(const BallAutomorphism& outer, const BallAutomorphism& inner) {
        const Complex2 c = inner.inverse().evaluate(outer.inverse().evaluate({}));
        Eigen::Matrix2cd u;
        const Complex2 e1{1.0, 0.0};
        const Complex2 e2{0.0, 1.0};
        u.col(0) = outer.evaluate(inner.evaluate(involution_at(c, e1))).to_eigen();
        u.col(1) = outer.evaluate(inner.evaluate(involution_at(c, e2))).to_eigen();
        // Polar factor removes rounding drift from unitarity.
        Eigen::JacobiSVD<Eigen::Matrix2cd> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
        return BallAutomorphism(c, svd.matrixU() * svd.matrixV().adjoint());
    }

    static Complex2 involution_at(const Complex2& a, const Complex2& z) {
        const double aa = a.squared_norm();
        if (aa == 0.0) return -z;
        const cplx za = hermitian_inner(z, a);
        const Complex2 pz = (za / aa) * a;
        const Complex2 qz = z - pz;
        const double s = std::sqrt(1.0 - aa);
        return (a - pz - s * qz) / (1.0 - za);
    }

private:
    BallAutomorphism(const Complex2& c, const Eigen::Matrix2cd& u) : center_(c), unitary_(u) {}

    Complex2 center_;
    Eigen::Matrix2cd unitary_;
};

inline Complex2 apply_automorphism(const BallAutomorphism& phi, const Complex2& z) {
    if (!z.is_finite()) throw Error(ErrorKind::InvalidArgument, "non-finite point");
    if (z.norm() > 1.0 + kClosedBallSlack) throw Error(ErrorKind::OutsideBall, "point outside the closed ball");
    return phi.evaluate(z);
}

namespace detail {

/// Unitary V with V·(p/|p|) = q/|q| (both nonzero).
inline Eigen::Matrix2cd unitary_taking(const Complex2& p, const Complex2& q) {
    auto frame = [](const Complex2& v) {
        const Complex2 u = v / v.norm();
        Eigen::Matrix2cd f;
        f << u.z1, -std::conj(u.z2), u.z2, std::conj(u.z1);
        return f;
    };
    return frame(q) * frame(p).adjoint();
}

} // namespace detail

/// Moves a pair of distinct interior points into the normalized scene
/// P₁ ↦ (t, 0), P₂ ↦ (0, t) with real t > 0. Two points of the ball are
/// determined up to automorphism by their pseudo-hyperbolic distance ρ, and
/// the pair (t,0), (0,t) sits at distance ρ exactly when t² = 1 − sqrt(1 − ρ²).
inline BallAutomorphism normalize_configuration(const Complex2& p1, const Complex2& p2) {
    if (!(p1.norm() < 1.0) || !(p2.norm() < 1.0)) throw Error(ErrorKind::OutsideBall, "points must be interior");
    const Complex2 q = BallAutomorphism::involution_at(p2, p1);
    const double rho2 = q.squared_norm();
    if (!(q.norm() > 1e-14)) throw Error(ErrorKind::CoincidentPoints, "P1 and P2 coincide");
    const double t = std::sqrt(rho2 / (1.0 + std::sqrt(1.0 - rho2)));
    const Complex2 target1{t, 0.0};
    const Complex2 target2{0.0, t};
    const Complex2 q_target = BallAutomorphism::involution_at(target2, target1);
    const auto rotate = BallAutomorphism::unitary_map(detail::unitary_taking(q, q_target));
    return compose(BallAutomorphism::involution(target2), compose(rotate, BallAutomorphism::involution(p2)));
}

/// Automorphism sending P₁ to 0 and P₂ to (r, 0) with r > 0, hence the complex
/// line through P₁, P₂ onto the z₁-axis.
inline BallAutomorphism align_to_axis(const Complex2& p1, const Complex2& p2) {
    if (!(p1.norm() < 1.0) || !(p2.norm() < 1.0)) throw Error(ErrorKind::OutsideBall, "points must be interior");
    const Complex2 q = BallAutomorphism::involution_at(p1, p2);
    if (!(q.norm() > 1e-14)) throw Error(ErrorKind::CoincidentPoints, "P1 and P2 coincide");
    const auto rotate = BallAutomorphism::unitary_map(detail::unitary_taking(q, {1.0, 0.0}));
    return compose(rotate, BallAutomorphism::involution(p1));
}

} // namespace disctrace
