#pragma once

// Restriction of boundary data to disc boundaries and the moment test: a
// function on the unit circle extends holomorphically into the disc iff all
// of its negative Fourier coefficients vanish.

#include "disctrace/boundary_functions.hpp"
#include "disctrace/discs.hpp"
#include "disctrace/error.hpp"
#include "disctrace/fft.hpp"
#include "disctrace/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace disctrace::moments {

using boundary::HermitianPolynomial;

/// Default threshold on the largest negative coefficient for exact inputs.
inline constexpr double kExactTolerance = 1e-10;
/// Default threshold for the sampled (FFT) path.
inline constexpr double kSampledTolerance = 1e-6;

/// Σ_{k=lo}^{hi} c_k τ^k on |τ| = 1.
class LaurentPolynomial {
public:
    LaurentPolynomial() = default;
    LaurentPolynomial(int min_degree, std::vector<cplx> coeffs) : min_degree_(min_degree), coeffs_(std::move(coeffs)) {}

    static LaurentPolynomial constant(cplx c) { return {0, {c}}; }

    int min_degree() const { return min_degree_; }
    int max_degree() const { return min_degree_ + static_cast<int>(coeffs_.size()) - 1; }
    bool empty() const { return coeffs_.empty(); }

    cplx coefficient(int k) const {
        const int i = k - min_degree_;
        if (i < 0 || i >= static_cast<int>(coeffs_.size())) return {};
        return coeffs_[static_cast<std::size_t>(i)];
    }

    void add(int k, cplx c) {
        if (coeffs_.empty()) {
            min_degree_ = k;
            coeffs_.assign(1, c);
            return;
        }
        if (k < min_degree_) {
            coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(min_degree_ - k), cplx{});
            min_degree_ = k;
        }
        const auto i = static_cast<std::size_t>(k - min_degree_);
        if (i >= coeffs_.size()) coeffs_.resize(i + 1);
        coeffs_[i] += c;
    }

    friend LaurentPolynomial operator*(const LaurentPolynomial& p, const LaurentPolynomial& q) {
        if (p.empty() || q.empty()) return {};
        std::vector<cplx> out(p.coeffs_.size() + q.coeffs_.size() - 1);
        for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < q.coeffs_.size(); ++j) out[i + j] += p.coeffs_[i] * q.coeffs_[j];
        return {p.min_degree_ + q.min_degree_, std::move(out)};
    }

    LaurentPolynomial& operator+=(const LaurentPolynomial& q) {
        for (int k = q.min_degree(); k <= q.max_degree(); ++k) add(k, q.coefficient(k));
        return *this;
    }

    /// max_{k ≥ 1} |c_{−k}|.
    double max_negative_modulus() const {
        double m = 0.0;
        for (int k = min_degree_; k < 0 && k <= max_degree(); ++k) m = std::max(m, std::abs(coefficient(k)));
        return m;
    }

    cplx evaluate(cplx tau) const {
        cplx sum = 0.0;
        for (int k = max_degree(); k >= min_degree_; --k) sum = sum * tau + coefficient(k);
        return min_degree_ >= 0 ? sum * std::pow(tau, min_degree_) : sum / std::pow(tau, -min_degree_);
    }

    /// Σ_{k ≥ 0} c_k τ^k, the boundary value's holomorphic part.
    cplx evaluate_nonnegative_part(cplx tau) const {
        cplx sum = 0.0;
        for (int k = max_degree(); k >= 0; --k) sum = sum * tau + coefficient(k);
        return sum;
    }

private:
    int min_degree_ = 0;
    std::vector<cplx> coeffs_;
};

/// f(a + τb) on |τ| = 1, using conj(z) = conj(a) + conj(b)/τ there.
inline LaurentPolynomial restrict_to_disc(const HermitianPolynomial& f, const StraightDisc& disc,
                                          int cap = boundary::kDefaultDegreeCap) {
    if (f.degree() > cap) throw Error(ErrorKind::DegreeOverflow, "polynomial degree exceeds cap");
    const Complex2& a = disc.a();
    const Complex2& b = disc.b();
    const std::array<LaurentPolynomial, 4> factors{
        LaurentPolynomial(0, {a.z1, b.z1}), LaurentPolynomial(0, {a.z2, b.z2}),
        LaurentPolynomial(-1, {std::conj(b.z1), std::conj(a.z1)}), LaurentPolynomial(-1, {std::conj(b.z2), std::conj(a.z2)})};
    // Powers are shared across terms.
    std::array<std::vector<LaurentPolynomial>, 4> powers;
    for (std::size_t i = 0; i < 4; ++i) powers[i].push_back(LaurentPolynomial::constant(1.0));
    auto get = [&](std::size_t i, int e) -> const LaurentPolynomial& {
        while (static_cast<int>(powers[i].size()) <= e) powers[i].push_back(powers[i].back() * factors[i]);
        return powers[i][static_cast<std::size_t>(e)];
    };
    LaurentPolynomial out;
    for (const auto& [m, c] : f.terms()) {
        LaurentPolynomial t = get(0, m.alpha[0]) * get(1, m.alpha[1]) * get(2, m.beta[0]) * get(3, m.beta[1]);
        for (int k = t.min_degree(); k <= t.max_degree(); ++k) out.add(k, c * t.coefficient(k));
    }
    return out;
}

struct ExtendibilityReport {
    StraightDisc disc;
    double max_negative_modulus;
    bool verdict;
    double tolerance;
};

inline ExtendibilityReport extendibility_test(const HermitianPolynomial& f, const StraightDisc& disc,
                                              double tol = kExactTolerance) {
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    const double m = restrict_to_disc(f, disc).max_negative_modulus();
    return {disc, m, m <= tol, tol};
}

/// c_k = (1/N) Σ_j f(θ_j) e^{−ikθ_j}, θ_j = 2πj/N, for k ∈ [−N/2, N/2).
inline LaurentPolynomial numeric_moments(const std::function<cplx(double)>& sampler, int samples) {
    if (samples < 64 || !fft::is_power_of_two(static_cast<std::size_t>(samples)))
        throw Error(ErrorKind::InvalidArgument, "sample count must be a power of two >= 64");
    std::vector<cplx> x(static_cast<std::size_t>(samples));
    for (int j = 0; j < samples; ++j) {
        const cplx v = sampler(2.0 * std::numbers::pi * j / samples);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw Error(ErrorKind::NonFiniteSample, "sample " + std::to_string(j) + " is not finite");
        x[static_cast<std::size_t>(j)] = v;
    }
    fft::forward(x);
    const int half = samples / 2;
    std::vector<cplx> coeffs(static_cast<std::size_t>(samples));
    for (int k = -half; k < half; ++k)
        coeffs[static_cast<std::size_t>(k + half)] = x[static_cast<std::size_t>((k + samples) % samples)] / static_cast<double>(samples);
    return {-half, std::move(coeffs)};
}

/// Value at A(τ₀) of the holomorphic extension of f along the disc.
inline cplx extension_value(const HermitianPolynomial& f, const StraightDisc& disc, cplx tau0, double tol = kExactTolerance) {
    if (!(std::abs(tau0) < 1.0)) throw Error(ErrorKind::InvalidArgument, "tau0 must lie in the open disc");
    const LaurentPolynomial r = restrict_to_disc(f, disc);
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    if (r.max_negative_modulus() > tol)
        throw Error(ErrorKind::NotExtendible, "negative moment " + std::to_string(r.max_negative_modulus()));
    return r.evaluate_nonnegative_part(tau0);
}

/// Membership tolerance of a recovered disc in the family through P.
inline constexpr double kFamilyTolerance = 1e-8;

/// The glued function F(z, [ζ]) = f_A(z), A the disc whose lift passes through
/// (z, [ζ]), defined on the lifts of the family through `center`.
inline cplx lifted_value(const HermitianPolynomial& f, const Complex2& center, const LiftPoint& point,
                         double tol = kExactTolerance) {
    const auto [disc, tau0] = disc_from_lift_point(point.z, point.zeta);
    if (!(disc.distance_to_line(center) < kFamilyTolerance))
        throw Error(ErrorKind::NotInFamily, "lift point is not on a disc through the family center");
    return extension_value(f, disc, tau0, tol);
}

} // namespace disctrace::moments
