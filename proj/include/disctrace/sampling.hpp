#pragma once

// Seeded random geometry used by the lemma suite and the test suites.

#include "disctrace/discs.hpp"
#include "disctrace/geometry.hpp"
#include "disctrace/verification.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace disctrace::sampling {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(verification::splitmix64(seed)) {}

    double uniform() { return verification::uniform01(rng_); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal by Box–Muller.
    double normal() {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    cplx on_circle() { return std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi)); }

    /// Uniform in the disc |w| < r.
    cplx in_disc(double r) { return std::polar(r * std::sqrt(uniform()), uniform(0.0, 2.0 * std::numbers::pi)); }

    /// Uniform in the annulus lo ≤ |w| ≤ hi (angle uniform, radius uniform).
    cplx in_annulus(double lo, double hi) { return std::polar(uniform(lo, hi), uniform(0.0, 2.0 * std::numbers::pi)); }

    Complex2 unit_vector() {
        Complex2 v{cplx(normal(), normal()), cplx(normal(), normal())};
        return v / v.norm();
    }

    /// Uniform in the ball of radius r.
    Complex2 in_ball(double r) { return (r * std::pow(uniform(), 0.25)) * unit_vector(); }

    StraightDisc disc(double max_foot = 0.95) { return disc_from_line(in_ball(max_foot), unit_vector()); }

    StraightDisc disc_through(const Complex2& p) { return disc_from_line(p, unit_vector()); }

    /// Random automorphism: involution at a point of the ball of radius r, then a unitary.
    BallAutomorphism automorphism(double r = 0.8) {
        Eigen::Matrix2cd m;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m(i, j) = cplx(normal(), normal());
        Eigen::HouseholderQR<Eigen::Matrix2cd> qr(m);
        const Eigen::Matrix2cd q = qr.householderQ();
        return BallAutomorphism::make(in_ball(r), q);
    }

private:
    std::mt19937_64 rng_;
};

} // namespace disctrace::sampling
