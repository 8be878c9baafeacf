#include "disctrace/boundary_functions.hpp"
#include "disctrace/sampling.hpp"
#include "support.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <gtest/gtest.h>

#include <numbers>
#include <set>

using namespace disctrace;
using namespace disctrace::boundary;

namespace {

using P = HermitianPolynomial;

P mono(int a1, int a2, int b1, int b2, cplx c = 1.0) { return P::monomial({{a1, a2}, {b1, b2}}, c); }

P random_polynomial(sampling::Sampler& s, int degree, bool holomorphic_only = false) {
    P f;
    for (int a1 = 0; a1 <= degree; ++a1)
        for (int a2 = 0; a1 + a2 <= degree; ++a2)
            for (int b1 = 0; a1 + a2 + b1 <= degree; ++b1)
                for (int b2 = 0; a1 + a2 + b1 + b2 <= degree; ++b2) {
                    if (holomorphic_only && b1 + b2 > 0) continue;
                    if (s.uniform() < 0.5) f.add_term({{a1, a2}, {b1, b2}}, cplx(s.normal(), s.normal()));
                }
    return f;
}

// ∫_{S³} g dσ in Hopf coordinates z = (cos η e^{iφ₁}, sin η e^{iφ₂}),
// dσ = sin η cos η dη dφ₁ dφ₂ / (2π²): Gauss–Legendre in η, 64×64 trapezoid
// in the angles.
cplx hopf_integral(const std::function<cplx(const Complex2&)>& g) {
    constexpr int n = 64;
    auto over_eta = [&](double eta) {
        cplx sum = 0.0;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double p1 = 2.0 * std::numbers::pi * j / n, p2 = 2.0 * std::numbers::pi * k / n;
                sum += g({std::polar(std::cos(eta), p1), std::polar(std::sin(eta), p2)});
            }
        return sum * (4.0 * std::numbers::pi * std::numbers::pi / (n * n)) * std::sin(eta) * std::cos(eta);
    };
    auto re = [&](double eta) { return over_eta(eta).real(); };
    auto im = [&](double eta) { return over_eta(eta).imag(); };
    using Q = boost::math::quadrature::gauss<double, 30>;
    const double r = Q::integrate(re, 0.0, std::numbers::pi / 2);
    const double i = Q::integrate(im, 0.0, std::numbers::pi / 2);
    return cplx(r, i) / (2.0 * std::numbers::pi * std::numbers::pi);
}

} // namespace

TEST(Evaluate, Examples) {
    EXPECT_CNEAR(evaluate(P::z1(), {1.0, 0.0}), 1.0, 0.0);
    EXPECT_CNEAR(evaluate(P::z2() * P::zbar2(), {0.6, 0.8}), 0.64, 1e-15);
    EXPECT_CNEAR(evaluate(P::z1() * P::zbar2(), {0.6, cplx(0.0, 0.8)}), cplx(0.0, -0.48), 1e-15);
    EXPECT_THROW_KIND(evaluate(P::z1(), {0.5, 0.0}), OffSphere);
}

TEST(HermitianPolynomialType, NoStoredZerosAndDegree) {
    P f = P::z1() + P::zbar2();
    EXPECT_EQ(f.degree(), 1);
    f = f - P::zbar2();
    EXPECT_EQ(f.terms().size(), 1u);
    EXPECT_TRUE(f.is_holomorphic());
    EXPECT_EQ((P::z1() * P::z1() * P::zbar2()).degree(), 3);
    EXPECT_TRUE(P().empty());
    EXPECT_CNEAR(evaluate_anywhere((P::z1() * P::zbar1()).conjugate(), {cplx(0.0, 2.0), 0.0}), 4.0, 1e-15);
}

TEST(NormalForm, Examples) {
    const P r1 = normal_form(P::z1() * P::zbar1());
    EXPECT_CNEAR(r1.coefficient({}), 1.0, 0.0);
    EXPECT_CNEAR(r1.coefficient({{0, 1}, {0, 1}}), -1.0, 0.0);
    EXPECT_EQ(r1.terms().size(), 2u);

    const P r2 = normal_form(P::z2() * P::zbar2());
    EXPECT_EQ(r2.terms().size(), 1u);
    EXPECT_CNEAR(r2.coefficient({{0, 1}, {0, 1}}), 1.0, 0.0);

    const P r3 = normal_form(mono(2, 0, 1, 0));
    EXPECT_EQ(r3.terms().size(), 2u);
    EXPECT_CNEAR(r3.coefficient({{1, 0}, {0, 0}}), 1.0, 0.0);
    EXPECT_CNEAR(r3.coefficient({{1, 1}, {0, 1}}), -1.0, 0.0);
}

TEST(NormalForm, IdempotentAndEvaluationPreserving) {
    sampling::Sampler s(51);
    for (int i = 0; i < 20; ++i) {
        const P f = random_polynomial(s, 5);
        const P g = normal_form(f);
        EXPECT_TRUE(g.is_normal_form());
        const P gg = normal_form(g);
        EXPECT_EQ(gg.terms(), g.terms());
        for (int k = 0; k < 100; ++k) {
            const Complex2 z = s.unit_vector();
            EXPECT_CNEAR(evaluate(g, z), evaluate(f, z), 1e-10);
        }
    }
}

TEST(NormalForm, DegreeOverflow) { EXPECT_THROW_KIND(normal_form(mono(7, 0, 6, 0)), DegreeOverflow); }

TEST(ReducedBasis, Examples) {
    EXPECT_EQ(reduced_basis(0).size(), 1u);
    const auto b1 = reduced_basis(1);
    EXPECT_EQ(b1.size(), 5u);
    EXPECT_EQ(reduced_basis(4).size(), 55u);
}

TEST(ReducedBasis, MatchesBruteForceEnumeration) {
    for (int d = 0; d <= 8; ++d) {
        std::set<MultiIndexPair> brute;
        for (int a1 = 0; a1 <= d; ++a1)
            for (int a2 = 0; a2 <= d; ++a2)
                for (int b1 = 0; b1 <= d; ++b1)
                    for (int b2 = 0; b2 <= d; ++b2)
                        if (a1 + a2 + b1 + b2 <= d && std::min(a1, b1) == 0) brute.insert(MultiIndexPair{{a1, a2}, {b1, b2}});
        const auto basis = reduced_basis(d);
        EXPECT_EQ(std::set<MultiIndexPair>(basis.begin(), basis.end()), brute);
        EXPECT_TRUE(std::is_sorted(basis.begin(), basis.end()));
        // Σ_{m+n≤d} (m+1)(n+1) − Σ_{m+n≤d−2} (m+1)(n+1).
        auto bidegree_sum = [](int top) {
            int t = 0;
            for (int m = 0; m <= top; ++m)
                for (int n = 0; m + n <= top; ++n) t += (m + 1) * (n + 1);
            return t;
        };
        EXPECT_EQ(static_cast<int>(basis.size()), bidegree_sum(d) - (d >= 2 ? bidegree_sum(d - 2) : 0));
    }
}

TEST(SphereInnerProduct, Examples) {
    EXPECT_CNEAR(sphere_inner_product(P::constant(1.0), P::constant(1.0)), 1.0, 1e-15);
    EXPECT_CNEAR(sphere_inner_product(P::z1(), P::z1()), 0.5, 1e-15);
    EXPECT_CNEAR(sphere_inner_product(P::z1() * P::z2(), P::z1() * P::z2()), 1.0 / 6.0, 1e-15);
    EXPECT_CNEAR(sphere_inner_product(P::z1(), P::z1()) + sphere_inner_product(P::z2(), P::z2()), 1.0, 1e-15);
}

TEST(SphereInnerProduct, AgreesWithHopfQuadrature) {
    sampling::Sampler s(52);
    for (int i = 0; i < 8; ++i) {
        const P f = normal_form(random_polynomial(s, 4));
        const P g = normal_form(random_polynomial(s, 4));
        const cplx exact = sphere_inner_product(f, g);
        const cplx quad = hopf_integral([&](const Complex2& z) { return evaluate_anywhere(f, z) * std::conj(evaluate_anywhere(g, z)); });
        EXPECT_CNEAR(exact, quad, 1e-6 * std::max(1.0, std::abs(exact)));
    }
}

TEST(SphereInnerProduct, MonomialMomentsAgreeWithQuadrature) {
    for (int p1 = 0; p1 <= 3; ++p1)
        for (int p2 = 0; p2 <= 3; ++p2) {
            const double quad = hopf_integral([&](const Complex2& z) {
                return std::pow(std::norm(z.z1), p1) * std::pow(std::norm(z.z2), p2);
            }).real();
            EXPECT_NEAR(sphere_moment({p1, p2}, {p1, p2}), quad, 1e-12);
        }
    EXPECT_EQ(sphere_moment({1, 0}, {0, 1}), 0.0);
}

TEST(GramMatrix, HermitianPositiveDefinite) {
    for (int d = 0; d <= 6; ++d) {
        const Eigen::MatrixXcd g = gram_matrix(reduced_basis(d));
        EXPECT_LT((g - g.adjoint()).norm(), 1e-14);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
        EXPECT_GT(es.eigenvalues().minCoeff(), 0.0) << "degree " << d;
    }
}

TEST(HolomorphicDefect, Examples) {
    EXPECT_LT(holomorphic_defect(P::z1() * P::z1() * P::z2()), 1e-12);
    EXPECT_NEAR(holomorphic_defect(P::zbar1()), std::sqrt(0.5), 1e-12);
    EXPECT_NEAR(holomorphic_defect(P::z2() * P::zbar2()), std::sqrt(1.0 / 12.0), 1e-12);
}

TEST(HolomorphicDefect, VanishesExactlyOnHolomorphicTraces) {
    sampling::Sampler s(53);
    for (int i = 0; i < 30; ++i) {
        EXPECT_LT(holomorphic_defect(random_polynomial(s, 5, true)), 1e-12);
        P f = random_polynomial(s, 4);
        f.add_term({{0, 1}, {0, 1}}, cplx(1.0 + s.uniform(), 0.0));
        EXPECT_GT(holomorphic_defect(f), 1e-8);
    }
}

TEST(HolomorphicDefect, ProjectionIsOrthogonal) {
    sampling::Sampler s(54);
    for (int i = 0; i < 10; ++i) {
        const P f = normal_form(random_polynomial(s, 4));
        const P r = normal_form(f - holomorphic_projection(f));
        for (const auto& m : reduced_basis(4))
            if (m.is_holomorphic()) {
                EXPECT_CNEAR(sphere_inner_product(r, P::monomial(m)), 0.0, 1e-12);
            }
    }
}

TEST(ComposeLinear, EvaluatesTheComposite) {
    sampling::Sampler s(55);
    for (int i = 0; i < 20; ++i) {
        const P f = random_polynomial(s, 4);
        Eigen::Matrix2cd m;
        m << cplx(s.normal(), s.normal()), cplx(s.normal(), s.normal()), cplx(s.normal(), s.normal()), cplx(s.normal(), s.normal());
        const P g = compose_linear(f, m);
        for (int k = 0; k < 10; ++k) {
            const Complex2 z = s.in_ball(1.0);
            EXPECT_CNEAR(evaluate_anywhere(g, z), evaluate_anywhere(f, Complex2::from_eigen(m * z.to_eigen())), 1e-10);
        }
    }
}
