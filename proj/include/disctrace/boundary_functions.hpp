#pragma once

// Mixed polynomials Σ c_{αβ} z^α conj(z)^β as functions on the unit sphere of C².

#include "disctrace/error.hpp"
#include "disctrace/geometry.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <compare>
#include <map>
#include <vector>

namespace disctrace::boundary {

inline constexpr int kDefaultDegreeCap = 12;

/// Exponents (α, β) of the monomial z^α conj(z)^β.
struct MultiIndexPair {
    std::array<int, 2> alpha{};
    std::array<int, 2> beta{};

    int holomorphic_degree() const { return alpha[0] + alpha[1]; }
    int antiholomorphic_degree() const { return beta[0] + beta[1]; }
    int total_degree() const { return holomorphic_degree() + antiholomorphic_degree(); }
    bool is_reduced() const { return alpha[0] == 0 || beta[0] == 0; }
    bool is_holomorphic() const { return beta[0] == 0 && beta[1] == 0; }

    friend auto operator<=>(const MultiIndexPair&, const MultiIndexPair&) = default;
};

class HermitianPolynomial {
public:
    using Terms = std::map<MultiIndexPair, cplx>;

    HermitianPolynomial() = default;

    static HermitianPolynomial constant(cplx c) { return monomial({}, c); }
    static HermitianPolynomial monomial(const MultiIndexPair& m, cplx c = 1.0) {
        HermitianPolynomial p;
        p.add_term(m, c);
        return p;
    }
    static HermitianPolynomial z1() { return monomial({{1, 0}, {0, 0}}); }
    static HermitianPolynomial z2() { return monomial({{0, 1}, {0, 0}}); }
    static HermitianPolynomial zbar1() { return monomial({{0, 0}, {1, 0}}); }
    static HermitianPolynomial zbar2() { return monomial({{0, 0}, {0, 1}}); }

    void add_term(const MultiIndexPair& m, cplx c) {
        for (int e : {m.alpha[0], m.alpha[1], m.beta[0], m.beta[1]})
            if (e < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw Error(ErrorKind::InvalidArgument, "non-finite coefficient");
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) it->second += c;
        if (it->second == cplx{}) terms_.erase(it);
    }

    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    cplx coefficient(const MultiIndexPair& m) const {
        const auto it = terms_.find(m);
        return it == terms_.end() ? cplx{} : it->second;
    }

    int degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }

    bool is_holomorphic() const {
        for (const auto& [m, c] : terms_)
            if (!m.is_holomorphic()) return false;
        return true;
    }

    bool is_normal_form() const {
        for (const auto& [m, c] : terms_)
            if (!m.is_reduced()) return false;
        return true;
    }

    friend HermitianPolynomial operator+(HermitianPolynomial f, const HermitianPolynomial& g) {
        for (const auto& [m, c] : g.terms_) f.add_term(m, c);
        return f;
    }
    friend HermitianPolynomial operator-(HermitianPolynomial f, const HermitianPolynomial& g) {
        for (const auto& [m, c] : g.terms_) f.add_term(m, -c);
        return f;
    }
    friend HermitianPolynomial operator*(cplx s, const HermitianPolynomial& f) {
        HermitianPolynomial out;
        for (const auto& [m, c] : f.terms_) out.add_term(m, s * c);
        return out;
    }
    friend HermitianPolynomial operator*(const HermitianPolynomial& f, const HermitianPolynomial& g) {
        HermitianPolynomial out;
        for (const auto& [m, c] : f.terms_)
            for (const auto& [n, d] : g.terms_)
                out.add_term({{m.alpha[0] + n.alpha[0], m.alpha[1] + n.alpha[1]},
                              {m.beta[0] + n.beta[0], m.beta[1] + n.beta[1]}},
                             c * d);
        return out;
    }

    /// The polynomial conj(f).
    HermitianPolynomial conjugate() const {
        HermitianPolynomial out;
        for (const auto& [m, c] : terms_) out.add_term({m.beta, m.alpha}, std::conj(c));
        return out;
    }

private:
    Terms terms_;
};

namespace detail {

inline cplx ipow(cplx base, int e) {
    cplx r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

inline void check_degree(const HermitianPolynomial& f, int cap) {
    if (f.degree() > cap)
        throw Error(ErrorKind::DegreeOverflow, "degree " + std::to_string(f.degree()) + " exceeds cap " + std::to_string(cap));
}

} // namespace detail

/// Evaluates f at any point of C² (no sphere check).
inline cplx evaluate_anywhere(const HermitianPolynomial& f, const Complex2& z) {
    cplx sum = 0.0;
    const cplx w1 = std::conj(z.z1);
    const cplx w2 = std::conj(z.z2);
    for (const auto& [m, c] : f.terms())
        sum += c * detail::ipow(z.z1, m.alpha[0]) * detail::ipow(z.z2, m.alpha[1]) * detail::ipow(w1, m.beta[0]) *
               detail::ipow(w2, m.beta[1]);
    return sum;
}

inline cplx evaluate(const HermitianPolynomial& f, const Complex2& z) {
    if (!(std::abs(z.norm() - 1.0) < 1e-10)) throw Error(ErrorKind::OffSphere, "evaluation point is not on the sphere");
    return evaluate_anywhere(f, z);
}

/// Rewrites z₁·conj(z₁) → 1 − z₂·conj(z₂) until every monomial has
/// min(α₁, β₁) = 0. A monomial with k = min(α₁, β₁) expands as
/// Σⱼ C(k,j)(−1)ʲ z^{α − k e₁ + j e₂} conj(z)^{β − k e₁ + j e₂}.
inline HermitianPolynomial normal_form(const HermitianPolynomial& f, int cap = kDefaultDegreeCap) {
    detail::check_degree(f, cap);
    HermitianPolynomial out;
    for (const auto& [m, c] : f.terms()) {
        const int k = std::min(m.alpha[0], m.beta[0]);
        for (int j = 0; j <= k; ++j) {
            const double w = detail::binomial(k, j) * (j % 2 == 0 ? 1.0 : -1.0);
            out.add_term({{m.alpha[0] - k, m.alpha[1] + j}, {m.beta[0] - k, m.beta[1] + j}}, w * c);
        }
    }
    return out;
}

/// All reduced pairs of total degree ≤ d, in lexicographic order of
/// (α₁, α₂, β₁, β₂).
inline std::vector<MultiIndexPair> reduced_basis(int degree) {
    if (degree < 0) throw Error(ErrorKind::InvalidArgument, "negative degree");
    std::vector<MultiIndexPair> out;
    for (int a1 = 0; a1 <= degree; ++a1)
        for (int a2 = 0; a1 + a2 <= degree; ++a2)
            for (int b1 = 0; a1 + a2 + b1 <= degree; ++b1)
                for (int b2 = 0; a1 + a2 + b1 + b2 <= degree; ++b2) {
                    const MultiIndexPair m{{a1, a2}, {b1, b2}};
                    if (m.is_reduced()) out.push_back(m);
                }
    return out;
}

/// ∫ z^p conj(z)^q dσ over the sphere with normalized measure:
/// δ_{pq} p₁! p₂! / (|p| + 1)!.
inline double sphere_moment(const std::array<int, 2>& p, const std::array<int, 2>& q) {
    if (p != q) return 0.0;
    const int n = p[0] + p[1];
    return 1.0 / ((n + 1) * detail::binomial(n, p[0]));
}

/// ⟨m, n⟩ = ∫ z^{α_m} conj(z)^{β_m} · conj(z^{α_n} conj(z)^{β_n}) dσ.
inline double monomial_inner(const MultiIndexPair& m, const MultiIndexPair& n) {
    return sphere_moment({m.alpha[0] + n.beta[0], m.alpha[1] + n.beta[1]},
                         {m.beta[0] + n.alpha[0], m.beta[1] + n.alpha[1]});
}

/// L² inner product ⟨f, g⟩ = ∫ f·conj(g) dσ, exact.
inline cplx sphere_inner_product(const HermitianPolynomial& f, const HermitianPolynomial& g, int cap = kDefaultDegreeCap) {
    detail::check_degree(f, cap);
    detail::check_degree(g, cap);
    cplx sum = 0.0;
    for (const auto& [m, c] : f.terms())
        for (const auto& [n, d] : g.terms()) {
            const double w = monomial_inner(m, n);
            if (w != 0.0) sum += c * std::conj(d) * w;
        }
    return sum;
}

/// G(i, j) = ⟨basis[j], basis[i]⟩, so that ⟨Σxⱼmⱼ, Σyᵢmᵢ⟩ = y* G x.
inline Eigen::MatrixXcd gram_matrix(const std::vector<MultiIndexPair>& basis) {
    const auto n = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            g(i, j) = monomial_inner(basis[static_cast<std::size_t>(j)], basis[static_cast<std::size_t>(i)]);
    return g;
}

/// Orthogonal projection onto span{z^α : |α| ≤ deg f}. Distinct holomorphic
/// monomials are orthogonal on the sphere, so the coefficients decouple.
inline HermitianPolynomial holomorphic_projection(const HermitianPolynomial& f, int cap = kDefaultDegreeCap) {
    detail::check_degree(f, cap);
    const int d = f.degree();
    HermitianPolynomial out;
    for (int a1 = 0; a1 <= d; ++a1)
        for (int a2 = 0; a1 + a2 <= d; ++a2) {
            const MultiIndexPair m{{a1, a2}, {0, 0}};
            cplx overlap = 0.0;
            for (const auto& [n, c] : f.terms()) overlap += c * monomial_inner(n, m);
            if (overlap != cplx{}) out.add_term(m, overlap / monomial_inner(m, m));
        }
    return out;
}

/// L²(sphere) distance from f to the holomorphic polynomials of degree ≤ deg f,
/// computed as the norm of the explicit residual.
inline double holomorphic_defect(const HermitianPolynomial& f, int cap = kDefaultDegreeCap) {
    const HermitianPolynomial residual = normal_form(f - holomorphic_projection(f, cap), cap);
    return std::sqrt(std::max(0.0, sphere_inner_product(residual, residual, cap).real()));
}

/// f(M z) as a mixed polynomial, for a 2×2 matrix M.
inline HermitianPolynomial compose_linear(const HermitianPolynomial& f, const Eigen::Matrix2cd& m) {
    const std::array<HermitianPolynomial, 2> w{
        m(0, 0) * HermitianPolynomial::z1() + m(0, 1) * HermitianPolynomial::z2(),
        m(1, 0) * HermitianPolynomial::z1() + m(1, 1) * HermitianPolynomial::z2()};
    const std::array<HermitianPolynomial, 2> wbar{w[0].conjugate(), w[1].conjugate()};
    auto power = [](const HermitianPolynomial& p, int e) {
        HermitianPolynomial r = HermitianPolynomial::constant(1.0);
        for (int i = 0; i < e; ++i) r = r * p;
        return r;
    };
    HermitianPolynomial out;
    for (const auto& [mi, c] : f.terms())
        out = out + c * (power(w[0], mi.alpha[0]) * power(w[1], mi.alpha[1]) * power(wbar[0], mi.beta[0]) *
                         power(wbar[1], mi.beta[1]));
    return out;
}

} // namespace disctrace::boundary
