#pragma once

#include "hopf/cayley_dickson.hpp"
#include "hopf/foliation/j_map.hpp"
#include "hopf/groupoid.hpp"
#include "hopf/report.hpp"

#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace hopf {

/// Section (u, v) of the trivial bundle D^2 over D^2.
template <Scalar S>
struct E0Section {
    Element<S> u, v;
};

using SectionP = E0Section<Polynomial>;

/// Vector field on D^2: components along d/dx^0..d/dx^{n-1}, then d/dy^0..d/dy^{n-1}.
struct VectorFieldO2 {
    std::vector<Polynomial> c;

    [[nodiscard]] std::size_t residual_terms() const {
        std::size_t n = 0;
        for (const auto& p : c) n += p.size();
        return n;
    }
    friend VectorFieldO2 operator-(const VectorFieldO2& a, const VectorFieldO2& b) {
        if (a.c.size() != b.c.size()) throw std::invalid_argument("VectorFieldO2: size mismatch");
        VectorFieldO2 r = a;
        for (std::size_t k = 0; k < r.c.size(); ++k) r.c[k] -= b.c[k];
        return r;
    }
};

/// Polynomial ring with base coordinates of D^2 plus named section variables,
/// together with the symbolic base point (x, y).
struct BaseFrame {
    RingPtr ctx;
    AlgebraDim dim;
    Element<Polynomial> x, y;

    /// Each tag names an algebra-valued section, so it gets dim(d) variables.
    BaseFrame(AlgebraDim d, const std::vector<std::string>& section_tags) : dim(d) {
        RingBuilder b;
        b.add_base(dim_value(d));
        for (const auto& t : section_tags) b.add_section(t, dim_value(d));
        init(b);
    }

    /// Explicit (tag, count) list, for scalar-valued section components.
    static BaseFrame with_variables(AlgebraDim d, const std::vector<std::pair<std::string, int>>& vars) {
        RingBuilder b;
        b.add_base(dim_value(d));
        for (const auto& [tag, count] : vars) b.add_section(tag, count);
        BaseFrame f(d);
        f.init(b);
        return f;
    }

    [[nodiscard]] int n() const { return dim_value(dim); }
    [[nodiscard]] VariableId coordinate(int k) const { return k < n() ? base_x(k) : base_y(k - n()); }
    [[nodiscard]] Element<Polynomial> section(const std::string& tag) const { return symbolic(dim, ctx, tag); }
    [[nodiscard]] SectionP constant_section(const std::string& u_tag, const std::string& v_tag) const {
        return {section(u_tag), section(v_tag)};
    }
    [[nodiscard]] Polynomial scalar(const std::string& tag) const { return var(ctx, section_var(tag, 0)); }

    /// Assignment sending every base coordinate to zero.
    [[nodiscard]] std::map<VariableId, Rational> origin() const {
        std::map<VariableId, Rational> a;
        for (int k = 0; k < 2 * n(); ++k) a[coordinate(k)] = Rational(0);
        return a;
    }

private:
    explicit BaseFrame(AlgebraDim d) : dim(d) {}
    void init(RingBuilder& b) {
        ctx = b.build();
        x = symbolic_x(dim, ctx);
        y = symbolic_y(dim, ctx);
    }
};

/// rho(u, v) = (|x|^2 u + (x conj(y)) v - s x, |y|^2 v + (y conj(x)) u - s y), s = <x,u> + <y,v>.
template <Scalar S>
std::pair<Element<S>, Element<S>> anchor_components(const Element<S>& x, const Element<S>& y, const Element<S>& u,
                                                     const Element<S>& v) {
    const S s = inner(x, u) + inner(y, v);
    return {x.norm_sq() * u + (x * y.conj()) * v - s * x, y.norm_sq() * v + (y * x.conj()) * u - s * y};
}

inline VectorFieldO2 anchor(const BaseFrame& f, const SectionP& s) {
    auto [a, b] = anchor_components(f.x, f.y, s.u, s.v);
    VectorFieldO2 r;
    r.c.reserve(static_cast<std::size_t>(2 * f.n()));
    for (const auto& p : a.coeffs()) r.c.push_back(p);
    for (const auto& p : b.coeffs()) r.c.push_back(p);
    return r;
}

/// X(p) = sum_k X^k d_k p.
inline Polynomial apply_field(const BaseFrame& f, const VectorFieldO2& X, const Polynomial& p) {
    PolyAccumulator acc(f.ctx);
    for (int k = 0; k < 2 * f.n(); ++k) {
        const Polynomial& xk = X.c[static_cast<std::size_t>(k)];
        if (xk.is_zero()) continue;
        Polynomial dp = p.derive(f.coordinate(k));
        if (!dp.is_zero()) acc.add_product(xk, dp);
    }
    return acc.take();
}

inline Element<Polynomial> apply_field(const BaseFrame& f, const VectorFieldO2& X, const Element<Polynomial>& e) {
    Element<Polynomial> r(e.dim());
    for (int i = 0; i < e.size(); ++i) r[i] = apply_field(f, X, e[i]);
    return r;
}

/// [X, Y]^k = X(Y^k) - Y(X^k).
inline VectorFieldO2 vf_commutator(const BaseFrame& f, const VectorFieldO2& X, const VectorFieldO2& Y) {
    VectorFieldO2 r;
    r.c.reserve(X.c.size());
    for (std::size_t k = 0; k < X.c.size(); ++k) r.c.push_back(apply_field(f, X, Y.c[k]) - apply_field(f, Y, X.c[k]));
    return r;
}

/// Pointwise bracket (<x,u>+<y,v>)(u',v') - (<x,u'>+<y,v'>)(u,v), which is the
/// full bracket on constant sections.
inline SectionP bracket_pointwise(const BaseFrame& f, const SectionP& a, const SectionP& b) {
    const Polynomial sa = inner(f.x, a.u) + inner(f.y, a.v);
    const Polynomial sb = inner(f.x, b.u) + inner(f.y, b.v);
    return {sa * b.u - sb * a.u, sa * b.v - sb * a.v};
}

/// Bracket on E0 extended by the Leibniz rule in both arguments:
/// [a, b] = pointwise(a, b) + rho(a)[b] - rho(b)[a], with rho acting on coefficients.
inline SectionP bracket_e0(const BaseFrame& f, const SectionP& a, const SectionP& b) {
    SectionP r = bracket_pointwise(f, a, b);
    const VectorFieldO2 ra = anchor(f, a), rb = anchor(f, b);
    r.u += apply_field(f, ra, b.u) - apply_field(f, rb, a.u);
    r.v += apply_field(f, ra, b.v) - apply_field(f, rb, a.v);
    return r;
}

inline std::size_t residual_terms(const SectionP& s) { return residual_terms(s.u) + residual_terms(s.v); }

inline SectionP operator+(const SectionP& a, const SectionP& b) { return {a.u + b.u, a.v + b.v}; }
inline SectionP operator-(const SectionP& a, const SectionP& b) { return {a.u - b.u, a.v - b.v}; }
inline SectionP scale(const Polynomial& p, const SectionP& s) { return {p * s.u, p * s.v}; }

/// Exact suite on symbolic constant sections.
inline VerificationReport verify_algebroid_symbolic(AlgebraDim d = AlgebraDim::O) {
    Stopwatch watch;
    VerificationReport rep;
    rep.suite = std::string("algebroid/symbolic/") + dim_name(d);
    BaseFrame f(d, {"u", "v", "u'", "v'", "u''", "v''"});
    const SectionP s1 = f.constant_section("u", "v");
    const SectionP s2 = f.constant_section("u'", "v'");
    const SectionP s3 = f.constant_section("u''", "v''");
    const std::string nv = std::to_string(f.ctx->size()) + " indeterminates";

    const SectionP b12 = bracket_e0(f, s1, s2);
    add_exact(rep, "antisymmetry", residual_terms(b12 + bracket_e0(f, s2, s1)), "[s1,s2] = -[s2,s1]", nv);
    add_exact(rep, "anchor_morphism",
              (vf_commutator(f, anchor(f, s1), anchor(f, s2)) - anchor(f, b12)).residual_terms(),
              "[rho(s1), rho(s2)] = rho([s1,s2])", nv);
    const SectionP jac = bracket_e0(f, s1, bracket_e0(f, s2, s3)) + bracket_e0(f, s2, bracket_e0(f, s3, s1)) +
                         bracket_e0(f, s3, b12);
    add_exact(rep, "jacobi", residual_terms(jac), "[s1,[s2,s3]] + [s2,[s3,s1]] + [s3,[s1,s2]] = 0", nv);

    auto [ra, rb] = anchor_components(f.x, f.y, s1.u, s1.v);
    JValue<Polynomial> j = J_map(f.x, f.y, ra, rb);
    add_exact(rep, "anchor_in_kernel_of_J", j.first.size() + residual_terms(j.middle) + j.last.size(),
              "J(rho(u,v)) = 0", nv);

    // Leibniz rule for a polynomial coefficient: [s1, p s2] = p [s1,s2] + rho(s1)[p] s2.
    const Polynomial p = f.x[0] * f.y[dim_value(d) - 1] + Polynomial(Rational(3)) * f.x[dim_value(d) > 1 ? 1 : 0];
    add_exact(rep, "leibniz_rule",
              residual_terms(bracket_e0(f, s1, scale(p, s2)) - scale(p, b12) -
                             scale(apply_field(f, anchor(f, s1), p), s2)),
              "[s1, p s2] = p [s1,s2] + rho(s1)(p) s2", nv);
    rep.elapsed_seconds = watch.seconds();
    return rep;
}

namespace detail {

/// Derivative of the target and of lambda along tau -> (tau F0, tau G0, x, y) at tau = 0.
struct CurveDerivative {
    PointF dt;
    double dlambda;
};

inline CurveDerivative central_difference(const PointF& p, const Element<double>& F0, const Element<double>& G0,
                                          double h) {
    ArrowF plus{h * F0, h * G0, p.x, p.y}, minus{-h * F0, -h * G0, p.x, p.y};
    PointF tp = target(plus), tm = target(minus);
    const double inv = 1.0 / (2 * h);
    return {{inv * (tp.x - tm.x), inv * (tp.y - tm.y)}, (rescale(plus) - rescale(minus)) * inv};
}

inline CurveDerivative richardson(const PointF& p, const Element<double>& F0, const Element<double>& G0, double h) {
    CurveDerivative a = central_difference(p, F0, G0, h), b = central_difference(p, F0, G0, h / 2);
    auto mix = [](const Element<double>& coarse, const Element<double>& fine) {
        return (4.0 / 3.0) * fine - (1.0 / 3.0) * coarse;
    };
    return {{mix(a.dt.x, b.dt.x), mix(a.dt.y, b.dt.y)}, (4 * b.dlambda - a.dlambda) / 3};
}

}  // namespace detail

/// Differentiates the groupoid target along F- and G-basis directions and
/// compares with the anchor of the corresponding constant section.
inline VerificationReport verify_groupoid_consistency(AlgebraDim d = AlgebraDim::O, std::size_t samples = 200,
                                                      std::uint64_t seed = 0, double tol = 1e-6) {
    Stopwatch watch;
    VerificationReport rep;
    rep.suite = std::string("algebroid/groupoid_consistency/") + dim_name(d);
    rep.seed = seed;
    std::mt19937_64 rng(derive_seed(seed, 3));
    const int n = dim_value(d);
    using E = Element<double>;
    double r_target = 0, r_lambda = 0;
    std::size_t richardson_used = 0;
    for (std::size_t k = 0; k <= samples; ++k) {
        // The last sample is the origin, where both sides vanish.
        PointF p = k < samples ? PointF{detail::uniform_element(d, rng), detail::uniform_element(d, rng)}
                               : PointF::origin(d);
        const double h = 1e-5 * (1.0 + std::sqrt(p.norm_sq()));
        for (int dir = 0; dir < 2 * n; ++dir) {
            const bool along_f = dir < n;
            const E e = E::basis(d, dir % n);
            const E F0 = along_f ? e : E::zero(d), G0 = along_f ? E::zero(d) : e;
            auto [ax, ay] = anchor_components(p.x, p.y, F0, G0);
            const double expected_dl = along_f ? p.x[dir % n] : p.y[dir % n];
            auto residuals = [&](const detail::CurveDerivative& c) {
                return std::pair{std::max(max_abs(c.dt.x - ax), max_abs(c.dt.y - ay)),
                                 std::abs(c.dlambda - expected_dl)};
            };
            auto [rt, rl] = residuals(detail::central_difference(p, F0, G0, h));
            if (rt > tol || rl > tol) {
                ++richardson_used;
                std::tie(rt, rl) = residuals(detail::richardson(p, F0, G0, h));
            }
            r_target = std::max(r_target, rt);
            r_lambda = std::max(r_lambda, rl);
        }
    }
    const std::string ns = std::to_string(samples) + " samples plus the origin, " + std::to_string(2 * n) +
                           " directions each; Richardson used " + std::to_string(richardson_used) + " times";
    add_residual(rep, "target_derivative_is_anchor", r_target, tol, "d/dtau t(tau e_i) at 0 = rho(e_i)", ns);
    add_residual(rep, "rescaling_derivative", r_lambda, tol, "d/dtau lambda(tau e_i, 0, x, y) at 0 = x^i", ns);
    rep.elapsed_seconds = watch.seconds();
    return rep;
}

}  // namespace hopf
