#pragma once

#include "hopf/cayley_dickson.hpp"
#include "hopf/hopf_leaves.hpp"
#include "hopf/report.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace hopf {

/// Arrow (F, G, x, y) of the groupoid over D^2. Its source is (x, y).
template <Scalar S>
struct Arrow {
    Element<S> F, G, x, y;

    [[nodiscard]] AlgebraDim dim() const { return x.dim(); }
    [[nodiscard]] PointD2<S> source() const { return {x, y}; }
};

using ArrowF = Arrow<double>;

/// Points with rescale_sq at or below this are treated as lying on the excluded locus.
inline constexpr double kMembershipEpsilon = 1e-12;

/// Square of the rescaling function:
/// 1 + 2(<x,F> + <y,G> + <x conj(y), F conj(G)>) + |x|^2 |F|^2 + |y|^2 |G|^2.
template <Scalar S>
S rescale_sq(const Arrow<S>& g) {
    S cross = inner(g.x, g.F) + inner(g.y, g.G) + inner(g.x * g.y.conj(), g.F * g.G.conj());
    return S(1) + S(2) * cross + g.x.norm_sq() * g.F.norm_sq() + g.y.norm_sq() * g.G.norm_sq();
}

inline double rescale(const ArrowF& g) {
    const double l2 = rescale_sq(g);
    if (!(l2 > kMembershipEpsilon)) throw std::domain_error("rescale: arrow lies on the excluded zero locus");
    return std::sqrt(l2);
}

inline PointF target(const ArrowF& g) {
    const double inv = 1.0 / rescale(g);
    Element<double> tx = g.x + g.x.norm_sq() * g.F + (g.x * g.y.conj()) * g.G;
    Element<double> ty = g.y + g.y.norm_sq() * g.G + (g.y * g.x.conj()) * g.F;
    return {inv * tx, inv * ty};
}

inline ArrowF unit(const PointF& p) {
    return {Element<double>::zero(p.dim()), Element<double>::zero(p.dim()), p.x, p.y};
}

inline ArrowF inverse(const ArrowF& g) {
    const double l = rescale(g);
    PointF t = target(g);
    return {(-1.0 / l) * g.F, (-1.0 / l) * g.G, t.x, t.y};
}

/// g2 . g1, defined when s(g2) = t(g1) up to tol (1 + |t(g1)|).
inline ArrowF compose(const ArrowF& g2, const ArrowF& g1, double tol = 1e-9) {
    if (g2.dim() != g1.dim()) throw std::invalid_argument("compose: dimension mismatch");
    PointF t1 = target(g1);
    const double gap = distance(g2.source(), t1);
    if (gap > tol * (1.0 + std::sqrt(t1.norm_sq())))
        throw std::invalid_argument("compose: source of the second arrow is not the target of the first");
    const double l1 = rescale(g1);
    return {g1.F + l1 * g2.F, g1.G + l1 * g2.G, g1.x, g1.y};
}

/// Arrow from the base point of the leaf through p to p: ((x-1)/|x|, 0, |x|, m|x|)
/// when x != 0, and (0, (y-1)/|y|, 0, |y|) on the line at infinity.
inline ArrowF connecting_arrow(const PointF& p) {
    const AlgebraDim d = p.dim();
    using E = Element<double>;
    const E one = E::one(d);
    if (p.x.is_zero()) {
        if (p.y.is_zero()) throw std::invalid_argument("connecting_arrow: the origin is its own leaf");
        const double ny = norm(p.y);
        return {E::zero(d), (1.0 / ny) * (p.y - one), E::zero(d), E::real(d, ny)};
    }
    const double nx = norm(p.x);
    const E m = p.y * inverse(p.x);
    return {(1.0 / nx) * (p.x - one), E::zero(d), E::real(d, nx), nx * m};
}

/// Maximum coefficient distance between two arrows.
inline double arrow_distance(const ArrowF& a, const ArrowF& b) {
    return std::max({max_abs(a.F - b.F), max_abs(a.G - b.G), max_abs(a.x - b.x), max_abs(a.y - b.y)});
}

inline double point_distance(const PointF& a, const PointF& b) { return std::max(max_abs(a.x - b.x), max_abs(a.y - b.y)); }

/// Arrow in the action groupoid of the diagonal right action of unit elements.
struct ActionArrow {
    PointF base;
    Element<double> u;
};

/// The map (F, G, x, y) -> ((x, y), q / |q|) with q = 1 + conj(x) F + conj(y) G,
/// evaluated at any dimension. It is a groupoid morphism only when the
/// algebra is associative; phi_to_action_groupoid enforces that.
inline ActionArrow phi_formula(const ArrowF& g) {
    Element<double> q = Element<double>::one(g.dim()) + g.x.conj() * g.F + g.y.conj() * g.G;
    const double n = norm(q);
    if (n == 0.0) throw std::domain_error("phi: vanishing denominator");
    return {g.source(), (1.0 / n) * q};
}

inline ActionArrow phi_to_action_groupoid(const ArrowF& g) {
    if (dim_value(g.dim()) > 4) throw std::invalid_argument("phi: defined only for associative algebras (dim 1, 2, 4)");
    return phi_formula(g);
}

/// Composition in the action groupoid: (p u1, u2) . (p, u1) = (p, u1 u2).
inline ActionArrow compose_action(const ActionArrow& a2, const ActionArrow& a1) {
    return {a1.base, a1.u * a2.u};
}

inline PointF action_target(const ActionArrow& a) { return {a.base.x * a.u, a.base.y * a.u}; }

// ---------------------------------------------------------------------------
// Sampling

namespace detail {

inline Element<double> uniform_element(AlgebraDim d, std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Element<double> e(d);
    for (int i = 0; i < dim_value(d); ++i) e[i] = u(rng);
    return e;
}

inline ArrowF arrow_at(const PointF& base, std::mt19937_64& rng) {
    const AlgebraDim d = base.dim();
    for (;;) {
        ArrowF g{uniform_element(d, rng), uniform_element(d, rng), base.x, base.y};
        if (rescale_sq(g) > 1e-2) return g;
    }
}

inline ArrowF random_arrow(AlgebraDim d, std::mt19937_64& rng) {
    PointF p{uniform_element(d, rng), uniform_element(d, rng)};
    return arrow_at(p, rng);
}

}  // namespace detail

/// Symbolic check that |x|^2 rescale_sq = |x + |x|^2 F + (x conj(y)) G|^2 and the
/// mirrored identity in y, as polynomials in the coordinates of F, G, x, y.
inline VerificationReport verify_rescaling_identity(AlgebraDim d) {
    Stopwatch watch;
    VerificationReport rep;
    rep.suite = std::string("groupoid/rescaling_identity/") + dim_name(d);
    const int n = dim_value(d);
    auto ctx = RingBuilder().add_base(n).add_section("F", n).add_section("G", n).build();
    using E = Element<Polynomial>;
    Arrow<Polynomial> g{symbolic(d, ctx, "F"), symbolic(d, ctx, "G"), symbolic_x(d, ctx), symbolic_y(d, ctx)};
    const Polynomial l2 = rescale_sq(g);
    const Polynomial nx = g.x.norm_sq(), ny = g.y.norm_sq();
    const E tx = g.x + nx * g.F + (g.x * g.y.conj()) * g.G;
    const E ty = g.y + ny * g.G + (g.y * g.x.conj()) * g.F;
    add_exact(rep, "rescaling_times_norm_x", (nx * l2 - tx.norm_sq()).size(),
              "|x|^2 lambda^2 = |x + |x|^2 F + (x conj(y)) G|^2",
              std::to_string(ctx->size()) + " indeterminates");
    add_exact(rep, "rescaling_times_norm_y", (ny * l2 - ty.norm_sq()).size(),
              "|y|^2 lambda^2 = |y + |y|^2 G + (y conj(x)) F|^2");
    Polynomial at_zero = l2.partial_evaluate([&] {
        std::map<VariableId, Rational> a;
        for (int i = 0; i < n; ++i) {
            a[section_var("F", i)] = Rational(0);
            a[section_var("G", i)] = Rational(0);
        }
        return a;
    }());
    rep.add("rescaling_at_unit_arrow", at_zero == Polynomial(1), "value", at_zero.str(), "lambda^2(0, 0, x, y) = 1");
    rep.elapsed_seconds = watch.seconds();
    return rep;
}

/// Randomized structure suite: every check records the maximum residual over all samples.
inline VerificationReport verify_structure(AlgebraDim d, std::size_t samples = 1000, std::uint64_t seed = 0,
                                           double tol = 1e-9) {
    if (dim_value(d) > 8) throw std::invalid_argument("verify_structure: dimension must be 1, 2, 4 or 8");
    Stopwatch watch;
    VerificationReport rep;
    rep.suite = std::string("groupoid/") + dim_name(d);
    rep.seed = seed;
    std::mt19937_64 rng(derive_seed(seed, 0));

    double r_mult = 0, r_assoc = 0, r_left_unit = 0, r_right_unit = 0, r_inv_left = 0, r_inv_right = 0;
    double r_inv_lambda = 0, r_toi = 0, r_norm = 0, r_slope = 0, r_targ = 0, r_src = 0, r_conn = 0;
    bool orbit_in_leaf = true;
    for (std::size_t k = 0; k < samples; ++k) {
        ArrowF g1 = detail::random_arrow(d, rng);
        PointF s1 = g1.source(), t1 = target(g1);
        ArrowF g2 = detail::arrow_at(t1, rng);
        PointF t2 = target(g2);
        ArrowF g3 = detail::arrow_at(t2, rng);

        ArrowF g21 = compose(g2, g1);
        r_mult = std::max(r_mult, std::abs(rescale(g21) - rescale(g2) * rescale(g1)));
        r_targ = std::max(r_targ, point_distance(target(g21), t2));
        r_src = std::max(r_src, point_distance(g21.source(), s1));

        ArrowF g32 = compose(g3, g2);
        r_assoc = std::max(r_assoc, arrow_distance(compose(g32, g1), compose(g3, g21)));

        r_left_unit = std::max(r_left_unit, arrow_distance(compose(unit(t1), g1), g1));
        r_right_unit = std::max(r_right_unit, arrow_distance(compose(g1, unit(s1)), g1));

        ArrowF inv = inverse(g1);
        r_toi = std::max(r_toi, point_distance(target(inv), s1));
        r_inv_lambda = std::max(r_inv_lambda, std::abs(rescale(inv) * rescale(g1) - 1.0));
        r_inv_left = std::max(r_inv_left, arrow_distance(compose(inv, g1), unit(s1)));
        r_inv_right = std::max(r_inv_right, arrow_distance(compose(g1, inv), unit(t1)));

        r_norm = std::max(r_norm, std::abs(t1.norm_sq() - s1.norm_sq()));
        r_slope = std::max(r_slope, max_abs(t1.y * t1.x.conj() - s1.y * s1.x.conj()));
        orbit_in_leaf = orbit_in_leaf && same_leaf(s1, t1, 1e-8);

        ArrowF c = connecting_arrow(s1);
        r_conn = std::max(r_conn, point_distance(target(c), s1));
        orbit_in_leaf = orbit_in_leaf && same_leaf(c.source(), s1, 1e-8);
    }
    const std::string ns = std::to_string(samples) + " samples";
    add_residual(rep, "rescaling_multiplicative", r_mult, tol, "lambda(g' g) = lambda(g') lambda(g)", ns);
    add_residual(rep, "associativity", r_assoc, tol, "(g3 g2) g1 = g3 (g2 g1)", ns);
    add_residual(rep, "left_unit", r_left_unit, tol, "1_{t(g)} g = g", ns);
    add_residual(rep, "right_unit", r_right_unit, tol, "g 1_{s(g)} = g", ns);
    add_residual(rep, "inverse_left", r_inv_left, tol, "g^{-1} g = 1_{s(g)}", ns);
    add_residual(rep, "inverse_right", r_inv_right, tol, "g g^{-1} = 1_{t(g)}", ns);
    add_residual(rep, "inverse_rescaling", r_inv_lambda, tol, "lambda(g^{-1}) lambda(g) = 1", ns);
    add_residual(rep, "target_of_inverse", r_toi, tol, "t(g^{-1}) = s(g)", ns);
    add_residual(rep, "target_of_composite", r_targ, tol, "t(g' g) = t(g')", ns);
    add_residual(rep, "source_of_composite", r_src, tol, "s(g' g) = s(g)", ns);
    add_residual(rep, "norm_preserved", r_norm, tol, "|t(g)| = |s(g)|", ns);
    add_residual(rep, "slope_preserved", r_slope, tol, "y conj(x) is the same at source and target", ns);
    rep.add("orbits_within_leaves", orbit_in_leaf, "value", orbit_in_leaf,
            "source and target of every sampled arrow lie on the same leaf", ns);
    add_residual(rep, "connecting_arrow_round_trip", r_conn, tol,
                 "the connecting arrow ends at the given point", ns);
    rep.append(verify_rescaling_identity(d));
    rep.elapsed_seconds = watch.seconds();
    return rep;
}

/// Morphism suite for phi. At dim 8 the same formula is evaluated and its
/// failure is recorded as a negative control.
inline VerificationReport verify_phi(AlgebraDim d, std::size_t samples = 500, std::uint64_t seed = 0,
                                     double tol = 1e-9) {
    Stopwatch watch;
    VerificationReport rep;
    rep.suite = std::string("groupoid/phi/") + dim_name(d);
    rep.seed = seed;
    std::mt19937_64 rng(derive_seed(seed, 1));
    if (dim_value(d) == 8) {
        double worst = 0;
        nlohmann::json witness;
        for (std::size_t k = 0; k < samples; ++k) {
            ArrowF g1 = detail::random_arrow(d, rng);
            ArrowF g2 = detail::arrow_at(target(g1), rng);
            double r = max_abs(phi_formula(compose(g2, g1)).u - compose_action(phi_formula(g2), phi_formula(g1)).u);
            if (r > worst) {
                worst = r;
                witness = {{"sample", k}, {"residual", r}};
            }
        }
        rep.add("multiplicativity_fails_for_octonions", worst > 1e-3, "witness", witness,
                "phi(g' g) != phi(g') phi(g) for some octonionic pair (negative control)",
                "largest residual over " + std::to_string(samples) + " samples");
        rep.elapsed_seconds = watch.seconds();
        return rep;
    }
    double r_mult = 0, r_lambda = 0, r_target = 0, r_unit_norm = 0, r_unit = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        ArrowF g1 = detail::random_arrow(d, rng);
        ArrowF g2 = detail::arrow_at(target(g1), rng);
        ActionArrow a1 = phi_to_action_groupoid(g1), a2 = phi_to_action_groupoid(g2);
        r_mult = std::max(r_mult, max_abs(phi_to_action_groupoid(compose(g2, g1)).u - compose_action(a2, a1).u));
        Element<double> q = Element<double>::one(d) + g1.x.conj() * g1.F + g1.y.conj() * g1.G;
        r_lambda = std::max(r_lambda, std::abs(rescale(g1) - norm(q)));
        r_target = std::max(r_target, point_distance(action_target(a1), target(g1)));
        r_unit_norm = std::max(r_unit_norm, std::abs(a1.u.norm_sq() - 1.0));
        r_unit = std::max(r_unit, max_abs(phi_to_action_groupoid(unit(g1.source())).u - Element<double>::one(d)));
    }
    const std::string ns = std::to_string(samples) + " samples";
    add_residual(rep, "phi_multiplicative", r_mult, tol, "phi(g' g) = phi(g') phi(g)", ns);
    add_residual(rep, "rescaling_is_norm", r_lambda, tol, "lambda(g) = |1 + conj(x) F + conj(y) G|", ns);
    add_residual(rep, "phi_covers_target", r_target, tol, "the action target of phi(g) is t(g)", ns);
    add_residual(rep, "phi_unit_norm", r_unit_norm, tol, "phi(g) is a unit element", ns);
    add_residual(rep, "phi_of_unit", r_unit, tol, "phi(1_p) = (p, 1)", ns);
    rep.elapsed_seconds = watch.seconds();
    return rep;
}

// ---------------------------------------------------------------------------
// G2

using Matrix8 = Eigen::Matrix<double, 8, 8>;

struct G2Automorphism {
    Matrix8 matrix = Matrix8::Identity();
    Element<double> t1, t2, t3;

    [[nodiscard]] Element<double> apply(const Element<double>& a) const {
        if (a.dim() != AlgebraDim::O) throw std::invalid_argument("G2Automorphism: octonion expected");
        Eigen::Matrix<double, 8, 1> v;
        for (int i = 0; i < 8; ++i) v(i) = a[i];
        Eigen::Matrix<double, 8, 1> w = matrix * v;
        Element<double> r(AlgebraDim::O);
        for (int i = 0; i < 8; ++i) r[i] = w(i);
        return r;
    }
    [[nodiscard]] ArrowF apply(const ArrowF& g) const { return {apply(g.F), apply(g.G), apply(g.x), apply(g.y)}; }
    [[nodiscard]] PointF apply(const PointF& p) const { return {apply(p.x), apply(p.y)}; }
};

/// The automorphism sending (e1, e2, e4) to (t1, t2, t3); the remaining images
/// are e3 -> t1 t2, e5 -> t1 t3, e6 -> t2 t3, e7 -> (t1 t2) t3.
inline G2Automorphism g2_from_basic_triple(const Element<double>& t1, const Element<double>& t2,
                                           const Element<double>& t3, double tol = 1e-10) {
    for (const auto* t : {&t1, &t2, &t3})
        if (t->dim() != AlgebraDim::O) throw std::invalid_argument("g2_from_basic_triple: octonions expected");
    const Element<double> t12 = t1 * t2;
    const double worst = std::max({std::abs(t1[0]), std::abs(t2[0]), std::abs(t3[0]), std::abs(t1.norm_sq() - 1),
                                   std::abs(t2.norm_sq() - 1), std::abs(t3.norm_sq() - 1), std::abs(inner(t1, t2)),
                                   std::abs(inner(t1, t3)), std::abs(inner(t2, t3)), std::abs(inner(t12, t3))});
    if (worst > tol) throw std::invalid_argument("g2_from_basic_triple: not a basic triple");
    G2Automorphism a;
    a.t1 = t1;
    a.t2 = t2;
    a.t3 = t3;
    const Element<double> cols[8] = {Element<double>::one(AlgebraDim::O), t1, t2, t12, t3, t1 * t3, t2 * t3, t12 * t3};
    for (int j = 0; j < 8; ++j)
        for (int i = 0; i < 8; ++i) a.matrix(i, j) = cols[j][i];
    return a;
}

/// Basic triple by Gram-Schmidt on Gaussian imaginary vectors.
inline G2Automorphism random_g2(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    auto imag = [&] {
        Element<double> e(AlgebraDim::O);
        for (int i = 1; i < 8; ++i) e[i] = n(rng);
        return e;
    };
    auto project_out = [](Element<double> v, const Element<double>& u) { return v - inner(v, u) * u; };
    Element<double> t1 = imag();
    t1 = (1.0 / norm(t1)) * t1;
    Element<double> t2 = project_out(imag(), t1);
    t2 = (1.0 / norm(t2)) * t2;
    const Element<double> t12 = t1 * t2;
    Element<double> t3 = project_out(project_out(project_out(imag(), t1), t2), t12);
    t3 = (1.0 / norm(t3)) * t3;
    return g2_from_basic_triple(t1, t2, t3);
}

/// Largest |A(e_i e_j) - A(e_i) A(e_j)| over the 64 basis pairs.
inline double automorphism_residual(const G2Automorphism& a) {
    using E = Element<double>;
    double worst = 0;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            const E ei = E::basis(AlgebraDim::O, i), ej = E::basis(AlgebraDim::O, j);
            worst = std::max(worst, max_abs(a.apply(ei * ej) - a.apply(ei) * a.apply(ej)));
        }
    return worst;
}

inline VerificationReport verify_g2_equivariance(std::size_t samples = 50, std::uint64_t seed = 0, double tol = 1e-8) {
    Stopwatch watch;
    VerificationReport rep;
    rep.suite = "groupoid/g2";
    rep.seed = seed;
    std::mt19937_64 rng(derive_seed(seed, 2));
    double r_auto = 0, r_orth = 0, r_lambda = 0, r_target = 0, r_compose = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        G2Automorphism a = random_g2(rng);
        r_auto = std::max(r_auto, automorphism_residual(a));
        r_orth = std::max(r_orth, (a.matrix.transpose() * a.matrix - Matrix8::Identity()).cwiseAbs().maxCoeff());
        ArrowF g1 = detail::random_arrow(AlgebraDim::O, rng);
        ArrowF g2 = detail::arrow_at(target(g1), rng);
        ArrowF ag1 = a.apply(g1), ag2 = a.apply(g2);
        r_lambda = std::max(r_lambda, std::abs(rescale(ag1) - rescale(g1)));
        r_target = std::max(r_target, point_distance(target(ag1), a.apply(target(g1))));
        r_compose = std::max(r_compose, arrow_distance(a.apply(compose(g2, g1)), compose(ag2, ag1)));
    }
    const std::string ns = std::to_string(samples) + " automorphisms";
    add_residual(rep, "automorphism_on_basis_pairs", r_auto, tol, "A(e_i e_j) = A(e_i) A(e_j) for all 64 pairs", ns);
    add_residual(rep, "orthogonal", r_orth, tol, "A^T A = I", ns);
    add_residual(rep, "rescaling_invariant", r_lambda, tol, "lambda(A g) = lambda(g)", ns);
    add_residual(rep, "target_equivariant", r_target, tol, "t(A g) = A t(g)", ns);
    add_residual(rep, "composition_equivariant", r_compose, tol, "A(g' g) = (A g')(A g)", ns);
    rep.elapsed_seconds = watch.seconds();
    return rep;
}

}  // namespace hopf
