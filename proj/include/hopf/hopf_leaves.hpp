#pragma once

#include "hopf/cayley_dickson.hpp"
#include "hopf/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopf {

template <Scalar S>
struct PointD2 {
    Element<S> x;
    Element<S> y;

    [[nodiscard]] AlgebraDim dim() const { return x.dim(); }
    [[nodiscard]] S norm_sq() const { return x.norm_sq() + y.norm_sq(); }
    static PointD2 origin(AlgebraDim d) { return {Element<S>::zero(d), Element<S>::zero(d)}; }
};

using PointF = PointD2<double>;
using PointQ = PointD2<Rational>;

inline double distance(const PointF& a, const PointF& b) {
    return std::sqrt((a.x - b.x).norm_sq() + (a.y - b.y).norm_sq());
}

enum class LeafKind { Origin, Infinity, Finite };

template <Scalar S>
struct LeafId {
    LeafKind kind = LeafKind::Origin;
    Element<S> slope;  // meaningful only for Finite
    S radius_sq = S(0);
};

/// Leaf of the singular Hopf decomposition containing p: the origin, the
/// sphere of radius |y| on the line at infinity, or L_{m,r} with m = y x^{-1}.
template <Scalar S>
    requires(!is_polynomial_v<S>)
LeafId<S> classify(const PointD2<S>& p) {
    LeafId<S> id;
    id.radius_sq = p.norm_sq();
    const bool x_zero = p.x.is_zero();
    if (x_zero && p.y.is_zero()) {
        id.kind = LeafKind::Origin;
        id.slope = Element<S>::zero(p.dim());
        return id;
    }
    if (x_zero) {
        id.kind = LeafKind::Infinity;
        id.slope = Element<S>::zero(p.dim());
        return id;
    }
    id.kind = LeafKind::Finite;
    id.slope = p.y * inverse(p.x);
    return id;
}

/// Division-free leaf invariants: (|x|^2 + |y|^2, |x|^2, y conj(x)).
/// Two points lie on the same leaf exactly when all three agree, because
/// (m x) conj(x) = m |x|^2 by alternativity.
template <Scalar S>
struct LeafInvariants {
    S radius_sq;
    S x_norm_sq;
    Element<S> y_xbar;
};

template <Scalar S>
LeafInvariants<S> leaf_invariants(const PointD2<S>& p) {
    return {p.norm_sq(), p.x.norm_sq(), p.y * p.x.conj()};
}

/// Same-leaf test within tol relative to max(1, r^2). With tol = 0 on the
/// rational backend the comparison is exact.
template <Scalar S>
    requires(!is_polynomial_v<S>)
bool same_leaf(const PointD2<S>& p, const PointD2<S>& q, double tol = 0.0) {
    if (tol < 0) throw std::invalid_argument("same_leaf: negative tolerance");
    auto a = leaf_invariants(p);
    auto b = leaf_invariants(q);
    if constexpr (std::is_same_v<S, Rational>) {
        if (tol == 0.0) return a.radius_sq == b.radius_sq && a.x_norm_sq == b.x_norm_sq && a.y_xbar == b.y_xbar;
        auto pa = PointD2<double>{convert<Rational, double>(p.x), convert<Rational, double>(p.y)};
        auto pb = PointD2<double>{convert<Rational, double>(q.x), convert<Rational, double>(q.y)};
        return same_leaf(pa, pb, tol);
    } else {
        const double scale = std::max(1.0, std::max(a.radius_sq, b.radius_sq));
        const double lim = tol * scale;
        return std::abs(a.radius_sq - b.radius_sq) <= lim && std::abs(a.x_norm_sq - b.x_norm_sq) <= lim &&
               std::sqrt((a.y_xbar - b.y_xbar).norm_sq()) <= lim;
    }
}

/// Uniform unit vector via normalized Gaussians.
inline Element<double> random_unit(AlgebraDim d, std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    for (;;) {
        Element<double> u(d);
        for (int i = 0; i < dim_value(d); ++i) u[i] = n(rng);
        double r = norm(u);
        if (r > 1e-12) return (1.0 / r) * u;
    }
}

/// n points on the given leaf, deterministic in seed. Points on L_{m,r} are
/// x = c u, y = m x with c = r / sqrt(1 + |m|^2) and u a random unit vector.
inline std::vector<PointF> sample_leaf(const LeafId<double>& leaf, std::size_t n, std::uint64_t seed,
                                       AlgebraDim d = AlgebraDim::O) {
    if (n < 1) throw std::invalid_argument("sample_leaf: n must be at least 1");
    if (leaf.radius_sq < 0) throw std::invalid_argument("sample_leaf: negative radius");
    if (leaf.kind == LeafKind::Finite) d = leaf.slope.dim();
    std::vector<PointF> out;
    out.reserve(n);
    if (leaf.kind == LeafKind::Origin) {
        out.assign(n, PointF::origin(d));
        return out;
    }
    std::mt19937_64 rng(seed);
    const double r = std::sqrt(leaf.radius_sq);
    for (std::size_t k = 0; k < n; ++k) {
        Element<double> u = random_unit(d, rng);
        if (leaf.kind == LeafKind::Infinity) {
            out.push_back({Element<double>::zero(d), r * u});
        } else {
            const double c = r / std::sqrt(1.0 + leaf.slope.norm_sq());
            Element<double> x = c * u;
            out.push_back({x, leaf.slope * x});
        }
    }
    return out;
}

inline void write_leaf_csv(std::ostream& os, const std::vector<PointF>& pts) {
    const int n = pts.empty() ? 8 : dim_value(pts.front().dim());
    for (int i = 0; i < n; ++i) os << (i ? "," : "") << "x" << i;
    for (int i = 0; i < n; ++i) os << ",y" << i;
    os << "\n" << std::setprecision(17);
    for (const auto& p : pts) {
        for (int i = 0; i < n; ++i) os << (i ? "," : "") << p.x[i];
        for (int i = 0; i < n; ++i) os << "," << p.y[i];
        os << "\n";
    }
}

struct LeafResiduals {
    double sphere = 0.0;  // max | |p|^2 - r^2 |
    double slope = 0.0;   // max | y - m x | (or |x| on the line at infinity)
};

inline LeafResiduals leaf_residuals(const LeafId<double>& leaf, const std::vector<PointF>& pts) {
    LeafResiduals r;
    for (const auto& p : pts) {
        r.sphere = std::max(r.sphere, std::abs(p.norm_sq() - leaf.radius_sq));
        double s = 0.0;
        switch (leaf.kind) {
            case LeafKind::Origin: s = std::sqrt(p.norm_sq()); break;
            case LeafKind::Infinity: s = norm(p.x); break;
            case LeafKind::Finite: s = norm(p.y - leaf.slope * p.x); break;
        }
        r.slope = std::max(r.slope, s);
    }
    return r;
}

/// Solution u3 of (x u1) u2 = x u3, namely u3 = x^{-1} ((x u1) u2).
template <Scalar S>
    requires(!is_polynomial_v<S>)
Element<S> right_mult_solution(const Element<S>& x, const Element<S>& u1, const Element<S>& u2) {
    return inverse(x) * ((x * u1) * u2);
}

/// Right multiplication by unit octonions does not fibrate the 15-sphere:
/// with (x, y) proportional to (e1, e2), u1 = e5, u2 = e4 the equations for
/// x and for y force different u3. The common factor 1/sqrt(2) cancels in
/// x^{-1}((x u1) u2), so the rational computation uses x = e1, y = e2.
inline VerificationReport right_mult_counterexample(AlgebraDim d = AlgebraDim::O) {
    Stopwatch watch;
    VerificationReport rep;
    rep.suite = std::string("leaves/right_multiplication/") + dim_name(d);
    using Q = Element<Rational>;
    if (dim_value(d) == 8) {
        const Q x = Q::basis(d, 1), y = Q::basis(d, 2), u1 = Q::basis(d, 5), u2 = Q::basis(d, 4);
        Q ux = right_mult_solution(x, u1, u2);
        Q uy = right_mult_solution(y, u1, u2);
        rep.add("u3_from_x_equation", ux == -Q::basis(d, 1), "value", detail::to_json(ux),
                "(x u1) u2 = x u3 has the unique solution u3 = -e1");
        rep.add("u3_from_y_equation", uy == Q::basis(d, 1), "value", detail::to_json(uy),
                "(y u1) u2 = y u3 has the unique solution u3 = e1");
        rep.add("solutions_contradict", ux != uy, "value", ux != uy,
                "no common u3 exists, so right multiplication does not fibrate the 15-sphere");
    } else if (dim_value(d) == 4) {
        // Quaternions: with x = e1, y = e2, u1 = e3, u2 = e2 both equations give u1 u2.
        const Q x = Q::basis(d, 1), y = Q::basis(d, 2), u1 = Q::basis(d, 3), u2 = Q::basis(d, 2);
        Q ux = right_mult_solution(x, u1, u2);
        Q uy = right_mult_solution(y, u1, u2);
        rep.add("solutions_coincide", ux == uy && ux == u1 * u2, "value", detail::to_json(ux),
                "associativity makes u3 = u1 u2 solve both equations");
    } else {
        throw std::invalid_argument("right_mult_counterexample: dimension 4 or 8 only");
    }
    rep.elapsed_seconds = watch.seconds();
    return rep;
}

}  // namespace hopf
