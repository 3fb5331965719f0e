#pragma once

#include "hopf/algebroid.hpp"
#include "hopf/foliation/j_map.hpp"
#include "hopf/hopf_leaves.hpp"
#include "hopf/report.hpp"

#include <Eigen/Dense>

#include <map>
#include <random>
#include <string>
#include <vector>

namespace hopf {

// ---------------------------------------------------------------------------
// Tangency

enum class TangencyMode { Symbolic, Sampled };

inline JValue<Polynomial> J_of_field(const BaseFrame& f, const VectorFieldO2& X) {
    const int n = f.n();
    if (static_cast<int>(X.c.size()) != 2 * n) throw std::invalid_argument("J_of_field: field has the wrong size");
    Element<Polynomial> u(f.dim, std::vector<Polynomial>(X.c.begin(), X.c.begin() + n));
    Element<Polynomial> v(f.dim, std::vector<Polynomial>(X.c.begin() + n, X.c.end()));
    return J_map(f.x, f.y, u, v);
}

/// Symbolic mode proves J(X) = 0; sampled mode evaluates J(X) at random points
/// (all ring variables drawn from [-1, 1]) and compares against tol.
inline bool is_tangent(const BaseFrame& f, const VectorFieldO2& X, TangencyMode mode = TangencyMode::Symbolic,
                       std::size_t samples = 50, std::uint64_t seed = 0, double tol = 1e-9) {
    JValue<Polynomial> j = J_of_field(f, X);
    std::vector<const Polynomial*> comps = {&j.first, &j.last};
    for (const auto& p : j.middle.coeffs()) comps.push_back(&p);
    if (mode == TangencyMode::Symbolic) {
        for (const auto* p : comps)
            if (!p->is_zero()) return false;
        return true;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> at(f.ctx->size());
    for (std::size_t k = 0; k < samples; ++k) {
        for (auto& a : at) a = u(rng);
        for (const auto* p : comps)
            if (std::abs(p->evaluate_double(at)) > tol) return false;
    }
    return true;
}

/// Numerical J at a point as an (n + 2) x 2n matrix.
inline Eigen::MatrixXd J_matrix_at(const PointF& p) {
    const AlgebraDim d = p.dim();
    const int n = dim_value(d);
    Eigen::MatrixXd m(n + 2, 2 * n);
    using E = Element<double>;
    for (int k = 0; k < 2 * n; ++k) {
        E u = E::zero(d), v = E::zero(d);
        (k < n ? u : v)[k % n] = 1.0;
        JValue<double> j = J_map(p.x, p.y, u, v);
        m(0, k) = j.first;
        for (int r = 0; r < n; ++r) m(r + 1, k) = j.middle[r];
        m(n + 1, k) = j.last;
    }
    return m;
}

/// Dimension of ker J at p, i.e. of the tangent space of the leaf through p.
inline int leaf_dimension_at(const PointF& p, double rel_tol = 1e-8) {
    Eigen::MatrixXd m = J_matrix_at(p);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    int rank = 0;
    if (s.size() > 0 && s(0) > 0)
        for (Eigen::Index i = 0; i < s.size(); ++i) rank += s(i) > rel_tol * s(0);
    return static_cast<int>(m.cols()) - rank;
}

// ---------------------------------------------------------------------------
// Exact linear algebra

using RationalMatrix = std::vector<std::vector<Rational>>;

struct Echelon {
    std::size_t cols = 0;
    std::vector<std::size_t> pivot_cols;
    RationalMatrix rows;  // the first pivot_cols.size() rows are in echelon form
    [[nodiscard]] std::size_t rank() const { return pivot_cols.size(); }
    [[nodiscard]] std::size_t nullity() const { return cols - rank(); }
};

/// Fraction-free (Bareiss) elimination to row echelon form. Integer input stays integral.
inline Echelon bareiss_echelon(RationalMatrix m, std::size_t cols) {
    Echelon e;
    e.cols = cols;
    Rational prev(1);
    std::size_t r = 0;
    for (std::size_t k = 0; k < cols && r < m.size(); ++k) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][k].is_zero()) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[r], m[piv]);
        const Rational p = m[r][k];
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            const Rational a = m[i][k];
            for (std::size_t j = k + 1; j < cols; ++j) {
                if (a.is_zero()) {
                    if (!m[i][j].is_zero()) m[i][j] = m[i][j] * p / prev;
                } else {
                    m[i][j] = (m[i][j] * p - a * m[r][j]) / prev;
                }
            }
            m[i][k] = Rational(0);
        }
        prev = p;
        e.pivot_cols.push_back(k);
        ++r;
    }
    m.resize(r);
    e.rows = std::move(m);
    return e;
}

/// Basis of the nullspace by back substitution, one vector per free column.
inline RationalMatrix nullspace_basis(const Echelon& e) {
    std::vector<bool> is_pivot(e.cols, false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    RationalMatrix basis;
    for (std::size_t fcol = 0; fcol < e.cols; ++fcol) {
        if (is_pivot[fcol]) continue;
        std::vector<Rational> v(e.cols, Rational(0));
        v[fcol] = Rational(1);
        for (std::size_t r = e.rank(); r-- > 0;) {
            const std::size_t pc = e.pivot_cols[r];
            Rational s(0);
            for (std::size_t j = pc + 1; j < e.cols; ++j)
                if (!e.rows[r][j].is_zero() && !v[j].is_zero()) s += e.rows[r][j] * v[j];
            v[pc] = -s / e.rows[r][pc];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Incremental exact row reduction, used as an oracle independent of Bareiss.
/// Rows are cleared of denominators and kept primitive over the integers, which
/// keeps entry sizes bounded by the input instead of growing with each pivot.
class IncrementalRank {
public:
    explicit IncrementalRank(std::size_t cols) : cols_(cols) {}

    void add(const std::vector<Rational>& input) {
        mpz_class l = 1;
        for (const auto& q : input) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.denominator().get_mpz_t());
        std::vector<mpz_class> row(cols_);
        for (std::size_t j = 0; j < cols_; ++j) row[j] = input[j].numerator() * (l / input[j].denominator());
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const std::size_t pc = pivots_[i];
            if (row[pc] == 0) continue;
            const mpz_class a = row[pc], b = basis_[i][pc];
            for (std::size_t j = 0; j < cols_; ++j) row[j] = row[j] * b - a * basis_[i][j];
            make_primitive(row);
        }
        std::size_t pc = 0;
        while (pc < cols_ && row[pc] == 0) ++pc;
        if (pc == cols_) return;
        basis_.push_back(std::move(row));
        pivots_.push_back(pc);
    }
    [[nodiscard]] std::size_t rank() const { return basis_.size(); }
    [[nodiscard]] bool full() const { return basis_.size() == cols_; }

private:
    static void make_primitive(std::vector<mpz_class>& row) {
        mpz_class g = 0;
        for (const auto& e : row)
            if (e != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
        if (g > 1)
            for (auto& e : row) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), g.get_mpz_t());
    }

    std::size_t cols_;
    std::vector<std::vector<mpz_class>> basis_;
    std::vector<std::size_t> pivots_;
};

// ---------------------------------------------------------------------------
// Linear tangent fields

/// u = A x + B y, v = C x + D y with n x n rational matrices.
struct LinearFieldAnsatz {
    AlgebraDim dim = AlgebraDim::O;
    RationalMatrix A, B, C, D;

    static constexpr int kBlocks = 4;
    static std::size_t unknowns(AlgebraDim d) { return static_cast<std::size_t>(kBlocks * dim_value(d) * dim_value(d)); }

    /// Unknown k lives in block k / n^2 at row (k % n^2) / n, column k % n.
    static LinearFieldAnsatz from_vector(AlgebraDim d, const std::vector<Rational>& w) {
        const auto n = static_cast<std::size_t>(dim_value(d));
        LinearFieldAnsatz a{d, {}, {}, {}, {}};
        RationalMatrix* blocks[4] = {&a.A, &a.B, &a.C, &a.D};
        for (int b = 0; b < kBlocks; ++b) {
            blocks[b]->assign(n, std::vector<Rational>(n, Rational(0)));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) (*blocks[b])[i][j] = w[static_cast<std::size_t>(b) * n * n + i * n + j];
        }
        return a;
    }

    template <Scalar S>
    [[nodiscard]] std::pair<Element<S>, Element<S>> field_at(const Element<S>& x, const Element<S>& y) const {
        const int n = dim_value(dim);
        Element<S> u(dim), v(dim);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
                u[i] += S(A[ui][uj]) * x[j] + S(B[ui][uj]) * y[j];
                v[i] += S(C[ui][uj]) * x[j] + S(D[ui][uj]) * y[j];
            }
        return {u, v};
    }

    [[nodiscard]] VectorFieldO2 as_field(const BaseFrame& f) const {
        auto [u, v] = field_at<Polynomial>(f.x, f.y);
        VectorFieldO2 X;
        for (const auto& p : u.coeffs()) X.c.push_back(p);
        for (const auto& p : v.coeffs()) X.c.push_back(p);
        return X;
    }

    [[nodiscard]] bool cross_terms_vanish() const {
        for (const auto* m : {&B, &C})
            for (const auto& row : *m)
                for (const auto& e : row)
                    if (!e.is_zero()) return false;
        return true;
    }
};

namespace detail {

inline std::vector<Rational> unit_vector(std::size_t size, std::size_t k) {
    std::vector<Rational> w(size, Rational(0));
    w[k] = Rational(1);
    return w;
}

struct RowKey {
    int component;
    Monomial mono;
    friend bool operator<(const RowKey& a, const RowKey& b) {
        if (a.component != b.component) return a.component < b.component;
        return a.mono < b.mono;
    }
};

}  // namespace detail

/// Coefficient system of J(Ax + By, Cx + Dy) = 0: one row per (component of J,
/// quadratic monomial in x, y), one column per unknown entry of A, B, C, D.
inline RationalMatrix linear_tangency_system(AlgebraDim d) {
    BaseFrame f(d, {});
    const std::size_t N = LinearFieldAnsatz::unknowns(d);
    std::map<detail::RowKey, std::size_t> row_of;
    RationalMatrix rows;
    for (std::size_t k = 0; k < N; ++k) {
        auto ansatz = LinearFieldAnsatz::from_vector(d, detail::unit_vector(N, k));
        auto [u, v] = ansatz.field_at<Polynomial>(f.x, f.y);
        JValue<Polynomial> j = J_map(f.x, f.y, u, v);
        std::vector<const Polynomial*> comps = {&j.first};
        for (const auto& p : j.middle.coeffs()) comps.push_back(&p);
        comps.push_back(&j.last);
        for (std::size_t c = 0; c < comps.size(); ++c) {
            for (const auto& t : comps[c]->terms()) {
                auto [it, fresh] = row_of.try_emplace({static_cast<int>(c), t.mono}, rows.size());
                if (fresh) rows.emplace_back(N, Rational(0));
                rows[it->second][k] = t.coeff;
            }
        }
    }
    return rows;
}

struct LinearNullspace {
    std::size_t dimension = 0;
    std::size_t equations = 0;
    std::vector<LinearFieldAnsatz> basis;
};

inline LinearNullspace linear_nullspace(AlgebraDim d) {
    if (dim_value(d) < 2 || dim_value(d) > 8) throw std::invalid_argument("linear_nullspace: dimension must be 2, 4 or 8");
    RationalMatrix sys = linear_tangency_system(d);
    const std::size_t N = LinearFieldAnsatz::unknowns(d);
    LinearNullspace out;
    out.equations = sys.size();
    Echelon e = bareiss_echelon(std::move(sys), N);
    out.dimension = e.nullity();
    for (const auto& w : nullspace_basis(e)) out.basis.push_back(LinearFieldAnsatz::from_vector(d, w));
    return out;
}

/// Independent oracle: evaluates J(ansatz) at random integer points, one
/// equation per point and component, and reduces incrementally.
inline std::size_t sampled_linear_nullity(AlgebraDim d, std::size_t points, std::uint64_t seed) {
    const std::size_t N = LinearFieldAnsatz::unknowns(d);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(-9, 9);
    using Q = Element<Rational>;
    std::vector<LinearFieldAnsatz> units;
    units.reserve(N);
    for (std::size_t k = 0; k < N; ++k) units.push_back(LinearFieldAnsatz::from_vector(d, detail::unit_vector(N, k)));
    IncrementalRank rank(N);
    const int n = dim_value(d);
    for (std::size_t p = 0; p < points && !rank.full(); ++p) {
        Q x(d), y(d);
        for (int i = 0; i < n; ++i) {
            x[i] = Rational(coord(rng));
            y[i] = Rational(coord(rng));
        }
        RationalMatrix block(static_cast<std::size_t>(n + 2), std::vector<Rational>(N, Rational(0)));
        for (std::size_t k = 0; k < N; ++k) {
            auto [u, v] = units[k].field_at<Rational>(x, y);
            JValue<Rational> j = J_map(x, y, u, v);
            block[0][k] = j.first;
            for (int r = 0; r < n; ++r) block[static_cast<std::size_t>(r + 1)][k] = j.middle[r];
            block[static_cast<std::size_t>(n + 1)][k] = j.last;
        }
        for (const auto& row : block) rank.add(row);
    }
    return N - rank.rank();
}

// ---------------------------------------------------------------------------
// Flat-metric Lie derivative in two variables

/// Symmetric 2 x 2 tensor with polynomial entries.
struct SymmetricTensor2D {
    Polynomial xx, xy, yy;
    [[nodiscard]] std::size_t residual_terms() const { return xx.size() + xy.size() + yy.size(); }
    friend SymmetricTensor2D operator-(const SymmetricTensor2D& a, const SymmetricTensor2D& b) {
        return {a.xx - b.xx, a.xy - b.xy, a.yy - b.yy};
    }
    [[nodiscard]] SymmetricTensor2D times(const Polynomial& p) const { return {p * xx, p * xy, p * yy}; }
};

/// The plane R^2 with coordinates x = x0, y = y0.
struct Plane {
    RingPtr ctx = RingBuilder().add(base_x(0)).add(base_y(0)).build();
    Polynomial x = var(ctx, base_x(0));
    Polynomial y = var(ctx, base_y(0));
};

struct PlaneField {
    Polynomial X, Y;  // components along d/dx and d/dy
};

/// (L_V g)_ij = d_i V_j + d_j V_i for the flat metric.
inline SymmetricTensor2D lie_derivative_flat(const PlaneField& V) {
    const VariableId vx = base_x(0), vy = base_y(0);
    return {V.X.derive(vx).scaled(2), V.Y.derive(vx) + V.X.derive(vy), V.Y.derive(vy).scaled(2)};
}

/// alpha (.) beta = (alpha (x) beta + beta (x) alpha) / 2 for 1-forms given by components.
inline SymmetricTensor2D symmetric_product(const PlaneField& alpha, const PlaneField& beta) {
    const Rational half(1, 2);
    return {alpha.X * beta.X, (alpha.X * beta.Y + alpha.Y * beta.X).scaled(half), alpha.Y * beta.Y};
}

/// Residual r^2 L_V g - 4 (x dx + y dy) (.) g_flat(V) for V = r^2 (x d/dy - y d/dx).
inline SymmetricTensor2D rotation_example_residual(const Plane& pl) {
    const Polynomial r2 = pl.x * pl.x + pl.y * pl.y;
    PlaneField V{-(r2 * pl.y), r2 * pl.x};
    PlaneField radial{pl.x, pl.y};
    SymmetricTensor2D lhs = lie_derivative_flat(V).times(r2);
    SymmetricTensor2D rhs = symmetric_product(radial, V).times(Polynomial(4));
    return lhs - rhs;
}

// ---------------------------------------------------------------------------
// Reports

/// Integrates dX/dt = rho(u, v) with RK4 and records the worst drift of the
/// leaf invariants relative to the starting point.
inline double flow_invariance_drift(AlgebraDim d, std::size_t trajectories, std::uint64_t seed, double T = 0.5,
                                    int steps = 200) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    auto rnd = [&] {
        Element<double> e(d);
        for (int i = 0; i < dim_value(d); ++i) e[i] = U(rng);
        return e;
    };
    double worst = 0.0;
    for (std::size_t k = 0; k < trajectories; ++k) {
        const Element<double> u = rnd(), v = rnd();
        const PointF start{rnd(), rnd()};
        auto rhs = [&](const PointF& p) {
            auto [a, b] = anchor_components(p.x, p.y, u, v);
            return PointF{a, b};
        };
        PointF p = start;
        const double h = T / steps;
        for (int s = 0; s < steps; ++s) {
            PointF k1 = rhs(p);
            PointF k2 = rhs({p.x + (h / 2) * k1.x, p.y + (h / 2) * k1.y});
            PointF k3 = rhs({p.x + (h / 2) * k2.x, p.y + (h / 2) * k2.y});
            PointF k4 = rhs({p.x + h * k3.x, p.y + h * k3.y});
            p.x += (h / 6) * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
            p.y += (h / 6) * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
        }
        auto a = leaf_invariants(start), b = leaf_invariants(p);
        worst = std::max({worst, std::abs(a.radius_sq - b.radius_sq), std::abs(a.x_norm_sq - b.x_norm_sq),
                          max_abs(a.y_xbar - b.y_xbar)});
    }
    return worst;
}

/// Smallest total degree over the components of the anchors of the 2n basis sections.
inline int min_generator_degree(AlgebraDim d) {
    BaseFrame f(d, {});
    using EP = Element<Polynomial>;
    int lowest = -1;
    for (int k = 0; k < 2 * f.n(); ++k) {
        EP u = EP::zero(d), v = EP::zero(d);
        (k < f.n() ? u : v)[k % f.n()] = Polynomial(1);
        for (const auto& p : anchor(f, {u, v}).c) {
            if (p.is_zero()) continue;
            const int m = p.min_degree();
            lowest = lowest < 0 ? m : std::min(lowest, m);
        }
    }
    return lowest;
}

inline VerificationReport linear_obstruction_report(std::uint64_t seed = 0) {
    Stopwatch watch;
    VerificationReport rep;
    rep.suite = "foliation/linear_obstruction";
    rep.seed = seed;
    LinearNullspace ns = linear_nullspace(AlgebraDim::O);
    rep.add("no_linear_tangent_fields", ns.dimension == 0, "dimension", ns.dimension,
            "the only linear field tangent to the octonionic leaves is zero",
            std::to_string(ns.equations) + " equations in " + std::to_string(LinearFieldAnsatz::unknowns(AlgebraDim::O)) +
                " unknowns");
    const int deg = min_generator_degree(AlgebraDim::O);
    rep.add("generators_vanish_quadratically", deg >= 2, "value", deg,
            "every generator component has minimum total degree at least 2 at the origin");
    Plane pl;
    add_exact(rep, "rotation_example_identity", rotation_example_residual(pl).residual_terms(),
              "r^2 L_V g - 4 (x dx + y dy) (.) g_flat(V) = 0 for V = r^2 (x d/dy - y d/dx)");
    rep.elapsed_seconds = watch.seconds();
    return rep;
}

inline VerificationReport verify_foliation(AlgebraDim d = AlgebraDim::O, std::size_t samples = 20,
                                           std::uint64_t seed = 0, double tol = 1e-8) {
    if (d != AlgebraDim::C && d != AlgebraDim::H && d != AlgebraDim::O)
        throw std::invalid_argument("verify_foliation: dimension must be 2, 4 or 8");
    Stopwatch watch;
    VerificationReport rep;
    rep.suite = std::string("foliation/") + dim_name(d);
    rep.seed = seed;
    const int n = dim_value(d);

    LinearNullspace ns = linear_nullspace(d);
    const std::size_t expected = n == 8 ? 0 : n == 4 ? 3 : 1;
    rep.add("linear_nullspace_dimension", ns.dimension == expected, "dimension", ns.dimension,
            "dimension of the space of linear tangent fields",
            "expected " + std::to_string(expected) + "; " + std::to_string(ns.equations) + " equations");
    const std::size_t points = 4 * static_cast<std::size_t>(n * n);
    const std::size_t sampled = sampled_linear_nullity(d, points, derive_seed(seed, 6));
    rep.add("sampled_nullspace_agrees", sampled == ns.dimension, "dimension", sampled,
            "nullity of the point-sampled system equals the exact nullity",
            "up to " + std::to_string(points) + " random integer points");
    BaseFrame f(d, {"u", "v"});
    bool basis_ok = true;
    for (const auto& b : ns.basis) basis_ok = basis_ok && b.cross_terms_vanish() && is_tangent(f, b.as_field(f));
    rep.add("nullspace_basis_tangent", basis_ok, "value", basis_ok,
            "each basis field is tangent and has no cross terms between x and y");
    rep.add("anchor_tangent", is_tangent(f, anchor(f, f.constant_section("u", "v"))), "value", true,
            "rho(u, v) is tangent for symbolic u, v");
    double drift = flow_invariance_drift(d, samples, derive_seed(seed, 7));
    add_residual(rep, "flow_invariance", drift, tol, "integral curves of rho(u, v) stay on one leaf",
                 std::to_string(samples) + " RK4 trajectories");
    rep.elapsed_seconds = watch.seconds();
    return rep;
}

}  // namespace hopf
