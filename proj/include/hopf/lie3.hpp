#pragma once

#include "hopf/algebroid.hpp"
#include "hopf/cayley_dickson.hpp"
#include "hopf/foliation/j_map.hpp"
#include "hopf/report.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace hopf {

// ---------------------------------------------------------------------------
// Differentials, generic over the scalar backend

/// d1(mu, a, nu) = (mu x + a y, nu y + conj(a) x).
template <Scalar S>
std::pair<Element<S>, Element<S>> d1_components(const Element<S>& x, const Element<S>& y, const S& mu,
                                                const Element<S>& a, const S& nu) {
    return {mu * x + a * y, nu * y + a.conj() * x};
}

/// d2(t) = (-|y|^2 t, (x conj(y)) t, -|x|^2 t).
template <Scalar S>
std::tuple<S, Element<S>, S> d2_components(const Element<S>& x, const Element<S>& y, const S& t) {
    return {-(y.norm_sq() * t), t * (x * y.conj()), -(x.norm_sq() * t)};
}

// ---------------------------------------------------------------------------
// Graded sections

/// Section of E0 (degree 0, rank 2n), E-1 (degree -1, rank n + 2) or E-2 (degree -2, rank 1).
/// Components are stored flat: (u, v), (mu, a, nu) or (t).
struct GradedSection {
    int degree = 0;
    AlgebraDim dim = AlgebraDim::O;
    std::vector<Polynomial> c;

    static int rank(int degree, AlgebraDim d) {
        switch (degree) {
            case 0: return 2 * dim_value(d);
            case -1: return dim_value(d) + 2;
            case -2: return 1;
            default: throw std::invalid_argument("GradedSection: degree must be 0, -1 or -2");
        }
    }

    static GradedSection zero(int degree, AlgebraDim d) {
        return {degree, d, std::vector<Polynomial>(static_cast<std::size_t>(rank(degree, d)))};
    }
    static GradedSection e0(const Element<Polynomial>& u, const Element<Polynomial>& v) {
        GradedSection s{0, u.dim(), {}};
        s.c = u.coeffs();
        s.c.insert(s.c.end(), v.coeffs().begin(), v.coeffs().end());
        return s;
    }
    static GradedSection e1(const Polynomial& mu, const Element<Polynomial>& a, const Polynomial& nu) {
        GradedSection s{-1, a.dim(), {mu}};
        s.c.insert(s.c.end(), a.coeffs().begin(), a.coeffs().end());
        s.c.push_back(nu);
        return s;
    }
    static GradedSection e2(AlgebraDim d, const Polynomial& t) { return {-2, d, {t}}; }

    [[nodiscard]] int n() const { return dim_value(dim); }
    [[nodiscard]] Element<Polynomial> slice(int from) const {
        return Element<Polynomial>(dim, std::vector<Polynomial>(c.begin() + from, c.begin() + from + n()));
    }
    [[nodiscard]] Element<Polynomial> u() const { return expect(0), slice(0); }
    [[nodiscard]] Element<Polynomial> v() const { return expect(0), slice(n()); }
    [[nodiscard]] const Polynomial& mu() const { return expect(-1), c.front(); }
    [[nodiscard]] Element<Polynomial> a() const { return expect(-1), slice(1); }
    [[nodiscard]] const Polynomial& nu() const { return expect(-1), c.back(); }
    [[nodiscard]] const Polynomial& t() const { return expect(-2), c.front(); }
    [[nodiscard]] SectionP as_e0() const { return {u(), v()}; }

    [[nodiscard]] std::size_t residual_terms() const {
        std::size_t k = 0;
        for (const auto& p : c) k += p.size();
        return k;
    }
    [[nodiscard]] GradedSection scaled(const Rational& r) const {
        GradedSection s = *this;
        for (auto& p : s.c) p = p.scaled(r);
        return s;
    }
    friend GradedSection operator+(const GradedSection& a, const GradedSection& b) {
        check_same(a, b);
        GradedSection s = a;
        for (std::size_t k = 0; k < s.c.size(); ++k) s.c[k] += b.c[k];
        return s;
    }
    friend GradedSection operator-(const GradedSection& a, const GradedSection& b) { return a + b.scaled(-1); }

private:
    void expect(int d) const {
        if (degree != d) throw std::invalid_argument("GradedSection: accessor does not match degree");
    }
    static void check_same(const GradedSection& a, const GradedSection& b) {
        if (a.degree != b.degree || a.dim != b.dim) throw std::invalid_argument("GradedSection: degree mismatch");
    }
};

/// Sum of optional sections where nullopt stands for zero.
inline std::optional<GradedSection> add_opt(const std::optional<GradedSection>& a,
                                            const std::optional<GradedSection>& b) {
    if (!a) return b;
    if (!b) return a;
    return *a + *b;
}

inline std::size_t residual_terms(const std::optional<GradedSection>& s) { return s ? s->residual_terms() : 0; }

/// Differential d: E-1 -> E0 and E-2 -> E-1. Degree-0 sections have no differential.
inline std::optional<GradedSection> differential(const BaseFrame& f, const GradedSection& s) {
    if (s.degree == -1) {
        auto [p, q] = d1_components(f.x, f.y, s.mu(), s.a(), s.nu());
        return GradedSection::e0(p, q);
    }
    if (s.degree == -2) {
        auto [m, a, n] = d2_components(f.x, f.y, s.t());
        return GradedSection::e1(m, a, n);
    }
    return std::nullopt;
}

inline GradedSection d1(const BaseFrame& f, const GradedSection& s) {
    if (s.degree != -1) throw std::invalid_argument("d1: section of degree -1 expected");
    return *differential(f, s);
}
inline GradedSection d2(const BaseFrame& f, const GradedSection& s) {
    if (s.degree != -2) throw std::invalid_argument("d2: section of degree -2 expected");
    return *differential(f, s);
}

namespace detail {

/// Bracket formulas on the listed degree pairs with the higher degree first.
inline GradedSection bracket_formula(const BaseFrame& f, const GradedSection& s, const GradedSection& t) {
    const auto& x = f.x;
    const auto& y = f.y;
    if (s.degree == 0 && t.degree == 0) {
        SectionP r = bracket_pointwise(f, s.as_e0(), t.as_e0());
        return GradedSection::e0(r.u, r.v);
    }
    if (s.degree == 0 && t.degree == -1) {
        const auto u = s.u(), v = s.v(), a = t.a();
        const Polynomial &mu = t.mu(), &nu = t.nu();
        const Polynomial two(2);
        Polynomial c0 = two * (mu * inner(y, v) - inner(y, a.conj() * u));
        Element<Polynomial> mid = x * (u.conj() * a) + (a * v) * y.conj() - mu * (x * v.conj()) - nu * (u * y.conj());
        Polynomial c2 = two * (nu * inner(x, u) - inner(x, a * v));
        return GradedSection::e1(c0, mid, c2);
    }
    if (s.degree == 0 && t.degree == -2) {
        return GradedSection::e2(f.dim, Polynomial(2) * (inner(x, s.u()) + inner(y, s.v())) * t.t());
    }
    if (s.degree == -1 && t.degree == -1) {
        return GradedSection::e2(f.dim, Polynomial(4) * inner(s.a(), t.a()) - Polynomial(2) * s.mu() * t.nu() -
                                            Polynomial(2) * t.mu() * s.nu());
    }
    throw std::logic_error("bracket_formula: unlisted degree pair");
}

inline GradedSection apply_anchor(const BaseFrame& f, const VectorFieldO2& X, const GradedSection& s) {
    GradedSection r = s;
    for (auto& p : r.c) p = apply_field(f, X, p);
    return r;
}

}  // namespace detail

/// Graded 2-bracket with [x,y] = -(-1)^{|x||y|}[y,x]. Brackets whose degree
/// would fall below -2 are zero (nullopt). A degree-0 argument acts on the
/// coefficients of the other argument through the anchor.
inline std::optional<GradedSection> bracket(const BaseFrame& f, const GradedSection& s, const GradedSection& t) {
    if (s.dim != f.dim || t.dim != f.dim) throw std::invalid_argument("bracket: dimension mismatch");
    if (s.degree < t.degree) {
        auto r = bracket(f, t, s);
        if (!r) return r;
        const bool odd = (s.degree * t.degree) % 2 != 0;
        return r->scaled(odd ? 1 : -1);
    }
    if (s.degree + t.degree < -2) return std::nullopt;
    GradedSection r = detail::bracket_formula(f, s, t);
    if (s.degree == 0) {
        r = r + detail::apply_anchor(f, anchor(f, s.as_e0()), t);
        if (t.degree == 0) r = r - detail::apply_anchor(f, anchor(f, t.as_e0()), s);
    }
    return r;
}

/// d[s,t] - [ds,t] - (-1)^{|s|}[s,dt]; nullopt when every term vanishes by degree.
inline std::optional<GradedSection> leibniz_residual(const BaseFrame& f, const GradedSection& s,
                                                     const GradedSection& t) {
    std::optional<GradedSection> lhs;
    if (auto b = bracket(f, s, t)) lhs = differential(f, *b);
    std::optional<GradedSection> rhs;
    if (auto ds = differential(f, s)) rhs = add_opt(rhs, bracket(f, *ds, t));
    if (auto dt = differential(f, t)) {
        auto term = bracket(f, s, *dt);
        if (term && s.degree % 2 != 0) term = term->scaled(-1);
        rhs = add_opt(rhs, term);
    }
    if (!rhs) return lhs;
    return add_opt(lhs, rhs->scaled(-1));
}

/// Sum over cyclic (p, q, r) of (-1)^{|p||r|} [p, [q, r]].
inline std::optional<GradedSection> jacobiator(const BaseFrame& f, const GradedSection& a, const GradedSection& b,
                                               const GradedSection& c) {
    std::optional<GradedSection> sum;
    const std::array<std::array<const GradedSection*, 3>, 3> cyc = {{{&a, &b, &c}, {&b, &c, &a}, {&c, &a, &b}}};
    for (const auto& [p, q, r] : cyc) {
        auto inner_br = bracket(f, *q, *r);
        if (!inner_br) continue;
        auto outer = bracket(f, *p, *inner_br);
        if (!outer) continue;
        if ((p->degree * r->degree) % 2 != 0) outer = outer->scaled(-1);
        sum = add_opt(sum, outer);
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Verification

enum class Lie3Mode { Symbolic, Sampled };

namespace detail {

inline std::vector<std::pair<std::string, int>> section_variables(int degree, const std::string& tag, int n) {
    switch (degree) {
        case 0: return {{"u" + tag, n}, {"v" + tag, n}};
        case -1: return {{"mu" + tag, 1}, {"a" + tag, n}, {"nu" + tag, 1}};
        default: return {{"t" + tag, 1}};
    }
}

inline GradedSection symbolic_section(const BaseFrame& f, int degree, const std::string& tag) {
    switch (degree) {
        case 0: return GradedSection::e0(f.section("u" + tag), f.section("v" + tag));
        case -1: return GradedSection::e1(f.scalar("mu" + tag), f.section("a" + tag), f.scalar("nu" + tag));
        default: return GradedSection::e2(f.dim, f.scalar("t" + tag));
    }
}

inline GradedSection random_constant_section(AlgebraDim d, int degree, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coef(-4, 4);
    GradedSection s = GradedSection::zero(degree, d);
    for (auto& p : s.c) p = Polynomial(Rational(coef(rng)));
    return s;
}

/// Frame plus one section per requested degree: fully symbolic, or random
/// integer constants in sampled mode.
struct CaseSetup {
    BaseFrame frame;
    std::vector<GradedSection> sections;
};

inline CaseSetup make_case(AlgebraDim d, const std::vector<int>& degrees, Lie3Mode mode, std::mt19937_64& rng) {
    static const std::array<std::string, 3> tags = {"", "'", "''"};
    std::vector<std::pair<std::string, int>> vars;
    if (mode == Lie3Mode::Symbolic)
        for (std::size_t k = 0; k < degrees.size(); ++k) {
            auto v = section_variables(degrees[k], tags[k], dim_value(d));
            vars.insert(vars.end(), v.begin(), v.end());
        }
    CaseSetup c{BaseFrame::with_variables(d, vars), {}};
    for (std::size_t k = 0; k < degrees.size(); ++k)
        c.sections.push_back(mode == Lie3Mode::Symbolic ? symbolic_section(c.frame, degrees[k], tags[k])
                                                        : random_constant_section(d, degrees[k], rng));
    return c;
}

inline std::string degree_label(const std::vector<int>& degrees) {
    std::string s;
    for (int g : degrees) s += (g == 0 ? "0" : g == -1 ? "m1" : "m2");
    return s;
}

inline bool vanishes_at_origin(const BaseFrame& f, const GradedSection& s) {
    const auto at0 = f.origin();
    for (const auto& p : s.c)
        if (!p.partial_evaluate(at0).is_zero()) return false;
    return true;
}

}  // namespace detail

/// Proves the Lie 3-algebroid identities. In symbolic mode every section
/// component is an indeterminate; in sampled mode section components are
/// random integers while the base point stays symbolic, repeated `samples` times.
inline VerificationReport verify_lie3(Lie3Mode mode = Lie3Mode::Symbolic, std::size_t samples = 3,
                                      std::uint64_t seed = 0, AlgebraDim d = AlgebraDim::O) {
    Stopwatch watch;
    VerificationReport rep;
    rep.suite = std::string("lie3/") + (mode == Lie3Mode::Symbolic ? "symbolic/" : "sampled/") + dim_name(d);
    rep.seed = seed;
    std::mt19937_64 rng(derive_seed(seed, 4));
    const std::size_t rounds = mode == Lie3Mode::Symbolic ? 1 : samples;

    auto run = [&](const std::string& name, const std::vector<int>& degrees, const std::string& anchor_text,
                   auto&& residual) {
        std::size_t worst = 0, nvars = 0;
        for (std::size_t k = 0; k < rounds; ++k) {
            auto c = detail::make_case(d, degrees, mode, rng);
            nvars = c.frame.ctx->size();
            worst = std::max(worst, residual(c.frame, c.sections));
        }
        add_exact(rep, name, worst, anchor_text,
                  std::to_string(nvars) + " indeterminates" +
                      (mode == Lie3Mode::Sampled ? ", " + std::to_string(rounds) + " section samples" : ""));
    };

    run("rho_after_d1", {-1}, "rho(d1(mu,a,nu)) = 0", [](const BaseFrame& f, const auto& s) {
        SectionP e = d1(f, s[0]).as_e0();
        return anchor(f, e).residual_terms();
    });
    run("d1_after_d2", {-2}, "d1(d2(t)) = 0",
        [](const BaseFrame& f, const auto& s) { return d1(f, d2(f, s[0])).residual_terms(); });

    for (const auto& pr : std::vector<std::vector<int>>{{0, -1}, {0, -2}, {-1, -1}, {-1, -2}}) {
        run("leibniz_" + detail::degree_label(pr), pr, "d[s,t] = [ds,t] + (-1)^|s| [s,dt]",
            [](const BaseFrame& f, const auto& s) { return residual_terms(leibniz_residual(f, s[0], s[1])); });
    }
    for (const auto& tr : std::vector<std::vector<int>>{{0, 0, 0}, {0, 0, -1}, {0, 0, -2}, {0, -1, -1}}) {
        run("jacobi_" + detail::degree_label(tr), tr, "graded Jacobi identity",
            [](const BaseFrame& f, const auto& s) { return residual_terms(jacobiator(f, s[0], s[1], s[2])); });
    }
    for (const auto& pr : std::vector<std::vector<int>>{{0, 0}, {0, -1}, {0, -2}, {-1, -1}}) {
        run("antisymmetry_" + detail::degree_label(pr), pr, "[s,t] = -(-1)^{|s||t|} [t,s]",
            [](const BaseFrame& f, const auto& s) {
                auto st = bracket(f, s[0], s[1]);
                auto ts = bracket(f, s[1], s[0]);
                const bool odd = (s[0].degree * s[1].degree) % 2 != 0;
                if (ts && odd) ts = ts->scaled(-1);
                return residual_terms(add_opt(st, ts));
            });
    }

    // Every other degree triple sums below -2, so each nested bracket is zero by degree.
    {
        bool all_null = true;
        std::size_t triples = 0;
        auto f = BaseFrame::with_variables(d, {});
        for (int a = 0; a >= -2; --a)
            for (int b = a; b >= -2; --b)
                for (int c = b; c >= -2; --c) {
                    if (a + b + c >= -2) continue;
                    ++triples;
                    auto j = jacobiator(f, GradedSection::zero(a, d), GradedSection::zero(b, d),
                                        GradedSection::zero(c, d));
                    all_null = all_null && !j.has_value();
                }
        rep.add("jacobi_other_triples_vanish_by_degree", all_null, "value", triples,
                "every nested bracket in the remaining degree triples lands below degree -2");
    }

    // Minimality at the origin: d1, d2 and rho vanish there.
    {
        auto c = detail::make_case(d, {0, -1, -2}, Lie3Mode::Symbolic, rng);
        const auto& f = c.frame;
        const bool d1_zero = detail::vanishes_at_origin(f, d1(f, c.sections[1]));
        const bool d2_zero = detail::vanishes_at_origin(f, d2(f, c.sections[2]));
        VectorFieldO2 r = anchor(f, c.sections[0].as_e0());
        bool rho_zero = true;
        for (const auto& p : r.c) rho_zero = rho_zero && p.partial_evaluate(f.origin()).is_zero();
        rep.add("minimal_at_origin", d1_zero && d2_zero && rho_zero, "value",
                {{"d1", d1_zero}, {"d2", d2_zero}, {"rho", rho_zero}}, "d1, d2 and rho all vanish at the origin");
        auto [ru, rv] = anchor_components(f.x, f.y, c.sections[0].u(), c.sections[0].v());
        JValue<Polynomial> j = J_map(f.x, f.y, ru, rv);
        add_exact(rep, "J_after_rho", j.first.size() + residual_terms(j.middle) + j.last.size(), "J(rho(u,v)) = 0");
    }
    rep.elapsed_seconds = watch.seconds();
    return rep;
}

// ---------------------------------------------------------------------------
// Transcribed J matrix

/// The 10 x 16 tangency matrix exactly as printed for the Macaulay2 session.
inline const std::array<std::array<const char*, 16>, 10>& transcribed_J_matrix() {
    static const std::array<std::array<const char*, 16>, 10> m = {{
        {"x_0", "x_1", "x_2", "x_3", "x_4", "x_5", "x_6", "x_7", "0", "0", "0", "0", "0", "0", "0", "0"},
        {"y_0", "y_1", "y_2", "y_3", "y_4", "y_5", "y_6", "y_7", "x_0", "x_1", "x_2", "x_3", "x_4", "x_5", "x_6", "x_7"},
        {"-y_1", "y_0", "-y_3", "y_2", "-y_5", "y_4", "y_7", "-y_6", "x_1", "-x_0", "x_3", "-x_2", "x_5", "-x_4", "-x_7", "x_6"},
        {"-y_2", "y_3", "y_0", "-y_1", "-y_6", "-y_7", "y_4", "y_5", "x_2", "-x_3", "-x_0", "x_1", "x_6", "x_7", "-x_4", "-x_5"},
        {"-y_3", "-y_2", "y_1", "y_0", "-y_7", "y_6", "-y_5", "y_4", "x_3", "x_2", "-x_1", "-x_0", "x_7", "-x_6", "x_5", "-x_4"},
        {"-y_4", "y_5", "y_6", "y_7", "y_0", "-y_1", "-y_2", "-y_3", "x_4", "-x_5", "-x_6", "-x_7", "-x_0", "x_1", "x_2", "x_3"},
        {"-y_5", "-y_4", "y_7", "-y_6", "y_1", "y_0", "y_3", "-y_2", "x_5", "x_4", "-x_7", "x_6", "-x_1", "-x_0", "-x_3", "x_2"},
        {"-y_6", "-y_7", "-y_4", "y_5", "y_2", "-y_3", "y_0", "y_1", "x_6", "x_7", "x_4", "-x_5", "-x_2", "x_3", "-x_0", "-x_1"},
        {"-y_7", "y_6", "-y_5", "-y_4", "y_3", "y_2", "-y_1", "y_0", "x_7", "-x_6", "x_5", "x_4", "-x_3", "-x_2", "x_1", "-x_0"},
        {"0", "0", "0", "0", "0", "0", "0", "0", "y_0", "y_1", "y_2", "y_3", "y_4", "y_5", "y_6", "y_7"},
    }};
    return m;
}

/// Parses "0", "x_3", "-y_5".
inline Polynomial parse_matrix_entry(const RingPtr& ctx, std::string_view s) {
    if (s == "0") return Polynomial();
    bool neg = false;
    if (!s.empty() && s.front() == '-') {
        neg = true;
        s.remove_prefix(1);
    }
    if (s.size() != 3 || (s[0] != 'x' && s[0] != 'y') || s[1] != '_' || s[2] < '0' || s[2] > '7')
        throw std::invalid_argument("parse_matrix_entry: unexpected entry " + std::string(s));
    const int i = s[2] - '0';
    Polynomial p = var(ctx, s[0] == 'x' ? base_x(i) : base_y(i));
    return neg ? -p : p;
}

using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// Matrix of J on the basis (e_0..e_7 in u, then e_0..e_7 in v), rows
/// (<x,u>, components of u conj(y) + x conj(v), <y,v>).
inline PolyMatrix generated_J_matrix(const BaseFrame& f) {
    const int n = f.n();
    PolyMatrix m(static_cast<std::size_t>(n + 2), std::vector<Polynomial>(static_cast<std::size_t>(2 * n)));
    using EP = Element<Polynomial>;
    for (int k = 0; k < 2 * n; ++k) {
        EP u = EP::zero(f.dim), v = EP::zero(f.dim);
        (k < n ? u : v)[k % n] = Polynomial(1);
        JValue<Polynomial> j = J_map(f.x, f.y, u, v);
        const auto col = static_cast<std::size_t>(k);
        m[0][col] = j.first;
        for (int r = 0; r < n; ++r) m[static_cast<std::size_t>(r + 1)][col] = j.middle[r];
        m[static_cast<std::size_t>(n + 1)][col] = j.last;
    }
    return m;
}

inline VerificationReport verify_transcribed_matrix() {
    Stopwatch watch;
    VerificationReport rep;
    rep.suite = "lie3/transcribed_matrix";
    BaseFrame f(AlgebraDim::O, {});
    PolyMatrix gen = generated_J_matrix(f);
    const auto& lit = transcribed_J_matrix();
    std::size_t matches = 0;
    nlohmann::json mismatches = nlohmann::json::array();
    for (std::size_t r = 0; r < 10; ++r)
        for (std::size_t c = 0; c < 16; ++c) {
            Polynomial expected = parse_matrix_entry(f.ctx, lit[r][c]);
            if (gen[r][c] == expected) {
                ++matches;
            } else {
                mismatches.push_back({{"row", r}, {"col", c}, {"printed", lit[r][c]}, {"generated", gen[r][c].str()}});
            }
        }
    rep.add("entries_match", matches == 160, "value", matches,
            "J built from the octonion table equals the printed 10 x 16 matrix entrywise",
            mismatches.empty() ? "" : mismatches.dump());
    rep.elapsed_seconds = watch.seconds();
    return rep;
}

// ---------------------------------------------------------------------------
// Fiberwise ranks

struct FiberRanks {
    int rho = 0, d1 = 0, d2 = 0;
    friend bool operator==(const FiberRanks&, const FiberRanks&) = default;
};

inline int numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > rel_tol * s(0);
    return r;
}

/// Matrices of rho (2n x 2n), d1 (2n x (n+2)) and d2 ((n+2) x 1) at a point.
inline std::array<Eigen::MatrixXd, 3> fiber_matrices(const PointF& p) {
    const AlgebraDim d = p.dim();
    const int n = dim_value(d);
    using E = Element<double>;
    Eigen::MatrixXd rho(2 * n, 2 * n), m1(2 * n, n + 2), m2(n + 2, 1);
    for (int k = 0; k < 2 * n; ++k) {
        E u = E::zero(d), v = E::zero(d);
        (k < n ? u : v)[k % n] = 1.0;
        auto [a, b] = anchor_components(p.x, p.y, u, v);
        for (int i = 0; i < n; ++i) {
            rho(i, k) = a[i];
            rho(n + i, k) = b[i];
        }
    }
    for (int k = 0; k < n + 2; ++k) {
        E a = E::zero(d);
        double mu = k == 0 ? 1.0 : 0.0, nu = k == n + 1 ? 1.0 : 0.0;
        if (k >= 1 && k <= n) a[k - 1] = 1.0;
        auto [p1, p2] = d1_components(p.x, p.y, mu, a, nu);
        for (int i = 0; i < n; ++i) {
            m1(i, k) = p1[i];
            m1(n + i, k) = p2[i];
        }
    }
    auto [t0, tm, t1] = d2_components(p.x, p.y, 1.0);
    m2(0, 0) = t0;
    for (int i = 0; i < n; ++i) m2(i + 1, 0) = tm[i];
    m2(n + 1, 0) = t1;
    return {rho, m1, m2};
}

inline FiberRanks fiber_ranks(const PointF& p, double rel_tol = 1e-8) {
    auto m = fiber_matrices(p);
    return {numerical_rank(m[0], rel_tol), numerical_rank(m[1], rel_tol), numerical_rank(m[2], rel_tol)};
}

inline VerificationReport generic_ranks(std::size_t samples = 100, std::uint64_t seed = 0, double svd_tol = 1e-8,
                                        AlgebraDim d = AlgebraDim::O) {
    Stopwatch watch;
    VerificationReport rep;
    rep.suite = std::string("lie3/ranks/") + dim_name(d);
    rep.seed = seed;
    std::mt19937_64 rng(derive_seed(seed, 5));
    std::uniform_real_distribution<double> mag(0.5, 2.0);
    std::bernoulli_distribution sign;
    const int n = dim_value(d);
    auto coord = [&] { return sign(rng) ? mag(rng) : -mag(rng); };
    auto element = [&] {
        Element<double> e(d);
        for (int i = 0; i < n; ++i) e[i] = coord();
        return e;
    };
    const FiberRanks expected{n - 1, n + 1, 1};
    auto to_json = [](const FiberRanks& r) { return nlohmann::json::array({r.rho, r.d1, r.d2}); };

    std::size_t good = 0;
    nlohmann::json first_bad;
    bool exact = true;
    for (std::size_t k = 0; k < samples; ++k) {
        FiberRanks r = fiber_ranks(PointF{element(), element()}, svd_tol);
        if (r == expected) {
            ++good;
        } else if (first_bad.is_null()) {
            first_bad = {{"sample", k}, {"ranks", to_json(r)}};
        }
        exact = exact && r.d2 + r.d1 == n + 2 && r.d1 + r.rho == 2 * n;
    }
    rep.add("generic_ranks", good == samples, "rank", to_json(expected),
            "fiberwise ranks of (rho, d1, d2) at generic points",
            std::to_string(good) + "/" + std::to_string(samples) + " points" +
                (first_bad.is_null() ? "" : "; first mismatch " + first_bad.dump()));
    rep.add("fiberwise_exactness", exact, "value", exact,
            "rank d2 + rank d1 = rank E-1 and rank d1 + rank rho = rank E0 at every sampled point");
    FiberRanks o = fiber_ranks(PointF::origin(d), svd_tol);
    rep.add("origin_ranks", o == FiberRanks{}, "rank", to_json(o), "all three maps vanish at the origin");
    FiberRanks inf = fiber_ranks(PointF{Element<double>::zero(d), element()}, svd_tol);
    rep.add("line_at_infinity_ranks", inf == expected, "rank", to_json(inf),
            "ranks at a point with x = 0 and y != 0 match the generic stratum");
    rep.elapsed_seconds = watch.seconds();
    return rep;
}

}  // namespace hopf
