#include "hopf/algebroid.hpp"

#include <gtest/gtest.h>

using namespace hopf;

namespace {

constexpr AlgebraDim O = AlgebraDim::O;

Element<Polynomial> constant(AlgebraDim d, int basis_index) {
    return convert<Rational, Polynomial>(Element<Rational>::basis(d, basis_index));
}

std::map<VariableId, Rational> origin_assignment(const BaseFrame& f) {
    std::map<VariableId, Rational> a;
    for (int k = 0; k < 2 * f.n(); ++k) a[f.coordinate(k)] = Rational(0);
    return a;
}

}  // namespace

TEST(Anchor, VanishesAtOrigin) {
    BaseFrame f(O, {"u", "v"});
    VectorFieldO2 X = anchor(f, f.constant_section("u", "v"));
    ASSERT_EQ(X.c.size(), 16u);
    auto at0 = origin_assignment(f);
    for (const auto& p : X.c) EXPECT_TRUE(p.partial_evaluate(at0).is_zero());
}

TEST(Anchor, BasisSectionMatchesClosedForm) {
    BaseFrame f(O, {});
    for (int i = 0; i < 8; ++i) {
        VectorFieldO2 X = anchor(f, {constant(O, i), Element<Polynomial>::zero(O)});
        // (|x|^2 e_i - x_i x, (y conj x) e_i - x_i y), assembled coefficient by coefficient.
        Polynomial nx;
        for (int k = 0; k < 8; ++k) nx += f.x[k] * f.x[k];
        Element<Polynomial> yxbar = f.y * f.x.conj();
        for (int k = 0; k < 8; ++k) {
            Polynomial first = (k == i ? nx : Polynomial()) - f.x[i] * f.x[k];
            EXPECT_EQ(X.c[static_cast<std::size_t>(k)], first) << "x-component " << k;
        }
        Element<Polynomial> second = yxbar * constant(O, i) - f.x[i] * f.y;
        for (int k = 0; k < 8; ++k) EXPECT_EQ(X.c[static_cast<std::size_t>(8 + k)], second[k]);
    }
}

TEST(VectorFields, CommutatorOfCoordinateFields) {
    BaseFrame f(O, {});
    VectorFieldO2 d0, x0d1;
    d0.c.assign(16, Polynomial());
    x0d1.c.assign(16, Polynomial());
    d0.c[0] = Polynomial(1);
    x0d1.c[1] = f.x[0];
    VectorFieldO2 r = vf_commutator(f, d0, x0d1);
    for (std::size_t k = 0; k < 16; ++k) EXPECT_EQ(r.c[k], k == 1 ? Polynomial(1) : Polynomial()) << k;
    EXPECT_EQ(vf_commutator(f, x0d1, x0d1).residual_terms(), 0u);
}

TEST(Bracket, UnitSectionsGiveCoordinateCombination) {
    BaseFrame f(O, {});
    using EP = Element<Polynomial>;
    SectionP a{constant(O, 0), EP::zero(O)}, b{EP::zero(O), constant(O, 0)};
    SectionP r = bracket_e0(f, a, b);
    // x^0 (0, e0) - y^0 (e0, 0)
    SectionP expect{-f.y[0] * constant(O, 0), f.x[0] * constant(O, 0)};
    EXPECT_EQ(residual_terms(r - expect), 0u);
    EXPECT_EQ(residual_terms(bracket_e0(f, a, a)), 0u);
    // Anchor morphism on this pair.
    EXPECT_EQ((vf_commutator(f, anchor(f, a), anchor(f, b)) - anchor(f, r)).residual_terms(), 0u);
}

TEST(Bracket, LeibnizWithItself) {
    BaseFrame f(O, {"u", "v"});
    SectionP s = f.constant_section("u", "v");
    Polynomial p = f.x[2] * f.x[2] * f.y[5] - Polynomial(Rational(1, 2)) * f.y[0];
    SectionP r = bracket_e0(f, s, scale(p, s));
    Polynomial rp = apply_field(f, anchor(f, s), p);
    EXPECT_EQ(residual_terms(r - scale(rp, s)), 0u);
}

TEST(Bracket, SymbolicSuiteAtEveryDivisionDimension) {
    for (AlgebraDim d : {AlgebraDim::R, AlgebraDim::C, AlgebraDim::H, AlgebraDim::O}) {
        VerificationReport rep = verify_algebroid_symbolic(d);
        for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << rep.suite << " " << c.name << " " << c.value;
        EXPECT_EQ(rep.checks.size(), 5u);
    }
}

TEST(Consistency, FiniteDifferencesMatchAnchor) {
    VerificationReport rep = verify_groupoid_consistency(O, 200, 0, 1e-6);
    for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.value;
    VerificationReport rep4 = verify_groupoid_consistency(AlgebraDim::H, 50, 1, 1e-6);
    EXPECT_TRUE(rep4.all_pass());
}

TEST(Consistency, RescalingDerivativeSpotValues) {
    // Along F = tau e_i, lambda^2 = 1 + 2 tau x^i + O(tau^2), so the slope is x^i.
    PointF p{Element<double>(O, {0.3, -0.2, 0.1, 0.0, 0.5, -0.7, 0.25, 0.9}),
             Element<double>(O, {-0.4, 0.6, 0.2, -0.1, 0.0, 0.3, -0.8, 0.05})};
    const double h = 1e-5;
    for (int i = 0; i < 8; ++i) {
        auto e = Element<double>::basis(O, i);
        double up = rescale(ArrowF{h * e, Element<double>::zero(O), p.x, p.y});
        double dn = rescale(ArrowF{-h * e, Element<double>::zero(O), p.x, p.y});
        EXPECT_NEAR((up - dn) / (2 * h), p.x[i], 1e-8);
        up = rescale(ArrowF{Element<double>::zero(O), h * e, p.x, p.y});
        dn = rescale(ArrowF{Element<double>::zero(O), -h * e, p.x, p.y});
        EXPECT_NEAR((up - dn) / (2 * h), p.y[i], 1e-8);
    }
}
