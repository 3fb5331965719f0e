#include "hopf/foliation.hpp"
#include "hopf/lie3.hpp"

#include <gtest/gtest.h>

using namespace hopf;

namespace {

constexpr AlgebraDim O = AlgebraDim::O;

PointF random_point(AlgebraDim d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PointF p{Element<double>(d), Element<double>(d)};
    for (int i = 0; i < dim_value(d); ++i) {
        p.x[i] = u(rng);
        p.y[i] = u(rng);
    }
    return p;
}

}  // namespace

TEST(Bareiss, RankAndNullspaceOfSmallMatrix) {
    // Rows (1 2 3), (2 4 6), (1 0 1): rank 2, kernel spanned by (-1, -1, 1).
    RationalMatrix m = {{Rational(1), Rational(2), Rational(3)},
                        {Rational(2), Rational(4), Rational(6)},
                        {Rational(1), Rational(0), Rational(1)}};
    Echelon e = bareiss_echelon(m, 3);
    EXPECT_EQ(e.rank(), 2u);
    auto basis = nullspace_basis(e);
    ASSERT_EQ(basis.size(), 1u);
    for (const auto& row : m) {
        Rational s(0);
        for (std::size_t j = 0; j < 3; ++j) s += row[j] * basis[0][j];
        EXPECT_TRUE(s.is_zero());
    }
    IncrementalRank inc(3);
    for (auto row : m) inc.add(row);
    EXPECT_EQ(inc.rank(), 2u);
}

TEST(Bareiss, RationalEntriesAndFullRank) {
    RationalMatrix m = {{Rational(1, 2), Rational(1, 3)}, {Rational(1, 4), Rational(1, 5)}};
    Echelon e = bareiss_echelon(m, 2);
    EXPECT_EQ(e.rank(), 2u);
    EXPECT_TRUE(nullspace_basis(e).empty());
}

TEST(LinearNullspace, DimensionsPerAlgebra) {
    EXPECT_EQ(linear_nullspace(AlgebraDim::C).dimension, 1u);
    EXPECT_EQ(linear_nullspace(AlgebraDim::H).dimension, 3u);
    EXPECT_EQ(linear_nullspace(O).dimension, 0u);
    EXPECT_THROW((void)linear_nullspace(AlgebraDim::R), std::invalid_argument);
}

TEST(LinearNullspace, SampledOracleAgrees) {
    for (AlgebraDim d : {AlgebraDim::C, AlgebraDim::H, O}) {
        const auto n = static_cast<std::size_t>(dim_value(d));
        EXPECT_EQ(sampled_linear_nullity(d, 4 * n * n, 11), linear_nullspace(d).dimension) << dim_name(d);
    }
}

TEST(LinearNullspace, QuaternionBasisIsImaginaryRightMultiplication) {
    // For H the tangent linear fields are (x c, y c) with c imaginary.
    LinearNullspace ns = linear_nullspace(AlgebraDim::H);
    BaseFrame f(AlgebraDim::H, {});
    for (const auto& b : ns.basis) {
        EXPECT_TRUE(b.cross_terms_vanish());
        EXPECT_EQ(b.A, b.D);
        EXPECT_TRUE(is_tangent(f, b.as_field(f)));
        EXPECT_TRUE(is_tangent(f, b.as_field(f), TangencyMode::Sampled, 20, 3));
    }
    for (int c = 1; c < 4; ++c) {
        LinearFieldAnsatz right;
        right.dim = AlgebraDim::H;
        auto e = Element<Rational>::basis(AlgebraDim::H, c);
        right.A.assign(4, std::vector<Rational>(4, Rational(0)));
        for (int j = 0; j < 4; ++j) {
            auto col = Element<Rational>::basis(AlgebraDim::H, j) * e;
            for (int i = 0; i < 4; ++i) right.A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = col[i];
        }
        right.B = right.C = RationalMatrix(4, std::vector<Rational>(4, Rational(0)));
        right.D = right.A;
        EXPECT_TRUE(is_tangent(f, right.as_field(f))) << c;
    }
}

TEST(Tangency, NonTangentFieldsAreRejected) {
    BaseFrame f(O, {});
    VectorFieldO2 euler;
    for (int k = 0; k < 16; ++k) euler.c.push_back(k < 8 ? f.x[k] : f.y[k - 8]);
    EXPECT_FALSE(is_tangent(f, euler));
    EXPECT_FALSE(is_tangent(f, euler, TangencyMode::Sampled, 5, 1));
}

TEST(LeafDimension, KernelOfJAcrossAlgebras) {
    std::mt19937_64 rng(5);
    const std::pair<AlgebraDim, int> table[] = {{AlgebraDim::R, 0}, {AlgebraDim::C, 1}, {AlgebraDim::H, 3}, {O, 7}};
    for (auto [d, expected] : table)
        for (int k = 0; k < 10; ++k) EXPECT_EQ(leaf_dimension_at(random_point(d, rng)), expected) << dim_name(d);
}

TEST(LeafDimension, MatchesAnchorRank) {
    std::mt19937_64 rng(8);
    for (int k = 0; k < 10; ++k) {
        PointF p = random_point(O, rng);
        EXPECT_EQ(leaf_dimension_at(p), fiber_ranks(p).rho);
    }
}

TEST(LieDerivative, RotationIsKillingAndEulerIsConformal) {
    Plane pl;
    SymmetricTensor2D rot = lie_derivative_flat({-pl.y, pl.x});
    EXPECT_EQ(rot.residual_terms(), 0u);
    SymmetricTensor2D eul = lie_derivative_flat({pl.x, pl.y});
    EXPECT_EQ(eul.xx, Polynomial(2));
    EXPECT_TRUE(eul.xy.is_zero());
    EXPECT_EQ(eul.yy, Polynomial(2));
}

TEST(LieDerivative, RotationExampleIdentityHolds) {
    EXPECT_EQ(rotation_example_residual(Plane{}).residual_terms(), 0u);
}

TEST(Reports, LinearObstruction) {
    VerificationReport rep = linear_obstruction_report();
    for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.value;
    EXPECT_EQ(min_generator_degree(O), 2);
}

TEST(Reports, FullSuitePerDimension) {
    for (AlgebraDim d : {AlgebraDim::C, AlgebraDim::H, O}) {
        VerificationReport rep = verify_foliation(d, 5, 2);
        for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << rep.suite << " " << c.name << " " << c.value;
    }
    EXPECT_THROW((void)verify_foliation(AlgebraDim::R), std::invalid_argument);
}

TEST(Flow, DriftStaysSmall) { EXPECT_LT(flow_invariance_drift(O, 5, 9), 1e-8); }
