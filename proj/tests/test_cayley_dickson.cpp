#include "hopf/cayley_dickson.hpp"

#include <gtest/gtest.h>

#include <array>
#include <complex>
#include <random>

using namespace hopf;
using Q = Element<Rational>;
using D = Element<double>;

namespace {

/// Fully antisymmetric epsilon from the seven oriented triples, built
/// independently of the library by summing permutation parities.
std::array<std::array<std::array<int, 8>, 8>, 8> epsilon_tensor() {
    std::array<std::array<std::array<int, 8>, 8>, 8> eps{};
    const int triples[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 6, 5}};
    const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    const int parity[6] = {1, 1, 1, -1, -1, -1};
    for (const auto& t : triples)
        for (int p = 0; p < 6; ++p) eps[t[perms[p][0]]][t[perms[p][1]]][t[perms[p][2]]] = parity[p];
    return eps;
}

D random_element(AlgebraDim d, std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    D e(d);
    for (int i = 0; i < dim_value(d); ++i) e[i] = n(rng);
    return e;
}

Q random_rational(AlgebraDim d, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> c(-6, 6);
    Q e(d);
    for (int i = 0; i < dim_value(d); ++i) e[i] = Rational(c(rng), 1 + (c(rng) + 6) % 3);
    return e;
}

std::array<double, 4> hamilton(const std::array<double, 4>& p, const std::array<double, 4>& q) {
    return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
            p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
            p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
            p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
}

}  // namespace

TEST(MultiplicationTable, OctonionTableMatchesEpsilonForAllPairs) {
    auto eps = epsilon_tensor();
    const auto& t = table(AlgebraDim::O);
    for (int i = 1; i < 8; ++i) {
        for (int j = 1; j < 8; ++j) {
            std::array<int, 8> expect{};
            if (i == j) expect[0] = -1;
            for (int k = 1; k < 8; ++k) expect[k] += eps[i][j][k];
            std::array<int, 8> got{};
            got[t(i, j).index] = t(i, j).sign;
            EXPECT_EQ(got, expect) << "e" << i << "*e" << j;
        }
    }
}

TEST(MultiplicationTable, NamedProducts) {
    const AlgebraDim O = AlgebraDim::O;
    EXPECT_EQ(Q::basis(O, 1) * Q::basis(O, 2), Q::basis(O, 3));
    EXPECT_EQ(Q::basis(O, 5) * Q::basis(O, 4), -Q::basis(O, 1));
    EXPECT_EQ(Q::basis(O, 1) * Q::basis(O, 4), Q::basis(O, 5));
    EXPECT_EQ(Q::basis(O, 2) * Q::basis(O, 4), Q::basis(O, 6));
    EXPECT_EQ(Q::basis(O, 3) * Q::basis(O, 4), Q::basis(O, 7));
    EXPECT_EQ(Q::basis(O, 6) * Q::basis(O, 1), Q::basis(O, 7));
    EXPECT_EQ(Q::basis(O, 7) * Q::basis(O, 6), Q::basis(O, 1));
}

TEST(MultiplicationTable, RecursiveDoublingAgreesAfterRelabeling) {
    MultiplicationTable cd = cayley_dickson_recursive_table(AlgebraDim::O);
    BasisRelabeling m = basic_triple_relabeling(cd);
    EXPECT_EQ(relabeling_mismatches(table(AlgebraDim::O), cd, m), 0);
    // The relabeling is a signed permutation.
    std::array<int, 8> seen{};
    for (int i = 0; i < 8; ++i) ++seen[m.index[i]];
    for (int v : seen) EXPECT_EQ(v, 1);
}

TEST(MultiplicationTable, SedenionTableDoublesOctonions) {
    const auto& s = table(AlgebraDim::S);
    const auto& o = table(AlgebraDim::O);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            EXPECT_EQ(s(i, j).sign, o(i, j).sign);
            EXPECT_EQ(s(i, j).index, o(i, j).index);
        }
    for (int i = 1; i < 16; ++i) {
        EXPECT_EQ(s(i, i).sign, -1);
        EXPECT_EQ(s(i, i).index, 0);
    }
}

TEST(Element, UnitAndConjugation) {
    std::mt19937_64 rng(3);
    for (AlgebraDim d : {AlgebraDim::R, AlgebraDim::C, AlgebraDim::H, AlgebraDim::O, AlgebraDim::S}) {
        Q a = random_rational(d, rng);
        EXPECT_EQ(Q::one(d) * a, a);
        EXPECT_EQ(a * Q::one(d), a);
    }
    const AlgebraDim O = AlgebraDim::O;
    EXPECT_EQ(Q::basis(O, 1).conj(), -Q::basis(O, 1));
    EXPECT_EQ((Q::one(O) + Q::basis(O, 1)).norm_sq(), Rational(2));
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) EXPECT_EQ(inner(Q::basis(O, i), Q::basis(O, j)), Rational(i == j ? 1 : 0));
}

TEST(Element, LowDimensionsMatchComplexAndHamiltonProducts) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 50; ++t) {
        D a = random_element(AlgebraDim::C, rng), b = random_element(AlgebraDim::C, rng);
        std::complex<double> z = std::complex<double>(a[0], a[1]) * std::complex<double>(b[0], b[1]);
        D p = a * b;
        EXPECT_NEAR(p[0], z.real(), 1e-12);
        EXPECT_NEAR(p[1], z.imag(), 1e-12);

        D q = random_element(AlgebraDim::H, rng), r = random_element(AlgebraDim::H, rng);
        auto h = hamilton({q[0], q[1], q[2], q[3]}, {r[0], r[1], r[2], r[3]});
        D qr = q * r;
        for (int i = 0; i < 4; ++i) EXPECT_NEAR(qr[i], h[static_cast<std::size_t>(i)], 1e-12);
    }
}

TEST(Element, InverseLaws) {
    const AlgebraDim O = AlgebraDim::O;
    EXPECT_EQ(inverse(Q::basis(O, 1)), -Q::basis(O, 1));
    EXPECT_EQ(inverse(Q::real(O, Rational(2))), Q::real(O, Rational(1, 2)));
    EXPECT_THROW((void)inverse(Q::zero(O)), std::domain_error);
    std::mt19937_64 rng(8);
    for (int t = 0; t < 30; ++t) {
        Q a = random_rational(O, rng), b = random_rational(O, rng);
        if (a.is_zero()) continue;
        EXPECT_EQ(a * (inverse(a) * b), b);
        EXPECT_EQ((b * inverse(a)) * a, b);
    }
}

TEST(Element, DimensionMismatchAndNonFinite) {
    EXPECT_THROW((void)(Q::one(AlgebraDim::O) * Q::one(AlgebraDim::H)), std::invalid_argument);
    EXPECT_THROW(D(AlgebraDim::C, {1.0, std::nan("")}), std::invalid_argument);
    EXPECT_THROW(D(AlgebraDim::C, {1.0}), std::invalid_argument);
}

TEST(Associator, BasicTripleIsNonzero) {
    const AlgebraDim O = AlgebraDim::O;
    Q as = associator(Q::basis(O, 1), Q::basis(O, 2), Q::basis(O, 4));
    // e1(e2 e4) = e1 e6 = -e7 and (e1 e2) e4 = e3 e4 = e7.
    EXPECT_EQ(as, Rational(-2) * Q::basis(O, 7));
}

TEST(AlgebraIdentities, OctonionSuiteProvesEveryIdentity) {
    VerificationReport rep = verify_algebra_identities(AlgebraDim::O);
    for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.value.dump();
    for (const char* name : {"semi_associativity", "semi_associativity_inner", "norm_via_conjugate_left",
                             "inner_via_conjugate", "left_inverse_cleared", "right_inverse_cleared",
                             "inner_switch_left", "inner_switch_right", "conjugation_formula", "moufang_1",
                             "moufang_2", "moufang_3", "non_associative_witness", "cayley_dickson_recursion_agrees"})
        EXPECT_NE(rep.find(name), nullptr) << name;
}

TEST(AlgebraIdentities, AssociativeBelowEight) {
    for (AlgebraDim d : {AlgebraDim::R, AlgebraDim::C, AlgebraDim::H}) {
        VerificationReport rep = verify_algebra_identities(d);
        EXPECT_TRUE(rep.all_pass());
        ASSERT_NE(rep.find("associative"), nullptr);
        EXPECT_TRUE(rep.find("associative")->pass);
    }
}

TEST(AlgebraIdentities, SedenionNormWitnessIsGenuine) {
    VerificationReport rep = verify_algebra_identities(AlgebraDim::S, 42);
    EXPECT_TRUE(rep.all_pass());
    NormWitness w = find_norm_witness(AlgebraDim::S, 42);
    ASSERT_TRUE(w.found);
    EXPECT_NE((w.a * w.b).norm_sq(), w.a.norm_sq() * w.b.norm_sq());
}

TEST(AlgebraIdentities, PolynomialSymbolicAgreesWithRationalSamples) {
    // Property: a symbolic Moufang residual evaluated anywhere is zero, and the
    // rational backend agrees pointwise.
    std::mt19937_64 rng(12);
    const AlgebraDim O = AlgebraDim::O;
    for (int t = 0; t < 20; ++t) {
        Q a = random_rational(O, rng), b = random_rational(O, rng), c = random_rational(O, rng);
        EXPECT_TRUE(((a * b) * (c * a) - (a * (b * c)) * a).is_zero());
        EXPECT_TRUE((a * (b * (a * c)) - ((a * b) * a) * c).is_zero());
        EXPECT_EQ((a * b).norm_sq(), a.norm_sq() * b.norm_sq());
    }
}
