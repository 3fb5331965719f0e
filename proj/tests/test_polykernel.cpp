#include "hopf/polykernel.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <random>

using namespace hopf;

namespace {

RingPtr base_ring() { return RingBuilder().add_base().add_section("u", 8).build(); }

Polynomial random_poly(const RingPtr& ctx, std::mt19937_64& rng, int terms, int max_deg) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(ctx->size()) - 1);
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> coef(-9, 9);
    Polynomial p;
    for (int i = 0; i < terms; ++i) {
        Polynomial t = Polynomial::constant(ctx, Rational(coef(rng), 1 + (coef(rng) + 9) % 4));
        int d = deg(rng);
        for (int k = 0; k < d; ++k) t = t * var(ctx, ctx->variable(static_cast<VarHandle>(pick(rng))));
        p += t;
    }
    return p;
}

}  // namespace

TEST(Rational, ReducesAndNormalizesSign) {
    Rational r(6, -4);
    EXPECT_EQ(r, Rational(-3, 2));
    EXPECT_EQ(r.str(), "-3/2");
    EXPECT_EQ(Rational(0, -5), Rational(0));
    EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, PromotesOnOverflowAndDemotesBack) {
    const std::int64_t big = std::numeric_limits<std::int64_t>::max();
    Rational a(big);
    Rational sq = a * a;
    EXPECT_FALSE(sq.is_small());
    mpq_class oracle = mpq_class(mpz_class(static_cast<long>(big))) * mpq_class(mpz_class(static_cast<long>(big)));
    EXPECT_EQ(sq.to_mpq(), oracle);
    Rational back = sq / a;
    EXPECT_TRUE(back.is_small());
    EXPECT_EQ(back, a);
    Rational s = a + a;
    EXPECT_EQ(s.to_mpq(), mpq_class(mpz_class(static_cast<long>(big)) * 2));
    EXPECT_EQ(s - a, a);
}

TEST(Rational, MatchesGmpOnRandomArithmetic) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> d(-(1LL << 40), 1LL << 40);
    for (int i = 0; i < 2000; ++i) {
        std::int64_t n1 = d(rng), d1 = d(rng) | 1, n2 = d(rng), d2 = d(rng) | 1;
        Rational a(n1, d1), b(n2, d2);
        mpq_class qa(mpz_class(static_cast<long>(n1)), mpz_class(static_cast<long>(d1)));
        mpq_class qb(mpz_class(static_cast<long>(n2)), mpz_class(static_cast<long>(d2)));
        qa.canonicalize();
        qb.canonicalize();
        EXPECT_EQ((a + b).to_mpq(), mpq_class(qa + qb));
        EXPECT_EQ((a - b).to_mpq(), mpq_class(qa - qb));
        EXPECT_EQ((a * b).to_mpq(), mpq_class(qa * qb));
        if (!b.is_zero()) {
            EXPECT_EQ((a / b).to_mpq(), mpq_class(qa / qb));
        }
        EXPECT_EQ(a < b, qa < qb);
    }
}

TEST(Polynomial, SquareOfVariable) {
    auto ctx = base_ring();
    Polynomial x0 = var(ctx, base_x(0));
    Polynomial sq = x0 * x0;
    ASSERT_EQ(sq.size(), 1u);
    EXPECT_EQ(sq.terms()[0].coeff, Rational(1));
    EXPECT_EQ(sq.terms()[0].mono.exponent(ctx->handle(base_x(0))), 2);
    EXPECT_EQ(sq.str(), "x0^2");
}

TEST(Polynomial, AdditiveInverseIsZero) {
    auto ctx = base_ring();
    std::mt19937_64 rng(1);
    Polynomial p = random_poly(ctx, rng, 12, 4);
    EXPECT_TRUE((p + (-p)).is_zero());
    EXPECT_TRUE((p - p).is_zero());
}

TEST(Polynomial, DifferenceOfSquares) {
    auto ctx = base_ring();
    Polynomial x0 = var(ctx, base_x(0));
    Polynomial y0 = var(ctx, base_y(0));
    // Hand expansion: (x0 + y0)(x0 - y0) = x0^2 - y0^2.
    EXPECT_EQ((x0 + y0) * (x0 - y0), x0 * x0 - y0 * y0);
    EXPECT_FALSE((x0 * x0 - x0).is_zero());
}

TEST(Polynomial, ContextMismatchThrows) {
    auto c1 = base_ring();
    auto c2 = base_ring();
    Polynomial a = var(c1, base_x(0));
    Polynomial b = var(c2, base_x(0));
    EXPECT_THROW((void)(a + b), std::invalid_argument);
    EXPECT_THROW((void)(a * b), std::invalid_argument);
    EXPECT_NO_THROW((void)(a + Polynomial(3)));
}

TEST(Polynomial, Derivatives) {
    auto ctx = base_ring();
    Polynomial x0 = var(ctx, base_x(0));
    EXPECT_EQ((x0 * x0).derive(base_x(0)), x0.scaled(2));
    EXPECT_TRUE(var(ctx, base_y(3)).derive(base_x(0)).is_zero());
    Polynomial nsq;
    for (int i = 0; i < 8; ++i) nsq += var(ctx, base_x(i)) * var(ctx, base_x(i));
    EXPECT_EQ(nsq.derive(base_x(1)), var(ctx, base_x(1)).scaled(2));
    EXPECT_THROW((void)nsq.derive(section_var("u", 0)), std::invalid_argument);
}

TEST(Polynomial, EvaluateAndMissingVariable) {
    auto ctx = base_ring();
    EXPECT_EQ(Polynomial().evaluate({}), Rational(0));
    Polynomial p = var(ctx, base_x(0)) + var(ctx, base_y(0));
    EXPECT_EQ(p.evaluate({{base_x(0), Rational(1)}, {base_y(0), Rational(2)}}), Rational(3));
    EXPECT_THROW((void)p.evaluate({{base_x(0), Rational(1)}}), std::invalid_argument);
    Polynomial q = p.partial_evaluate({{base_x(0), Rational(5)}});
    EXPECT_EQ(q, Polynomial::constant(ctx, 5) + var(ctx, base_y(0)));
}

TEST(Polynomial, DegreeCapacityIsEnforced) {
    auto ctx = base_ring();
    Polynomial p = var(ctx, base_x(0));
    Polynomial acc = p;
    for (int i = 1; i < Monomial::kCapacity; ++i) acc = acc * p;
    EXPECT_EQ(acc.total_degree(), Monomial::kCapacity);
    EXPECT_THROW((void)(acc * p), std::length_error);
}

TEST(PolynomialProperties, RingAxiomsOnRandomSamples) {
    auto ctx = base_ring();
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        Polynomial p = random_poly(ctx, rng, 8, 3);
        Polynomial q = random_poly(ctx, rng, 8, 3);
        Polynomial r = random_poly(ctx, rng, 8, 3);
        EXPECT_EQ((p + q) + r, p + (q + r));
        EXPECT_EQ(p * q, q * p);
        EXPECT_EQ(p * (q + r), p * q + p * r);
        EXPECT_EQ((p * q) * r, p * (q * r));
    }
}

TEST(PolynomialProperties, DerivativeLeibnizRule) {
    auto ctx = base_ring();
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        Polynomial p = random_poly(ctx, rng, 8, 4);
        Polynomial q = random_poly(ctx, rng, 8, 4);
        for (VariableId v : {base_x(0), base_x(5), base_y(2)}) {
            EXPECT_EQ((p * q).derive(v), p.derive(v) * q + p * q.derive(v));
        }
    }
}

TEST(PolynomialProperties, EvaluationIsRingMorphism) {
    auto ctx = base_ring();
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> c(-7, 7);
    for (int trial = 0; trial < 30; ++trial) {
        Polynomial p = random_poly(ctx, rng, 6, 3);
        Polynomial q = random_poly(ctx, rng, 6, 3);
        std::map<VariableId, Rational> a;
        for (std::size_t h = 0; h < ctx->size(); ++h)
            a[ctx->variable(static_cast<VarHandle>(h))] = Rational(c(rng), 1 + (trial % 3));
        EXPECT_EQ((p * q).evaluate(a), p.evaluate(a) * q.evaluate(a));
        EXPECT_EQ((p + q).evaluate(a), p.evaluate(a) + q.evaluate(a));
    }
}

TEST(PolyAccumulator, SumOfProductsMatchesDirectExpansion) {
    auto ctx = base_ring();
    std::mt19937_64 rng(11);
    Polynomial p = random_poly(ctx, rng, 10, 3);
    Polynomial q = random_poly(ctx, rng, 10, 3);
    Polynomial r = random_poly(ctx, rng, 10, 3);
    PolyAccumulator acc;
    acc.add_product(p, q, Rational(3));
    acc.add_product3(p, q, r, Rational(-1, 2));
    acc.add(r);
    EXPECT_EQ(acc.take(), (p * q).scaled(3) - (p * q * r).scaled(Rational(1, 2)) + r);
}
