#include <gtest/gtest.h>

#include <random>

#include "confosc/exact.hpp"

using namespace confosc::exact;

namespace {

GaussianRational random_gr(std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
    return GaussianRational::from_parts(num(rng), den(rng), num(rng), den(rng));
}

ExactMatrix4 random_matrix(std::mt19937& rng) {
    ExactMatrix4 m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = random_gr(rng);
    return m;
}

}  // namespace

TEST(GaussianRational, HalfISquared) {
    const GaussianRational h(Rational(0), make_rational(1, 2));
    EXPECT_EQ(h * h, GaussianRational(make_rational(-1, 4)));
}

TEST(GaussianRational, Conjugate) {
    const GaussianRational z(make_rational(1, 2), make_rational(1, 3));
    EXPECT_EQ(z.conj(), GaussianRational(make_rational(1, 2), make_rational(-1, 3)));
}

TEST(GaussianRational, Quotient) {
    const GaussianRational one_plus_i(1, 1), one_minus_i(1, -1);
    EXPECT_EQ(one_plus_i / one_minus_i, GaussianRational::i());
}

TEST(GaussianRational, DivisionByZeroThrows) { EXPECT_ANY_THROW(GaussianRational(1) / GaussianRational(0)); }

TEST(GaussianRational, FieldAxioms) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_gr(rng), b = random_gr(rng), c = random_gr(rng);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
        if (!b.is_zero()) {
            EXPECT_EQ((a / b) * b, a);
        }
    }
}

TEST(GaussianRational, StringForm) {
    EXPECT_EQ(GaussianRational(0).str(), "0");
    EXPECT_EQ(GaussianRational::i().str(), "i");
}

TEST(ExactMatrix4, PauliBlockCommutator) {
    const GaussianRational i = GaussianRational::i();
    const std::array<GaussianRational, 4> s1{0, 1, 1, 0}, s2{0, -i, i, 0}, s3{1, 0, 0, -1}, z{};
    const auto x = ExactMatrix4::blocks(s1, z, z, s1);
    const auto y = ExactMatrix4::blocks(s2, z, z, s2);
    const auto expect = GaussianRational(2) * i * ExactMatrix4::blocks(s3, z, z, s3);
    EXPECT_EQ(commutator(x, y), expect);
}

TEST(ExactMatrix4, SelfCommutatorVanishes) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = random_matrix(rng);
        EXPECT_TRUE(commutator(x, x).is_zero());
    }
}

TEST(ExactMatrix4, DaggerExamples) {
    ExactMatrix4 g0 = ExactMatrix4::identity();
    g0(2, 2) = GaussianRational(-1);
    g0(3, 3) = GaussianRational(-1);
    EXPECT_EQ(g0.dagger(), g0);
    const auto ii = GaussianRational::i() * ExactMatrix4::identity();
    EXPECT_EQ(ii.dagger(), -ii);
}

TEST(ExactMatrix4, AlgebraProperties) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        const auto x = random_matrix(rng), y = random_matrix(rng), z = random_matrix(rng);
        EXPECT_EQ((x * y).dagger(), y.dagger() * x.dagger());
        EXPECT_EQ((x * y).transpose(), y.transpose() * x.transpose());
        EXPECT_EQ(commutator(x, y), -commutator(y, x));
        EXPECT_TRUE((commutator(x, commutator(y, z)) + commutator(y, commutator(z, x)) + commutator(z, commutator(x, y)))
                        .is_zero());
    }
}
