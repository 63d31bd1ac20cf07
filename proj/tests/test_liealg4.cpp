#include <gtest/gtest.h>

#include "confosc/liealg4.hpp"

using namespace confosc;
using namespace confosc::lie;
using exact::make_rational;
using Z = GaussianRational;

namespace {

const std::array<Z, 4> zero2{0, 0, 0, 0};

ExactMatrix4 gen(const GenLabel& l, RepVariant v = RepVariant::Fundamental) { return build_generator(l, v); }

}  // namespace

TEST(Gamma, DiracBasis) {
    const Gammas g = build_gamma();
    ExactMatrix4 g0 = ExactMatrix4::identity();
    g0(2, 2) = Z(-1);
    g0(3, 3) = Z(-1);
    EXPECT_EQ(g.upper[0], g0);
    EXPECT_EQ(g.upper5, ExactMatrix4::blocks(zero2, {1, 0, 0, 1}, {1, 0, 0, 1}, zero2));
    EXPECT_EQ(g.upper[0] * g.upper[0], ExactMatrix4::identity());
}

TEST(Gamma, Clifford) {
    const Gammas g = build_gamma();
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            const ExactMatrix4 anti = g.upper[mu] * g.upper[nu] + g.upper[nu] * g.upper[mu];
            EXPECT_EQ(anti, Z(2 * eta(mu, nu)) * ExactMatrix4::identity());
        }
    for (int mu = 0; mu < 4; ++mu) EXPECT_TRUE((g.upper5 * g.upper[mu] + g.upper[mu] * g.upper5).is_zero());
}

TEST(Generators, DilatationBlocks) {
    const Z h = make_rational(1, 2);
    const std::array<Z, 4> half_id{h, 0, 0, h}, minus_half_id{-h, 0, 0, -h};
    EXPECT_EQ(gen(GenLabel::D()), ExactMatrix4::blocks(zero2, minus_half_id, minus_half_id, zero2));
    EXPECT_EQ(gen(GenLabel::D(), RepVariant::Dual), ExactMatrix4::blocks(zero2, half_id, half_id, zero2));
    EXPECT_EQ(gen(GenLabel::D()).dagger(), gen(GenLabel::D()));
}

TEST(Generators, RotationS12) {
    const Z ih(0, make_rational(1, 2));
    const std::array<Z, 4> s3{ih, 0, 0, -ih};
    EXPECT_EQ(gen(GenLabel::S(1, 2)), ExactMatrix4::blocks(s3, zero2, zero2, s3));
}

TEST(Generators, StructureExamples) {
    EXPECT_EQ(commutator(gen(GenLabel::S(0, 1)), gen(GenLabel::S(1, 2))), gen(GenLabel::S(0, 2)));
    EXPECT_EQ(commutator(gen(GenLabel::K(0)), gen(GenLabel::P(0))), Z(-2) * gen(GenLabel::D()));
    EXPECT_TRUE(commutator(gen(GenLabel::P(1)), gen(GenLabel::P(2))).is_zero());
    const Combination c = structure_expand(GenLabel::S(0, 1), GenLabel::S(1, 2));
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c.begin()->first, GenLabel::S(0, 2));
    EXPECT_EQ(c.begin()->second, Z(1));
}

TEST(Generators, BadLabelsThrow) {
    EXPECT_THROW(GenLabel::S(2, 2), std::invalid_argument);
    EXPECT_THROW(GenLabel::P(4), std::invalid_argument);
}

TEST(MatrixAlgebra, BothVariantsExact) {
    for (RepVariant v : {RepVariant::Fundamental, RepVariant::Dual}) {
        const auto rep = verify_matrix_algebra(v);
        EXPECT_TRUE(rep.pass) << variant_name(v);
        EXPECT_TRUE(rep.residual.is_exact_zero());
        EXPECT_EQ(rep.details.at(0).at("pairs"), 105);
    }
}

TEST(MatrixAlgebra, CorruptedGeneratorFails) {
    GeneratorTable t = generator_table(RepVariant::Fundamental);
    auto& m = t[std::size_t(s_index(1, 2))];
    m(0, 0) = -m(0, 0);
    const auto rep = verify_matrix_algebra(t, "corrupted");
    EXPECT_FALSE(rep.pass);
    EXPECT_FALSE(rep.residual.is_exact_zero());
    EXPECT_FALSE(rep.notes.empty());
}

TEST(MatrixAlgebra, JacobiOnLabels) {
    const auto& t = generator_table(RepVariant::Fundamental);
    const auto& labels = s_labels();
    for (std::size_t i = 0; i < labels.size(); i += 2)
        for (std::size_t j = 1; j < labels.size(); j += 3)
            for (std::size_t k = 0; k < labels.size(); k += 5) {
                const auto &x = t[i], &y = t[j], &z = t[k];
                EXPECT_TRUE(
                    (commutator(x, commutator(y, z)) + commutator(y, commutator(z, x)) + commutator(z, commutator(x, y)))
                        .is_zero());
            }
}

TEST(MatrixAlgebra, DualIsTransposeNegated) {
    for (const auto& l : s_labels())
        EXPECT_EQ(gen(l, RepVariant::Dual), -gen(l).transpose()) << l.name();
    EXPECT_EQ(gen(GenLabel::D(), RepVariant::Dual), -gen(GenLabel::D()));
}

TEST(GammaCondition, Fundamental) {
    const auto rep = verify_gamma_condition(RepVariant::Fundamental);
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.details.at(0).at("generators"), 15);
}

TEST(GammaCondition, SingleGenerators) {
    EXPECT_TRUE(verify_gamma_condition({{"S01", gen(GenLabel::S(0, 1))}}).pass);
    EXPECT_TRUE(verify_gamma_condition({{"D", gen(GenLabel::D())}}).pass);
    EXPECT_FALSE(verify_gamma_condition({{"identity", ExactMatrix4::identity()}}).pass);
}

TEST(GammaCondition, RealFormUnderCommutator) {
    const ExactMatrix4 gam = su22_metric();
    const auto& t = generator_table(RepVariant::Fundamental);
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = 0; j < t.size(); ++j) {
            const ExactMatrix4 c = commutator(t[i], t[j]);
            EXPECT_TRUE((c.dagger() * gam + gam * c).is_zero());
        }
}
