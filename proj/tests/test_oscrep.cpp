#include <gtest/gtest.h>

#include "confosc/oscrep.hpp"

using namespace confosc;
using namespace confosc::osc;
using exact::make_rational;
using Z = GaussianRational;

namespace {

const AuxState vacuum{0, 0, 0, 0};

}  // namespace

TEST(OscGenerators, DilatationOnVacuum) {
    const auto g = build_osc_generator(GenLabel::D(), RepVariant::Fundamental, {4});
    const auto& col = g.op.column(0);
    ASSERT_EQ(col.size(), 1u);
    EXPECT_EQ(g.op.basis()[std::size_t(col[0].index)], vacuum);
    EXPECT_EQ(col[0].value, Z(1));
}

TEST(OscGenerators, C1Eigenvalue) {
    const auto c1 = build_c1({6});
    const auto& basis = c1.basis();
    for (std::size_t j = 0; j < basis.size(); ++j) {
        EXPECT_EQ(c1.entry(j, j), Z(make_rational(basis[j].chirality() - 2, 2)));
        EXPECT_LE(c1.column(j).size(), 1u);
    }
}

TEST(OscGenerators, MomentumAnnihilatesIdentity) {
    for (int mu = 0; mu < 4; ++mu) {
        const auto p = build_osc_generator(GenLabel::P(mu), RepVariant::Fundamental, {4});
        EXPECT_TRUE(p.op.column(0).empty()) << mu;
    }
    const auto p0 = build_osc_generator(GenLabel::P(0), RepVariant::Fundamental, {4});
    const auto& col = p0.op.column(std::size_t(p0.op.basis().index_of({1, 0, 1, 0})));
    EXPECT_FALSE(col.empty());
    for (const auto& e : col) EXPECT_EQ(p0.op.basis()[std::size_t(e.index)].chirality(), 0);
}

TEST(OscGenerators, InteriorFromMaxRaise) {
    OscRepresentation r(RepVariant::Fundamental, fock::make_basis({6}));
    EXPECT_EQ(r.generator_raise(), 2);
    EXPECT_EQ(interior_degree(10, {2, 2}), 6);
    EXPECT_EQ(interior_degree(10, {2, -2, 2}), 8);
}

TEST(OscAlgebra, BothVariantsSmallTruncation) {
    for (RepVariant v : {RepVariant::Fundamental, RepVariant::Dual}) {
        const auto rep = verify_osc_algebra(v, {6});
        EXPECT_TRUE(rep.pass) << lie::variant_name(v);
        EXPECT_TRUE(rep.residual.is_exact_zero());
        EXPECT_EQ(rep.parameters.at("interior_max_degree"), 2);
    }
}

TEST(OscAlgebra, NoncommutativeScale) {
    EXPECT_TRUE(nc_coordinate_check(make_rational(1, 137), {5}).pass);
    EXPECT_THROW(nc_coordinate_check(Rational(0), {5}), std::invalid_argument);
}

TEST(CasimirTable, Examples) {
    const auto k0 = casimir_eigenvalues(0, RepVariant::Fundamental);
    EXPECT_EQ(k0.lambda1, -1);
    EXPECT_EQ(k0.lambda2, 3);
    const auto k2 = casimir_eigenvalues(2, RepVariant::Fundamental);
    EXPECT_EQ(k2.lambda1, 0);
    EXPECT_EQ(k2.lambda2, 0);
    EXPECT_TRUE(k2.lambda3.is_zero());
    EXPECT_EQ(k2.lambda4, 0);
    EXPECT_EQ(casimir_eigenvalues(4, RepVariant::Fundamental).lambda3, Z(0, 48));
    EXPECT_EQ(casimir_eigenvalues(4, RepVariant::Dual).lambda3, Z(0, -48));
}

TEST(CasimirTable, ReductionPolynomials) {
    for (int k = -6; k <= 6; ++k) {
        const auto row = casimir_eigenvalues(k, RepVariant::Fundamental);
        const Rational c = row.lambda1;
        EXPECT_EQ(row.lambda2, -3 * c * c - 6 * c);
        EXPECT_EQ(row.lambda4, 3 * c * c * c * c + 12 * c * c * c + 24 * c * c + 24 * c);
    }
}

TEST(Casimirs, OperatorReductionsSmallTruncation) {
    const auto rep = verify_casimirs(RepVariant::Fundamental, {8});
    EXPECT_TRUE(rep.pass);
    EXPECT_TRUE(rep.residual.is_exact_zero());
}

TEST(Massless, InvariantsVanish) {
    for (RepVariant v : {RepVariant::Fundamental, RepVariant::Dual}) {
        const auto rep = verify_massless_invariants({8}, v);
        EXPECT_TRUE(rep.pass) << lie::variant_name(v);
    }
}

TEST(Massless, W0OnLowestMixedState) {
    OscRepresentation r(RepVariant::Fundamental, fock::make_basis({6}));
    const auto ops = massless_operators(r);
    Accumulator acc(r.dim());
    const AuxState s{1, 0, 1, 0};
    const auto w0 = apply_w(r, ops, 0, r.unit(std::size_t(r.basis()->index_of(s))), acc);
    EXPECT_TRUE(w0.empty());
    EXPECT_TRUE(w0_formula_image(s, W0Formula::Computed).empty());
    const auto shifted = w0_formula_image(s, W0Formula::ShiftedKappa);
    ASSERT_EQ(shifted.size(), 1u);
    EXPECT_EQ(shifted.begin()->second, Z(make_rational(-1, 2)));
}

TEST(Massless, W0ComputedFormulaHolds) {
    EXPECT_TRUE(verify_w0_formula({8}, W0Formula::Computed, 40).pass);
    EXPECT_FALSE(verify_w0_formula({8}, W0Formula::ShiftedKappa, 40).pass);
}

TEST(Spectrum, S05Diagonal) {
    const auto sp = s05_spectrum({6});
    EXPECT_TRUE(sp.triangular);
    EXPECT_TRUE(sp.diagonal_matches_formula);
    EXPECT_EQ(sp.lowest_by_kappa.at(0), 1);
    EXPECT_EQ(sp.lowest_by_kappa.at(2), 2);
    EXPECT_EQ(sp.lowest_by_kappa.at(-3), make_rational(5, 2));
    EXPECT_EQ(sp.multiplicities.at(Rational(1)), 1u);
    EXPECT_EQ(sp.multiplicities.at(Rational(3)), 35u);
}

TEST(Spectrum, DoubletonClassification) {
    const auto k0 = classify_doubleton(0);
    EXPECT_EQ(k0.d, 1);
    EXPECT_EQ(k0.j1, 0);
    EXPECT_EQ(k0.j2, 0);
    const auto k1 = classify_doubleton(1);
    EXPECT_EQ(k1.d, make_rational(3, 2));
    EXPECT_EQ(k1.j1, make_rational(1, 2));
    const auto k4 = classify_doubleton(4);
    EXPECT_EQ(k4.d, 3);
    EXPECT_EQ(k4.j1, 2);
    EXPECT_EQ(k4.tag, "Mack (5)");
    EXPECT_THROW(classify_doubleton(-1), std::invalid_argument);
}

TEST(Spectrum, LowestMatchesDoubletonDimension) {
    const auto sp = s05_spectrum({8});
    for (int k = 0; k <= 4; ++k) EXPECT_EQ(sp.lowest_by_kappa.at(k), classify_doubleton(k).d);
}
