#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "confosc/boostcs.hpp"

using namespace confosc;
using namespace confosc::boost;
using Z = GaussianRational;

namespace {

double fact(int n) { return std::tgamma(n + 1.0); }

std::size_t idx(const fock::Basis& b, AuxState s) { return std::size_t(b.index_of(s)); }

}  // namespace

TEST(Sl2Triple, CalligraphicActions) {
    const auto basis = fock::make_basis({8, std::nullopt, 1});
    const auto t = build_sl2_triple(basis, 1);
    const auto& b = *basis;
    EXPECT_EQ(t.cal_minus.entry(idx(b, {1, 0, 2, 0}), idx(b, {2, 0, 3, 0})), Z(3));
    for (int n = 0; n <= 3; ++n)
        for (int m = 0; m <= 3; ++m)
            EXPECT_EQ(t.cal_plus.entry(idx(b, {n + 1, 0, m + 1, 0}), idx(b, {n, 0, m, 0})),
                      Z(exact::make_rational(-1, 2)));
    EXPECT_EQ(t.cal_zero.entry(0, 0), Z(exact::make_rational(1, 2)));
}

TEST(Sl2Triple, RelationsBothModes) {
    const auto basis = fock::make_basis({8});
    for (int mode = 1; mode <= 2; ++mode) EXPECT_TRUE(verify_sl2_triple(build_sl2_triple(basis, mode)).pass);
    EXPECT_TRUE(verify_s03_from_triples(8).pass);
}

TEST(Gauss, Coefficients) {
    const auto g0 = gauss_coeffs(0);
    EXPECT_EQ(g0.a, 0);
    EXPECT_EQ(g0.b, 0);
    EXPECT_EQ(g0.c, 0);
    EXPECT_NEAR(gauss_coeffs(1).a, 0.924234, 1e-6);
    EXPECT_THROW(gauss_coeffs(NAN), std::invalid_argument);
}

TEST(Gauss, TwoByTwoIdentity) {
    for (double beta : {0.25, 1.0, 2.0}) EXPECT_LE(gauss_2x2_residual(beta), 1e-14) << beta;
}

TEST(Gauss, SingleModeOperatorSmallBeta) {
    EXPECT_LE(single_mode_gauss_error(24, 0.25), 1e-10);
    EXPECT_LE(single_mode_gauss_error(24, 0.5), 1e-10);
}

TEST(Expm, ZeroBetaAndDiagonal) {
    const auto basis = fock::make_basis({6, std::nullopt, 1});
    const auto t = build_sl2_triple(basis, 1);
    std::mt19937 rng(2);
    std::normal_distribution<double> g;
    CVector v(basis->size());
    for (auto& z : v) z = {g(rng), g(rng)};
    const NumericOperator t0(t.t_zero);
    EXPECT_EQ(expm_oracle(t0, 0.0, v).v, v);

    // diagonal operator: (n+m+1)/2 on |n><m|
    const NumericOperator diag(GradedOperator::from_action(basis, "N", 0, 0, [](const AuxState& s, auto&& emit) {
        emit(s, Z(exact::make_rational(s.n1 + s.m1 + 1, 2)));
    }));
    const auto r = expm_oracle(diag, 0.7, v);
    for (std::size_t j = 0; j < v.size(); ++j) {
        const auto& s = (*basis)[j];
        EXPECT_NEAR(std::abs(r.v[j] - v[j] * std::exp(0.7 * (s.n1 + s.m1 + 1) / 2)), 0.0, 1e-12);
    }
}

TEST(CoherentElement, ClosedFormExamples) {
    EXPECT_NEAR(std::abs(phi_matrix_element(0, 0, 0, 0, 1.3) - 1.0 / std::cosh(0.65)), 0.0, 1e-15);
    const cd a(0.3, 0.1), b(-0.2, 0.4), c(0.5, -0.3), d(0.1, 0.2);
    const cd unboosted = std::exp(-(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d)) / 2) *
                         std::exp(a * std::conj(c) + std::conj(b) * d);
    EXPECT_NEAR(std::abs(phi_matrix_element(a, b, c, d, 0) - unboosted), 0.0, 1e-15);
}

TEST(CoherentElement, MatchesExpmOracle) {
    const POracle oracle(30);
    const cd a(1, 0), b(0, 1), c(0.5, 0), d(-0.5, 0);
    const double beta = 1;
    const CVector v = coherent_vector(oracle.basis(), a, b);
    const auto boosted = expm_oracle(oracle.generator(), beta, v);
    const cd numeric = cs_sandwich(oracle.basis(), boosted.v, c, d);
    EXPECT_NEAR(std::abs(numeric - phi_matrix_element(a, b, c, d, beta)), 0.0, 1e-9);
}

TEST(Kernel, EqualLabelsAndQuadrature) {
    const cd a(0.4, -0.2), b(0.1, 0.6);
    EXPECT_NEAR(std::abs(n_kernel(a, a, b, b) - std::exp(std::norm(a) + std::norm(b))), 0.0, 1e-14);
    EXPECT_EQ(n_kernel(0, 0, 0, 0), cd(1));
    const cd ap(0, 0.7), bp(0.1, 0);
    const cd q = n_kernel_quadrature(0.3, ap, -0.2, bp, 0.8);
    EXPECT_NEAR(std::abs(q - n_kernel(0.3, ap, -0.2, bp)), 0.0, 1e-8);
}

TEST(Kernel, GaussHermiteMoments) {
    const auto& gh = gauss_hermite(20);
    double m0 = 0, m2 = 0;
    for (std::size_t i = 0; i < gh.x.size(); ++i) {
        m0 += gh.w[i];
        m2 += gh.w[i] * gh.x[i] * gh.x[i];
    }
    EXPECT_NEAR(m0, std::sqrt(std::numbers::pi), 1e-13);
    EXPECT_NEAR(m2, std::sqrt(std::numbers::pi) / 2, 1e-13);
}

TEST(BoostNorm, Invariance) {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    for (int trial = 0; trial < 5; ++trial) {
        const cd a1(u(rng), u(rng)), a2(u(rng), u(rng)), b1(u(rng), u(rng)), b2(u(rng), u(rng));
        for (double beta : {0.25, 0.5, 1.0}) {
            EXPECT_NEAR(boost_norm_two_mode(a1, a2, b1, b2, beta), 1.0, 1e-8);
            const auto dir = boost_direction_check(a1, a2, b1, b2, beta);
            EXPECT_TRUE(dir.similarity_exact);
            EXPECT_TRUE(dir.commutes_with_gamma);
            EXPECT_NEAR(dir.norm, 1.0, 1e-8);
        }
    }
}

TEST(PElement, Examples) {
    for (double beta : {0.0, 0.5, 1.0, 2.0}) EXPECT_NEAR(p_matrix_element(0, 0, 0, 0, beta), 1 / std::cosh(beta / 2), 1e-15);
    for (int k = 0; k <= 3; ++k)
        for (int n = 0; n <= 3; ++n)
            for (int m = 0; m <= 3; ++m) {
                const int l = k + m - n;
                if (l < 0) continue;
                EXPECT_NEAR(p_matrix_element(k, l, m, n, 0), k == n ? fact(n) * fact(m) : 0.0, 1e-12);
            }
    EXPECT_EQ(p_matrix_element(1, 1, 2, 1, 0.5), 0.0);
    EXPECT_THROW(p_matrix_element(-1, 0, 0, 0, 0.5), std::invalid_argument);
}

TEST(PElement, ThreeIndependentPaths) {
    const POracle oracle(44);
    for (double beta : {0.5, 1.0}) {
        for (int n = 0; n <= 3; ++n)
            for (int m = 0; m <= 3; ++m) {
                const CVector v = oracle.boosted(n, m, beta);
                for (int k = 0; k <= 4; ++k) {
                    const int l = k + m - n;
                    if (l < 0) continue;
                    const double p = p_matrix_element(k, l, m, n, beta);
                    const double scale = std::max(1.0, std::abs(p));
                    EXPECT_NEAR(p, p_matrix_element_nu_sum(k, l, m, n, beta), 1e-12 * scale);
                    EXPECT_NEAR(p, oracle.element(v, k, l), 1e-9 * scale) << k << l << m << n << " " << beta;
                }
            }
    }
}

TEST(PElement, SwappedBranchFormDiffers) {
    const double swapped = p_matrix_element_swapped(0, 0, 1, 1, 0.5);
    EXPECT_NEAR(swapped, p_matrix_element(0, 0, 1, 1, 0.5), 1e-12);
    EXPECT_GT(std::abs(p_matrix_element_swapped(0, 1, 1, 0, 0.5) - p_matrix_element(0, 1, 1, 0, 0.5)), 1e-3);
}

TEST(BasisNorm, Examples) {
    EXPECT_NEAR(boosted_basis_norm(0, 0, 2.0, 60).value, 1.0, 1e-8);
    const auto r = boosted_basis_norm(2, 1, 1.0, 40);
    EXPECT_NEAR(r.value, 2.0, 1e-8);
    EXPECT_TRUE(r.converged);
    EXPECT_DOUBLE_EQ(boosted_basis_norm(3, 2, 0.0, 10).value, 12.0);
}

TEST(Parseval, Examples) {
    EXPECT_EQ(parseval_sum(0, 0, 0.0, 40), 1.0L);
    EXPECT_TRUE(parseval_check(0, 0, 1.0, 40).pass);
    EXPECT_TRUE(parseval_check(3, 1, 0.5, 40).pass);
    for (int n = 0; n <= 3; ++n)
        for (int m = 0; m <= 3; ++m) EXPECT_LE(parseval_check(n, m, 1.0, 40).residual.value, 1e-8) << n << m;
}
