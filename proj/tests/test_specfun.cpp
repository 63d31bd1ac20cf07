#include <gtest/gtest.h>

#include <cmath>

#include "confosc/specfun.hpp"

using namespace confosc::specfun;
using confosc::exact::make_rational;

TEST(Hyp1F1, Examples) {
    EXPECT_EQ(hyp1f1_poly(0, 3), (Polynomial{1}));
    EXPECT_EQ(hyp1f1_poly(1, 2), (Polynomial{1, make_rational(-1, 2)}));
    EXPECT_EQ(hyp1f1_poly(2, 1), (Polynomial{1, -2, make_rational(1, 2)}));
}

TEST(Hyp1F1, PoleThrows) { EXPECT_THROW(hyp1f1_poly(3, -1), std::domain_error); }

TEST(Hyp1F1, UnitAtOriginAndKummer) {
    for (int n = 0; n <= 8; ++n)
        for (int b = 1; b <= 6; ++b) {
            const auto p = hyp1f1_poly(n, b);
            EXPECT_EQ(p.size(), std::size_t(n + 1));
            EXPECT_EQ(p.front(), 1);
            EXPECT_TRUE(satisfies_kummer(p, n, b)) << n << "," << b;
        }
}

TEST(Hyp1F1, LaguerreOracle) {
    // 1F1(-n; a+1; x) = n! a! / (n+a)! L_n^a(x), with L from its three-term recurrence
    for (int a = 0; a <= 3; ++a)
        for (int n = 0; n <= 6; ++n) {
            const double x = 0.37;
            double l0 = 1, l1 = 1 + a - x, ln = n == 0 ? l0 : l1;
            for (int k = 1; k < n; ++k) {
                const double l2 = ((2 * k + 1 + a - x) * l1 - (k + a) * l0) / (k + 1);
                l0 = l1;
                l1 = l2;
                ln = l2;
            }
            const double scale = std::tgamma(n + 1.0) * std::tgamma(a + 1.0) / std::tgamma(n + a + 1.0);
            EXPECT_NEAR(evaluate(hyp1f1_poly(n, a + 1), x), scale * ln, 1e-12);
        }
}

TEST(Hyp2F1, Examples) {
    EXPECT_EQ(hyp2f1_poly(0, 5, 1), (Polynomial{1}));
    EXPECT_EQ(hyp2f1_poly(1, 1, 1), (Polynomial{1, 1}));
    EXPECT_EQ(hyp2f1_poly(2, 1, 2), (Polynomial{1, 1}));
    EXPECT_THROW(hyp2f1_poly(1, 1, 0), std::invalid_argument);
}

TEST(Hyp2F1, ChuVandermonde) {
    // 2F1(-k, -l; c; 1) = (c+l)_k / (c)_k
    for (int k = 0; k <= 6; ++k)
        for (int l = 0; l <= 6; ++l)
            for (int c = 1; c <= 4; ++c) {
                const auto p = hyp2f1_poly(k, l, c);
                Rational sum(0);
                for (const auto& q : p) sum += q;
                Rational expect = pochhammer(Rational(c + l), k) / pochhammer(Rational(c), k);
                expect.canonicalize();
                EXPECT_EQ(sum, expect);
                EXPECT_EQ(p, hyp2f1_poly(l, k, c));
            }
}

TEST(BesselCoeffs, Examples) {
    EXPECT_EQ(bessel_i_coeffs(3, 1)[0], make_rational(1, 2));
    EXPECT_EQ(bessel_i_coeffs(0, 1)[0], 0);
    EXPECT_EQ(bessel_i_coeffs(2, 2)[1], 1);
}

TEST(BesselCoeffs, Recurrence) {
    for (int k = 0; k <= 7; ++k) {
        const auto c = bessel_i_coeffs(k, 10);
        for (int m = 0; m + 1 < 10; ++m) {
            if (m + k - 1 <= 0) continue;
            EXPECT_EQ(Rational((m + 1) * (m + k - 1)) * c[std::size_t(m) + 1], c[std::size_t(m)]);
        }
    }
}

TEST(Evaluate, ComplexMatchesExact) {
    const auto p = hyp1f1_poly(5, 3);
    const GaussianRational x(make_rational(1, 3), make_rational(-2, 5));
    const auto exact = evaluate_exact(p, x).to_complex<double>();
    const auto fp = evaluate(p, std::complex<double>(1.0 / 3, -0.4));
    EXPECT_NEAR(std::abs(exact - fp), 0.0, 1e-14);
}
