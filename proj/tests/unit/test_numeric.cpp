#include <pdcheck/numeric.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace pdcheck;

TEST(Numeric, IntegerPowersMatchRepeatedProduct) {
    const cplx w{0.3, -1.7};
    cplx p{1.0, 0.0};
    for (unsigned n = 0; n < 20; ++n) {
        EXPECT_NEAR(std::abs(ipow(w, n) - p), 0.0, 1e-12 * std::abs(p));
        EXPECT_NEAR(std::abs(inv_pow(w, n) * p - 1.0), 0.0, 1e-12);
        p *= w;
    }
    EXPECT_DOUBLE_EQ(ipow(-2.0, 5), -32.0);
}

TEST(Numeric, TimesIPowCyclesWithPeriodFour) {
    const cplx w{2.0, 3.0};
    EXPECT_EQ(times_i_pow(w, 0), w);
    EXPECT_EQ(times_i_pow(w, 1), (cplx{-3.0, 2.0}));
    EXPECT_EQ(times_i_pow(w, 2), -w);
    EXPECT_EQ(times_i_pow(w, 3), (cplx{3.0, -2.0}));
    EXPECT_EQ(times_i_pow(w, -1), times_i_pow(w, 3));
    EXPECT_EQ(times_i_pow(w, 9), times_i_pow(w, 1));
}

TEST(Numeric, RisingFactorialAndBinomial) {
    EXPECT_DOUBLE_EQ(rising_factorial(3, 0), 1.0);
    EXPECT_DOUBLE_EQ(rising_factorial(3, 4), 3.0 * 4 * 5 * 6);
    EXPECT_DOUBLE_EQ(binomial(10, 3), 120.0);
    EXPECT_DOUBLE_EQ(binomial(4, 5), 0.0);
    for (unsigned n = 1; n < 30; ++n) {
        for (unsigned k = 1; k < n; ++k) {
            EXPECT_DOUBLE_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
        }
    }
}

TEST(Numeric, HermiteRecurrence) {
    // He_{k+1}(x) = x He_k(x) - k He_{k-1}(x)
    for (double x : {-2.5, 0.0, 0.7, 3.0}) {
        EXPECT_DOUBLE_EQ(hermite_he(0, x), 1.0);
        EXPECT_DOUBLE_EQ(hermite_he(1, x), x);
        for (unsigned k = 1; k < 10; ++k) {
            EXPECT_NEAR(hermite_he(k + 1, x), x * hermite_he(k, x) - k * hermite_he(k - 1, x),
                        1e-12 * (1.0 + std::abs(hermite_he(k + 1, x))));
        }
    }
}

TEST(Numeric, PolynomialHelpers) {
    const std::vector<double> p{1.0, -2.0, 0.0, 3.0};
    EXPECT_DOUBLE_EQ(polyval(p, 2.0), 1.0 - 4.0 + 24.0);
    EXPECT_DOUBLE_EQ(polyabs(p, -2.0), 1.0 + 4.0 + 24.0);
    EXPECT_EQ(polyder(p), (std::vector<double>{-2.0, 0.0, 9.0}));
    const cplx z{0.5, 1.0};
    EXPECT_NEAR(std::abs(polyval(p, z) - (1.0 - 2.0 * z + 3.0 * z * z * z)), 0.0, 1e-14);
}
