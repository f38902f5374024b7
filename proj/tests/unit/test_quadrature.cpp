#include <pdcheck/quadrature.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace pdcheck;

TEST(Quadrature, PolynomialIsExact) {
    auto f = [](double x) -> cplx { return 3.0 * x * x * x * x - x + 2.0; };
    const QuadResult r = integrate(f, -1.0, 2.0, QuadOptions{});
    EXPECT_NEAR(r.value.real(), 3.0 * 33.0 / 5.0 - 1.5 + 6.0, 1e-13);
    EXPECT_LE(r.error, 1e-12);
}

TEST(Quadrature, GaussianTails) {
    auto g = [](double x) -> cplx { return std::exp(-0.5 * x * x); };
    QuadResult r = integrate(g, -4.0, 4.0, QuadOptions{});
    r += integrate_tail(g, 4.0, 1, 1.0, QuadOptions{});
    r += integrate_tail(g, -4.0, -1, 1.0, QuadOptions{});
    EXPECT_NEAR(r.value.real(), std::sqrt(2.0 * M_PI), 1e-12);
    EXPECT_NEAR(r.magnitude, std::sqrt(2.0 * M_PI), 1e-12);
}

TEST(Quadrature, AlgebraicTail) {
    // int_1^inf x^-3 dx = 1/2
    auto f = [](double x) -> cplx { return 1.0 / (x * x * x); };
    EXPECT_NEAR(integrate_tail(f, 1.0, 1, 1.0, QuadOptions{}).value.real(), 0.5, 1e-12);
}

TEST(Quadrature, BreakpointsHandleKinks) {
    auto f = [](double x) -> cplx { return std::abs(x - 0.3); };
    const std::array<double, 3> pts{-1.0, 0.3, 1.0};
    const QuadResult r = integrate(f, std::span<const double>(pts), QuadOptions{});
    EXPECT_NEAR(r.value.real(), 0.5 * 1.3 * 1.3 + 0.5 * 0.7 * 0.7, 1e-14);
}

TEST(Quadrature, MagnitudeBoundsValue) {
    auto f = [](double x) -> cplx { return std::polar(1.0, 7.0 * x) * std::exp(-x * x); };
    const QuadResult r = integrate(f, -6.0, 6.0, QuadOptions{});
    EXPECT_NEAR(r.value.real(), std::sqrt(M_PI) * std::exp(-49.0 / 4.0), 1e-14);
    EXPECT_GE(r.magnitude, std::abs(r.value));
    EXPECT_NEAR(r.magnitude, std::sqrt(M_PI), 1e-10);
}

TEST(Quadrature, LinearityProperty) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = u(rng), b = u(rng), c = u(rng);
        auto f = [&](double x) -> cplx { return std::exp(-(x - a) * (x - a)); };
        auto g = [&](double x) -> cplx { return std::cos(b * x) / (1.0 + x * x); };
        auto h = [&](double x) -> cplx { return c * f(x) + g(x); };
        const double lo = -3.0, hi = 4.0;
        const cplx lhs = integrate(h, lo, hi, QuadOptions{}).value;
        const cplx rhs = c * integrate(f, lo, hi, QuadOptions{}).value + integrate(g, lo, hi, QuadOptions{}).value;
        EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
    }
}

TEST(Quadrature, BudgetExhaustionThrows) {
    auto f = [](double x) -> cplx { return std::sin(1.0 / (x + 1e-300)); };
    EXPECT_THROW(integrate(f, 0.0, 1.0, QuadOptions{1e-15, 0.0, 0.0, 2000}), QuadratureFailure);
}

TEST(Quadrature, NonFiniteIntegrandThrows) {
    auto f = [](double x) -> cplx { return 1.0 / x; };
    EXPECT_THROW(integrate(f, 0.0, 1.0, QuadOptions{}), NumericalError);
}

TEST(Quadrature, CompensatedSumRecoversCancellation) {
    CompensatedSum<double> s;
    s.add(1e16);
    s.add(1.0);
    s.add(-1e16);
    EXPECT_DOUBLE_EQ(s.value(), 1.0);
    CompensatedSum<cplx> z;
    z.add({1e16, -1e16});
    z.add({1.0, 2.0});
    z.add({-1e16, 1e16});
    EXPECT_EQ(z.value(), (cplx{1.0, 2.0}));
}
