#include <pdcheck/catalog.hpp>
#include <pdcheck/transform.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace pdcheck;

namespace {
const cplx I{0.0, 1.0};
Distribution gaussian(double s = 1.0) { return Distribution{density(Base::gaussian(s))}; }
Distribution laplace() { return Distribution{density(Base::laplace(1.0))}; }
}  // namespace

TEST(CauchyParams, Validation) {
    EXPECT_THROW(CauchyParams(1, 0.5, 0.5), InvalidArgument);
    EXPECT_THROW(CauchyParams(1, NAN, 0.5), InvalidArgument);
    const CauchyParams p(1, -1.0, 2.0);
    EXPECT_DOUBLE_EQ(p.modulation(1), -1.0);
    EXPECT_DOUBLE_EQ(p.modulation(2), 2.0);
    EXPECT_THROW((void)p.modulation(3), InvalidArgument);
    EXPECT_EQ(CauchyParams::auto_n(Distribution{dirac()}), 0u);
    EXPECT_EQ(CauchyParams::auto_n(Distribution{dirac(0.0, 1)}), 1u);
    EXPECT_EQ(CauchyParams::auto_n(gaussian()), 1u);
    EXPECT_EQ(CauchyParams::auto_n(Distribution{density(Base::constant(), 1.0, {0.0, 0.0, 1.0})}), 2u);
    EXPECT_THROW(CauchyParams(0, 0.0, 1.0).require_order(gaussian()), InsufficientPower);
}

TEST(Transform, DiracClosedFormOnBothHalfAxes) {
    const CauchyParams p(0, 0.0, 1.0);
    const Distribution delta{dirac()};
    for (double y : {0.01, 0.1, 1.0, 10.0, 100.0, -0.5, -3.0}) {
        EXPECT_NEAR(std::abs(cauchy_transform(delta, p, 1, I * y) - 1.0 / (kPi * y)), 0.0, 1e-14 / std::abs(y));
        for (unsigned s = 0; s <= 8; ++s) {
            const double want = (s % 2 == 0 ? 1.0 : -1.0) * std::tgamma(s + 1.0) / (kPi * std::pow(y, s + 1.0));
            const AxisSample a = axis_derivative(delta, p, 1, y, s);
            EXPECT_LE(std::abs(a.value - want), 1e-13 * std::abs(want)) << "y=" << y << " s=" << s;
        }
    }
}

// F~(z) = (-1)^n (i/pi) (F, (z - t)^-(2n+1)); for the Laplace density and n = 1
// at z = i the pairing is 0.37855037576418665 i (mpmath), so F~(i) = 0.37855.../pi.
TEST(Transform, LaplaceFrozenValue) {
    const cplx v = cauchy_transform(laplace(), CauchyParams(1, 0.0, 1.0), 1, I);
    EXPECT_NEAR(v.real(), 0.37855037576418665 / kPi, 1e-14);
    EXPECT_NEAR(v.imag(), 0.0, 1e-14);
}

// Brute force: Simpson's rule on [-60, 60] for d^s/dy^s F~(iy), Laplace, n = 1.
TEST(Transform, LaplaceAxisDerivativeAgainstBruteForce) {
    const CauchyParams p(1, 0.0, 1.0);
    for (double y : {0.5, -0.7, 2.0}) {
        for (unsigned s : {0u, 2u, 3u}) {
            const unsigned q = 2 + s + 1;
            const std::size_t n = 600000;
            const double h = 120.0 / static_cast<double>(n);
            cplx acc{};
            for (std::size_t k = 0; k <= n; ++k) {
                const double t = -60.0 + h * static_cast<double>(k);
                const double w = (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
                acc += w * std::exp(-std::abs(t)) * inv_pow(cplx{y, t}, q);
            }
            acc *= h / 3.0;
            // D_s = (-1)^s (2+s)!/(2! pi) (F, (y + it)^-q)
            const double factor = (s % 2 == 0 ? 1.0 : -1.0) * std::tgamma(3.0 + s) / (2.0 * kPi);
            const cplx want = factor * acc;
            const AxisSample a = axis_derivative(laplace(), p, 1, y, s);
            EXPECT_LE(std::abs(a.value - want), 1e-8 * std::abs(want)) << "y=" << y << " s=" << s;
        }
    }
}

// Closed form for the indicator, n = 1, s = 1: P = [(y+i)^-3 - (y-i)^-3] / (-3i).
// Accuracy is relative to the L1 scale of the integrand (about 2/(3 y^3) here).
TEST(Transform, IndicatorCoreClosedForm) {
    const Distribution f{density(Base::indicator(1.0))};
    for (double y : {0.01, 0.3, 4.0}) {
        const cplx want = (inv_pow(cplx{y, 1.0}, 3) - inv_pow(cplx{y, -1.0}, 3)) / (-3.0 * I);
        const AxisSample a = axis_derivative(f, CauchyParams(1, 0.0, 1.0), 1, y, 1);
        EXPECT_LE(std::abs(a.core - want), 1e-12 * std::max(std::abs(want), a.scale));
        EXPECT_LE(std::abs(a.core - want), 1e-9 * std::abs(want));
    }
}

TEST(Transform, AxisLogFactor) {
    EXPECT_NEAR(axis_log_factor(1, 2), std::log(12.0 / kPi), 1e-15);
    EXPECT_NEAR(axis_log_factor(0, 0), -std::log(kPi), 1e-15);
    // Crossing the lgamma switch keeps log((2n+s)!/(2n)!) consistent.
    for (unsigned s = 0; s < 4; ++s) {
        const double step = axis_log_factor(74, s + 1) - axis_log_factor(74, s);
        EXPECT_NEAR(step, std::log(148.0 + s + 1.0), 1e-11);
    }
}

TEST(Transform, ErrorsOnTheRealAxis) {
    EXPECT_THROW(axis_derivative(gaussian(), CauchyParams(1, 0.0, 1.0), 1, 0.0, 0), PoleOnAxis);
    EXPECT_THROW(axis_core(gaussian(), 0.0, 0.0, 3), PoleOnAxis);
    EXPECT_THROW(axis_derivative(gaussian(), CauchyParams(0, 0.0, 1.0), 1, 1.0, 0), InsufficientPower);
}

// Property: for real even F and a = 0 the axis core is real.
TEST(Transform, RealEvenGivesRealAxisValues) {
    for (const Distribution& f : {gaussian(), laplace(), Distribution{density(Base::triangle(1.0))},
                                  Distribution{density(Base::cosine(1.0))}}) {
        for (double y : {0.2, -1.5}) {
            for (unsigned s = 0; s < 4; ++s) {
                const AxisSample a = axis_derivative(f, CauchyParams(1, 0.0, 1.0), 1, y, s);
                EXPECT_LE(std::abs(a.core.imag()), 1e-13 * a.scale);
            }
        }
    }
}

// Property: F(c t) rescales the pairing, (F(c .), (z - t)^-q) = c^(q-1) (F, (cz - t)^-q).
TEST(Transform, ScalingInvariance) {
    for (double c : {0.5, 2.0, 3.0}) {
        const unsigned q = 5;
        const cplx z{0.3, 0.8};
        const cplx lhs = pair_cauchy_kernel(gaussian(1.0 / c), 0.0, z, q);
        const cplx rhs = std::pow(c, q - 1.0) * pair_cauchy_kernel(gaussian(1.0), 0.0, c * z, q);
        EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::abs(rhs));
    }
}

TEST(Transform, SampleFromValueKeepsSignConvention) {
    const AxisSample a = sample_from_value(1, 2.0, 3, cplx{-4.0, 0.0});
    EXPECT_EQ(a.core, cplx(4.0));
    EXPECT_DOUBLE_EQ(a.scale, 4.0);
    EXPECT_DOUBLE_EQ(a.log_factor, 0.0);
}

TEST(Smoothing, DerivativeInT) {
    const DensityAtom u = density(Base::bump(1.0));
    const double h = 1e-4;
    for (unsigned m : {0u, 1u}) {
        for (double t : {-0.5, 0.2, 2.0}) {
            const cplx fd = (cauchy_smooth_derivative(u, m, 0.4, t + h, 0) - cauchy_smooth_derivative(u, m, 0.4, t - h, 0)) /
                            (2.0 * h);
            const cplx exact = cauchy_smooth_derivative(u, m, 0.4, t, 1);
            EXPECT_LE(std::abs(fd - exact), 1e-7 * (1.0 + std::abs(exact)));
        }
    }
}

TEST(Smoothing, InterchangeAndResidualGuards) {
    for (const auto& c : std::vector<std::pair<Distribution, double>>{{gaussian(), 0.5}, {laplace(), -0.8}}) {
        const InterchangeSides s = interchange_sides(c.first, density(Base::bump(1.0)), 1, c.second);
        EXPECT_LE(std::abs(s.nested - s.iterated), 1e-7 * std::abs(s.iterated));
    }
    EXPECT_THROW(interchange_sides(gaussian(), density(Base::gaussian(1.0)), 0, 0.5), InvalidArgument);
    const auto grid = default_plemelj_grid();
    EXPECT_EQ(grid.size(), 401u);
    EXPECT_DOUBLE_EQ(grid.front(), -8.0);
    EXPECT_DOUBLE_EQ(grid.back(), 8.0);
    EXPECT_THROW(plemelj_residual(density(Base::bump(1.0)), 2, 0.1, grid), UnsupportedOrder);
    EXPECT_THROW(plemelj_residual(density(Base::triangle(1.0)), 0, 0.1, grid), InvalidArgument);
    EXPECT_DOUBLE_EQ(plemelj_residual(density(Base::bump(1.0), 0.0), 0, 0.1, grid), 0.0);
}

// u_f(0, y) closed forms: cosine -> e^{-by}; gaussian -> e^{y^2/2} erfc(y / sqrt 2); constant -> 1.
TEST(PoissonAxis, ClosedForms) {
    for (double y : {0.1, 0.5, 1.0, 4.0}) {
        EXPECT_NEAR(poisson_axis(Distribution{density(Base::cosine(2.0))}, y), std::exp(-2.0 * y), 1e-11);
        EXPECT_NEAR(poisson_axis(gaussian(), y), std::exp(0.5 * y * y) * std::erfc(y / std::sqrt(2.0)), 1e-12);
        EXPECT_NEAR(poisson_axis(Distribution{density(Base::constant())}, y), 1.0, 1e-12);
    }
}

TEST(PoissonAxis, DomainRestrictions) {
    EXPECT_THROW(require_poisson_domain(Distribution{dirac()}), UnsupportedDistribution);
    EXPECT_THROW(require_poisson_domain(Distribution{density(Base::sine(1.0))}), UnsupportedDistribution);
    EXPECT_THROW(require_poisson_domain(Distribution{density(Base::indicator(1.0))}), UnsupportedDistribution);
    EXPECT_THROW(require_poisson_domain(Distribution{density(Base::gaussian(1.0), 1.0, {0.0, 0.0, 1.0})}),
                 UnsupportedDistribution);
    EXPECT_THROW(require_poisson_domain(Distribution{density(Base::gaussian(1.0), cplx{0.0, 1.0})}),
                 UnsupportedDistribution);
    EXPECT_THROW(require_poisson_domain(gaussian().modulated(1.0)), UnsupportedDistribution);
    EXPECT_NO_THROW(require_poisson_domain(gaussian() + Distribution{density(Base::triangle(2.0), 0.5)}));
    EXPECT_DOUBLE_EQ(value_at_zero(gaussian() + Distribution{density(Base::triangle(2.0), 0.5)}), 1.5);
}
