#include <pdcheck/distribution.hpp>
#include <pdcheck/quadrature.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace pdcheck;

TEST(Base, PointValues) {
    EXPECT_DOUBLE_EQ(Base::gaussian(2.0)(2.0), std::exp(-0.5));
    EXPECT_DOUBLE_EQ(Base::laplace(3.0)(-1.0), std::exp(-3.0));
    EXPECT_DOUBLE_EQ(Base::cosine(2.0)(0.5), std::cos(1.0));
    EXPECT_DOUBLE_EQ(Base::sine(2.0)(0.5), std::sin(1.0));
    EXPECT_DOUBLE_EQ(Base::constant()(123.0), 1.0);
    EXPECT_DOUBLE_EQ(Base::indicator(1.0)(1.0), 1.0);
    EXPECT_DOUBLE_EQ(Base::indicator(1.0)(1.0001), 0.0);
    EXPECT_DOUBLE_EQ(Base::triangle(2.0)(-1.0), 0.5);
    EXPECT_DOUBLE_EQ(Base::triangle(2.0)(3.0), 0.0);
    EXPECT_DOUBLE_EQ(Base::bump(1.0)(0.0), std::exp(-1.0));
    EXPECT_DOUBLE_EQ(Base::bump(1.0)(1.0), 0.0);
}

TEST(Base, Classification) {
    EXPECT_TRUE(Base::gaussian(1.0).decays());
    EXPECT_TRUE(Base::bump(1.0).compact());
    EXPECT_TRUE(Base::cosine(1.0).oscillatory());
    EXPECT_TRUE(Base::constant().oscillatory());
    EXPECT_FALSE(Base::sine(1.0).even());
    EXPECT_FALSE(Base::indicator(1.0).continuous());
    EXPECT_EQ(Base::triangle(2.0).kinks(), (std::vector<double>{-2.0, 0.0, 2.0}));
}

TEST(Base, ParameterValidation) {
    EXPECT_THROW(Base::gaussian(0.0).validate(), InvalidArgument);
    EXPECT_THROW(Base::laplace(-1.0).validate(), InvalidArgument);
    EXPECT_THROW(Base::bump(NAN).validate(), InvalidArgument);
    EXPECT_NO_THROW(Base::cosine(0.0).validate());
    EXPECT_NO_THROW(Base::sine(-2.0).validate());
}

TEST(Base, BumpDerivativesMatchFiniteDifferences) {
    const double a = 1.5;
    const double h = 1e-5;
    for (double x : {-1.2, -0.4, 0.0, 0.3, 1.1}) {
        for (unsigned k = 1; k <= 3; ++k) {
            const double fd = (bump_derivative(x + h, a, k - 1) - bump_derivative(x - h, a, k - 1)) / (2.0 * h);
            EXPECT_NEAR(bump_derivative(x, a, k), fd, 1e-6 * (1.0 + std::abs(fd))) << "x=" << x << " k=" << k;
        }
    }
    EXPECT_THROW(bump_derivative(0.0, 1.0, 4), UnsupportedOrder);
}

TEST(Atoms, DensityEvaluation) {
    DensityAtom a = density(Base::gaussian(1.0), cplx{2.0, -1.0}, {1.0, 0.0, 3.0});
    a.modulation = 2.0;
    const double t = 0.7;
    const cplx want = cplx{2.0, -1.0} * (1.0 + 3.0 * t * t) * std::exp(-0.5 * t * t) * std::polar(1.0, 2.0 * t);
    EXPECT_NEAR(std::abs(a(t) - want), 0.0, 1e-15);
    EXPECT_EQ(a.poly_degree(), 2u);
    EXPECT_EQ(a.growth_degree, 2u);
    EXPECT_EQ((DensityAtom{Base::constant(), {1.0, 2.0, 0.0}, 1.0, 1, 0.0}).poly_degree(), 1u);
}

TEST(Atoms, GrowthDegreeMustCoverPolynomialOnOscillatoryBases) {
    DensityAtom a = density(Base::cosine(1.0), 1.0, {0.0, 0.0, 1.0});
    a.growth_degree = 1;
    EXPECT_THROW(a.validate(), InvalidArgument);
    a.growth_degree = 2;
    EXPECT_NO_THROW(a.validate());
    // Decaying bases may declare less growth than the raw degree.
    DensityAtom g = density(Base::gaussian(1.0), 1.0, {0.0, 0.0, 1.0});
    g.growth_degree = 0;
    EXPECT_NO_THROW(g.validate());
}

TEST(Atoms, NonFiniteRejected) {
    EXPECT_THROW((Distribution{dirac(NAN)}), InvalidArgument);
    EXPECT_THROW((Distribution{dirac(0.0, 0, cplx{INFINITY, 0.0})}), InvalidArgument);
    EXPECT_THROW((Distribution{density(Base::gaussian(1.0), 1.0, {})}), InvalidArgument);
    Distribution f;
    EXPECT_THROW(f.require_nonempty(), InvalidArgument);
}

TEST(Distribution, OrderBound) {
    EXPECT_EQ(order_bound(Distribution{dirac()}), 0u);
    EXPECT_EQ(order_bound(Distribution{dirac(0.0, 3)}), 3u);
    EXPECT_EQ(order_bound(Distribution{density(Base::gaussian(1.0))}), 2u);
    EXPECT_EQ(order_bound(Distribution{density(Base::constant(), 1.0, {0.0, 0.0, 1.0})}), 4u);
    EXPECT_EQ(order_bound(Distribution{dirac(0.0, 1), density(Base::constant(), 1.0, {0.0, 1.0})}), 3u);
}

TEST(Distribution, Algebra) {
    const Distribution f{dirac(1.0, 0, 2.0)};
    const Distribution g{density(Base::laplace(1.0))};
    const Distribution s = f + g;
    ASSERT_EQ(s.size(), 2u);
    const Distribution n = -s;
    EXPECT_EQ(std::get<DiracAtom>(n.atoms()[0]).weight, cplx(-2.0));
    EXPECT_EQ(std::get<DensityAtom>(n.atoms()[1]).weight, cplx(-1.0));
    const Distribution m = s.modulated(3.0).modulated(-1.0);
    EXPECT_DOUBLE_EQ(std::get<DiracAtom>(m.atoms()[0]).modulation, 2.0);
    EXPECT_DOUBLE_EQ(std::get<DensityAtom>(m.atoms()[1]).modulation, 2.0);
    EXPECT_TRUE(s.has_dirac());
    EXPECT_FALSE(g.has_dirac());
    EXPECT_EQ(s.scaled({0.0, 1.0}).scaled({0.0, -1.0}), s);
}

TEST(GaussianMixture, RejectsBadComponents) {
    EXPECT_THROW(GaussianMixture(std::vector<GaussianComponent>{}), InvalidArgument);
    EXPECT_THROW(GaussianMixture({{1.0, 0.0, 0.0}}), InvalidArgument);
    EXPECT_THROW(GaussianMixture({{1.0, 0.0, 1.0}}, NAN), InvalidArgument);
    EXPECT_THROW(GaussianMixture({{1.0, 0.0, 1.0}}, 1.0).convolve(GaussianMixture({{1.0, 0.0, 1.0}}, 2.0)),
                 InvalidArgument);
}

TEST(GaussianMixture, StarIsConjugateReflection) {
    const GaussianMixture phi({{{0.5, -0.2}, 1.0, 0.7}, {{-0.3, 0.9}, -2.0, 1.4}}, 2.5);
    const GaussianMixture s = phi.star();
    for (double x : {-3.0, -0.5, 0.0, 1.2, 4.0}) {
        EXPECT_NEAR(std::abs(s(x) - std::conj(phi(-x))), 0.0, 1e-15);
    }
}

// Property: the closed-form autocorrelation equals the numerical convolution.
TEST(GaussianMixture, AutocorrelationMatchesQuadrature) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<GaussianComponent> comps;
        for (int l = 0; l < 3; ++l) {
            comps.push_back({{u(rng), u(rng)}, 3.0 * u(rng), 1.2 + u(rng)});
        }
        const GaussianMixture phi(comps, trial % 2 == 0 ? 0.0 : 4.0 * u(rng));
        const GaussianMixture ac = phi.autocorrelation();
        const GaussianMixture st = phi.star();
        for (double x : {-2.0, 0.0, 1.5}) {
            auto integrand = [&](double y) -> cplx { return phi(y) * st(x - y); };
            const cplx num = integrate(integrand, -30.0, 30.0, QuadOptions{}).value;
            EXPECT_NEAR(std::abs(ac(x) - num), 0.0, 1e-11 * (1.0 + std::abs(num)));
        }
        // phi * phi^star is Hermitian: its value at 0 is the squared L2 norm.
        auto sq = [&](double y) -> cplx { return std::norm(phi(y)); };
        EXPECT_NEAR(std::abs(ac(0.0) - integrate(sq, -30.0, 30.0, QuadOptions{}).value), 0.0, 1e-11);
    }
}

TEST(GaussianMixture, EnvelopeDerivatives) {
    const GaussianMixture phi({{{1.0, 0.5}, 0.3, 0.8}}, 0.0);
    const double h = 1e-5;
    for (unsigned k = 1; k <= 4; ++k) {
        const double x = 0.9;
        const cplx fd = (phi.envelope_derivative(k - 1, x + h) - phi.envelope_derivative(k - 1, x - h)) / (2.0 * h);
        EXPECT_NEAR(std::abs(phi.envelope_derivative(k, x) - fd), 0.0, 1e-6);
        EXPECT_GE(phi.envelope_derivative_magnitude(k, x), std::abs(phi.envelope_derivative(k, x)) * (1 - 1e-15));
    }
}
