#include <pdcheck/catalog.hpp>
#include <pdcheck/oracle.hpp>

#include <gtest/gtest.h>

using namespace pdcheck;

TEST(FourierCatalog, MonomialTransformsOfBases) {
    using detail::monomial_transform;
    for (double xi : {0.0, 0.3, 2.0, -5.0}) {
        EXPECT_NEAR(std::abs(monomial_transform(Base::gaussian(2.0), 0, xi) -
                             std::sqrt(2.0 * kPi) * 2.0 * std::exp(-2.0 * xi * xi)),
                    0.0, 1e-14);
        EXPECT_NEAR(std::abs(monomial_transform(Base::laplace(1.5), 0, xi) - 3.0 / (2.25 + xi * xi)), 0.0, 1e-14);
        const double ind = xi == 0.0 ? 2.0 : 2.0 * std::sin(xi) / xi;
        EXPECT_NEAR(std::abs(monomial_transform(Base::indicator(1.0), 0, xi) - ind), 0.0, 1e-14);
        const double tri = xi == 0.0 ? 2.0 : 4.0 * std::pow(std::sin(xi), 2) / (2.0 * xi * xi);
        EXPECT_NEAR(std::abs(monomial_transform(Base::triangle(2.0), 0, xi) - tri), 0.0, 1e-13);
    }
    EXPECT_THROW(monomial_transform(Base::cosine(1.0), 0, 0.0), UnsupportedAtom);
}

// Property: transforms of t^k g agree with direct quadrature of t^k g(t) e^{-i xi t}.
TEST(FourierCatalog, MonomialTransformsAgainstQuadrature) {
    for (const Base& b : {Base::gaussian(0.8), Base::laplace(1.3), Base::indicator(1.5), Base::triangle(2.0)}) {
        for (unsigned k = 0; k <= 3; ++k) {
            for (double xi : {0.05, 0.7, 3.0, -6.0}) {
                auto f = [&](double t) -> cplx { return ipow(t, k) * b(t) * std::polar(1.0, -xi * t); };
                const std::array<double, 5> pts{-40.0, -b.param(), 0.0, b.param(), 40.0};
                const cplx num = integrate(f, std::span<const double>(pts), QuadOptions{}).value;
                const cplx got = detail::monomial_transform(b, k, xi);
                EXPECT_LE(std::abs(got - num), 1e-10 * (1.0 + std::abs(num)))
                    << to_string(b.kind()) << " k=" << k << " xi=" << xi;
            }
        }
    }
}

TEST(FourierTruth, CatalogVerdicts) {
    for (const auto& fx : all_fixtures()) {
        const GroundTruth g = fourier_truth(fx.f);
        EXPECT_EQ(g.pd, fx.pd ? Truth::yes : Truth::no) << fx.name << ": " << g.reason;
        EXPECT_EQ(g.source, "fourier");
        if (!fx.pd) {
            ASSERT_TRUE(g.evidence.has_value()) << fx.name;
        }
    }
}

// 2 sin(xi)/xi is most negative near xi = 4.4934; the scan step is 0.02.
TEST(FourierTruth, IndicatorEvidence) {
    const GroundTruth g = fourier_truth(Distribution{density(Base::indicator(1.0))});
    ASSERT_EQ(g.pd, Truth::no);
    EXPECT_EQ(g.evidence->kind, "frequency");
    EXPECT_NEAR(std::abs(g.evidence->frequency), 4.4934, 0.02);
    EXPECT_NEAR(g.evidence->value.real(), 2.0 * std::sin(g.evidence->frequency) / g.evidence->frequency, 1e-12);
}

TEST(FourierTruth, SingularParts) {
    // t^2 -> -2 pi delta''(xi): not a measure.
    const GroundTruth sq = fourier_truth(Distribution{density(Base::constant(), 1.0, {0.0, 0.0, 1.0})});
    ASSERT_EQ(sq.pd, Truth::no);
    EXPECT_EQ(sq.evidence->kind, "non_measure");
    EXPECT_EQ(sq.evidence->order, 2u);
    // -cos -> negative point masses at +-1.
    const GroundTruth nc = fourier_truth(Distribution{density(Base::cosine(1.0), -1.0)});
    ASSERT_EQ(nc.pd, Truth::no);
    EXPECT_EQ(nc.evidence->kind, "point_mass");
    // The constant 1 has transform 2 pi delta: PD.
    EXPECT_EQ(fourier_truth(Distribution{density(Base::constant())}).pd, Truth::yes);
}

TEST(FourierTruth, DiracDerivativeTransformIsImaginary) {
    // delta' -> i xi, not real.
    const GroundTruth g = fourier_truth(Distribution{dirac(0.0, 1)});
    ASSERT_EQ(g.pd, Truth::no);
    EXPECT_EQ(g.evidence->kind, "frequency");
    EXPECT_NEAR(std::abs(g.evidence->value.real()), 0.0, 1e-15);
    EXPECT_NE(g.evidence->value.imag(), 0.0);
    // -delta'' -> xi^2 >= 0, PD.
    EXPECT_EQ(fourier_truth(Distribution{dirac(0.0, 2, -1.0)}).pd, Truth::yes);
}

TEST(FourierTruth, UncertifiedButNonnegativeIsUnknown) {
    // (1 - t^2) e^{-t^2/2} has transform sqrt(2 pi) xi^2 e^{-xi^2/2} >= 0, which the
    // certificate rules (constant prefactors only) do not cover.
    const Distribution f{density(Base::gaussian(1.0), 1.0, {1.0, 0.0, -1.0})};
    const GroundTruth g = fourier_truth(f);
    EXPECT_EQ(g.pd, Truth::unknown) << g.reason;
}

TEST(QuadraticForm, DeterministicPerSeed) {
    const Distribution f{density(Base::indicator(1.0))};
    const GroundTruth a = quadratic_form_truth(f, 256, 0);
    const GroundTruth b = quadratic_form_truth(f, 256, 0);
    ASSERT_EQ(a.pd, Truth::no);
    EXPECT_EQ(a.evidence->trial, b.evidence->trial);
    EXPECT_EQ(a.evidence->value, b.evidence->value);
    EXPECT_EQ(a.evidence->phi, b.evidence->phi);
    EXPECT_EQ(a.source, "quadratic_form");
    // The witness reproduces from the recorded test function.
    EXPECT_EQ(pair_test_function(f, *a.evidence->phi), a.evidence->value);
}

TEST(QuadraticForm, RefutesNonPdAndSparesPd) {
    for (const auto& fx : non_pd_fixtures()) {
        EXPECT_EQ(quadratic_form_truth(fx.f, 256, 0).pd, Truth::no) << fx.name;
    }
    for (const auto& fx : pd_fixtures()) {
        const GroundTruth g = quadratic_form_truth(fx.f, 300, 17);
        EXPECT_EQ(g.pd, Truth::unknown) << fx.name;
    }
}

// Property: for a PD continuous function every Hermitian form is real and nonnegative.
TEST(QuadraticForm, HermitianFormOfGaussianIsNonnegative) {
    const Distribution f{density(Base::gaussian(1.0))};
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> xs;
        std::vector<cplx> cs;
        for (int k = 0; k < 6; ++k) {
            xs.push_back(u(rng));
            cs.emplace_back(u(rng), u(rng));
        }
        const auto [form, size] = hermitian_form(f, xs, cs);
        EXPECT_GE(form.real(), -1e-13 * size);
        EXPECT_LE(std::abs(form.imag()), 1e-13 * size);
    }
    EXPECT_THROW(hermitian_form(Distribution{dirac()}, {0.0}, {1.0}), UnsupportedDistribution);
    EXPECT_THROW(hermitian_form(f, {0.0, 1.0}, {1.0}), InvalidArgument);
}

TEST(QuadraticForm, PointSetsOnlyForContinuousFunctions) {
    EXPECT_TRUE(continuous_function(Distribution{density(Base::gaussian(1.0))}));
    EXPECT_FALSE(continuous_function(Distribution{density(Base::indicator(1.0))}));
    EXPECT_FALSE(continuous_function(Distribution{dirac()}));
}

TEST(QuadraticForm, RandomTestFunctionsAreValid) {
    int modulated = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        std::mt19937_64 rng(s);
        const TestFunction phi = random_test_function(rng);
        EXPECT_GE(phi.components().size(), 1u);
        EXPECT_LE(phi.components().size(), 4u);
        EXPECT_LE(std::abs(phi.modulation()), 6.0);
        modulated += phi.modulation() != 0.0 ? 1 : 0;
    }
    EXPECT_GT(modulated, 50);
    EXPECT_LT(modulated, 150);
}
