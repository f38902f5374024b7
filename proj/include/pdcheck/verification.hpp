#pragma once

// Numerical verification suites for the identities the checker relies on:
// Laplace-kernel identities, smoothing/pairing interchange, the Plemelj-type
// boundary limit, analyticity of the transform and the exact axis derivatives.

#include <pdcheck/catalog.hpp>
#include <pdcheck/distribution.hpp>
#include <pdcheck/errors.hpp>
#include <pdcheck/quadrature.hpp>
#include <pdcheck/transform.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

namespace pdcheck {

struct CaseResult {
    std::string label;
    double residual = 0.0;
    double limit = 0.0;
    /// Strict cases need residual < limit rather than <=.
    bool strict = false;
    bool passed = false;
};

struct SuiteResult {
    std::string name;
    std::vector<CaseResult> cases;
    bool passed = true;
    double seconds = 0.0;

    void add(std::string label, double residual, double limit, bool strict = false) {
        const bool ok = strict ? residual < limit : residual <= limit;
        cases.push_back({std::move(label), residual, limit, strict, ok});
        passed = passed && ok;
    }
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"kernel-identity", "interchange", "plemelj", "analyticity",
                                                "derivatives"};
    return names;
}

namespace detail {

inline std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[128];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

inline double factorial(unsigned q) { return std::tgamma(q + 1.0); }

}  // namespace detail

/// int_0^inf x^q e^{-yx} e^{-ixt} dx = q! / (y + it)^(q+1) for y > 0, and
/// int_{-inf}^0 x^q e^{-yx} e^{-ixt} dx = -q! / (y + it)^(q+1) for y < 0.
inline cplx laplace_kernel_closed_form(unsigned q, double y, double t) {
    const cplx v = detail::factorial(q) * inv_pow(cplx{y, t}, q + 1);
    return y > 0.0 ? v : -v;
}

inline cplx laplace_kernel_quadrature(unsigned q, double y, double t, const QuadOptions& opts = {}) {
    if (y == 0.0) {
        throw InvalidArgument("laplace kernel: y must be nonzero");
    }
    auto f = [&](double x) -> cplx { return ipow(x, q) * std::exp(-y * x) * std::polar(1.0, -x * t); };
    const double length = (static_cast<double>(q) + 1.0) / std::abs(y);
    return integrate_tail(f, 0.0, y > 0.0 ? 1 : -1, length, opts).value;
}

/// The identities are ill-conditioned for large q and small y (the integral of
/// |f| exceeds the value by up to 1e7), so the roundoff floor sits just above
/// the 50 eps of the Kronrod error estimate.
inline QuadOptions kernel_identity_options() { return {1e-13, 0.0, 2e-14, 2000000}; }

inline SuiteResult suite_kernel_identity(double limit = 1e-8) {
    SuiteResult out{"kernel-identity", {}, true, 0.0};
    const QuadOptions opts = kernel_identity_options();
    for (double sign : {1.0, -1.0}) {
        for (unsigned q = 0; q <= 6; ++q) {
            for (double y0 : {0.5, 1.0, 2.0}) {
                for (double t : {-3.0, 0.0, 5.0}) {
                    const double y = sign * y0;
                    const cplx exact = laplace_kernel_closed_form(q, y, t);
                    const cplx num = laplace_kernel_quadrature(q, y, t, opts);
                    out.add(detail::fmt("q=%g y=%g t=%g", q, y, t), std::abs(num - exact) / std::abs(exact), limit);
                }
            }
        }
    }
    return out;
}

struct InterchangeCase {
    std::string label;
    Distribution f;
    DensityAtom u;
    unsigned m;
    double y;
};

inline std::vector<InterchangeCase> interchange_cases() {
    return {
        {"bump/gaussian m=0 y=0.5", Distribution{density(Base::gaussian(1.0))}, density(Base::bump(1.0)), 0, 0.5},
        {"triangle/laplace m=1 y=-0.4", Distribution{density(Base::laplace(1.0))}, density(Base::triangle(1.0)), 1,
         -0.4},
        {"bump/cosine m=2 y=0.7", Distribution{density(Base::cosine(1.0))}, density(Base::bump(1.0)), 2, 0.7},
    };
}

inline SuiteResult suite_interchange(double limit = 1e-7) {
    SuiteResult out{"interchange", {}, true, 0.0};
    for (const auto& c : interchange_cases()) {
        const InterchangeSides s = interchange_sides(c.f, c.u, c.m, c.y);
        out.add(c.label, std::abs(s.nested - s.iterated) / std::abs(s.iterated), limit);
    }
    return out;
}

/// Residuals at y = 0.1, 0.05, 0.025 (m = 0) and 0.1, 0.05 (m = 1).
struct PlemeljResiduals {
    std::array<double, 3> m0{};
    std::array<double, 2> m1{};
};

inline PlemeljResiduals plemelj_residuals() {
    const DensityAtom u = density(Base::bump(1.0));
    const auto grid = default_plemelj_grid();
    PlemeljResiduals r;
    const std::array<double, 3> ys{0.1, 0.05, 0.025};
    for (std::size_t i = 0; i < 3; ++i) {
        r.m0[i] = plemelj_residual(u, 0, ys[i], grid);
    }
    r.m1[0] = plemelj_residual(u, 1, 0.1, grid);
    r.m1[1] = plemelj_residual(u, 1, 0.05, grid);
    return r;
}

inline SuiteResult suite_plemelj() {
    SuiteResult out{"plemelj", {}, true, 0.0};
    const PlemeljResiduals r = plemelj_residuals();
    // Ratios must sit in [1.5, 2.5]; expressed as a distance from 2 with limit 0.5.
    const double ratio1 = r.m0[0] / r.m0[1];
    const double ratio2 = r.m0[1] / r.m0[2];
    out.add(detail::fmt("m=0 ratio r(0.1)/r(0.05) = %.4f", ratio1), std::abs(ratio1 - 2.0), 0.5);
    out.add(detail::fmt("m=0 ratio r(0.05)/r(0.025) = %.4f", ratio2), std::abs(ratio2 - 2.0), 0.5);
    // Strict decrease: r(y/2) / r(y) < 1.
    out.add(detail::fmt("m=0 decrease %.6g -> %.6g", r.m0[0], r.m0[1]), r.m0[1] / r.m0[0], 1.0, true);
    out.add(detail::fmt("m=0 decrease %.6g -> %.6g", r.m0[1], r.m0[2]), r.m0[2] / r.m0[1], 1.0, true);
    out.add(detail::fmt("m=1 decrease %.6g -> %.6g", r.m1[0], r.m1[1]), r.m1[1] / r.m1[0], 1.0, true);
    return out;
}

inline SuiteResult suite_analyticity(double limit = 1e-5) {
    SuiteResult out{"analyticity", {}, true, 0.0};
    const double h = 1e-4;
    const std::array<cplx, 3> points{cplx{1.0, 1.0}, cplx{-2.0, 0.5}, cplx{0.0, 3.0}};
    for (const auto& fx : all_fixtures()) {
        const CauchyParams params(CauchyParams::auto_n(fx.f), 0.0, 1.0);
        const unsigned q = 2 * params.n + 1;
        for (int j = 1; j <= 2; ++j) {
            for (cplx z : points) {
                auto f = [&](cplx w) { return cauchy_transform(fx.f, params, j, w); };
                const cplx fx_ = (f(z + h) - f(z - h)) / (2.0 * h);
                const cplx fy = (f(z + cplx{0.0, h}) - f(z - cplx{0.0, h})) / (2.0 * h);
                const cplx center = f(z);
                const double scale =
                    std::max(std::abs(center), pair_cauchy_kernel_result(fx.f, params.modulation(j), z, q).magnitude / kPi);
                out.add(fx.name + detail::fmt(" j=%g z=%g%+gi", j, z.real(), z.imag()), std::abs(fx_ + cplx{0.0, 1.0} * fy),
                        limit * scale);
            }
        }
    }
    return out;
}

/// Central difference of the (s-1) level against the exact s level.
inline double derivative_mismatch(const Distribution& f, const CauchyParams& params, int j, double y, unsigned s,
                                  double h = 1e-4) {
    const AxisSample exact = axis_derivative(f, params, j, y, s);
    const AxisSample up = axis_derivative(f, params, j, y + h, s - 1);
    const AxisSample down = axis_derivative(f, params, j, y - h, s - 1);
    const cplx fd = (up.value - down.value) / (2.0 * h);
    const double scale = std::max(std::abs(exact.value), exact.scale * std::exp(exact.log_factor));
    return std::abs(fd - exact.value) / scale;
}

inline SuiteResult suite_derivatives(double limit = 1e-6) {
    SuiteResult out{"derivatives", {}, true, 0.0};
    for (const auto& fx : all_fixtures()) {
        const CauchyParams params(CauchyParams::auto_n(fx.f), 0.0, 1.0);
        for (int j = 1; j <= 2; ++j) {
            for (double y : {0.5, 2.0, -0.5, -2.0}) {
                for (unsigned s = 1; s <= 3; ++s) {
                    out.add(fx.name + detail::fmt(" j=%g y=%g s=%g", j, y, s),
                            derivative_mismatch(fx.f, params, j, y, s), limit);
                }
            }
        }
    }
    return out;
}

inline SuiteResult run_suite(const std::string& name) {
    if (name == "kernel-identity") {
        return suite_kernel_identity();
    }
    if (name == "interchange") {
        return suite_interchange();
    }
    if (name == "plemelj") {
        return suite_plemelj();
    }
    if (name == "analyticity") {
        return suite_analyticity();
    }
    if (name == "derivatives") {
        return suite_derivatives();
    }
    throw InvalidArgument("unknown verification suite '" + name + "'");
}

}  // namespace pdcheck
