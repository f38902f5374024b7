#pragma once

// Generalized Cauchy transform
//
//   F~_j(z) = (-1)^n (i/pi) (e^{i a_j t} F_t, (z - t)^-(2n+1))
//
// and its exact imaginary-axis derivatives
//
//   d^s/dy^s F~_j(iy) = (-1)^s (2n+s)! / ((2n)! pi) * P_s(y),
//   P_s(y) = (e^{i a_j t} F_t, (y + i t)^-(2n+s+1)).
//
// P_s is the "core" of an axis sample: the positive factorial factor never
// changes its sign, so the monotonicity tests work on P_s directly.

#include <pdcheck/distribution.hpp>
#include <pdcheck/errors.hpp>
#include <pdcheck/kernel.hpp>
#include <pdcheck/numeric.hpp>
#include <pdcheck/pairing.hpp>
#include <pdcheck/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace pdcheck {

struct CauchyParams {
    unsigned n = 0;
    double a1 = 0.0;
    double a2 = 1.0;

    CauchyParams() = default;
    CauchyParams(unsigned n_, double a1_, double a2_) : n(n_), a1(a1_), a2(a2_) { validate(); }

    void validate() const {
        if (!std::isfinite(a1) || !std::isfinite(a2)) {
            throw InvalidArgument("cauchy params: modulations must be finite");
        }
        if (a1 == a2) {
            throw InvalidArgument("cauchy params: modulations a1 and a2 must differ");
        }
    }

    [[nodiscard]] double modulation(int j) const {
        if (j == 1) {
            return a1;
        }
        if (j == 2) {
            return a2;
        }
        throw InvalidArgument("modulation index must be 1 or 2, got " + std::to_string(j));
    }

    void require_order(const Distribution& f) const {
        const unsigned m = order_bound(f);
        if (2 * n < m) {
            throw InsufficientPower("2n = " + std::to_string(2 * n) + " is below the order bound " + std::to_string(m));
        }
    }

    /// Smallest n with 2n >= order_bound(f).
    static unsigned auto_n(const Distribution& f) { return (order_bound(f) + 1) / 2; }

    friend bool operator==(const CauchyParams&, const CauchyParams&) = default;
};

struct AxisSample {
    int j = 1;
    double y = 0.0;
    unsigned s = 0;
    /// d^s/dy^s F~_j(iy).
    cplx value{};
    /// P_s(y), factorial free.
    cplx core{};
    /// log((2n+s)! / ((2n)! pi)); value = (-1)^s exp(log_factor) core.
    double log_factor = 0.0;
    /// L1 magnitude of the integrand of `core`.
    double scale = 0.0;
    /// Quadrature error estimate of `core`.
    double error = 0.0;
};

/// A sample known only through its value D: core = (-1)^s D, so the sign
/// tests see the same quantity up to a positive factor.
inline AxisSample sample_from_value(int j, double y, unsigned s, cplx value, double error = 0.0) {
    const double sign = (s % 2 == 0) ? 1.0 : -1.0;
    return {j, y, s, value, sign * value, 0.0, std::abs(value), error};
}

/// log((2n+s)!/(2n)!) - log(pi).
inline double axis_log_factor(unsigned n, unsigned s) {
    const unsigned top = 2 * n + s;
    if (top > 150) {
        return std::lgamma(static_cast<double>(top) + 1.0) - std::lgamma(2.0 * n + 1.0) - std::log(kPi);
    }
    double ratio = 1.0;
    for (unsigned k = 2 * n + 1; k <= top; ++k) {
        ratio *= static_cast<double>(k);
    }
    return std::log(ratio / kPi);
}

/// (e^{i a t} F_t, (y + i t)^-q) = i^q (e^{i a t} F_t, (iy - t)^-q).
inline QuadResult axis_core(const Distribution& f, double a, double y, unsigned q, const QuadOptions& opts = {}) {
    if (y == 0.0) {
        throw PoleOnAxis("axis sample: y must be nonzero");
    }
    QuadResult r = pair_cauchy_kernel_result(f, a, cplx{0.0, y}, q, opts);
    r.value = times_i_pow(r.value, static_cast<int>(q));
    return r;
}

inline cplx cauchy_transform(const Distribution& f, const CauchyParams& params, int j, cplx z,
                             const QuadOptions& opts = {}) {
    params.validate();
    params.require_order(f);
    const cplx p = pair_cauchy_kernel(f, params.modulation(j), z, 2 * params.n + 1, opts);
    const double sign = (params.n % 2 == 0) ? 1.0 : -1.0;
    return times_i_pow(p, 1) * (sign / kPi);
}

inline AxisSample axis_derivative(const Distribution& f, const CauchyParams& params, int j, double y, unsigned s,
                                  const QuadOptions& opts = {}) {
    params.validate();
    params.require_order(f);
    if (y == 0.0 || !std::isfinite(y)) {
        throw PoleOnAxis("axis derivative: y must be finite and nonzero");
    }
    const QuadResult core = axis_core(f, params.modulation(j), y, 2 * params.n + s + 1, opts);
    AxisSample out;
    out.j = j;
    out.y = y;
    out.s = s;
    out.core = core.value;
    out.scale = core.magnitude;
    out.error = core.error;
    out.log_factor = axis_log_factor(params.n, s);
    const double sign = (s % 2 == 0) ? 1.0 : -1.0;
    out.value = (core.value == 0.0) ? cplx{} : core.value * (sign * std::exp(out.log_factor));
    return out;
}

/// int u(x) (x + iy - t)^-power dx, for complex t away from the line x + iy.
inline QuadResult smooth_integral(const DensityAtom& u, cplx t, double y, unsigned power, const QuadOptions& opts = {}) {
    // (x + iy - t) = -(w - x) with w = t - iy.
    const QuadResult r = integrate_density(u, pole_kernel(0.0, t - cplx{0.0, y}, power), opts);
    return (power % 2 == 0) ? r : r.scaled(-1.0);
}

inline void require_compact(const DensityAtom& u) {
    if (!u.base.compact()) {
        throw InvalidArgument("cauchy smoothing needs a compactly supported base, got '" +
                              std::string(to_string(u.base.kind())) + "'");
    }
}

/// d^p/dt^p u~(t, y), u~(t, y) = (i/pi) int u(x) / (x + iy - t)^(m+1) dx.
inline cplx cauchy_smooth_derivative(const DensityAtom& u, unsigned m, double y, cplx t, unsigned p,
                                     const QuadOptions& opts = {}) {
    require_compact(u);
    if (y == 0.0) {
        throw PoleOnAxis("cauchy smoothing: y must be nonzero");
    }
    const QuadResult r = smooth_integral(u, t, y, m + 1 + p, opts);
    return cplx{0.0, rising_factorial(m + 1, p) / kPi} * r.value;
}

inline cplx cauchy_smooth(const DensityAtom& u, unsigned m, double y, double t, const QuadOptions& opts = {}) {
    return cauchy_smooth_derivative(u, m, y, cplx{t, 0.0}, 0, opts);
}

/// u~(., y) as a kernel in t, so that (F, u~) goes through the pairing engine.
inline Kernel smoothing_kernel(const DensityAtom& u, unsigned m, double y, const QuadOptions& opts = {}) {
    require_compact(u);
    if (y == 0.0) {
        throw PoleOnAxis("cauchy smoothing: y must be nonzero");
    }
    KernelComponent c;
    c.frequency = 0.0;
    c.amplitude = [u, m, y, opts](cplx t) { return cauchy_smooth_derivative(u, m, y, t, 0, opts); };
    c.derivative = [u, m, y, opts](unsigned p, double t) {
        return cauchy_smooth_derivative(u, m, y, cplx{t, 0.0}, p, opts);
    };
    Kernel k;
    k.components.push_back(std::move(c));
    k.decay = KernelDecay::algebraic;
    k.decay_power = m + 1;
    const double r = u.base.support_radius();
    k.core_radius = r + std::abs(y);
    k.breakpoints = {-r, 0.0, r};
    return k;
}

/// Both sides of the interchange identity
///   (F_t, u~(t, y)) = (i/pi) int u(x) (F_t, (x + iy - t)^-(m+1)) dx.
struct InterchangeSides {
    cplx nested;
    cplx iterated;
};

inline InterchangeSides interchange_sides(const Distribution& f, const DensityAtom& u, unsigned m, double y,
                                          const QuadOptions& opts = {}) {
    const cplx nested = pair_kernel(f, smoothing_kernel(u, m, y, opts), opts).value;

    auto inner = [&](double x) -> cplx {
        const cplx ux = u.weight * (polyval(u.poly, x) * u.base(x)) * std::polar(1.0, u.modulation * x);
        if (ux == 0.0) {
            return {0.0, 0.0};
        }
        return ux * pair_kernel(f, pole_kernel(0.0, cplx{x, y}, m + 1), opts).value;
    };
    const double r = u.base.support_radius();
    const auto pts = detail::interior_breakpoints(-r, r, u.base.kinks());
    const QuadResult outer = integrate(inner, std::span<const double>(pts), opts);
    return {nested, cplx{0.0, 1.0 / kPi} * outer.value};
}

inline std::vector<double> uniform_grid(double lo, double hi, std::size_t count) {
    if (count < 2 || !(hi > lo)) {
        throw InvalidArgument("uniform grid needs count >= 2 and hi > lo");
    }
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return out;
}

inline std::vector<double> default_plemelj_grid() { return uniform_grid(-8.0, 8.0, 401); }

/// max over t and p <= m of (1+|t|)^m | d^p/dt^p [ (u~(t,y) - u~(t,-y))/2 - u^{(m)}(t)/m! ] |
/// for a bump u = w c0 exp(-1/(1 - (x/a)^2)).
inline double plemelj_residual(const DensityAtom& u, unsigned m, double y, const std::vector<double>& t_grid,
                               const QuadOptions& opts = {}) {
    if (m > 1) {
        throw UnsupportedOrder("plemelj residual is implemented for m in {0, 1}");
    }
    if (!(y > 0.0)) {
        throw InvalidArgument("plemelj residual: y must be positive");
    }
    if (u.weight == 0.0) {
        return 0.0;
    }
    if (u.base.kind() != BaseKind::bump || u.poly_degree() != 0 || u.modulation != 0.0) {
        throw UnsupportedDistribution("plemelj residual needs an unmodulated bump with constant prefactor");
    }
    const cplx amp = u.weight * u.poly[0];
    const double m_fact = std::tgamma(m + 1.0);
    double worst = 0.0;
    for (double t : t_grid) {
        const double weight = ipow(1.0 + std::abs(t), m);
        for (unsigned p = 0; p <= m; ++p) {
            const cplx up = cauchy_smooth_derivative(u, m, y, cplx{t, 0.0}, p, opts);
            const cplx down = cauchy_smooth_derivative(u, m, -y, cplx{t, 0.0}, p, opts);
            const cplx target = amp * bump_derivative(t, u.base.param(), m + p) / m_fact;
            worst = std::max(worst, weight * std::abs(0.5 * (up - down) - target));
        }
    }
    return worst;
}

/// Bounded continuous even real densities only: the domain of the Poisson-axis test.
inline void require_poisson_domain(const Distribution& f) {
    for (const Atom& atom : f.atoms()) {
        const auto* d = std::get_if<DensityAtom>(&atom);
        if (d == nullptr) {
            throw UnsupportedDistribution("poisson axis: Dirac atoms are not bounded continuous functions");
        }
        const Base& b = d->base;
        if (!b.even() || !b.continuous() || d->poly_degree() != 0 || d->weight.imag() != 0.0 ||
            d->modulation != 0.0) {
            throw UnsupportedDistribution("poisson axis: atom '" + std::string(to_string(b.kind())) +
                                          "' is not a bounded continuous even real function");
        }
    }
}

/// f(0) for a distribution in the Poisson-axis domain.
inline double value_at_zero(const Distribution& f) {
    require_poisson_domain(f);
    double acc = 0.0;
    for (const Atom& atom : f.atoms()) {
        const auto& d = std::get<DensityAtom>(atom);
        acc += d.weight.real() * d.poly[0] * d.base(0.0);
    }
    return acc;
}

/// u_f(0, y) = (1/pi) int y / (t^2 + y^2) f(t) dt.
inline QuadResult poisson_axis_result(const Distribution& f, double y, const QuadOptions& opts = {}) {
    require_poisson_domain(f);
    const QuadResult r = pair_kernel(f, poisson_kernel(y), opts);
    if (std::abs(r.value.imag()) > 1e-12 * std::max(1.0, r.magnitude)) {
        throw NumericalError("poisson axis: imaginary part " + std::to_string(r.value.imag()) + " is not negligible");
    }
    return r;
}

inline double poisson_axis(const Distribution& f, double y, const QuadOptions& opts = {}) {
    return poisson_axis_result(f, y, opts).value.real();
}

}  // namespace pdcheck
