#pragma once

// Pairing engine: (F, psi) for a distribution F and a kernel psi.
//
// Dirac atoms are closed form. Densities go through adaptive quadrature:
//   compact bases     -> the exact support, split at kinks and poles
//   decaying integrand -> an interior window plus two mapped tails
//   bounded oscillatory bases against algebraic kernels -> an interior
//     window plus tails integrated along rays rotated into the half-plane
//     where e^{i w t} decays (no truncation error).

#include <pdcheck/distribution.hpp>
#include <pdcheck/errors.hpp>
#include <pdcheck/kernel.hpp>
#include <pdcheck/numeric.hpp>
#include <pdcheck/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace pdcheck {

namespace detail {

inline QuadResult pair_dirac(const DiracAtom& atom, const Kernel& kernel) {
    const Kernel k = kernel.modulated(atom.modulation);
    const unsigned order = atom.derivative_order;
    const cplx v = k.derivative(order, atom.location);
    const double sign = (order % 2 == 0) ? 1.0 : -1.0;
    return {atom.weight * (sign * v), 0.0, std::abs(atom.weight) * k.derivative_magnitude(order, atom.location), 0};
}

/// Sum of independently integrated pieces. If the summed error misses the
/// tolerance of the total (cancellation between pieces), every piece is redone
/// with an absolute share of that tolerance.
inline QuadResult integrate_pieces(const std::vector<std::function<QuadResult(const QuadOptions&)>>& pieces,
                                   const QuadOptions& opts) {
    QuadResult total;
    for (const auto& piece : pieces) {
        total += piece(opts);
    }
    const double tol = total.tolerance(opts);
    if (total.error <= tol) {
        return total;
    }
    QuadOptions tight = opts;
    tight.rel = 0.0;
    tight.abs = tol / (2.0 * static_cast<double>(pieces.size()));
    tight.magnitude_rel = opts.magnitude_rel / 2.0;
    QuadResult again;
    for (const auto& piece : pieces) {
        again += piece(tight);
    }
    again.evals += total.evals;
    if (again.error > again.tolerance(opts)) {
        throw QuadratureFailure("pairing: combined error " + std::to_string(again.error) + " above tolerance " +
                                std::to_string(again.tolerance(opts)));
    }
    return again;
}

inline std::vector<double> interior_breakpoints(double lo, double hi, const std::vector<double>& extra) {
    std::vector<double> pts{lo, hi};
    for (double p : extra) {
        if (p > lo && p < hi) {
            pts.push_back(p);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

inline double half_period(double omega) {
    return omega > 0.0 ? kPi / omega : std::numeric_limits<double>::infinity();
}

/// int_{T0}^inf e^{i w tau} h(tau) d tau for h algebraically decaying and analytic
/// in Re tau >= T0. For w != 0 the ray is turned to T0 + i sign(w) u.
template <class H>
QuadResult oscillatory_tail(const H& h, double omega, double t0, const QuadOptions& opts) {
    if (omega == 0.0) {
        return integrate_tail([&](double t) { return h(cplx{t, 0.0}); }, t0, 1, t0, opts);
    }
    const double sigma = omega > 0.0 ? 1.0 : -1.0;
    const double rate = std::abs(omega);
    auto along_ray = [&](double u) -> cplx {
        const double damp = std::exp(-rate * u);
        if (damp == 0.0) {
            return {0.0, 0.0};
        }
        return damp * h(cplx{t0, sigma * u});
    };
    const QuadResult r = integrate_tail(along_ray, 0.0, 1, std::min(1.0 / rate, t0), opts);
    return r.scaled(cplx{0.0, sigma} * std::polar(1.0, omega * t0));
}

}  // namespace detail

/// w * integral of e^{i m t} q(t) g(t) psi(t) dt for a density atom.
inline QuadResult integrate_density(const DensityAtom& atom, const Kernel& kernel, const QuadOptions& opts = {}) {
    atom.validate();
    const Kernel k = kernel.modulated(atom.modulation);
    const Base& base = atom.base;
    const std::vector<double>& poly = atom.poly;
    auto real_integrand = [&](double t) -> cplx { return (polyval(poly, t) * base(t)) * k(cplx{t, 0.0}); };

    std::vector<double> marks = base.kinks();
    for (double b : k.breakpoints) {
        marks.push_back(b);
    }
    const double base_omega = base.oscillatory() ? std::abs(base.param()) : 0.0;
    const double max_panel = detail::half_period(k.max_frequency() + base_omega);

    QuadResult result;
    if (base.compact()) {
        const double r = base.support_radius();
        const auto pts = detail::interior_breakpoints(-r, r, marks);
        result = integrate(real_integrand, std::span<const double>(pts), opts, max_panel);
    } else if (base.decays() || k.decay == KernelDecay::gaussian) {
        double t0 = k.core_radius + (k.decay == KernelDecay::gaussian ? 8.0 * k.length_scale : 4.0);
        double length = INFINITY;
        if (base.kind() == BaseKind::gaussian) {
            t0 = std::max(t0, 8.0 * base.param());
            length = base.decay_length();
        } else if (base.kind() == BaseKind::laplace) {
            t0 = std::max(t0, 24.0 / base.param());
            length = base.decay_length();
        }
        if (k.decay == KernelDecay::gaussian) {
            length = std::min(length, k.length_scale);
        }
        const auto pts = detail::interior_breakpoints(-t0, t0, marks);
        std::vector<std::function<QuadResult(const QuadOptions&)>> pieces{
            [&](const QuadOptions& o) { return integrate(real_integrand, std::span<const double>(pts), o, max_panel); },
            [&](const QuadOptions& o) { return integrate_tail(real_integrand, t0, 1, length, o); },
            [&](const QuadOptions& o) { return integrate_tail(real_integrand, -t0, -1, length, o); },
        };
        result = detail::integrate_pieces(pieces, opts);
    } else {
        if (k.decay_power < atom.poly_degree() + 2) {
            throw InsufficientPower("density pairing: kernel decay " + std::to_string(k.decay_power) +
                                    " does not make a degree-" + std::to_string(atom.poly_degree()) +
                                    " polynomial times a bounded base integrable");
        }
        const double t0 = k.core_radius + 4.0;
        const auto pts = detail::interior_breakpoints(-t0, t0, marks);
        std::vector<std::function<QuadResult(const QuadOptions&)>> pieces;
        pieces.emplace_back(
            [&](const QuadOptions& o) { return integrate(real_integrand, std::span<const double>(pts), o, max_panel); });
        for (const ExpTerm& term : base.exponential_terms()) {
            for (const KernelComponent& c : k.components) {
                const double omega = term.frequency + c.frequency;
                const cplx beta = term.coefficient;
                pieces.emplace_back([&, omega, beta](const QuadOptions& o) {
                    auto h = [&](cplx t) { return polyval(poly, t) * c.amplitude(t); };
                    return detail::oscillatory_tail(h, omega, t0, o).scaled(beta);
                });
                pieces.emplace_back([&, omega, beta](const QuadOptions& o) {
                    auto h = [&](cplx t) { return polyval(poly, -t) * c.amplitude(-t); };
                    return detail::oscillatory_tail(h, -omega, t0, o).scaled(beta);
                });
            }
        }
        result = detail::integrate_pieces(pieces, opts);
    }
    return result.scaled(atom.weight);
}

/// (F, psi) summed over atoms, with error and L1 magnitude.
inline QuadResult pair_kernel(const Distribution& f, const Kernel& kernel, const QuadOptions& opts = {}) {
    QuadResult total;
    for (const Atom& atom : f.atoms()) {
        if (const auto* d = std::get_if<DiracAtom>(&atom)) {
            total += detail::pair_dirac(*d, kernel);
        } else {
            total += integrate_density(std::get<DensityAtom>(atom), kernel, opts);
        }
    }
    return total;
}

/// (e^{i a t} F_t, (z - t)^-power), without the i/pi prefactor.
inline QuadResult pair_cauchy_kernel_result(const Distribution& f, double a, cplx z, unsigned power,
                                            const QuadOptions& opts = {}) {
    const Kernel kernel = cauchy_kernel(a, z, power);
    for (const Atom& atom : f.atoms()) {
        if (const auto* d = std::get_if<DensityAtom>(&atom)) {
            if (power < d->growth_degree + 3) {
                throw InsufficientPower("cauchy pairing: power " + std::to_string(power) +
                                        " needs to exceed the growth degree " + std::to_string(d->growth_degree) +
                                        " by at least 3");
            }
        }
    }
    return pair_kernel(f, kernel, opts);
}

inline cplx pair_cauchy_kernel(const Distribution& f, double a, cplx z, unsigned power, const QuadOptions& opts = {}) {
    return pair_cauchy_kernel_result(f, a, z, power, opts).value;
}

/// (F, phi * phi^star).
inline QuadResult pair_test_function_result(const Distribution& f, const TestFunction& phi,
                                            const QuadOptions& opts = {}) {
    return pair_kernel(f, mixture_kernel(phi.autocorrelation()), opts);
}

inline cplx pair_test_function(const Distribution& f, const TestFunction& phi, const QuadOptions& opts = {}) {
    return pair_test_function_result(f, phi, opts).value;
}

}  // namespace pdcheck
