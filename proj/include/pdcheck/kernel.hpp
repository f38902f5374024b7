#pragma once

// Kernels psi(t) = sum_c e^{i w_c t} A_c(t) that distributions are paired against.
//
// Amplitudes accept complex t so that oscillatory tails can be integrated
// along a rotated contour; derivatives are only needed at real points
// (Dirac atoms).

#include <pdcheck/distribution.hpp>
#include <pdcheck/errors.hpp>
#include <pdcheck/numeric.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace pdcheck {

struct KernelComponent {
    double frequency = 0.0;
    std::function<cplx(cplx)> amplitude;
    /// j-th derivative of the amplitude at a real point.
    std::function<cplx(unsigned, double)> derivative;
    /// Bound on |derivative(j, t)| as a sum of absolute values; defaults to |derivative|.
    std::function<double(unsigned, double)> derivative_magnitude;
};

enum class KernelDecay { algebraic, gaussian };

struct Kernel {
    std::vector<KernelComponent> components;
    KernelDecay decay = KernelDecay::algebraic;
    /// |A(t)| = O(|t|^-decay_power) for algebraic kernels.
    unsigned decay_power = 0;
    /// All singular or peaked structure lies in |t| <= core_radius (complex poles count by |Re| + |Im|).
    double core_radius = 0.0;
    /// Gaussian decay length.
    double length_scale = 1.0;
    std::vector<double> breakpoints;

    [[nodiscard]] Kernel modulated(double m) const {
        Kernel out = *this;
        for (auto& c : out.components) {
            c.frequency += m;
        }
        return out;
    }

    [[nodiscard]] cplx operator()(cplx t) const {
        cplx acc{};
        for (const auto& c : components) {
            acc += std::exp(cplx{0.0, c.frequency} * t) * c.amplitude(t);
        }
        return acc;
    }

    /// d^k/dt^k [e^{i w t} A(t)] by the Leibniz rule.
    [[nodiscard]] cplx derivative(unsigned k, double t) const {
        cplx acc{};
        for (const auto& c : components) {
            const cplx iw{0.0, c.frequency};
            cplx inner{};
            for (unsigned j = 0; j <= k; ++j) {
                if (c.frequency == 0.0 && j != k) {
                    continue;
                }
                inner += binomial(k, j) * ipow(iw, k - j) * c.derivative(j, t);
            }
            acc += std::polar(1.0, c.frequency * t) * inner;
        }
        return acc;
    }

    [[nodiscard]] double derivative_magnitude(unsigned k, double t) const {
        double acc = 0.0;
        for (const auto& c : components) {
            const double w = std::abs(c.frequency);
            for (unsigned j = 0; j <= k; ++j) {
                if (w == 0.0 && j != k) {
                    continue;
                }
                const double m = c.derivative_magnitude ? c.derivative_magnitude(j, t) : std::abs(c.derivative(j, t));
                acc += binomial(k, j) * ipow(w, k - j) * m;
            }
        }
        return acc;
    }

    [[nodiscard]] double max_frequency() const {
        double w = 0.0;
        for (const auto& c : components) {
            w = std::max(w, std::abs(c.frequency));
        }
        return w;
    }
};

/// e^{i a t} (w - t)^-q with no check on where the pole sits.
inline Kernel pole_kernel(double a, cplx w, unsigned q) {
    if (q == 0) {
        throw InvalidArgument("pole kernel: power must be at least 1");
    }
    KernelComponent c;
    c.frequency = a;
    c.amplitude = [w, q](cplx t) { return inv_pow(w - t, q); };
    c.derivative = [w, q](unsigned j, double t) { return rising_factorial(q, j) * inv_pow(w - t, q + j); };
    c.derivative_magnitude = [w, q](unsigned j, double t) {
        return rising_factorial(q, j) * std::pow(std::abs(w - t), -static_cast<double>(q + j));
    };
    Kernel k;
    k.components.push_back(std::move(c));
    k.decay = KernelDecay::algebraic;
    k.decay_power = q;
    k.core_radius = std::abs(w.real()) + std::abs(w.imag());
    k.breakpoints = {w.real()};
    return k;
}

/// e^{i a t} (z - t)^-q, Im z != 0.
inline Kernel cauchy_kernel(double a, cplx z, unsigned q) {
    if (z.imag() == 0.0) {
        throw PoleOnAxis("cauchy kernel: Im(z) must be nonzero, got z = " + std::to_string(z.real()));
    }
    return pole_kernel(a, z, q);
}

/// (1/pi) y / (t^2 + y^2), the Poisson kernel of the upper half-plane at height y.
inline Kernel poisson_kernel(double y) {
    if (!(y > 0.0) || !std::isfinite(y)) {
        throw InvalidArgument("poisson kernel: y must be positive and finite");
    }
    // (1/(2 pi i)) [ -(iy - t)^-1 + (-iy - t)^-1 ]
    const cplx up{0.0, y};
    const cplx down{0.0, -y};
    const cplx pre = 1.0 / cplx{0.0, 2.0 * kPi};
    KernelComponent c;
    c.frequency = 0.0;
    c.amplitude = [y](cplx t) { return (y / kPi) / (t * t + y * y); };
    c.derivative = [=](unsigned j, double t) {
        const double r = rising_factorial(1, j);
        return pre * r * (-inv_pow(up - t, j + 1) + inv_pow(down - t, j + 1));
    };
    Kernel k;
    k.components.push_back(std::move(c));
    k.decay = KernelDecay::algebraic;
    k.decay_power = 2;
    k.core_radius = y;
    k.breakpoints = {0.0};
    return k;
}

/// A Gaussian mixture used as a kernel (test-function pairing).
inline Kernel mixture_kernel(const GaussianMixture& mix) {
    KernelComponent c;
    c.frequency = mix.modulation();
    c.amplitude = [mix](cplx t) {
        cplx acc{};
        for (const auto& g : mix.components()) {
            const cplx u = (t - g.center) / g.width;
            acc += g.amplitude * std::exp(-0.5 * u * u);
        }
        return acc;
    };
    c.derivative = [mix](unsigned j, double t) { return mix.envelope_derivative(j, t); };
    c.derivative_magnitude = [mix](unsigned j, double t) { return mix.envelope_derivative_magnitude(j, t); };
    Kernel k;
    k.components.push_back(std::move(c));
    k.decay = KernelDecay::gaussian;
    double widest = 0.0;
    double far = 0.0;
    for (const auto& g : mix.components()) {
        widest = std::max(widest, g.width);
        far = std::max(far, std::abs(g.center));
        k.breakpoints.push_back(g.center);
    }
    k.length_scale = widest;
    k.core_radius = far;
    return k;
}

}  // namespace pdcheck
