#pragma once

// Small exact-arithmetic helpers shared by the pairing and transform code.

#include <cmath>
#include <complex>
#include <vector>

namespace pdcheck {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// w^n by repeated squaring (std::pow on complex goes through exp/log).
inline cplx ipow(cplx w, unsigned n) {
    cplx result{1.0, 0.0};
    while (n != 0) {
        if (n & 1U) {
            result *= w;
        }
        n >>= 1U;
        if (n != 0) {
            w *= w;
        }
    }
    return result;
}

inline double ipow(double w, unsigned n) {
    double result = 1.0;
    while (n != 0) {
        if (n & 1U) {
            result *= w;
        }
        n >>= 1U;
        if (n != 0) {
            w *= w;
        }
    }
    return result;
}

/// w^(-n).
inline cplx inv_pow(cplx w, unsigned n) { return 1.0 / ipow(w, n); }

/// Multiplies by i^n exactly (quarter-turn rotations only swap and negate parts).
inline cplx times_i_pow(cplx w, int n) {
    switch (((n % 4) + 4) % 4) {
        case 0:
            return w;
        case 1:
            return {-w.imag(), w.real()};
        case 2:
            return {-w.real(), -w.imag()};
        default:
            return {w.imag(), -w.real()};
    }
}

/// q (q+1) ... (q+j-1); the j-th t-derivative of (w - t)^(-q) is this times (w - t)^(-q-j).
inline double rising_factorial(unsigned q, unsigned j) {
    double r = 1.0;
    for (unsigned k = 0; k < j; ++k) {
        r *= static_cast<double>(q + k);
    }
    return r;
}

inline double binomial(unsigned n, unsigned k) {
    if (k > n) {
        return 0.0;
    }
    double r = 1.0;
    for (unsigned j = 1; j <= k; ++j) {
        r = r * static_cast<double>(n - k + j) / static_cast<double>(j);
    }
    return std::round(r);
}

/// Probabilists' Hermite polynomial He_k(x); d^k/dx^k e^{-x^2/2} = (-1)^k He_k(x) e^{-x^2/2}.
inline double hermite_he(unsigned k, double x) {
    if (k == 0) {
        return 1.0;
    }
    double prev = 1.0;
    double cur = x;
    for (unsigned n = 1; n < k; ++n) {
        const double next = x * cur - static_cast<double>(n) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Horner evaluation of c0 + c1 t + c2 t^2 + ...
template <class T>
T polyval(const std::vector<double>& coeffs, T t) {
    T acc{};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * t + *it;
    }
    return acc;
}

/// sum |c_k| |t|^k, an envelope for |polyval| on the real line.
inline double polyabs(const std::vector<double>& coeffs, double t) {
    double acc = 0.0;
    const double at = std::abs(t);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * at + std::abs(*it);
    }
    return acc;
}

inline std::vector<double> polyder(const std::vector<double>& coeffs) {
    if (coeffs.size() <= 1) {
        return {0.0};
    }
    std::vector<double> out(coeffs.size() - 1);
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        out[k - 1] = static_cast<double>(k) * coeffs[k];
    }
    return out;
}

}  // namespace pdcheck
