#pragma once

// Adaptive Gauss-Kronrod quadrature for complex-valued integrands.
//
// The panel rule is the 10/21-point Gauss-Kronrod pair with the QUADPACK
// error heuristic. Panels are refined worst-first until the accumulated
// error estimate is below
//
//     max(abs, rel * |I|, magnitude_rel * integral(|f|))
//
// The last term is a roundoff floor: integrands with heavy cancellation
// (oscillatory densities against slowly decaying kernels) cannot be
// resolved below a few hundred ulps of integral(|f|).

#include <pdcheck/errors.hpp>
#include <pdcheck/numeric.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

namespace pdcheck {

struct QuadOptions {
    double rel = 1e-12;
    double abs = 0.0;
    double magnitude_rel = 1e-13;
    std::size_t max_evals = 200000;
};

struct QuadResult {
    cplx value{};
    double error = 0.0;
    /// Integral of |f| along the integration path.
    double magnitude = 0.0;
    std::size_t evals = 0;

    QuadResult& operator+=(const QuadResult& other) {
        value += other.value;
        error += other.error;
        magnitude += other.magnitude;
        evals += other.evals;
        return *this;
    }

    [[nodiscard]] QuadResult scaled(cplx factor) const {
        const double f = std::abs(factor);
        return {value * factor, error * f, magnitude * f, evals};
    }

    [[nodiscard]] double tolerance(const QuadOptions& opts) const {
        return std::max({opts.abs, opts.rel * std::abs(value), opts.magnitude_rel * magnitude});
    }
};

/// Neumaier-compensated running sum.
template <class T>
class CompensatedSum {
public:
    void add(T x) {
        if constexpr (std::is_same_v<T, cplx>) {
            re_.add(x.real());
            im_.add(x.imag());
        } else {
            const T t = sum_ + x;
            if (std::abs(sum_) >= std::abs(x)) {
                comp_ += (sum_ - t) + x;
            } else {
                comp_ += (x - t) + sum_;
            }
            sum_ = t;
        }
    }

    [[nodiscard]] T value() const {
        if constexpr (std::is_same_v<T, cplx>) {
            return {re_.value(), im_.value()};
        } else {
            return sum_ + comp_;
        }
    }

private:
    struct Empty {};
    using Part = std::conditional_t<std::is_same_v<T, cplx>, CompensatedSum<double>, Empty>;
    T sum_{};
    T comp_{};
    [[no_unique_address]] Part re_{};
    [[no_unique_address]] Part im_{};
};

namespace detail {

inline constexpr std::array<double, 5> kGaussWeights{
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

inline constexpr std::array<double, 11> kKronrodNodes{
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};

inline constexpr std::array<double, 11> kKronrodWeights{
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

struct Panel {
    double a = 0.0;
    double b = 0.0;
    cplx value{};
    double error = 0.0;
    double magnitude = 0.0;
};

inline void require_finite(cplx v, double t) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw QuadratureFailure("non-finite integrand value at t = " + std::to_string(t));
    }
}

template <class F>
Panel gauss_kronrod21(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double abs_half = std::abs(half);

    const cplx fc = f(center);
    require_finite(fc, center);
    cplx res_gauss{};
    cplx res_kronrod = fc * kKronrodWeights[10];
    double res_abs = std::abs(fc) * kKronrodWeights[10];
    std::array<cplx, 10> lo{};
    std::array<cplx, 10> hi{};

    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * kKronrodNodes[j];
        const cplx f1 = f(center - dx);
        const cplx f2 = f(center + dx);
        require_finite(f1, center - dx);
        require_finite(f2, center + dx);
        lo[j] = f1;
        hi[j] = f2;
        res_kronrod += kKronrodWeights[j] * (f1 + f2);
        res_abs += kKronrodWeights[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) {
            res_gauss += kGaussWeights[j / 2] * (f1 + f2);
        }
    }

    const cplx mean = 0.5 * res_kronrod;
    double res_asc = kKronrodWeights[10] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 10; ++j) {
        res_asc += kKronrodWeights[j] * (std::abs(lo[j] - mean) + std::abs(hi[j] - mean));
    }

    res_abs *= abs_half;
    res_asc *= abs_half;
    double err = std::abs((res_kronrod - res_gauss) * half);
    if (res_asc != 0.0 && err != 0.0) {
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(50.0 * eps * res_abs, err);
    }
    return {a, b, res_kronrod * half, err, res_abs};
}

inline constexpr std::size_t kEvalsPerPanel = 21;

}  // namespace detail

/// Integrates f over [breakpoints.front(), breakpoints.back()], starting from
/// the panels delimited by `breakpoints` (sorted ascending). Panels wider than
/// `max_panel` are pre-split into equal pieces, which keeps oscillatory
/// integrands resolved from the first sweep.
template <class F>
QuadResult integrate(const F& f, std::span<const double> breakpoints, const QuadOptions& opts,
                     double max_panel = std::numeric_limits<double>::infinity()) {
    if (breakpoints.size() < 2) {
        throw InvalidArgument("integrate: need at least two breakpoints");
    }

    std::vector<detail::Panel> active;
    std::vector<detail::Panel> frozen;
    std::size_t evals = 0;
    auto by_error = [](const detail::Panel& x, const detail::Panel& y) { return x.error < y.error; };

    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double a = breakpoints[i];
        const double b = breakpoints[i + 1];
        if (!(b > a)) {
            continue;
        }
        const auto pieces = static_cast<std::size_t>(
            std::max(1.0, std::ceil((b - a) / std::max(max_panel, 1e-300))));
        if ((active.size() + pieces) * detail::kEvalsPerPanel > opts.max_evals) {
            throw QuadratureFailure("integrate: initial panel set exceeds the evaluation budget");
        }
        for (std::size_t k = 0; k < pieces; ++k) {
            const double lo = a + (b - a) * static_cast<double>(k) / static_cast<double>(pieces);
            const double hi = (k + 1 == pieces)
                                  ? b
                                  : a + (b - a) * static_cast<double>(k + 1) / static_cast<double>(pieces);
            active.push_back(detail::gauss_kronrod21(f, lo, hi));
            evals += detail::kEvalsPerPanel;
        }
    }
    std::make_heap(active.begin(), active.end(), by_error);

    auto totals = [&] {
        CompensatedSum<cplx> value;
        CompensatedSum<double> error;
        CompensatedSum<double> magnitude;
        for (const auto* list : {&active, &frozen}) {
            for (const auto& p : *list) {
                value.add(p.value);
                error.add(p.error);
                magnitude.add(p.magnitude);
            }
        }
        return QuadResult{value.value(), error.value(), magnitude.value(), evals};
    };

    QuadResult running = totals();
    std::size_t since_refresh = 0;
    for (;;) {
        if (running.error <= running.tolerance(opts)) {
            break;
        }
        if (active.empty()) {
            throw QuadratureFailure("integrate: panels at resolution limit, error " +
                                    std::to_string(running.error) + " above tolerance " +
                                    std::to_string(running.tolerance(opts)));
        }
        if (evals + 2 * detail::kEvalsPerPanel > opts.max_evals) {
            throw QuadratureFailure("integrate: evaluation budget of " + std::to_string(opts.max_evals) +
                                    " exhausted, error " + std::to_string(running.error) +
                                    " above tolerance " + std::to_string(running.tolerance(opts)));
        }
        std::pop_heap(active.begin(), active.end(), by_error);
        const detail::Panel worst = active.back();
        active.pop_back();

        const double mid = 0.5 * (worst.a + worst.b);
        const double width = worst.b - worst.a;
        if (!(mid > worst.a && mid < worst.b) ||
            width <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(worst.a), std::abs(worst.b))) {
            frozen.push_back(worst);
            continue;
        }
        const detail::Panel left = detail::gauss_kronrod21(f, worst.a, mid);
        const detail::Panel right = detail::gauss_kronrod21(f, mid, worst.b);
        evals += 2 * detail::kEvalsPerPanel;

        running.value += left.value + right.value - worst.value;
        running.error = std::max(0.0, running.error + left.error + right.error - worst.error);
        running.magnitude = std::max(0.0, running.magnitude + left.magnitude + right.magnitude - worst.magnitude);
        running.evals = evals;

        active.push_back(left);
        std::push_heap(active.begin(), active.end(), by_error);
        active.push_back(right);
        std::push_heap(active.begin(), active.end(), by_error);

        if (++since_refresh == 128) {
            running = totals();
            since_refresh = 0;
        }
    }
    return totals();
}

template <class F>
QuadResult integrate(const F& f, double a, double b, const QuadOptions& opts,
                     double max_panel = std::numeric_limits<double>::infinity()) {
    const std::array<double, 2> ends{a, b};
    return integrate(f, std::span<const double>(ends), opts, max_panel);
}

/// Integral of f over [start, +inf) (direction > 0) or (-inf, start]
/// (direction < 0), through t = start +- L (1 - v) / v on v in (0, 1].
/// `length_scale` (L) should match the decay length of f.
template <class F>
QuadResult integrate_tail(const F& f, double start, int direction, double length_scale, const QuadOptions& opts) {
    if (!(length_scale > 0.0)) {
        throw InvalidArgument("integrate_tail: length scale must be positive");
    }
    const double sign = direction >= 0 ? 1.0 : -1.0;
    auto mapped = [&](double v) -> cplx {
        const double offset = length_scale * (1.0 - v) / v;
        if (!(offset < 1e150)) {
            return {0.0, 0.0};
        }
        return f(start + sign * offset) * (length_scale / (v * v));
    };
    return integrate(mapped, 0.0, 1.0, opts);
}

}  // namespace pdcheck
