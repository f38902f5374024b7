#pragma once

// Complete monotonicity on (0, inf) and absolute monotonicity on (-inf, 0)
// from exact axis derivatives, plus an alternating forward-difference test
// for sampled functions.

#include <pdcheck/errors.hpp>
#include <pdcheck/numeric.hpp>
#include <pdcheck/transform.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pdcheck {

enum class Spacing { log, linear };

inline std::string_view to_string(Spacing s) { return s == Spacing::log ? "log" : "linear"; }

struct GridSpec {
    double y_min = 1e-2;
    double y_max = 1e2;
    std::size_t count = 25;
    Spacing spacing = Spacing::log;

    void validate() const {
        if (!(y_min > 0.0) || !(y_max > y_min) || !std::isfinite(y_max)) {
            throw InvalidArgument("grid: need 0 < y_min < y_max < inf");
        }
        if (count < 2) {
            throw InvalidArgument("grid: need at least two points");
        }
    }

    [[nodiscard]] std::vector<double> points() const {
        validate();
        std::vector<double> out(count);
        for (std::size_t i = 0; i < count; ++i) {
            const double f = static_cast<double>(i) / static_cast<double>(count - 1);
            out[i] = spacing == Spacing::log ? y_min * std::pow(y_max / y_min, f) : y_min + (y_max - y_min) * f;
        }
        out.front() = y_min;
        out.back() = y_max;
        return out;
    }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct Tolerance {
    double rel = 1e-7;
    double abs = 1e-10;

    void validate() const {
        if (!(rel >= 0.0) || !(abs >= 0.0) || (rel == 0.0 && abs == 0.0)) {
            throw InvalidArgument("tolerance: rel and abs must be nonnegative and not both zero");
        }
    }

    [[nodiscard]] double threshold(double scale) const { return abs + rel * scale; }

    friend bool operator==(const Tolerance&, const Tolerance&) = default;
};

enum class Status { pass, fail, inconclusive };

inline std::string_view to_string(Status s) {
    switch (s) {
        case Status::pass:
            return "pass";
        case Status::fail:
            return "fail";
        case Status::inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

/// Worse of two statuses: fail > inconclusive > pass.
inline Status combine(Status a, Status b) {
    if (a == Status::fail || b == Status::fail) {
        return Status::fail;
    }
    if (a == Status::inconclusive || b == Status::inconclusive) {
        return Status::inconclusive;
    }
    return Status::pass;
}

struct Witness {
    double y = 0.0;
    unsigned s = 0;
    /// The sign-tested quantity (should be real and >= 0).
    cplx value{};
    double threshold = 0.0;

    friend bool operator==(const Witness&, const Witness&) = default;
};

struct MonotoneVerdict {
    Status status = Status::pass;
    /// Decisive violations only; empty unless status is fail.
    std::vector<Witness> witnesses;
    /// Points where the quadrature error straddles the threshold.
    std::vector<Witness> undecided;
    GridSpec grid;
    unsigned s_max = 0;
};

/// Sample provider: (y, s) -> axis sample at y (any sign).
using AxisProvider = std::function<AxisSample(double, unsigned)>;

namespace detail {

inline void sort_witnesses(std::vector<Witness>& w) {
    std::sort(w.begin(), w.end(), [](const Witness& a, const Witness& b) {
        return a.y != b.y ? a.y < b.y : a.s < b.s;
    });
}

/// Classifies one sign-tested value x with quadrature error `err`.
inline Status classify(cplx x, double theta, double err) {
    const double violation = std::max(-x.real() - theta, std::abs(x.imag()) - theta);
    if (violation > err && err <= 0.5 * theta) {
        return Status::fail;
    }
    if (violation + err > 0.0) {
        return Status::inconclusive;
    }
    return Status::pass;
}

inline MonotoneVerdict sweep(const AxisProvider& provider, const GridSpec& grid, unsigned s_max, const Tolerance& tol,
                             bool negative_axis, std::vector<AxisSample>* samples) {
    grid.validate();
    tol.validate();
    MonotoneVerdict out;
    out.grid = grid;
    out.s_max = s_max;
    for (double yp : grid.points()) {
        const double y = negative_axis ? -yp : yp;
        for (unsigned s = 0; s <= s_max; ++s) {
            const AxisSample sample = provider(y, s);
            // CM: (-1)^s D >= 0, i.e. P_s >= 0. AM of -F~: -D >= 0, i.e. -(-1)^s P_s >= 0.
            cplx x = sample.core;
            if (negative_axis && s % 2 == 0) {
                x = -x;
            }
            const double theta = tol.threshold(sample.scale);
            const Status st = classify(x, theta, sample.error);
            if (st == Status::fail) {
                out.witnesses.push_back({y, s, x, theta});
            } else if (st == Status::inconclusive) {
                out.undecided.push_back({y, s, x, theta});
            }
            if (samples != nullptr) {
                samples->push_back(sample);
            }
        }
    }
    sort_witnesses(out.witnesses);
    sort_witnesses(out.undecided);
    if (!out.witnesses.empty()) {
        out.status = Status::fail;
    } else if (!out.undecided.empty()) {
        out.status = Status::inconclusive;
    }
    return out;
}

}  // namespace detail

/// Complete monotonicity of y -> F~(iy) on the grid (y > 0).
inline MonotoneVerdict cm_exact(const AxisProvider& provider, const GridSpec& grid = {}, unsigned s_max = 8,
                                const Tolerance& tol = {}, std::vector<AxisSample>* samples = nullptr) {
    return detail::sweep(provider, grid, s_max, tol, false, samples);
}

/// Absolute monotonicity of -F~(iy) on the mirrored grid (y < 0).
inline MonotoneVerdict am_exact(const AxisProvider& provider, const GridSpec& grid = {}, unsigned s_max = 8,
                                const Tolerance& tol = {}, std::vector<AxisSample>* samples = nullptr) {
    return detail::sweep(provider, grid, s_max, tol, true, samples);
}

/// (-1)^k Delta_h^k f(y_i) >= 0 and real, for k <= k_max, on uniformly spaced samples.
inline MonotoneVerdict cm_finite_diff(const std::vector<std::pair<double, cplx>>& samples, unsigned k_max,
                                      const Tolerance& tol = {}) {
    tol.validate();
    if (samples.size() < static_cast<std::size_t>(k_max) + 1 || samples.size() < 2) {
        throw InvalidArgument("finite differences: need at least k_max + 1 (and two) samples");
    }
    const double h = samples[1].first - samples[0].first;
    if (!(h > 0.0)) {
        throw NonUniformGrid("finite differences: samples must be strictly increasing");
    }
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double step = samples[i].first - samples[i - 1].first;
        if (std::abs(step - h) > 1e-9 * std::max(h, std::abs(samples[i].first))) {
            throw NonUniformGrid("finite differences: step " + std::to_string(step) + " differs from " +
                                 std::to_string(h));
        }
    }

    MonotoneVerdict out;
    out.grid = {samples.front().first, samples.back().first, samples.size(), Spacing::linear};
    out.s_max = k_max;
    for (unsigned k = 0; k <= k_max; ++k) {
        for (std::size_t i = 0; i + k < samples.size(); ++i) {
            cplx diff{};
            double size = 0.0;
            for (unsigned j = 0; j <= k; ++j) {
                const double c = binomial(k, j);
                const cplx fj = samples[i + j].second;
                diff += ((k - j) % 2 == 0 ? c : -c) * fj;
                size += c * std::abs(fj);
            }
            const cplx x = (k % 2 == 0) ? diff : -diff;
            const double theta = tol.threshold(size);
            if (detail::classify(x, theta, 0.0) == Status::fail) {
                out.witnesses.push_back({samples[i].first, k, x, theta});
            }
        }
    }
    detail::sort_witnesses(out.witnesses);
    out.status = out.witnesses.empty() ? Status::pass : Status::fail;
    return out;
}

}  // namespace pdcheck
