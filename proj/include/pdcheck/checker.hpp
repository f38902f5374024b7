#pragma once

// End-to-end pipelines: the four-way axis test (two modulations, both
// half-axes), the Poisson-axis characteristic-function test, and the oracle
// cross-check.

#include <pdcheck/distribution.hpp>
#include <pdcheck/errors.hpp>
#include <pdcheck/monotone.hpp>
#include <pdcheck/oracle.hpp>
#include <pdcheck/parallel.hpp>
#include <pdcheck/quadrature.hpp>
#include <pdcheck/transform.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pdcheck {

class CheckConfig {
public:
    CheckConfig() = default;
    CheckConfig(double a1, double a2) { set_modulations(a1, a2); }

    [[nodiscard]] double a1() const { return a1_; }
    [[nodiscard]] double a2() const { return a2_; }

    void set_modulations(double a1, double a2) {
        if (!std::isfinite(a1) || !std::isfinite(a2)) {
            throw InvalidArgument("check config: modulations must be finite");
        }
        if (a1 == a2) {
            throw InvalidArgument("check config: modulations a1 and a2 must differ");
        }
        a1_ = a1;
        a2_ = a2;
    }

    /// Half-order; empty means auto (smallest n with 2n >= order bound).
    std::optional<unsigned> n;
    GridSpec grid;
    unsigned s_max = 8;
    Tolerance tol;
    QuadOptions quad;
    /// Worker cap for the sub-verdicts; 0 = hardware concurrency.
    unsigned jobs = 0;

    [[nodiscard]] unsigned resolve_n(const Distribution& f) const { return n ? *n : CauchyParams::auto_n(f); }

    void validate() const {
        grid.validate();
        tol.validate();
    }

    friend bool operator==(const CheckConfig& x, const CheckConfig& y) {
        return x.a1_ == y.a1_ && x.a2_ == y.a2_ && x.n == y.n && x.grid == y.grid && x.s_max == y.s_max &&
               x.tol == y.tol;
    }

private:
    double a1_ = 0.0;
    double a2_ = 1.0;
};

/// Linear grid used by the characteristic-function pipeline.
inline GridSpec charfun_grid() { return {0.1, 4.0, 40, Spacing::linear}; }

enum class Axis { positive, negative };

inline std::string_view to_string(Axis a) { return a == Axis::positive ? "positive" : "negative"; }

struct SubVerdict {
    /// Modulation index 1 or 2 (0 for the single Poisson-axis verdict).
    int j = 1;
    double modulation = 0.0;
    Axis axis = Axis::positive;
    /// "cm", "am" or "cm_finite_diff".
    std::string test;
    MonotoneVerdict verdict;
    std::string diagnostic;
};

enum class Overall { not_pd, consistent_pd, inconclusive };

inline std::string_view to_string(Overall o) {
    switch (o) {
        case Overall::not_pd:
            return "not_pd";
        case Overall::consistent_pd:
            return "consistent_pd";
        case Overall::inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

struct CheckReport {
    /// "theorem13" or "theorem12".
    std::string pipeline;
    CheckConfig config;
    unsigned n = 0;
    std::vector<SubVerdict> subverdicts;
    Overall overall = Overall::inconclusive;
    std::vector<AxisSample> samples;
};

inline Overall aggregate(const std::vector<Status>& statuses) {
    bool all_pass = !statuses.empty();
    for (Status s : statuses) {
        if (s == Status::fail) {
            return Overall::not_pd;
        }
        all_pass = all_pass && s == Status::pass;
    }
    return all_pass ? Overall::consistent_pd : Overall::inconclusive;
}

inline Overall aggregate(const std::vector<SubVerdict>& subs) {
    std::vector<Status> st;
    st.reserve(subs.size());
    for (const auto& s : subs) {
        st.push_back(s.verdict.status);
    }
    return aggregate(st);
}

inline CheckReport check_theorem13(const Distribution& f, const CheckConfig& config = {}) {
    f.require_nonempty();
    f.validate();
    config.validate();
    const unsigned n = config.resolve_n(f);
    const CauchyParams params(n, config.a1(), config.a2());
    params.require_order(f);

    CheckReport report;
    report.pipeline = "theorem13";
    report.config = config;
    report.n = n;
    report.subverdicts.resize(4);
    std::array<std::vector<AxisSample>, 4> parts;

    parallel_for(4, config.jobs, [&](std::size_t i) {
        const int j = 1 + static_cast<int>(i / 2);
        const Axis axis = (i % 2 == 0) ? Axis::positive : Axis::negative;
        SubVerdict& sub = report.subverdicts[i];
        sub.j = j;
        sub.modulation = params.modulation(j);
        sub.axis = axis;
        sub.test = axis == Axis::positive ? "cm" : "am";
        sub.verdict.grid = config.grid;
        sub.verdict.s_max = config.s_max;
        const AxisProvider provider = [&, j](double y, unsigned s) {
            return axis_derivative(f, params, j, y, s, config.quad);
        };
        try {
            sub.verdict = axis == Axis::positive ? cm_exact(provider, config.grid, config.s_max, config.tol, &parts[i])
                                                 : am_exact(provider, config.grid, config.s_max, config.tol, &parts[i]);
        } catch (const NumericalError& e) {
            sub.verdict.status = Status::inconclusive;
            sub.diagnostic = e.what();
        }
    });

    for (auto& p : parts) {
        report.samples.insert(report.samples.end(), p.begin(), p.end());
    }
    report.overall = aggregate(report.subverdicts);
    return report;
}

/// Characteristic-function test: u_f(0, y) on a uniform grid must pass the
/// alternating-difference test. `strict` requires f(0) = 1 within 1e-9.
inline CheckReport check_theorem12(const Distribution& f, const CheckConfig& config, bool strict = true) {
    f.require_nonempty();
    f.validate();
    require_poisson_domain(f);
    config.validate();
    if (strict) {
        const double f0 = value_at_zero(f);
        if (std::abs(f0 - 1.0) > 1e-9) {
            throw NormalizationError("characteristic function test: f(0) = " + std::to_string(f0) +
                                     " differs from 1 (use the unnormalized mode to skip this check)");
        }
    }

    CheckReport report;
    report.pipeline = "theorem12";
    report.config = config;
    SubVerdict sub;
    sub.j = 0;
    sub.axis = Axis::positive;
    sub.test = "cm_finite_diff";
    sub.verdict.grid = config.grid;
    sub.verdict.s_max = config.s_max;

    const std::vector<double> ys = config.grid.points();
    std::vector<AxisSample> samples(ys.size());
    try {
        parallel_for(ys.size(), config.jobs, [&](std::size_t i) {
            const QuadResult r = poisson_axis_result(f, ys[i], config.quad);
            samples[i] = {0, ys[i], 0, r.value.real(), r.value.real(), 0.0, r.magnitude, r.error};
        });
        std::vector<std::pair<double, cplx>> values;
        values.reserve(samples.size());
        for (const auto& s : samples) {
            values.emplace_back(s.y, s.value);
        }
        sub.verdict = cm_finite_diff(values, config.s_max, config.tol);
    } catch (const NumericalError& e) {
        sub.verdict.status = Status::inconclusive;
        sub.diagnostic = e.what();
    }
    report.samples = std::move(samples);
    report.subverdicts.push_back(std::move(sub));
    report.overall = aggregate(report.subverdicts);
    return report;
}

struct CrossValidation {
    Overall checker = Overall::inconclusive;
    GroundTruth fourier;
    GroundTruth quadratic;
    bool consistent = true;
};

inline CrossValidation cross_validate(const Distribution& f, const CheckConfig& config = {},
                                      std::uint64_t trials = 256, std::uint64_t seed = 0) {
    CrossValidation out;
    out.checker = check_theorem13(f, config).overall;
    out.fourier = fourier_truth(f);
    out.quadratic = quadratic_form_truth(f, trials, seed, config.tol, config.quad);
    out.consistent = !((out.checker == Overall::not_pd && out.fourier.pd == Truth::yes) ||
                       (out.checker == Overall::consistent_pd && out.fourier.pd == Truth::no));
    return out;
}

}  // namespace pdcheck
