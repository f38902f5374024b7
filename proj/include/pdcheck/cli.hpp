#pragma once

// Command-line front end. `run` parses argv, executes one subcommand and
// returns the process exit code; diagnostics go to `err`.

#include <pdcheck/checker.hpp>
#include <pdcheck/errors.hpp>
#include <pdcheck/io.hpp>
#include <pdcheck/oracle.hpp>
#include <pdcheck/parallel.hpp>
#include <pdcheck/transform.hpp>
#include <pdcheck/verification.hpp>

#include <CLI11.hpp>

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace pdcheck {

inline constexpr const char* kToolVersion = "1.0.0";

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int negative = 1;
inline constexpr int undecided = 2;
inline constexpr int usage = 64;
inline constexpr int data = 65;
inline constexpr int software = 70;
}  // namespace exit_code

struct CliOptions {
    std::string command;
    std::string spec_path;
    std::string report_path;
    std::string samples_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<unsigned> jobs;
    std::optional<unsigned> s_max;
    std::optional<double> y_min;
    std::optional<double> y_max;
    std::optional<std::size_t> grid_points;
    std::optional<double> tol_rel;
    std::optional<double> tol_abs;
    std::optional<double> a1;
    std::optional<double> a2;
    std::optional<std::string> n;
    std::string suite = "all";
    bool no_meta = false;
    bool unnormalized = false;
};

namespace detail {

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Thrown for bad flag values; maps to the usage exit code.
struct UsageError : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

inline void apply_overrides(const CliOptions& o, CheckConfig& c) {
    try {
        if (o.a1 || o.a2) {
            c.set_modulations(o.a1.value_or(c.a1()), o.a2.value_or(c.a2()));
        }
        if (o.n) {
            if (*o.n == "auto") {
                c.n.reset();
            } else {
                std::size_t used = 0;
                const long v = std::stol(*o.n, &used);
                if (used != o.n->size() || v < 0) {
                    throw UsageError("--n: expected a nonnegative integer or 'auto'");
                }
                c.n = static_cast<unsigned>(v);
            }
        }
        if (o.s_max) {
            c.s_max = *o.s_max;
        }
        if (o.y_min) {
            c.grid.y_min = *o.y_min;
        }
        if (o.y_max) {
            c.grid.y_max = *o.y_max;
        }
        if (o.grid_points) {
            c.grid.count = *o.grid_points;
        }
        if (o.tol_rel) {
            c.tol.rel = *o.tol_rel;
        }
        if (o.tol_abs) {
            c.tol.abs = *o.tol_abs;
        }
        if (o.jobs) {
            c.jobs = *o.jobs;
        }
        c.validate();
    } catch (const UsageError&) {
        throw;
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    } catch (const std::logic_error&) {
        throw UsageError("--n: expected a nonnegative integer or 'auto'");
    }
}

inline void require_mode(const SpecFile& spec, std::initializer_list<Mode> allowed, const std::string& command) {
    if (!spec.mode) {
        return;
    }
    for (Mode m : allowed) {
        if (*spec.mode == m) {
            return;
        }
    }
    throw SpecError("spec mode '" + std::string(to_string(*spec.mode)) + "' does not match command '" + command + "'");
}

inline json sample_json(const AxisSample& s) {
    return {{"j", s.j},
            {"y", s.y},
            {"s", s.s},
            {"value", complex_json(s.value)},
            {"scale", s.scale * std::exp(s.log_factor)},
            {"error", s.error * std::exp(s.log_factor)}};
}

inline int overall_code(Overall o) {
    switch (o) {
        case Overall::consistent_pd:
            return exit_code::ok;
        case Overall::not_pd:
            return exit_code::negative;
        case Overall::inconclusive:
            return exit_code::undecided;
    }
    return exit_code::undecided;
}

inline int truth_code(Truth t) {
    switch (t) {
        case Truth::yes:
            return exit_code::ok;
        case Truth::no:
            return exit_code::negative;
        case Truth::unknown:
            return exit_code::undecided;
    }
    return exit_code::undecided;
}

struct Outcome {
    json body;
    int code = exit_code::ok;
    std::vector<AxisSample> samples;
    Tolerance tol;
    bool has_samples = false;
};

inline Outcome run_check(const CliOptions& o) {
    SpecFile spec = load_spec(o.spec_path);
    require_mode(spec, {Mode::theorem13}, "check");
    apply_overrides(o, spec.check);
    const CheckReport r = check_theorem13(spec.distribution, spec.check);
    Outcome out;
    out.body["command"] = "check";
    out.body["distribution"] = distribution_json(spec.distribution);
    out.body["order_bound"] = order_bound(spec.distribution);
    out.body["report"] = check_report_json(r);
    out.code = overall_code(r.overall);
    out.samples = r.samples;
    out.tol = spec.check.tol;
    out.has_samples = true;
    return out;
}

inline Outcome run_charfun(const CliOptions& o) {
    SpecFile spec = load_spec(o.spec_path);
    require_mode(spec, {Mode::theorem12}, "charfun");
    if (!spec.has_grid) {
        spec.check.grid = charfun_grid();
    }
    apply_overrides(o, spec.check);
    const bool unnormalized = spec.unnormalized || o.unnormalized;
    const CheckReport r = check_theorem12(spec.distribution, spec.check, !unnormalized);
    Outcome out;
    out.body["command"] = "charfun";
    out.body["distribution"] = distribution_json(spec.distribution);
    out.body["unnormalized"] = unnormalized;
    out.body["report"] = check_report_json(r);
    out.code = overall_code(r.overall);
    out.samples = r.samples;
    out.tol = spec.check.tol;
    out.has_samples = true;
    return out;
}

inline Outcome run_oracle(const CliOptions& o) {
    SpecFile spec = load_spec(o.spec_path);
    require_mode(spec, {Mode::oracle}, "oracle");
    apply_overrides(o, spec.check);
    const std::uint64_t trials = o.trials.value_or(spec.trials);
    const std::uint64_t seed = o.seed.value_or(spec.seed);
    spec.distribution.require_nonempty();
    spec.distribution.validate();
    const GroundTruth fourier = fourier_truth(spec.distribution);
    const GroundTruth quadratic =
        quadratic_form_truth(spec.distribution, trials, seed, spec.check.tol, spec.check.quad);
    Outcome out;
    out.body["command"] = "oracle";
    out.body["distribution"] = distribution_json(spec.distribution);
    out.body["trials"] = trials;
    out.body["seed"] = seed;
    out.body["fourier"] = ground_truth_json(fourier);
    out.body["quadratic_form"] = ground_truth_json(quadratic);
    const Truth decided = fourier.pd != Truth::unknown ? fourier.pd : quadratic.pd;
    out.body["pd"] = std::string(to_string(decided));
    out.code = truth_code(decided);
    return out;
}

inline Outcome run_transform(const CliOptions& o) {
    SpecFile spec = load_spec(o.spec_path);
    require_mode(spec, {Mode::theorem13}, "transform");
    apply_overrides(o, spec.check);
    const Distribution& f = spec.distribution;
    f.require_nonempty();
    f.validate();
    const CheckConfig& c = spec.check;
    const unsigned n = c.resolve_n(f);
    const CauchyParams params(n, c.a1(), c.a2());
    params.require_order(f);

    const std::vector<double> ys = c.grid.points();
    // Blocks: (j=1, +), (j=1, -), (j=2, +), (j=2, -).
    std::array<std::vector<AxisSample>, 4> parts;
    parallel_for(4, c.jobs, [&](std::size_t b) {
        const int j = 1 + static_cast<int>(b / 2);
        const double sign = b % 2 == 0 ? 1.0 : -1.0;
        for (double y : ys) {
            for (unsigned s = 0; s <= c.s_max; ++s) {
                parts[b].push_back(axis_derivative(f, params, j, sign * y, s, c.quad));
            }
        }
    });

    Outcome out;
    json samples = json::array();
    for (const auto& p : parts) {
        for (const auto& s : p) {
            samples.push_back(sample_json(s));
            out.samples.push_back(s);
        }
    }
    out.body["command"] = "transform";
    out.body["distribution"] = distribution_json(f);
    out.body["config"] = check_config_json(c);
    out.body["n"] = n;
    out.body["modulations"] = {params.modulation(1), params.modulation(2)};
    out.body["samples"] = samples;
    out.tol = c.tol;
    out.has_samples = true;
    return out;
}

inline Outcome run_verify(const CliOptions& o, bool with_timing) {
    std::vector<std::string> names;
    if (o.suite == "all") {
        names = suite_names();
    } else {
        bool known = false;
        for (const auto& s : suite_names()) {
            known = known || s == o.suite;
        }
        if (!known) {
            throw UsageError("--suite: unknown suite '" + o.suite + "'");
        }
        names.push_back(o.suite);
    }
    Outcome out;
    out.body["command"] = "verify";
    json suites = json::array();
    bool all = true;
    for (const auto& name : names) {
        const auto t0 = std::chrono::steady_clock::now();
        SuiteResult r = run_suite(name);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        json sj;
        sj["name"] = r.name;
        sj["passed"] = r.passed;
        if (with_timing) {
            sj["seconds"] = r.seconds;
        }
        json cases = json::array();
        for (const auto& c : r.cases) {
            cases.push_back({{"label", c.label},
                             {"residual", c.residual},
                             {"limit", c.limit},
                             {"strict", c.strict},
                             {"passed", c.passed}});
        }
        sj["cases"] = cases;
        suites.push_back(sj);
        all = all && r.passed;
    }
    out.body["suites"] = suites;
    out.body["passed"] = all;
    out.code = all ? exit_code::ok : exit_code::negative;
    return out;
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot open '" + path + "' for writing");
    }
    f << text;
    if (!f) {
        throw UsageError("failed writing '" + path + "'");
    }
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CliOptions o;
    CLI::App app{"Numerical positive-definiteness checker for tempered distributions", "pdcheck"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kToolVersion);

    app.add_option("--report", o.report_path, "write the JSON report here instead of stdout");
    app.add_option("--dump-samples", o.samples_path, "write axis samples as CSV (j,y,s,re,im,scale,threshold)");
    app.add_option("--seed", o.seed, "oracle seed (default 0)");
    app.add_option("--trials", o.trials, "oracle trial count (default 256)");
    app.add_option("--jobs", o.jobs, "worker cap (0 = hardware concurrency)");
    app.add_option("--s-max", o.s_max, "highest derivative / difference order");
    app.add_option("--y-min", o.y_min, "grid start");
    app.add_option("--y-max", o.y_max, "grid end");
    app.add_option("--grid-points", o.grid_points, "grid size");
    app.add_option("--tol-rel", o.tol_rel, "relative sign tolerance");
    app.add_option("--tol-abs", o.tol_abs, "absolute sign tolerance");
    app.add_option("--a1", o.a1, "first modulation");
    app.add_option("--a2", o.a2, "second modulation");
    app.add_option("--n", o.n, "half-order n or 'auto'");
    app.add_flag("--no-meta", o.no_meta, "omit the meta block (byte-stable reports)");

    const std::string spec_help = "JSON spec file";
    auto* check = app.add_subcommand("check", "axis monotonicity test for positive definiteness");
    check->add_option("spec", o.spec_path, spec_help)->required();
    auto* charfun = app.add_subcommand("charfun", "Poisson-axis test for characteristic functions");
    charfun->add_option("spec", o.spec_path, spec_help)->required();
    charfun->add_flag("--unnormalized", o.unnormalized, "skip the f(0) = 1 requirement");
    auto* oracle = app.add_subcommand("oracle", "Fourier and quadratic-form ground truth");
    oracle->add_option("spec", o.spec_path, spec_help)->required();
    auto* transform = app.add_subcommand("transform", "dump the transform and its derivatives on the axis grid");
    transform->add_option("spec", o.spec_path, spec_help)->required();
    auto* verify = app.add_subcommand("verify", "run numerical identity suites");
    verify->add_option("--suite", o.suite, "suite name or 'all'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_code::usage;
    }
    o.command = app.get_subcommands().front()->get_name();

    try {
        detail::Outcome result;
        if (o.command == "check") {
            result = detail::run_check(o);
        } else if (o.command == "charfun") {
            result = detail::run_charfun(o);
        } else if (o.command == "oracle") {
            result = detail::run_oracle(o);
        } else if (o.command == "transform") {
            result = detail::run_transform(o);
        } else {
            result = detail::run_verify(o, !o.no_meta);
        }

        json doc;
        if (!o.no_meta) {
            doc["meta"] = {{"tool", "pdcheck"}, {"version", kToolVersion}, {"generated", detail::utc_timestamp()}};
        }
        for (auto& [k, v] : result.body.items()) {
            doc[k] = v;
        }
        const std::string text = doc.dump(2) + "\n";
        if (!o.samples_path.empty()) {
            if (!result.has_samples) {
                throw detail::UsageError("--dump-samples is not available for '" + o.command + "'");
            }
            std::ostringstream csv;
            write_samples_csv(csv, result.samples, result.tol);
            detail::write_text(o.samples_path, csv.str());
        }
        if (o.report_path.empty()) {
            out << text;
        } else {
            detail::write_text(o.report_path, text);
        }
        return result.code;
    } catch (const detail::UsageError& e) {
        err << "pdcheck: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const InvalidArgument& e) {
        err << "pdcheck: " << e.what() << "\n";
        return exit_code::data;
    } catch (const NumericalError& e) {
        err << "pdcheck: numerical failure: " << e.what() << "\n";
        return exit_code::software;
    } catch (const std::exception& e) {
        err << "pdcheck: internal error: " << e.what() << "\n";
        return exit_code::software;
    }
}

}  // namespace pdcheck
