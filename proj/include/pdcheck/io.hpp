#pragma once

// JSON spec documents, JSON reports and CSV sample dumps.
//
// Spec layout (unknown fields are rejected everywhere):
//
//   {
//     "mode": "theorem13" | "theorem12" | "oracle" | "verify",     optional
//     "distribution": NODE,
//     "check":   { "a1", "a2", "n" (integer or "auto"), "s_max",
//                  "grid": { "y_min", "y_max", "count", "spacing" },
//                  "tol":  { "rel", "abs" } },                     optional
//     "oracle":  { "trials", "seed" },                            optional
//     "charfun": { "unnormalized" }                               optional
//   }
//
//   NODE = { "sum": [NODE, ...] }
//        | { "dirac": { "location", "order", "weight", "modulation" } }
//        | { "density": { "base", <param>, "poly", "weight", "growth_degree", "modulation" } }
//        | { "modulate": { "frequency", "term": NODE } }
//        | { "scale": { "factor", "term": NODE } }
//
// <param> is sigma (gaussian), lambda (laplace), b (cosine, sine) or
// a (indicator, triangle, bump); constant takes none. Complex numbers are
// [re, im]; a bare number is read as real.

#include <pdcheck/checker.hpp>
#include <pdcheck/distribution.hpp>
#include <pdcheck/errors.hpp>
#include <pdcheck/monotone.hpp>
#include <pdcheck/oracle.hpp>
#include <pdcheck/transform.hpp>

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace pdcheck {

using json = nlohmann::ordered_json;

enum class Mode { theorem13, theorem12, oracle, verify };

inline std::string_view to_string(Mode m) {
    switch (m) {
        case Mode::theorem13:
            return "theorem13";
        case Mode::theorem12:
            return "theorem12";
        case Mode::oracle:
            return "oracle";
        case Mode::verify:
            return "verify";
    }
    return "theorem13";
}

struct SpecFile {
    std::optional<Mode> mode;
    Distribution distribution;
    CheckConfig check;
    std::uint64_t trials = 256;
    std::uint64_t seed = 0;
    bool unnormalized = false;
    /// Which optional sections were present (so CLI defaults can differ per command).
    bool has_grid = false;
};

namespace detail {

class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            throw SpecError(path_ + ": expected an object");
        }
    }

    [[nodiscard]] bool has(const std::string& key) {
        seen_.insert(key);
        return j_.contains(key);
    }

    const json& at(const std::string& key) {
        seen_.insert(key);
        if (!j_.contains(key)) {
            throw SpecError(path_ + ": missing field '" + key + "'");
        }
        return j_.at(key);
    }

    double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
        if (!has(key)) {
            if (fallback) {
                return *fallback;
            }
            throw SpecError(path_ + ": missing field '" + key + "'");
        }
        const json& v = j_.at(key);
        if (!v.is_number()) {
            throw SpecError(path_ + "." + key + ": expected a number");
        }
        return v.get<double>();
    }

    std::uint64_t natural(const std::string& key, std::uint64_t fallback) {
        if (!has(key)) {
            return fallback;
        }
        const json& v = j_.at(key);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
            throw SpecError(path_ + "." + key + ": expected a nonnegative integer");
        }
        return v.get<std::uint64_t>();
    }

    cplx complex(const std::string& key, cplx fallback) {
        if (!has(key)) {
            return fallback;
        }
        return parse_complex(j_.at(key), path_ + "." + key);
    }

    [[nodiscard]] const std::string& path() const { return path_; }

    void finish() const {
        for (const auto& item : j_.items()) {
            if (seen_.count(item.key()) == 0) {
                throw SpecError(path_ + ": unknown field '" + item.key() + "'");
            }
        }
    }

    static cplx parse_complex(const json& v, const std::string& path) {
        if (v.is_number()) {
            return {v.get<double>(), 0.0};
        }
        if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
            return {v[0].get<double>(), v[1].get<double>()};
        }
        throw SpecError(path + ": expected a number or [re, im]");
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

inline Base parse_base(ObjectReader& r) {
    const json& kind = r.at("base");
    if (!kind.is_string()) {
        throw SpecError(r.path() + ".base: expected a string");
    }
    const std::string k = kind.get<std::string>();
    if (k == "gaussian") {
        return Base::gaussian(r.number("sigma"));
    }
    if (k == "laplace") {
        return Base::laplace(r.number("lambda"));
    }
    if (k == "cosine") {
        return Base::cosine(r.number("b"));
    }
    if (k == "sine") {
        return Base::sine(r.number("b"));
    }
    if (k == "constant") {
        return Base::constant();
    }
    if (k == "indicator") {
        return Base::indicator(r.number("a"));
    }
    if (k == "triangle") {
        return Base::triangle(r.number("a"));
    }
    if (k == "bump") {
        return Base::bump(r.number("a"));
    }
    throw SpecError(r.path() + ".base: unknown base '" + k + "'");
}

inline void parse_node(const json& j, const std::string& path, Distribution& out, cplx factor, double shift) {
    if (!j.is_object() || j.size() != 1) {
        throw SpecError(path + ": a node is an object with exactly one of sum, dirac, density, modulate, scale");
    }
    const std::string key = j.begin().key();
    const json& body = j.begin().value();
    const std::string here = path + "." + key;
    if (key == "sum") {
        if (!body.is_array() || body.empty()) {
            throw SpecError(here + ": expected a non-empty array");
        }
        for (std::size_t i = 0; i < body.size(); ++i) {
            parse_node(body[i], here + "[" + std::to_string(i) + "]", out, factor, shift);
        }
        return;
    }
    ObjectReader r(body, here);
    if (key == "dirac") {
        DiracAtom a;
        a.location = r.number("location", 0.0);
        a.derivative_order = static_cast<unsigned>(r.natural("order", 0));
        a.weight = r.complex("weight", 1.0) * factor;
        a.modulation = r.number("modulation", 0.0) + shift;
        r.finish();
        out.add(a);
    } else if (key == "density") {
        DensityAtom a;
        a.base = parse_base(r);
        if (r.has("poly")) {
            const json& p = r.at("poly");
            if (!p.is_array() || p.empty()) {
                throw SpecError(here + ".poly: expected a non-empty array of numbers");
            }
            a.poly.clear();
            for (const auto& c : p) {
                if (!c.is_number()) {
                    throw SpecError(here + ".poly: expected numbers");
                }
                a.poly.push_back(c.get<double>());
            }
        }
        a.weight = r.complex("weight", 1.0) * factor;
        a.growth_degree = static_cast<unsigned>(r.natural("growth_degree", a.poly_degree()));
        a.modulation = r.number("modulation", 0.0) + shift;
        r.finish();
        out.add(a);
    } else if (key == "modulate") {
        const double b = r.number("frequency");
        const json& term = r.at("term");
        r.finish();
        parse_node(term, here + ".term", out, factor, shift + b);
    } else if (key == "scale") {
        const cplx c = r.complex("factor", 1.0);
        const json& term = r.at("term");
        r.finish();
        parse_node(term, here + ".term", out, factor * c, shift);
    } else {
        throw SpecError(path + ": unknown node kind '" + key + "'");
    }
}

inline json complex_json(cplx v) { return json::array({v.real(), v.imag()}); }

}  // namespace detail

inline Distribution parse_distribution(const json& j) {
    Distribution out;
    try {
        detail::parse_node(j, "distribution", out, 1.0, 0.0);
    } catch (const SpecError&) {
        throw;
    } catch (const InvalidArgument& e) {
        throw SpecError(std::string("distribution: ") + e.what());
    }
    return out;
}

inline GridSpec parse_grid(const json& j, GridSpec base = {}) {
    detail::ObjectReader r(j, "check.grid");
    base.y_min = r.number("y_min", base.y_min);
    base.y_max = r.number("y_max", base.y_max);
    base.count = static_cast<std::size_t>(r.natural("count", base.count));
    if (r.has("spacing")) {
        const json& s = r.at("spacing");
        if (s == "log") {
            base.spacing = Spacing::log;
        } else if (s == "linear") {
            base.spacing = Spacing::linear;
        } else {
            throw SpecError("check.grid.spacing: expected \"log\" or \"linear\"");
        }
    }
    r.finish();
    return base;
}

inline CheckConfig parse_check_config(const json& j, bool* has_grid = nullptr) {
    detail::ObjectReader r(j, "check");
    CheckConfig c;
    const double a1 = r.number("a1", 0.0);
    const double a2 = r.number("a2", 1.0);
    try {
        c.set_modulations(a1, a2);
    } catch (const InvalidArgument& e) {
        throw SpecError(e.what());
    }
    if (r.has("n")) {
        const json& n = r.at("n");
        if (n.is_null() || n == "auto") {
            c.n.reset();
        } else if (n.is_number_unsigned() || (n.is_number_integer() && n.get<std::int64_t>() >= 0)) {
            c.n = n.get<unsigned>();
        } else {
            throw SpecError("check.n: expected a nonnegative integer or \"auto\"");
        }
    }
    c.s_max = static_cast<unsigned>(r.natural("s_max", c.s_max));
    if (r.has("grid")) {
        c.grid = parse_grid(r.at("grid"));
        if (has_grid != nullptr) {
            *has_grid = true;
        }
    }
    if (r.has("tol")) {
        detail::ObjectReader t(r.at("tol"), "check.tol");
        c.tol.rel = t.number("rel", c.tol.rel);
        c.tol.abs = t.number("abs", c.tol.abs);
        t.finish();
    }
    r.finish();
    try {
        c.validate();
    } catch (const InvalidArgument& e) {
        throw SpecError(std::string("check: ") + e.what());
    }
    return c;
}

inline SpecFile parse_spec(const json& j) {
    detail::ObjectReader r(j, "spec");
    SpecFile spec;
    if (r.has("mode")) {
        const json& m = r.at("mode");
        if (m == "theorem13") {
            spec.mode = Mode::theorem13;
        } else if (m == "theorem12") {
            spec.mode = Mode::theorem12;
        } else if (m == "oracle") {
            spec.mode = Mode::oracle;
        } else if (m == "verify") {
            spec.mode = Mode::verify;
        } else {
            throw SpecError("spec.mode: expected theorem13, theorem12, oracle or verify");
        }
    }
    spec.distribution = parse_distribution(r.at("distribution"));
    if (r.has("check")) {
        spec.check = parse_check_config(r.at("check"), &spec.has_grid);
    }
    if (r.has("oracle")) {
        detail::ObjectReader o(r.at("oracle"), "oracle");
        spec.trials = o.natural("trials", spec.trials);
        spec.seed = o.natural("seed", spec.seed);
        o.finish();
    }
    if (r.has("charfun")) {
        detail::ObjectReader c(r.at("charfun"), "charfun");
        if (c.has("unnormalized")) {
            const json& u = c.at("unnormalized");
            if (!u.is_boolean()) {
                throw SpecError("charfun.unnormalized: expected a boolean");
            }
            spec.unnormalized = u.get<bool>();
        }
        c.finish();
    }
    r.finish();
    return spec;
}

inline SpecFile parse_spec_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError(std::string("spec is not valid JSON: ") + e.what());
    }
    return parse_spec(j);
}

inline SpecFile load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw SpecError("cannot read spec file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str());
}

// ---- writers -------------------------------------------------------------

inline json base_json(const Base& b) {
    json j;
    j["base"] = std::string(to_string(b.kind()));
    switch (b.kind()) {
        case BaseKind::gaussian:
            j["sigma"] = b.param();
            break;
        case BaseKind::laplace:
            j["lambda"] = b.param();
            break;
        case BaseKind::cosine:
        case BaseKind::sine:
            j["b"] = b.param();
            break;
        case BaseKind::constant:
            break;
        default:
            j["a"] = b.param();
            break;
    }
    return j;
}

inline json distribution_json(const Distribution& f) {
    json terms = json::array();
    for (const Atom& atom : f.atoms()) {
        if (const auto* d = std::get_if<DiracAtom>(&atom)) {
            terms.push_back({{"dirac",
                              {{"location", d->location},
                               {"order", d->derivative_order},
                               {"weight", detail::complex_json(d->weight)},
                               {"modulation", d->modulation}}}});
        } else {
            const auto& g = std::get<DensityAtom>(atom);
            json body = base_json(g.base);
            body["poly"] = g.poly;
            body["weight"] = detail::complex_json(g.weight);
            body["growth_degree"] = g.growth_degree;
            body["modulation"] = g.modulation;
            terms.push_back({{"density", body}});
        }
    }
    return {{"sum", terms}};
}

inline json grid_json(const GridSpec& g) {
    return {{"y_min", g.y_min}, {"y_max", g.y_max}, {"count", g.count}, {"spacing", std::string(to_string(g.spacing))}};
}

inline json check_config_json(const CheckConfig& c) {
    json j;
    j["a1"] = c.a1();
    j["a2"] = c.a2();
    j["n"] = c.n ? json(*c.n) : json("auto");
    j["s_max"] = c.s_max;
    j["grid"] = grid_json(c.grid);
    j["tol"] = {{"rel", c.tol.rel}, {"abs", c.tol.abs}};
    return j;
}

inline json witness_json(const Witness& w) {
    return {{"y", w.y}, {"s", w.s}, {"value", detail::complex_json(w.value)}, {"threshold", w.threshold}};
}

/// Reports list at most this many witnesses per sub-verdict (counts are always complete).
inline constexpr std::size_t kReportWitnessLimit = 64;

inline json verdict_json(const MonotoneVerdict& v) {
    json j;
    j["status"] = std::string(to_string(v.status));
    j["witness_count"] = v.witnesses.size();
    json ws = json::array();
    for (std::size_t i = 0; i < v.witnesses.size() && i < kReportWitnessLimit; ++i) {
        ws.push_back(witness_json(v.witnesses[i]));
    }
    j["witnesses"] = ws;
    j["undecided_count"] = v.undecided.size();
    j["grid"] = grid_json(v.grid);
    j["s_max"] = v.s_max;
    return j;
}

inline json check_report_json(const CheckReport& r) {
    json j;
    j["pipeline"] = r.pipeline;
    j["config"] = check_config_json(r.config);
    if (r.pipeline == "theorem13") {
        j["n"] = r.n;
    }
    j["overall"] = std::string(to_string(r.overall));
    json subs = json::array();
    for (const auto& s : r.subverdicts) {
        json sj;
        sj["j"] = s.j;
        sj["modulation"] = s.modulation;
        sj["axis"] = std::string(to_string(s.axis));
        sj["test"] = s.test;
        sj["verdict"] = verdict_json(s.verdict);
        if (!s.diagnostic.empty()) {
            sj["diagnostic"] = s.diagnostic;
        }
        subs.push_back(sj);
    }
    j["subverdicts"] = subs;
    j["sample_count"] = r.samples.size();
    return j;
}

inline json evidence_json(const Evidence& e) {
    json j;
    j["kind"] = e.kind;
    if (e.kind == "frequency" || e.kind == "point_mass" || e.kind == "non_measure") {
        j["frequency"] = e.frequency;
    }
    if (e.kind == "non_measure") {
        j["order"] = e.order;
    }
    j["value"] = detail::complex_json(e.value);
    j["threshold"] = e.threshold;
    if (e.phi) {
        json comps = json::array();
        for (const auto& c : e.phi->components()) {
            comps.push_back({{"amplitude", detail::complex_json(c.amplitude)}, {"center", c.center}, {"width", c.width}});
        }
        j["phi"] = comps;
        j["phi_modulation"] = e.phi->modulation();
    }
    if (!e.points.empty()) {
        j["points"] = e.points;
        json cs = json::array();
        for (const auto& c : e.coefficients) {
            cs.push_back(detail::complex_json(c));
        }
        j["coefficients"] = cs;
    }
    if (e.kind == "test_function" || e.kind == "point_set") {
        j["trial"] = e.trial;
    }
    return j;
}

inline json ground_truth_json(const GroundTruth& g) {
    json j;
    j["source"] = g.source;
    j["pd"] = std::string(to_string(g.pd));
    j["reason"] = g.reason;
    if (g.evidence) {
        j["evidence"] = evidence_json(*g.evidence);
    }
    return j;
}

/// Sample rows j,y,s,re,im,scale,threshold. re/im are d^s/dy^s F~_j(iy);
/// scale and threshold are in the same units as the value.
inline void write_samples_csv(std::ostream& out, const std::vector<AxisSample>& samples, const Tolerance& tol) {
    out << "j,y,s,re,im,scale,threshold\n";
    char line[256];
    for (const auto& s : samples) {
        const double factor = std::exp(s.log_factor);
        const double scale = s.scale * factor;
        const double threshold = tol.threshold(s.scale) * factor;
        std::snprintf(line, sizeof line, "%d,%.17g,%u,%.17g,%.17g,%.17g,%.17g\n", s.j, s.y, s.s, s.value.real(),
                      s.value.imag(), scale, threshold);
        out << line;
    }
}

}  // namespace pdcheck
