#pragma once

// Independent ground truth for positive definiteness.
//
// fourier_truth: transforms every atom with a closed-form catalog
// (convention F^(xi) = integral F(t) e^{-i xi t} dt) and asks whether the
// result is a nonnegative measure.
//
// quadratic_form_truth: seeded random probes (F, phi * phi^star) and, for
// continuous function atoms, sums f(x_j - x_k) c_j conj(c_k). Refutation only.

#include <pdcheck/distribution.hpp>
#include <pdcheck/errors.hpp>
#include <pdcheck/monotone.hpp>
#include <pdcheck/numeric.hpp>
#include <pdcheck/pairing.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace pdcheck {

enum class Truth { yes, no, unknown };

inline std::string_view to_string(Truth t) {
    switch (t) {
        case Truth::yes:
            return "yes";
        case Truth::no:
            return "no";
        case Truth::unknown:
            return "unknown";
    }
    return "unknown";
}

struct Evidence {
    /// "frequency", "point_mass", "non_measure", "test_function" or "point_set".
    std::string kind;
    double frequency = 0.0;
    unsigned order = 0;
    cplx value{};
    double threshold = 0.0;
    std::optional<TestFunction> phi;
    std::vector<double> points;
    std::vector<cplx> coefficients;
    std::uint64_t trial = 0;
};

struct GroundTruth {
    Truth pd = Truth::unknown;
    /// "fourier" or "quadratic_form".
    std::string source;
    std::string reason;
    std::optional<Evidence> evidence;
};

namespace detail {

/// integral_0^a t^k e^{-i xi t} dt.
inline cplx moment_integral(unsigned k, double xi, double a) {
    const cplx ixi{0.0, xi};
    if (std::abs(xi) * a < static_cast<double>(k) + 1.0) {
        // sum_r (-i xi)^r a^(k+r+1) / (r! (k+r+1))
        cplx acc{};
        cplx term = 1.0;
        for (unsigned r = 0; r < 200; ++r) {
            const cplx add = term * (std::pow(a, k + r + 1) / (k + r + 1));
            acc += add;
            if (std::abs(add) < 1e-18 * std::abs(acc)) {
                break;
            }
            term *= -ixi / static_cast<double>(r + 1);
        }
        return acc;
    }
    const cplx phase = std::exp(-ixi * a);
    cplx j = (1.0 - phase) / ixi;
    for (unsigned m = 1; m <= k; ++m) {
        j = std::pow(a, m) * phase / (-ixi) + (static_cast<double>(m) / ixi) * j;
    }
    return j;
}

/// Fourier transform of t^k g(t) at xi for a non-oscillatory base.
inline cplx monomial_transform(const Base& base, unsigned k, double xi) {
    const double p = base.param();
    switch (base.kind()) {
        case BaseKind::gaussian: {
            const double u = p * xi;
            return std::sqrt(2.0 * kPi) * p * times_i_pow(ipow(-p, k) * hermite_he(k, u), static_cast<int>(k)) *
                   std::exp(-0.5 * u * u);
        }
        case BaseKind::laplace: {
            const double f = std::tgamma(k + 1.0);
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            return f * inv_pow(cplx{p, xi}, k + 1) + sign * f * inv_pow(cplx{p, -xi}, k + 1);
        }
        case BaseKind::indicator: {
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            return moment_integral(k, xi, p) + sign * moment_integral(k, -xi, p);
        }
        case BaseKind::triangle: {
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            return moment_integral(k, xi, p) - moment_integral(k + 1, xi, p) / p +
                   sign * (moment_integral(k, -xi, p) - moment_integral(k + 1, -xi, p) / p);
        }
        default:
            throw UnsupportedAtom("fourier catalog: no closed-form transform for base '" +
                                  std::string(to_string(base.kind())) + "'");
    }
}

struct DiracTerm {
    double location;
    unsigned order;
    cplx coefficient;
};

struct ContinuousTerm {
    Base base;
    std::vector<double> poly;
    cplx weight;
    double shift;
};

struct FourierObject {
    std::vector<DiracTerm> diracs;
    std::vector<ContinuousTerm> densities;
    /// (frequency, derivative order) -> coefficient of delta^{(order)}(xi - frequency).
    std::map<std::pair<double, unsigned>, cplx> singular;
    double singular_scale = 0.0;

    [[nodiscard]] std::pair<cplx, double> density(double xi) const {
        cplx acc{};
        double size = 0.0;
        for (const auto& d : diracs) {
            const cplx v = d.coefficient * ipow(cplx{0.0, xi}, d.order) * std::polar(1.0, -d.location * xi);
            acc += v;
            size += std::abs(v);
        }
        for (const auto& c : densities) {
            for (unsigned k = 0; k < c.poly.size(); ++k) {
                if (c.poly[k] == 0.0) {
                    continue;
                }
                const cplx v = c.weight * c.poly[k] * monomial_transform(c.base, k, xi - c.shift);
                acc += v;
                size += std::abs(v);
            }
        }
        return {acc, size};
    }
};

inline FourierObject fourier_object(const Distribution& f) {
    FourierObject out;
    std::map<std::pair<double, unsigned>, cplx> merged;
    for (const Atom& atom : f.atoms()) {
        if (const auto* d = std::get_if<DiracAtom>(&atom)) {
            // e^{imt} delta_c^{(k)} = sum_j C(k,j) (-im)^{k-j} e^{imc} delta_c^{(j)}
            const cplx phase = std::polar(1.0, d->modulation * d->location);
            for (unsigned j = 0; j <= d->derivative_order; ++j) {
                if (d->modulation == 0.0 && j != d->derivative_order) {
                    continue;
                }
                const cplx c = d->weight * phase * binomial(d->derivative_order, j) *
                               ipow(cplx{0.0, -d->modulation}, d->derivative_order - j);
                merged[{d->location, j}] += c;
            }
            continue;
        }
        const auto& g = std::get<DensityAtom>(atom);
        if (g.base.kind() == BaseKind::bump) {
            throw UnsupportedAtom("fourier catalog: the bump base has no closed-form transform");
        }
        if (g.base.oscillatory()) {
            // t^k e^{ibt} -> 2 pi i^k delta^{(k)}(xi - b)
            for (const ExpTerm& term : g.base.exponential_terms()) {
                for (unsigned k = 0; k < g.poly.size(); ++k) {
                    if (g.poly[k] == 0.0) {
                        continue;
                    }
                    const cplx c = times_i_pow(2.0 * kPi * g.weight * term.coefficient * g.poly[k], static_cast<int>(k));
                    out.singular[{term.frequency + g.modulation, k}] += c;
                    out.singular_scale += std::abs(c);
                }
            }
            continue;
        }
        out.densities.push_back({g.base, g.poly, g.weight, g.modulation});
    }
    for (const auto& [key, c] : merged) {
        if (c != 0.0) {
            out.diracs.push_back({key.first, key.second, c});
        }
    }
    return out;
}

inline bool certified_nonnegative(const FourierObject& obj) {
    for (const auto& c : obj.densities) {
        const bool shape = c.base.kind() == BaseKind::gaussian || c.base.kind() == BaseKind::laplace ||
                           c.base.kind() == BaseKind::triangle;
        bool constant_poly = true;
        for (std::size_t k = 1; k < c.poly.size(); ++k) {
            constant_poly = constant_poly && c.poly[k] == 0.0;
        }
        const cplx w = c.weight * c.poly[0];
        if (!shape || !constant_poly || w.imag() != 0.0 || w.real() < 0.0) {
            return false;
        }
    }
    // Order-zero Dirac group: Hermitian with the central mass dominating.
    cplx center{};
    double others = 0.0;
    for (const auto& d : obj.diracs) {
        if (d.order == 0) {
            if (d.location == 0.0) {
                center += d.coefficient;
                continue;
            }
            others += std::abs(d.coefficient);
            const auto mirror = std::find_if(obj.diracs.begin(), obj.diracs.end(), [&](const DiracTerm& e) {
                return e.order == 0 && e.location == -d.location;
            });
            if (mirror == obj.diracs.end() ||
                std::abs(mirror->coefficient - std::conj(d.coefficient)) > 1e-14 * std::abs(d.coefficient)) {
                return false;
            }
            continue;
        }
        // delta_0^{(2r)} -> (i xi)^{2r} = (-1)^r xi^{2r}
        const cplx lead = times_i_pow(d.coefficient, static_cast<int>(d.order));
        if (d.location != 0.0 || d.order % 2 != 0 || lead.imag() != 0.0 || lead.real() < 0.0) {
            return false;
        }
    }
    return center.imag() == 0.0 && center.real() >= others;
}

/// Scan step and reach in frequency: the transform varies on the scale
/// 1 / (largest time extent) and has decayed by 40 / (smallest time extent).
inline double frequency_step(const Distribution& f, double& reach) {
    double longest = 1.0;
    double shortest = INFINITY;
    double far = 0.0;
    auto extent = [&](double t) {
        longest = std::max(longest, t);
        shortest = std::min(shortest, t);
    };
    for (const Atom& atom : f.atoms()) {
        if (const auto* d = std::get_if<DiracAtom>(&atom)) {
            if (d->location != 0.0) {
                longest = std::max(longest, std::abs(d->location));
            }
            far = std::max(far, std::abs(d->modulation));
            continue;
        }
        const auto& g = std::get<DensityAtom>(atom);
        far = std::max(far, std::abs(g.modulation));
        if (g.base.kind() == BaseKind::laplace) {
            extent(1.0 / g.base.param());
        } else if (!g.base.oscillatory()) {
            extent(g.base.param());
        }
    }
    if (!std::isfinite(shortest)) {
        shortest = 1.0;
    }
    reach = far + 40.0 / shortest;
    return std::min(0.05, 0.02 / longest);
}

}  // namespace detail

inline GroundTruth fourier_truth(const Distribution& f) {
    f.require_nonempty();
    f.validate();
    const detail::FourierObject obj = detail::fourier_object(f);
    GroundTruth out;
    out.source = "fourier";

    const double tiny = 1e-12 * std::max(1.0, obj.singular_scale);
    for (const auto& [key, c] : obj.singular) {
        if (std::abs(c) <= tiny) {
            continue;
        }
        Evidence ev;
        ev.frequency = key.first;
        ev.order = key.second;
        ev.value = c;
        if (key.second > 0) {
            ev.kind = "non_measure";
            out.pd = Truth::no;
            out.reason = "Fourier transform contains a derivative of a point mass (order " +
                         std::to_string(key.second) + "), which is not a measure";
            out.evidence = ev;
            return out;
        }
        if (std::abs(c.imag()) > tiny || c.real() < -tiny) {
            ev.kind = "point_mass";
            out.pd = Truth::no;
            out.reason = "Fourier transform has a negative or non-real point mass";
            out.evidence = ev;
            return out;
        }
    }

    if (!obj.diracs.empty() || !obj.densities.empty()) {
        double reach = 0.0;
        const double h = detail::frequency_step(f, reach);
        const auto steps = static_cast<long>(std::min(20000.0, std::ceil(reach / h)));
        double worst = 0.0;
        std::optional<Evidence> found;
        for (long i = 0; i <= 2 * steps; ++i) {
            // 0, +h, -h, +2h, -2h, ...
            const double step = static_cast<double>((i + 1) / 2) * h;
            const double xi = (i % 2 == 1 || i == 0) ? step : -step;
            const auto [v, size] = obj.density(xi);
            const double theta = 1e-9 * size + 1e-300;
            const double violation = std::max(-v.real() - theta, std::abs(v.imag()) - theta);
            if (violation > worst) {
                worst = violation;
                Evidence ev;
                ev.kind = "frequency";
                ev.frequency = xi;
                ev.value = v;
                ev.threshold = theta;
                found = ev;
            }
        }
        if (found) {
            out.pd = Truth::no;
            out.reason = found->value.imag() != 0.0 && std::abs(found->value.imag()) > found->threshold
                             ? "Fourier density is not real"
                             : "Fourier density is negative";
            out.evidence = found;
            return out;
        }
    }

    if (detail::certified_nonnegative(obj)) {
        out.pd = Truth::yes;
        out.reason = "Fourier transform is a sum of nonnegative densities and point masses";
    } else {
        out.pd = Truth::unknown;
        out.reason = "no negative frequency found, but the transform could not be certified nonnegative";
    }
    return out;
}

/// Seeded random Gaussian-mixture test function: 1-4 components, centers in
/// [-5, 5], widths in [0.3, 2], amplitudes in the unit square; half of them
/// carry a common modulation drawn from [-6, 6].
inline TestFunction random_test_function(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(1, 4);
    std::uniform_real_distribution<double> center(-5.0, 5.0);
    std::uniform_real_distribution<double> width(0.3, 2.0);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const int n = count(rng);
    std::vector<GaussianComponent> comps;
    for (int l = 0; l < n; ++l) {
        const double re = unit(rng);
        const double im = unit(rng);
        const double p = center(rng);
        const double w = width(rng);
        comps.push_back({{re, im}, p, w});
    }
    // Half the probes carry a modulation so |phi^|^2 can sit away from the origin.
    std::bernoulli_distribution modulated(0.5);
    std::uniform_real_distribution<double> frequency(-6.0, 6.0);
    const double m = modulated(rng) ? frequency(rng) : 0.0;
    return TestFunction(std::move(comps), m);
}

/// sum_{j,k} f(x_j - x_k) c_j conj(c_k) and the matching sum of absolute values.
inline std::pair<cplx, double> hermitian_form(const Distribution& f, const std::vector<double>& points,
                                              const std::vector<cplx>& coeffs) {
    if (points.size() != coeffs.size()) {
        throw InvalidArgument("hermitian form: points and coefficients differ in length");
    }
    cplx acc{};
    double size = 0.0;
    for (std::size_t j = 0; j < points.size(); ++j) {
        for (std::size_t k = 0; k < points.size(); ++k) {
            cplx fx{};
            for (const Atom& atom : f.atoms()) {
                const auto* d = std::get_if<DensityAtom>(&atom);
                if (d == nullptr) {
                    throw UnsupportedDistribution("hermitian form: Dirac atoms are not point-evaluable");
                }
                fx += (*d)(points[j] - points[k]);
            }
            const cplx term = fx * coeffs[j] * std::conj(coeffs[k]);
            acc += term;
            size += std::abs(term);
        }
    }
    return {acc, size};
}

inline bool continuous_function(const Distribution& f) {
    return std::all_of(f.atoms().begin(), f.atoms().end(), [](const Atom& a) {
        const auto* d = std::get_if<DensityAtom>(&a);
        return d != nullptr && d->base.continuous();
    });
}

inline GroundTruth quadratic_form_truth(const Distribution& f, std::uint64_t trials, std::uint64_t seed,
                                        const Tolerance& tol = {}, const QuadOptions& opts = {}) {
    f.require_nonempty();
    f.validate();
    GroundTruth out;
    out.source = "quadratic_form";
    const bool pointwise = continuous_function(f);
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng(seed + trial);
        const TestFunction phi = random_test_function(rng);
        const QuadResult r = pair_test_function_result(f, phi, opts);
        const double theta = tol.threshold(r.magnitude);
        if (detail::classify(r.value, theta, r.error) == Status::fail) {
            Evidence ev;
            ev.kind = "test_function";
            ev.value = r.value;
            ev.threshold = theta;
            ev.phi = phi;
            ev.trial = trial;
            out.pd = Truth::no;
            out.reason = "(F, phi * phi^star) is negative or non-real for a seeded test function";
            out.evidence = ev;
            return out;
        }
        if (pointwise) {
            std::uniform_int_distribution<int> count(2, 8);
            std::uniform_real_distribution<double> where(-5.0, 5.0);
            std::uniform_real_distribution<double> unit(-1.0, 1.0);
            const int n = count(rng);
            std::vector<double> xs;
            std::vector<cplx> cs;
            for (int i = 0; i < n; ++i) {
                const double x = where(rng);
                const double re = unit(rng);
                const double im = unit(rng);
                xs.push_back(x);
                cs.emplace_back(re, im);
            }
            const auto [form, size] = hermitian_form(f, xs, cs);
            const double th = tol.threshold(size);
            if (detail::classify(form, th, 0.0) == Status::fail) {
                Evidence ev;
                ev.kind = "point_set";
                ev.value = form;
                ev.threshold = th;
                ev.points = xs;
                ev.coefficients = cs;
                ev.trial = trial;
                out.pd = Truth::no;
                out.reason = "sum f(x_j - x_k) c_j conj(c_k) is negative or non-real for a seeded point set";
                out.evidence = ev;
                return out;
            }
        }
    }
    out.pd = Truth::unknown;
    out.reason = "no refutation in " + std::to_string(trials) + " seeded trials";
    return out;
}

}  // namespace pdcheck
