#pragma once

// Tempered distributions on the real line as finite sums of catalog atoms:
//
//   DiracAtom    w e^{i m t} delta_c^{(k)}
//   DensityAtom  w e^{i m t} q(t) g(t) dt, g from a closed catalog of bases
//
// plus Gaussian-mixture test functions, whose autocorrelation phi * phi^star
// stays a Gaussian mixture in closed form.

#include <pdcheck/errors.hpp>
#include <pdcheck/numeric.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace pdcheck {

enum class BaseKind { gaussian, laplace, cosine, sine, constant, indicator, triangle, bump };

inline std::string_view to_string(BaseKind kind) {
    switch (kind) {
        case BaseKind::gaussian:
            return "gaussian";
        case BaseKind::laplace:
            return "laplace";
        case BaseKind::cosine:
            return "cosine";
        case BaseKind::sine:
            return "sine";
        case BaseKind::constant:
            return "constant";
        case BaseKind::indicator:
            return "indicator";
        case BaseKind::triangle:
            return "triangle";
        case BaseKind::bump:
            return "bump";
    }
    return "unknown";
}

/// Smooth compactly supported bump exp(-1/(1 - (x/a)^2)) and its first derivatives.
inline double bump_derivative(double x, double a, unsigned order) {
    const double u = x / a;
    if (!(std::abs(u) < 1.0)) {
        return 0.0;
    }
    const double d = 1.0 - u * u;
    if (d < 1.5e-3) {
        return 0.0;
    }
    const double value = std::exp(-1.0 / d);
    // g = -1/d, u-derivatives of exp(g) via g', g'', g'''.
    const double g1 = -2.0 * u / (d * d);
    const double g2 = -2.0 / (d * d) - 8.0 * u * u / (d * d * d);
    const double g3 = -24.0 * u / (d * d * d) - 48.0 * u * u * u / (d * d * d * d);
    double du = 0.0;
    switch (order) {
        case 0:
            return value;
        case 1:
            du = g1;
            break;
        case 2:
            du = g2 + g1 * g1;
            break;
        case 3:
            du = g3 + 3.0 * g1 * g2 + g1 * g1 * g1;
            break;
        default:
            throw UnsupportedOrder("bump derivatives are available up to order 3");
    }
    return du * value / ipow(a, order);
}

/// One exponential term beta * e^{i b t} of a bounded oscillatory base.
struct ExpTerm {
    cplx coefficient;
    double frequency;
};

class Base {
public:
    static Base gaussian(double sigma) { return {BaseKind::gaussian, sigma}; }
    static Base laplace(double lambda) { return {BaseKind::laplace, lambda}; }
    static Base cosine(double b) { return {BaseKind::cosine, b}; }
    static Base sine(double b) { return {BaseKind::sine, b}; }
    static Base constant() { return {BaseKind::constant, 0.0}; }
    static Base indicator(double a) { return {BaseKind::indicator, a}; }
    static Base triangle(double a) { return {BaseKind::triangle, a}; }
    static Base bump(double a) { return {BaseKind::bump, a}; }

    Base() = default;

    [[nodiscard]] BaseKind kind() const { return kind_; }
    /// sigma, lambda, b, or the support half-width a, depending on the kind.
    [[nodiscard]] double param() const { return param_; }

    [[nodiscard]] double operator()(double t) const {
        switch (kind_) {
            case BaseKind::gaussian:
                return std::exp(-0.5 * (t / param_) * (t / param_));
            case BaseKind::laplace:
                return std::exp(-param_ * std::abs(t));
            case BaseKind::cosine:
                return std::cos(param_ * t);
            case BaseKind::sine:
                return std::sin(param_ * t);
            case BaseKind::constant:
                return 1.0;
            case BaseKind::indicator:
                return std::abs(t) <= param_ ? 1.0 : 0.0;
            case BaseKind::triangle:
                return std::max(0.0, 1.0 - std::abs(t) / param_);
            case BaseKind::bump:
                return bump_derivative(t, param_, 0);
        }
        return 0.0;
    }

    /// Exponentially decaying on the real line.
    [[nodiscard]] bool decays() const { return kind_ == BaseKind::gaussian || kind_ == BaseKind::laplace; }

    [[nodiscard]] bool compact() const {
        return kind_ == BaseKind::indicator || kind_ == BaseKind::triangle || kind_ == BaseKind::bump;
    }

    /// Bounded and non-decaying: a finite sum of exponentials e^{i b t}.
    [[nodiscard]] bool oscillatory() const { return !decays() && !compact(); }

    [[nodiscard]] bool even() const { return kind_ != BaseKind::sine; }

    [[nodiscard]] bool continuous() const { return kind_ != BaseKind::indicator; }

    [[nodiscard]] double support_radius() const { return compact() ? param_ : INFINITY; }

    /// Length over which the base decays by a factor e (decaying bases only).
    [[nodiscard]] double decay_length() const {
        if (kind_ == BaseKind::gaussian) {
            return param_;
        }
        if (kind_ == BaseKind::laplace) {
            return 1.0 / param_;
        }
        return INFINITY;
    }

    /// Points where the base is not smooth.
    [[nodiscard]] std::vector<double> kinks() const {
        switch (kind_) {
            case BaseKind::laplace:
                return {0.0};
            case BaseKind::triangle:
                return {-param_, 0.0, param_};
            case BaseKind::indicator:
            case BaseKind::bump:
                return {-param_, param_};
            default:
                return {};
        }
    }

    [[nodiscard]] std::vector<ExpTerm> exponential_terms() const {
        switch (kind_) {
            case BaseKind::constant:
                return {{{1.0, 0.0}, 0.0}};
            case BaseKind::cosine:
                return {{{0.5, 0.0}, param_}, {{0.5, 0.0}, -param_}};
            case BaseKind::sine:
                return {{{0.0, -0.5}, param_}, {{0.0, 0.5}, -param_}};
            default:
                throw InvalidArgument("exponential_terms: base '" + std::string(to_string(kind_)) +
                                      "' is not a sum of exponentials");
        }
    }

    void validate() const {
        if (!std::isfinite(param_)) {
            throw InvalidArgument("base parameter must be finite");
        }
        const bool needs_positive = kind_ != BaseKind::cosine && kind_ != BaseKind::sine &&
                                    kind_ != BaseKind::constant;
        if (needs_positive && !(param_ > 0.0)) {
            throw InvalidArgument("base '" + std::string(to_string(kind_)) + "' needs a strictly positive parameter");
        }
    }

    friend bool operator==(const Base&, const Base&) = default;

private:
    Base(BaseKind kind, double param) : kind_(kind), param_(param) {}

    BaseKind kind_ = BaseKind::constant;
    double param_ = 0.0;
};

inline bool finite(cplx w) { return std::isfinite(w.real()) && std::isfinite(w.imag()); }

/// w e^{i m t} delta_c^{(k)}; pairs as (-1)^k (e^{i m t} psi)^{(k)}(c).
struct DiracAtom {
    double location = 0.0;
    unsigned derivative_order = 0;
    cplx weight{1.0, 0.0};
    double modulation = 0.0;

    void validate() const {
        if (!std::isfinite(location) || !std::isfinite(modulation)) {
            throw InvalidArgument("dirac atom: location and modulation must be finite");
        }
        if (!finite(weight)) {
            throw InvalidArgument("dirac atom: weight must be finite");
        }
    }

    friend bool operator==(const DiracAtom&, const DiracAtom&) = default;
};

/// w e^{i m t} q(t) g(t) with q a real polynomial (coefficients in ascending order).
struct DensityAtom {
    Base base = Base::constant();
    std::vector<double> poly{1.0};
    cplx weight{1.0, 0.0};
    /// p with |q g|(t) <= C (1 + |t|)^p; declared, not inferred.
    unsigned growth_degree = 0;
    double modulation = 0.0;

    [[nodiscard]] unsigned poly_degree() const {
        for (std::size_t k = poly.size(); k-- > 0;) {
            if (poly[k] != 0.0) {
                return static_cast<unsigned>(k);
            }
        }
        return 0;
    }

    [[nodiscard]] cplx operator()(double t) const {
        cplx v = weight * (polyval(poly, t) * base(t));
        if (modulation != 0.0) {
            v *= std::polar(1.0, modulation * t);
        }
        return v;
    }

    void validate() const {
        base.validate();
        if (poly.empty()) {
            throw InvalidArgument("density atom: polynomial prefactor must have at least one coefficient");
        }
        if (!std::all_of(poly.begin(), poly.end(), [](double c) { return std::isfinite(c); })) {
            throw InvalidArgument("density atom: polynomial coefficients must be finite");
        }
        if (!finite(weight) || !std::isfinite(modulation)) {
            throw InvalidArgument("density atom: weight and modulation must be finite");
        }
        if (base.oscillatory() && growth_degree < poly_degree()) {
            throw InvalidArgument("density atom: growth_degree " + std::to_string(growth_degree) +
                                  " is below the polynomial degree " + std::to_string(poly_degree()));
        }
    }

    friend bool operator==(const DensityAtom&, const DensityAtom&) = default;
};

using Atom = std::variant<DiracAtom, DensityAtom>;

inline DiracAtom dirac(double location = 0.0, unsigned order = 0, cplx weight = 1.0) {
    return {location, order, weight, 0.0};
}

/// Density atom with growth_degree defaulted to the polynomial degree.
inline DensityAtom density(Base base, cplx weight = 1.0, std::vector<double> poly = {1.0}) {
    DensityAtom atom{base, std::move(poly), weight, 0, 0.0};
    atom.growth_degree = atom.poly_degree();
    return atom;
}

class Distribution {
public:
    Distribution() = default;
    Distribution(std::initializer_list<Atom> atoms) : atoms_(atoms) { validate(); }
    explicit Distribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) { validate(); }

    [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }
    [[nodiscard]] bool empty() const { return atoms_.empty(); }
    [[nodiscard]] std::size_t size() const { return atoms_.size(); }

    void add(Atom atom) {
        std::visit([](const auto& a) { a.validate(); }, atom);
        atoms_.push_back(std::move(atom));
    }

    [[nodiscard]] Distribution scaled(cplx factor) const {
        Distribution out = *this;
        for (auto& atom : out.atoms_) {
            std::visit([&](auto& a) { a.weight *= factor; }, atom);
        }
        return out;
    }

    /// e^{i b t} F, folded into each atom's modulation.
    [[nodiscard]] Distribution modulated(double b) const {
        Distribution out = *this;
        for (auto& atom : out.atoms_) {
            std::visit([&](auto& a) { a.modulation += b; }, atom);
        }
        return out;
    }

    [[nodiscard]] bool has_dirac() const {
        return std::any_of(atoms_.begin(), atoms_.end(),
                           [](const Atom& a) { return std::holds_alternative<DiracAtom>(a); });
    }

    void validate() const {
        for (const auto& atom : atoms_) {
            std::visit([](const auto& a) { a.validate(); }, atom);
        }
    }

    void require_nonempty() const {
        if (atoms_.empty()) {
            throw InvalidArgument("distribution has no atoms");
        }
    }

    friend Distribution operator+(Distribution lhs, const Distribution& rhs) {
        lhs.atoms_.insert(lhs.atoms_.end(), rhs.atoms_.begin(), rhs.atoms_.end());
        return lhs;
    }

    friend Distribution operator-(const Distribution& f) { return f.scaled(-1.0); }

    friend bool operator==(const Distribution&, const Distribution&) = default;

private:
    std::vector<Atom> atoms_;
};

/// Certified upper bound on the S'-order: delta^{(k)} -> k, density of growth p -> p + 2.
inline unsigned order_bound(const DiracAtom& atom) { return atom.derivative_order; }
inline unsigned order_bound(const DensityAtom& atom) { return atom.growth_degree + 2; }

inline unsigned order_bound(const Distribution& f) {
    unsigned m = 0;
    for (const auto& atom : f.atoms()) {
        m = std::max(m, std::visit([](const auto& a) { return order_bound(a); }, atom));
    }
    return m;
}

struct GaussianComponent {
    cplx amplitude;
    double center;
    double width;

    friend bool operator==(const GaussianComponent&, const GaussianComponent&) = default;
};

/// phi(x) = e^{i m x} sum_l c_l exp(-(x - p_l)^2 / (2 w_l^2)); m is shared by all components.
class GaussianMixture {
public:
    GaussianMixture() = default;
    explicit GaussianMixture(std::vector<GaussianComponent> components, double modulation = 0.0)
        : components_(std::move(components)), modulation_(modulation) {
        if (components_.empty()) {
            throw InvalidArgument("gaussian mixture needs at least one component");
        }
        if (!std::isfinite(modulation_)) {
            throw InvalidArgument("gaussian mixture: modulation must be finite");
        }
        for (const auto& c : components_) {
            if (!(c.width > 0.0) || !std::isfinite(c.width) || !std::isfinite(c.center) || !finite(c.amplitude)) {
                throw InvalidArgument("gaussian mixture: widths must be positive and all fields finite");
            }
        }
    }

    [[nodiscard]] const std::vector<GaussianComponent>& components() const { return components_; }
    [[nodiscard]] double modulation() const { return modulation_; }

    [[nodiscard]] cplx operator()(double x) const { return std::polar(1.0, modulation_ * x) * envelope_derivative(0, x); }

    /// k-th derivative of the unmodulated sum.
    [[nodiscard]] cplx envelope_derivative(unsigned k, double x) const {
        cplx acc{};
        for (const auto& c : components_) {
            const double u = (x - c.center) / c.width;
            acc += c.amplitude * (ipow(-1.0 / c.width, k) * hermite_he(k, u) * std::exp(-0.5 * u * u));
        }
        return acc;
    }

    /// sum_l |c_l| |d^k/dx^k g_l(x)|, the scale of envelope_derivative(k, x).
    [[nodiscard]] double envelope_derivative_magnitude(unsigned k, double x) const {
        double acc = 0.0;
        for (const auto& c : components_) {
            const double u = (x - c.center) / c.width;
            acc += std::abs(c.amplitude) * std::abs(ipow(1.0 / c.width, k) * hermite_he(k, u)) *
                   std::exp(-0.5 * u * u);
        }
        return acc;
    }

    /// phi^star(x) = conj(phi(-x)).
    [[nodiscard]] GaussianMixture star() const {
        std::vector<GaussianComponent> out;
        out.reserve(components_.size());
        for (const auto& c : components_) {
            out.push_back({std::conj(c.amplitude), -c.center, c.width});
        }
        return GaussianMixture(std::move(out), modulation_);
    }

    /// Closed-form convolution, using g_{p,w} * g_{q,v} = sqrt(2 pi) w v / W g_{p+q,W}, W^2 = w^2 + v^2.
    /// A common modulation factors out of the convolution.
    [[nodiscard]] GaussianMixture convolve(const GaussianMixture& other) const {
        if (modulation_ != other.modulation_) {
            throw InvalidArgument("gaussian mixture: convolution needs equal modulations");
        }
        std::vector<GaussianComponent> out;
        out.reserve(components_.size() * other.components_.size());
        for (const auto& a : components_) {
            for (const auto& b : other.components_) {
                const double w = std::hypot(a.width, b.width);
                const double gain = std::sqrt(2.0 * kPi) * a.width * b.width / w;
                out.push_back({a.amplitude * b.amplitude * gain, a.center + b.center, w});
            }
        }
        return GaussianMixture(std::move(out), modulation_);
    }

    /// phi * phi^star.
    [[nodiscard]] GaussianMixture autocorrelation() const { return convolve(star()); }

    [[nodiscard]] double min_width() const {
        double w = INFINITY;
        for (const auto& c : components_) {
            w = std::min(w, c.width);
        }
        return w;
    }

    /// Radius outside which every component is below e^{-sigmas^2/2} of its peak.
    [[nodiscard]] double radius(double sigmas) const {
        double r = 0.0;
        for (const auto& c : components_) {
            r = std::max(r, std::abs(c.center) + sigmas * c.width);
        }
        return r;
    }

    friend bool operator==(const GaussianMixture&, const GaussianMixture&) = default;

private:
    std::vector<GaussianComponent> components_;
    double modulation_ = 0.0;
};

using TestFunction = GaussianMixture;

}  // namespace pdcheck
