#pragma once

// Named fixture distributions with known positive-definiteness status.

#include <pdcheck/distribution.hpp>

#include <string>
#include <vector>

namespace pdcheck {

struct Fixture {
    std::string name;
    Distribution f;
    bool pd = false;
};

inline Distribution modulated_gaussian(double b, double sigma) {
    return Distribution{density(Base::gaussian(sigma))}.modulated(b);
}

inline std::vector<Fixture> pd_fixtures() {
    return {
        {"dirac", Distribution{dirac()}, true},
        {"gaussian", Distribution{density(Base::gaussian(1.0))}, true},
        {"laplace", Distribution{density(Base::laplace(1.0))}, true},
        {"cosine", Distribution{density(Base::cosine(1.0))}, true},
        {"triangle", Distribution{density(Base::triangle(1.0))}, true},
        {"dirac_comb", Distribution{dirac(0.0, 0, 2.0), dirac(1.0), dirac(-1.0)}, true},
        {"modulated_gaussian", modulated_gaussian(3.0, 1.0), true},
    };
}

inline std::vector<Fixture> non_pd_fixtures() {
    return {
        {"neg_dirac", Distribution{dirac(0.0, 0, -1.0)}, false},
        {"sine", Distribution{density(Base::sine(1.0))}, false},
        {"indicator", Distribution{density(Base::indicator(1.0))}, false},
        {"t_squared", Distribution{density(Base::constant(), 1.0, {0.0, 0.0, 1.0})}, false},
        {"t_gaussian", Distribution{density(Base::gaussian(1.0), 1.0, {0.0, 1.0})}, false},
        {"dirac_prime", Distribution{dirac(0.0, 1)}, false},
    };
}

inline std::vector<Fixture> all_fixtures() {
    auto out = pd_fixtures();
    for (auto& f : non_pd_fixtures()) {
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace pdcheck
