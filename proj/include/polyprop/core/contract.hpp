#pragma once

#include <algorithm>
#include <cstdint>
#include <random>

#include "polyprop/core/hermitian_operator.hpp"

namespace polyprop {

/// Gaussian random complex vector, normalized.
inline StateVector random_state(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    StateVector v(dim);
    for (auto& a : v) a = {gauss(rng), gauss(rng)};
    return normalize(std::move(v));
}

struct ContractReport {
    double linearity_error = 0.0;    // relative
    double hermiticity_error = 0.0;  // relative
};

/// Probes linearity and Hermiticity of `h` on `trials` random vector pairs.
inline ContractReport check_operator_contract(const HermitianOperator& h, int trials,
                                              std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ContractReport report;
    const std::size_t n = h.dim();
    for (int t = 0; t < trials; ++t) {
        const StateVector x = random_state(n, rng);
        const StateVector y = random_state(n, rng);
        const cplx a{gauss(rng), gauss(rng)};
        const cplx b{gauss(rng), gauss(rng)};

        StateVector combo(n);
        for (std::size_t i = 0; i < n; ++i) combo[i] = a * x[i] + b * y[i];
        const StateVector hx = apply(h, x);
        const StateVector hy = apply(h, y);
        const StateVector hcombo = apply(h, combo);
        StateVector expected(n);
        for (std::size_t i = 0; i < n; ++i) expected[i] = a * hx[i] + b * hy[i];
        const double scale = std::max(1.0, norm(expected));
        report.linearity_error =
            std::max(report.linearity_error, distance(hcombo, expected) / scale);

        const cplx xhy = inner_product(x, hy);
        const cplx yhx = inner_product(y, hx);
        const double hscale = std::max({1.0, std::abs(xhy), std::abs(yhx)});
        report.hermiticity_error =
            std::max(report.hermiticity_error, std::abs(xhy - std::conj(yhx)) / hscale);
    }
    return report;
}

}  // namespace polyprop
