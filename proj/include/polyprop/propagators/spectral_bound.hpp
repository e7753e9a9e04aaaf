#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "polyprop/core/contract.hpp"
#include "polyprop/core/hermitian_operator.hpp"

namespace polyprop {

struct PowerIterationOptions {
    int max_iterations = 5000;
    double rel_tolerance = 1e-10;
    double safety_factor = 1.1;
    std::uint64_t seed = 0x5eed;
};

/// 2 * safety * sqrt(mu), mu the dominant eigenvalue of H^2 by power
/// iteration from a seeded random start.
inline double power_iteration_bound(const HermitianOperator& h, PowerIterationOptions opt = {}) {
    const std::size_t n = h.dim();
    std::mt19937_64 rng(opt.seed);
    StateVector v = random_state(n, rng);
    StateVector hv(n);
    StateVector h2v(n);

    double mu = 0.0;
    for (int it = 0; it < opt.max_iterations; ++it) {
        h.apply(v.span(), hv.span());
        h.apply(hv.span(), h2v.span());
        const double next = inner_product(v, h2v).real();  // Rayleigh quotient of H^2
        const double len = norm(h2v);
        if (len == 0.0) return 0.0;  // H v = 0 on a random start: H vanishes
        v = h2v;
        v *= cplx{1.0 / len, 0.0};
        if (it > 0 && std::abs(next - mu) <= opt.rel_tolerance * std::abs(next)) {
            return 2.0 * opt.safety_factor * std::sqrt(std::max(next, 0.0));
        }
        mu = next;
    }
    throw EstimationError("power_iteration_bound: no convergence after " +
                          std::to_string(opt.max_iterations) + " iterations");
}

/// A value E0 >= 2 max|E| over the spectrum of h. Tries, in order, the
/// model's analytic bound, a Gershgorin bound on an explicit matrix, and
/// power iteration on H^2.
inline double estimate_spectral_bound(const HermitianOperator& h,
                                      PowerIterationOptions opt = {}) {
    if (auto b = h.analytic_spectral_bound()) return *b;
    if (auto b = h.gershgorin_bound()) return *b;
    return power_iteration_bound(h, opt);
}

}  // namespace polyprop
