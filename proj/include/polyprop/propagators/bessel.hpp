#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "polyprop/errors.hpp"

namespace polyprop {

/// J_0(tau) ... J_{k_max}(tau) by Miller's downward recurrence.
///
/// The recurrence J_{k-1} = (2k/tau) J_k - J_{k+1} is started well above
/// max(k_max, |tau|) from an arbitrary seed and normalized with
/// J_0 + 2 sum_{k>=1} J_{2k} = 1. Upward recurrence is unstable for k > tau.
inline std::vector<double> bessel_j_sequence(double tau, int k_max) {
    if (!std::isfinite(tau)) throw UsageError("bessel_j_sequence: tau must be finite");
    if (k_max < 0) throw UsageError("bessel_j_sequence: k_max must be >= 0");
    if (std::abs(tau) >= 1e4) throw UsageError("bessel_j_sequence: |tau| must be < 1e4");

    const auto count = static_cast<std::size_t>(k_max) + 1;
    std::vector<double> out(count, 0.0);
    if (tau == 0.0) {
        out[0] = 1.0;
        return out;
    }

    const double x = std::abs(tau);
    const double top = std::max(static_cast<double>(k_max), x);
    int start = static_cast<int>(top + 20.0 + std::sqrt(60.0 * top));
    start += start % 2;  // even, so the normalization sum sees J_start

    constexpr double kRescaleAbove = 1e250;
    std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
    j[static_cast<std::size_t>(start) + 1] = 0.0;
    j[static_cast<std::size_t>(start)] = 1e-300;
    for (int k = start; k >= 1; --k) {
        const auto uk = static_cast<std::size_t>(k);
        j[uk - 1] = (2.0 * k / x) * j[uk] - j[uk + 1];
        if (std::abs(j[uk - 1]) > kRescaleAbove) {
            for (std::size_t i = uk - 1; i < j.size(); ++i) j[i] /= kRescaleAbove;
        }
    }

    double sum = j[0];
    for (std::size_t k = 2; k < j.size(); k += 2) sum += 2.0 * j[k];

    for (std::size_t k = 0; k < count; ++k) {
        double v = j[k] / sum;
        if (tau < 0.0 && (k % 2 == 1)) v = -v;
        out[k] = v;
    }
    return out;
}

}  // namespace polyprop
