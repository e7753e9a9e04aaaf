#pragma once

#include <cmath>
#include <numbers>

#include "polyprop/errors.hpp"

namespace polyprop {

// Both advisors take the energy cutoff E_m explicitly; callers decide how
// many multiples of the state's energy to allow.

/// Largest dt for which the k-th Hermite term stays below 2^{-(k-1)/2}:
/// sqrt(k/e) * lambda * exp(-lambda^2 E_m^2 / (2k)).
inline double suggest_dt_hermite(double e_max, int k, double lambda) {
    if (!std::isfinite(e_max) || !(e_max >= 0.0)) {
        throw UsageError("suggest_dt_hermite: E_m must be finite and >= 0");
    }
    if (k < 1) throw UsageError("suggest_dt_hermite: k must be >= 1");
    if (!std::isfinite(lambda) || !(lambda > 0.0)) {
        throw UsageError("suggest_dt_hermite: lambda must be finite and > 0");
    }
    const double kk = static_cast<double>(k);
    return std::sqrt(kk / std::numbers::e) * lambda *
           std::exp(-lambda * lambda * e_max * e_max / (2.0 * kk));
}

/// Laguerre step bound [exp((E_m + ln 2)/k) - 1]^{-1/2}.
inline double suggest_dt_laguerre(double e_max, int k) {
    if (!std::isfinite(e_max) || !(e_max >= 0.0)) {
        throw UsageError("suggest_dt_laguerre: E_m must be finite and >= 0");
    }
    if (k < 1) throw UsageError("suggest_dt_laguerre: k must be >= 1");
    return 1.0 / std::sqrt(std::expm1((e_max + std::numbers::ln2) / static_cast<double>(k)));
}

}  // namespace polyprop
