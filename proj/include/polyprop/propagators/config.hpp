#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "polyprop/errors.hpp"

namespace polyprop {

enum class Method { chebyshev, hermite, laguerre, rk4, abm4 };

inline std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::chebyshev: return "chebyshev";
        case Method::hermite: return "hermite";
        case Method::laguerre: return "laguerre";
        case Method::rk4: return "rk4";
        case Method::abm4: return "abm4";
    }
    return "unknown";
}

inline std::optional<Method> method_from_string(std::string_view s) noexcept {
    for (Method m : {Method::chebyshev, Method::hermite, Method::laguerre, Method::rk4,
                     Method::abm4}) {
        if (to_string(m) == s) return m;
    }
    return std::nullopt;
}

inline bool is_polynomial(Method m) noexcept {
    return m == Method::chebyshev || m == Method::hermite || m == Method::laguerre;
}

inline constexpr int kMaxSeriesTerms = 200;

/// Time step and series parameters for every stepper.
struct PropagatorConfig {
    Method method = Method::laguerre;
    double dt = 0.036;
    double tol = 1e-6;       // truncation threshold on the weighted term norm
    int k_max = 30;          // hard cap on the series index
    double lambda = 1.0;     // Hermite/Laguerre argument scale
    double alpha = -0.5;     // Laguerre type, > -1
    std::optional<double> E0;  // Chebyshev scale factor
    bool renormalize = false;

    /// Defaults for `m`: lambda = 1/2 for Hermite, lambda = 1 and
    /// alpha = -1/2 for Laguerre, k_max = 30, tol = 1e-6.
    static PropagatorConfig defaults(Method m, double dt) {
        PropagatorConfig cfg;
        cfg.method = m;
        cfg.dt = dt;
        cfg.lambda = (m == Method::hermite) ? 0.5 : 1.0;
        return cfg;
    }

    void validate() const {
        if (!std::isfinite(dt)) throw UsageError("PropagatorConfig: dt must be finite");
        if (!(tol > 0.0)) throw UsageError("PropagatorConfig: tol must be > 0");
        if (k_max < 1 || k_max > kMaxSeriesTerms) {
            throw UsageError("PropagatorConfig: k_max must be in [1, 200]");
        }
        if (!(lambda > 0.0)) throw UsageError("PropagatorConfig: lambda must be > 0");
        if (!(alpha > -1.0)) throw UsageError("PropagatorConfig: alpha must be > -1");
        if (E0 && !(*E0 > 0.0)) throw UsageError("PropagatorConfig: E0 must be > 0");
    }

    bool operator==(const PropagatorConfig&) const = default;
};

/// Cost and accuracy accounting for one step.
struct StepReport {
    int terms_used = 0;         // series terms summed (k = 0 .. terms_used-1)
    long long matvecs = 0;      // applications of H
    double last_term_norm = 0.0;
    double norm_drift = 0.0;    // ||psi'|| - ||psi||
};

/// Totals over many steps.
struct AggregateReport {
    std::size_t steps = 0;
    long long matvecs = 0;
    long long terms = 0;
    int max_terms = 0;
    double max_abs_norm_drift = 0.0;  // largest | ||psi(t)|| - ||psi(0)|| |

    void add(const StepReport& r) {
        ++steps;
        matvecs += r.matvecs;
        terms += r.terms_used;
        max_terms = std::max(max_terms, r.terms_used);
    }
};

}  // namespace polyprop
