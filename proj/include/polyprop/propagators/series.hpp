#pragma once

#include <cmath>
#include <string>

#include "polyprop/core/hermitian_operator.hpp"
#include "polyprop/core/state_vector.hpp"
#include "polyprop/propagators/config.hpp"

namespace polyprop {

struct StepResult {
    StateVector psi;
    StepReport report;
};

/// Caller-owned scratch for the three-term recursions. Reusing one
/// workspace across steps avoids per-step allocation; one workspace per
/// thread.
struct Workspace {
    StateVector prev, cur, next, hv;

    void resize(std::size_t dim) {
        if (prev.dim() != dim) {
            prev = StateVector(dim);
            cur = StateVector(dim);
            next = StateVector(dim);
            hv = StateVector(dim);
        }
    }
};

namespace detail {

inline void check_step_inputs(const HermitianOperator& h, const StateVector& psi,
                              const PropagatorConfig& cfg) {
    cfg.validate();
    require_same_dim(h.dim(), psi.dim(), "step");
}

/// |<H>| + 3 sigma_H, a practical energy cutoff for the dt advisors.
inline double energy_cutoff_estimate(const HermitianOperator& h, const StateVector& psi) {
    const StateVector hv = apply(h, psi);
    const double n2 = squared_norm(psi.span());
    if (n2 == 0.0) return 0.0;
    const double mean = inner_product(psi, hv).real() / n2;
    const double second = squared_norm(hv.span()) / n2;
    return std::abs(mean) + 3.0 * std::sqrt(std::max(0.0, second - mean * mean));
}

/// Norm bookkeeping shared by the polynomial steppers: records the drift,
/// rejects steps whose drift exceeds 10 tol, optionally renormalizes.
inline void finish_polynomial_step(StepResult& r, double input_norm, const PropagatorConfig& cfg,
                                   const char* method) {
    if (!r.psi.all_finite()) {
        throw ConvergenceError(std::string(method) + " step produced non-finite amplitudes", {});
    }
    const double out_norm = norm(r.psi);
    r.report.norm_drift = out_norm - input_norm;
    if (std::abs(r.report.norm_drift) > 10.0 * cfg.tol) {
        throw ConvergenceError(std::string(method) + " step drifted in norm by " +
                                   std::to_string(r.report.norm_drift) + " (limit 10*tol)",
                               {});
    }
    if (cfg.renormalize && out_norm > 0.0) r.psi *= cplx{input_norm / out_norm, 0.0};
}

/// Truncation rule for the Hermite and Laguerre series: stop once two
/// consecutive weighted terms fall below tol. A single small term is not
/// enough because H_k and L_k^alpha have zeros (H_odd(0) = 0).
struct TermMonitor {
    double tol;
    int below = 0;
    bool accept(double term_norm) {
        below = term_norm < tol ? below + 1 : 0;
        return below >= 2;
    }
};

}  // namespace detail

}  // namespace polyprop
