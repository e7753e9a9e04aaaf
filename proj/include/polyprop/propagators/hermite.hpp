#pragma once

#include <cmath>
#include <string>

#include "polyprop/propagators/series.hpp"
#include "polyprop/propagators/step_advisor.hpp"

namespace polyprop {

/// psi' = exp(-r^2) sum_k (-i)^k r^k / k! H_k(lambda H) psi, r = dt / (2 lambda).
///
/// Runs the recursion on the scaled terms chi_k = r^k/k! H_k(lambda H) psi,
///   chi_{k+1} = (dt H chi_k - 2 r^2 chi_{k-1}) / (k+1),
/// which stays O(1) where the bare polynomials would overflow.
inline StepResult hermite_step(const HermitianOperator& h, const StateVector& psi,
                               const PropagatorConfig& cfg, Workspace& ws) {
    detail::check_step_inputs(h, psi, cfg);
    const double input_norm = norm(psi);
    if (cfg.dt == 0.0) return {psi, {1, 0, input_norm, 0.0}};

    const double dt = cfg.dt;
    const double r = dt / (2.0 * cfg.lambda);
    const double r2 = r * r;
    const double prefactor = std::exp(-r2);
    const std::size_t n = psi.dim();
    ws.resize(n);

    StepResult out{psi, {}};
    out.psi *= cplx{prefactor, 0.0};
    out.report.terms_used = 1;
    out.report.last_term_norm = prefactor * input_norm;

    detail::TermMonitor monitor{cfg.tol};
    monitor.accept(out.report.last_term_norm);
    const cplx minus_i{0.0, -1.0};
    cplx phase{1.0, 0.0};
    bool closed = false;

    ws.prev = psi;  // chi_0
    for (int k = 1; k <= cfg.k_max; ++k) {
        // ws.prev = chi_{k-2}, ws.cur = chi_{k-1} on entry (for k >= 2).
        if (k == 1) {
            h.apply(psi.span(), ws.cur.span());
            ws.cur *= cplx{dt, 0.0};
        } else {
            h.apply(ws.cur.span(), ws.hv.span());
            const double inv = 1.0 / k;
            for (std::size_t i = 0; i < n; ++i) {
                ws.next[i] = (dt * ws.hv[i] - 2.0 * r2 * ws.prev[i]) * inv;
            }
            std::swap(ws.prev, ws.cur);
            std::swap(ws.cur, ws.next);
        }
        ++out.report.matvecs;
        phase *= minus_i;
        axpy(prefactor * phase, ws.cur.span(), out.psi.span());
        out.report.terms_used = k + 1;
        out.report.last_term_norm = prefactor * norm(ws.cur);
        if (monitor.accept(out.report.last_term_norm)) {
            closed = true;
            break;
        }
    }

    if (!closed) {
        ConvergenceError::Details d;
        const double e_m = detail::energy_cutoff_estimate(h, psi);
        d.suggested_dt = suggest_dt_hermite(e_m, cfg.k_max, cfg.lambda);
        throw ConvergenceError("hermite_step: terms still above tol at k_max = " +
                                   std::to_string(cfg.k_max) + " (last term norm " +
                                   std::to_string(out.report.last_term_norm) +
                                   "); recursion unstable, try dt <= " +
                                   std::to_string(d.suggested_dt),
                               d);
    }
    detail::finish_polynomial_step(out, input_norm, cfg, "hermite");
    return out;
}

inline StepResult hermite_step(const HermitianOperator& h, const StateVector& psi,
                               const PropagatorConfig& cfg) {
    Workspace ws;
    return hermite_step(h, psi, cfg, ws);
}

}  // namespace polyprop
