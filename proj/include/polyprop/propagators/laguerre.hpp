#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "polyprop/propagators/series.hpp"
#include "polyprop/propagators/step_advisor.hpp"

namespace polyprop {

/// psi' = (lambda / (lambda + i dt))^{alpha+1} sum_k s^k L_k^alpha(lambda H) psi,
/// s = i dt / (lambda + i dt). The power uses the principal branch.
///
/// Recursion on chi_k = s^k L_k^alpha(lambda H) psi:
///   chi_1     = s (alpha + 1 - lambda H) psi
///   chi_{k+1} = s/(k+1) (2k + alpha + 1 - lambda H) chi_k - s^2 (k + alpha)/(k+1) chi_{k-1}
inline StepResult laguerre_step(const HermitianOperator& h, const StateVector& psi,
                                const PropagatorConfig& cfg, Workspace& ws) {
    detail::check_step_inputs(h, psi, cfg);
    const double input_norm = norm(psi);
    if (cfg.dt == 0.0) return {psi, {1, 0, input_norm, 0.0}};

    const double lambda = cfg.lambda;
    const double alpha = cfg.alpha;
    const cplx denom{lambda, cfg.dt};
    const cplx s = cplx{0.0, cfg.dt} / denom;
    const cplx s2 = s * s;
    const cplx prefactor = std::pow(cplx{lambda, 0.0} / denom, alpha + 1.0);
    const double pref_abs = std::abs(prefactor);
    const std::size_t n = psi.dim();
    ws.resize(n);

    StepResult out{psi, {}};
    out.psi *= prefactor;
    out.report.terms_used = 1;
    out.report.last_term_norm = pref_abs * input_norm;

    detail::TermMonitor monitor{cfg.tol};
    monitor.accept(out.report.last_term_norm);
    bool closed = false;

    ws.prev = psi;  // chi_0
    for (int k = 1; k <= cfg.k_max; ++k) {
        if (k == 1) {
            h.apply(psi.span(), ws.hv.span());
            for (std::size_t i = 0; i < n; ++i) {
                ws.cur[i] = s * ((alpha + 1.0) * psi[i] - lambda * ws.hv[i]);
            }
        } else {
            // ws.prev = chi_{k-2}, ws.cur = chi_{k-1}; m = k - 1.
            const double m = k - 1.0;
            h.apply(ws.cur.span(), ws.hv.span());
            const cplx a = s / static_cast<double>(k);
            const cplx b = s2 * ((m + alpha) / static_cast<double>(k));
            const double diag = 2.0 * m + alpha + 1.0;
            for (std::size_t i = 0; i < n; ++i) {
                ws.next[i] = a * (diag * ws.cur[i] - lambda * ws.hv[i]) - b * ws.prev[i];
            }
            std::swap(ws.prev, ws.cur);
            std::swap(ws.cur, ws.next);
        }
        ++out.report.matvecs;
        axpy(prefactor, ws.cur.span(), out.psi.span());
        out.report.terms_used = k + 1;
        out.report.last_term_norm = pref_abs * norm(ws.cur);
        if (monitor.accept(out.report.last_term_norm)) {
            closed = true;
            break;
        }
    }

    if (!closed) {
        ConvergenceError::Details d;
        const double e_m = detail::energy_cutoff_estimate(h, psi);
        d.suggested_dt = suggest_dt_laguerre(lambda * e_m, cfg.k_max) * lambda;
        d.expansion_radius = std::abs(s);
        throw ConvergenceError("laguerre_step: terms still above tol at k_max = " +
                                   std::to_string(cfg.k_max) + " with |s| = " +
                                   std::to_string(d.expansion_radius) + "; try dt <= " +
                                   std::to_string(d.suggested_dt),
                               d);
    }
    detail::finish_polynomial_step(out, input_norm, cfg, "laguerre");
    return out;
}

inline StepResult laguerre_step(const HermitianOperator& h, const StateVector& psi,
                                const PropagatorConfig& cfg) {
    Workspace ws;
    return laguerre_step(h, psi, cfg, ws);
}

}  // namespace polyprop
