#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "polyprop/propagators/bessel.hpp"
#include "polyprop/propagators/series.hpp"

namespace polyprop {

namespace detail {

inline double chebyshev_coefficient_magnitude(const std::vector<double>& j, std::size_t k) {
    return (k == 0 ? 1.0 : 2.0) * std::abs(j[k]);
}

/// Smallest k > |tau| with 2|J_k(tau)| < tol, or 0 if none below 200.
inline std::size_t chebyshev_required_terms(double tau, double tol) {
    const auto j = bessel_j_sequence(tau, kMaxSeriesTerms);
    for (std::size_t k = 1; k < j.size(); ++k) {
        if (static_cast<double>(k) > std::abs(tau) && chebyshev_coefficient_magnitude(j, k) < tol) {
            return k;
        }
    }
    return 0;
}

/// Largest dt (bisection on tau) for which the series closes within k_max.
inline double chebyshev_suggest_dt(double e0, int k_max, double tol, double dt) {
    auto fits = [&](double tau) {
        const auto req = chebyshev_required_terms(tau, tol);
        return req != 0 && req <= static_cast<std::size_t>(k_max);
    };
    double lo = 0.0, hi = std::abs(e0 * dt / 2.0);
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (fits(mid) ? lo : hi) = mid;
    }
    return 2.0 * lo / e0;
}

inline double resolve_e0(const HermitianOperator& h, const PropagatorConfig& cfg) {
    if (cfg.E0) return *cfg.E0;
    if (auto b = h.analytic_spectral_bound()) return *b;
    if (auto b = h.gershgorin_bound()) return *b;
    throw UsageError(
        "chebyshev_step: E0 is not set and the operator offers no spectral bound; "
        "call estimate_spectral_bound() and set PropagatorConfig::E0");
}

}  // namespace detail

/// psi' = sum_k a_k (-i)^k J_k(tau) T_k(2H/E0) psi with tau = E0 dt / 2.
///
/// The series stops at the first k > |tau| whose coefficient falls below
/// tol. One matvec per recursion level; the k = 0 term is free.
inline StepResult chebyshev_step(const HermitianOperator& h, const StateVector& psi,
                                 const PropagatorConfig& cfg, Workspace& ws) {
    detail::check_step_inputs(h, psi, cfg);
    const double input_norm = norm(psi);
    if (cfg.dt == 0.0) return {psi, {1, 0, input_norm, 0.0}};

    double e0 = detail::resolve_e0(h, cfg);
    if (e0 <= 0.0) {
        // Only the zero operator has a zero bound.
        return {psi, {1, 0, input_norm, 0.0}};
    }
    const double tau = e0 * cfg.dt / 2.0;
    const double scale = 2.0 / e0;
    const auto j = bessel_j_sequence(tau, cfg.k_max);

    const std::size_t n = psi.dim();
    ws.resize(n);
    StepResult r{StateVector(n), {}};
    r.psi = psi;  // c_0 = J_0(tau)
    r.psi *= cplx{j[0], 0.0};
    r.report.terms_used = 1;
    r.report.last_term_norm = std::abs(j[0]) * input_norm;

    const double growth_limit = (1.0 + 1e-9) * input_norm;
    const cplx minus_i{0.0, -1.0};
    cplx phase{1.0, 0.0};
    bool closed = false;

    for (int k = 1; k <= cfg.k_max; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        phase *= minus_i;
        const double mag = detail::chebyshev_coefficient_magnitude(j, uk);
        if (static_cast<double>(k) > std::abs(tau) && mag < cfg.tol) {
            closed = true;
            break;
        }

        // T_1 = H~ psi, T_{k+1} = 2 H~ T_k - T_{k-1}; ws.cur holds T_k after this block.
        if (k == 1) {
            ws.prev = psi;
            h.apply(psi.span(), ws.cur.span());
            ws.cur *= cplx{scale, 0.0};
        } else {
            h.apply(ws.cur.span(), ws.hv.span());
            for (std::size_t i = 0; i < n; ++i) {
                ws.next[i] = 2.0 * scale * ws.hv[i] - ws.prev[i];
            }
            std::swap(ws.prev, ws.cur);
            std::swap(ws.cur, ws.next);
        }
        ++r.report.matvecs;

        const double tk_norm = norm(ws.cur);
        if (tk_norm > growth_limit) {
            throw UsageError("chebyshev_step: |T_" + std::to_string(k) +
                             "(H~) psi| exceeds |psi|; E0 = " + std::to_string(e0) +
                             " does not bound the spectrum");
        }
        const cplx c = (k == 0 ? 1.0 : 2.0) * j[uk] * phase;
        axpy(c, ws.cur.span(), r.psi.span());
        r.report.terms_used = k + 1;
        r.report.last_term_norm = mag * tk_norm;
    }

    if (!closed) {
        ConvergenceError::Details d;
        d.required_terms = detail::chebyshev_required_terms(tau, cfg.tol);
        d.suggested_dt = detail::chebyshev_suggest_dt(e0, cfg.k_max, cfg.tol, cfg.dt);
        throw ConvergenceError("chebyshev_step: |c_k_max| >= tol at tau = " + std::to_string(tau) +
                                   "; needs k = " + std::to_string(d.required_terms) +
                                   ", or dt <= " + std::to_string(d.suggested_dt),
                               d);
    }
    detail::finish_polynomial_step(r, input_norm, cfg, "chebyshev");
    return r;
}

inline StepResult chebyshev_step(const HermitianOperator& h, const StateVector& psi,
                                 const PropagatorConfig& cfg) {
    Workspace ws;
    return chebyshev_step(h, psi, cfg, ws);
}

}  // namespace polyprop
