#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "polyprop/propagators/chebyshev.hpp"
#include "polyprop/propagators/hermite.hpp"
#include "polyprop/propagators/laguerre.hpp"
#include "polyprop/propagators/reference.hpp"
#include "polyprop/propagators/spectral_bound.hpp"
#include "polyprop/time_series.hpp"

namespace polyprop {

/// Named observables measured on the state at recorded times.
struct Probe {
    std::vector<std::string> columns;
    std::function<std::vector<double>(const StateVector&)> measure;
};

inline Probe norm_probe() {
    return {{"norm"}, [](const StateVector& v) { return std::vector<double>{norm(v)}; }};
}

using StepObserver = std::function<void(double t, const StateVector& psi)>;

struct EvolveOptions {
    std::size_t record_every = 1;
    StepObserver observer;  // called after every step
};

struct EvolveResult {
    StateVector final_state;
    TimeSeries series;
    AggregateReport report;
    PropagatorConfig resolved;  // with E0 filled in for Chebyshev
};

/// One step of any configured method. ABM4 is multistep and goes through
/// evolve() or AbmHistory instead.
inline StepResult step(const HermitianOperator& h, const StateVector& psi,
                       const PropagatorConfig& cfg, Workspace& ws) {
    switch (cfg.method) {
        case Method::chebyshev: return chebyshev_step(h, psi, cfg, ws);
        case Method::hermite: return hermite_step(h, psi, cfg, ws);
        case Method::laguerre: return laguerre_step(h, psi, cfg, ws);
        case Method::rk4: return rk4_step(h, psi, cfg.dt);
        case Method::abm4: break;
    }
    throw UsageError("step: abm4 needs derivative history; use evolve() or AbmHistory");
}

inline StepResult step(const HermitianOperator& h, const StateVector& psi, const PropagatorConfig& cfg) {
    Workspace ws;
    return step(h, psi, cfg, ws);
}

/// Applies the configured stepper n_steps times from psi0 (which must be
/// normalized), recording probe values at t = 0 and every record_every
/// steps (and always at the final step). Times are step * dt, not a running
/// sum. Convergence errors are rethrown tagged with the failing step.
inline EvolveResult evolve(const HermitianOperator& h, const StateVector& psi0,
                           PropagatorConfig cfg, std::size_t n_steps, const Probe& probe = norm_probe(),
                           const EvolveOptions& opts = {}) {
    cfg.validate();
    detail::require_same_dim(h.dim(), psi0.dim(), "evolve");
    if (!(cfg.dt > 0.0)) throw UsageError("evolve: dt must be > 0");
    if (opts.record_every == 0) throw UsageError("evolve: record_every must be >= 1");
    const double n0 = norm(psi0);
    if (std::abs(n0 - 1.0) > 1e-10) throw UsageError("evolve: initial state is not normalized");

    if (cfg.method == Method::chebyshev && !cfg.E0) cfg.E0 = estimate_spectral_bound(h);

    EvolveResult res{psi0, TimeSeries(probe.columns), {}, cfg};
    auto record = [&](double t, const StateVector& psi) {
        if (probe.measure) res.series.append(t, probe.measure(psi));
    };
    record(0.0, psi0);

    Workspace ws;
    std::optional<AbmHistory> abm;
    if (cfg.method == Method::abm4) abm.emplace(h, psi0, cfg.dt);

    StateVector psi = psi0;
    for (std::size_t s = 1; s <= n_steps; ++s) {
        StepResult r;
        try {
            r = abm ? abm4_step(h, *abm) : step(h, psi, cfg, ws);
        } catch (const ConvergenceError& e) {
            throw e.at_step(s);
        }
        psi = std::move(r.psi);
        res.report.add(r.report);
        res.report.max_abs_norm_drift =
            std::max(res.report.max_abs_norm_drift, std::abs(norm(psi) - 1.0));
        const double t = static_cast<double>(s) * cfg.dt;
        if (opts.observer) opts.observer(t, psi);
        if (s % opts.record_every == 0 || s == n_steps) record(t, psi);
    }
    res.final_state = std::move(psi);
    return res;
}

}  // namespace polyprop
