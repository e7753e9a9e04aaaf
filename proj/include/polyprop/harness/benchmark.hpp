#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "polyprop/harness/run.hpp"

namespace polyprop::harness {

struct BenchmarkLeg {
    std::string label;
    Method method = Method::laguerre;
    double dt = 0.0;
    std::size_t steps = 0;
    long long matvecs = 0;
    double wall_seconds = 0.0;
    double max_norm_drift = 0.0;
    double max_deviation = 0.0;  // vs the reference run on the common grid
};

struct BenchmarkResult {
    std::string observable;
    double horizon = 0.0;
    double grid_dt = 0.0;
    BenchmarkLeg reference;
    std::vector<BenchmarkLeg> legs;

    const BenchmarkLeg& leg(Method m) const {
        for (const auto& l : legs)
            if (l.method == m) return l;
        throw UsageError("BenchmarkResult: no leg for method " + std::string(to_string(m)));
    }
};

namespace detail {

inline std::size_t steps_for(double horizon, double dt, const char* what) {
    const double ratio = horizon / dt;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(rounded * dt - horizon) > 1e-9 * std::max(1.0, horizon)) {
        throw UsageError(std::string("benchmark_compare: mismatched horizons: dt = ") +
                         fmt_real(dt) + " does not divide horizon " + fmt_real(horizon) + " (" + what + ")");
    }
    return static_cast<std::size_t>(rounded);
}

inline BenchmarkLeg run_leg(const Model& model, const PropagatorConfig& cfg, double horizon,
                            double grid_dt, std::vector<double>& samples) {
    BenchmarkLeg leg;
    leg.label = std::string(to_string(cfg.method));
    leg.method = cfg.method;
    leg.dt = cfg.dt;
    leg.steps = steps_for(horizon, cfg.dt, leg.label.c_str());
    const std::size_t stride = steps_for(grid_dt, cfg.dt, "grid");

    const std::size_t col = [&] {
        for (std::size_t i = 0; i < model.probe.columns.size(); ++i)
            if (model.probe.columns[i] == model.primary_column) return i;
        return std::size_t{0};
    }();
    samples.clear();
    samples.push_back(model.probe.measure(model.psi0)[col]);
    std::size_t count = 0;
    EvolveOptions opts;
    opts.observer = [&](double, const StateVector& psi) {
        if (++count % stride == 0) samples.push_back(model.probe.measure(psi)[col]);
    };

    const auto start = std::chrono::steady_clock::now();
    const EvolveResult ev = evolve(*model.hamiltonian, model.psi0, cfg, leg.steps, Probe{}, opts);
    leg.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    leg.matvecs = ev.report.matvecs;
    leg.max_norm_drift = ev.report.max_abs_norm_drift;
    return leg;
}

}  // namespace detail

/// Propagates the base configuration's model with each method to the same
/// horizon and compares cost and accuracy. The primary observable is
/// sampled on a common grid (the largest dt) and compared against a tight
/// Chebyshev reference run (tol 1e-13). Matvec counts come from the
/// steppers' reports. Probe evaluation is inside the timed region for every
/// leg alike.
inline BenchmarkResult benchmark_compare(const RunConfig& base, const std::vector<Method>& methods,
                                         const std::map<Method, double>& dt_map, double horizon) {
    if (methods.empty()) throw UsageError("benchmark_compare: no methods given");
    if (!(horizon > 0.0)) throw UsageError("benchmark_compare: horizon must be > 0");
    double grid_dt = 0.0;
    for (Method m : methods) {
        const auto it = dt_map.find(m);
        if (it == dt_map.end()) {
            throw UsageError("benchmark_compare: no dt for method " + std::string(to_string(m)));
        }
        detail::steps_for(horizon, it->second, std::string(to_string(m)).c_str());
        grid_dt = std::max(grid_dt, it->second);
    }

    RunConfig cfg = base;
    const Model model = build_model(cfg);
    BenchmarkResult result;
    result.observable = model.primary_column;
    result.horizon = horizon;
    result.grid_dt = grid_dt;

    // Reference: Chebyshev with tol 1e-13, sub-stepped so tau stays <= 20.
    PropagatorConfig ref = PropagatorConfig::defaults(Method::chebyshev, grid_dt);
    ref.tol = 1e-13;
    ref.k_max = kMaxSeriesTerms;
    ref.E0 = estimate_spectral_bound(*model.hamiltonian);
    const double tau = *ref.E0 * grid_dt / 2.0;
    ref.dt = grid_dt / std::max(1.0, std::ceil(tau / 20.0));
    std::vector<double> ref_samples;
    result.reference = detail::run_leg(model, ref, horizon, grid_dt, ref_samples);
    result.reference.label = "reference";

    for (Method m : methods) {
        PropagatorConfig pc = base.propagator;
        if (pc.method != m) {
            pc = PropagatorConfig::defaults(m, dt_map.at(m));
            pc.tol = base.propagator.tol;
            pc.k_max = base.propagator.k_max;
        }
        pc.dt = dt_map.at(m);
        std::vector<double> samples;
        BenchmarkLeg leg = detail::run_leg(model, pc, horizon, grid_dt, samples);
        for (std::size_t i = 0; i < samples.size() && i < ref_samples.size(); ++i) {
            leg.max_deviation = std::max(leg.max_deviation, std::abs(samples[i] - ref_samples[i]));
        }
        result.legs.push_back(leg);
    }
    return result;
}

inline std::string format_table(const BenchmarkResult& r) {
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "horizon %.6g, observable %s, grid dt %.6g\n", r.horizon,
                  r.observable.c_str(), r.grid_dt);
    out += buf;
    std::snprintf(buf, sizeof buf, "%-10s %10s %8s %10s %10s %12s %12s\n", "method", "dt", "steps",
                  "matvecs", "wall_s", "norm_drift", "max_dev");
    out += buf;
    auto row = [&](const BenchmarkLeg& l) {
        std::snprintf(buf, sizeof buf, "%-10s %10.6g %8zu %10lld %10.4f %12.3e %12.3e\n", l.label.c_str(),
                      l.dt, l.steps, l.matvecs, l.wall_seconds, l.max_norm_drift, l.max_deviation);
        out += buf;
    };
    for (const auto& l : r.legs) row(l);
    row(r.reference);
    return out;
}

inline void write_benchmark_csv(std::ostream& out, const BenchmarkResult& r) {
    out << "method,dt,steps,matvecs,wall_seconds,max_norm_drift,max_deviation\n";
    auto row = [&](const BenchmarkLeg& l) {
        out << l.label << "," << fmt_csv(l.dt) << "," << l.steps << "," << l.matvecs << ","
            << fmt_csv(l.wall_seconds) << "," << fmt_csv(l.max_norm_drift) << ","
            << fmt_csv(l.max_deviation) << "\n";
    };
    for (const auto& l : r.legs) row(l);
    row(r.reference);
}

}  // namespace polyprop::harness
