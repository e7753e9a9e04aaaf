#pragma once

#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "polyprop/double_well/double_well.hpp"
#include "polyprop/harness/config.hpp"
#include "polyprop/propagators/evolve.hpp"
#include "polyprop/spin_bath/spin_bath.hpp"

namespace polyprop::harness {

inline constexpr const char* kVersion = "0.1.0";

/// Operator, initial state and observables for one experiment.
struct Model {
    std::shared_ptr<const HermitianOperator> hamiltonian;
    StateVector psi0;
    Probe probe;  // last two columns are always norm and energy
    std::string primary_column;  // observable used by the benchmark
    std::vector<std::string> metadata;
};

inline Model build_model(const RunConfig& cfg) {
    Model model;
    switch (cfg.experiment) {
        case Experiment::spin_bath: {
            const auto params = spin_bath::make_params(cfg.spin_bath.J, cfg.spin_bath.N,
                                                       cfg.spin_bath.A_max, cfg.seed);
            auto h = std::make_shared<spin_bath::SpinBathHamiltonian>(params);
            model.psi0 = spin_bath::initial_state(params);
            model.probe.columns = {"s1z", "entropy", "norm", "energy"};
            model.probe.measure = [h](const StateVector& psi) {
                return std::vector<double>{
                    spin_bath::s1z_expectation(psi),
                    spin_bath::von_neumann_entropy(spin_bath::reduced_density_matrix(psi)),
                    norm(psi), expectation(*h, psi)};
            };
            model.primary_column = "s1z";
            model.hamiltonian = h;
            break;
        }
        case Experiment::double_well:
        case Experiment::bender: {
            double_well::DoubleWellParams p;
            double shift = 0.0;
            if (cfg.experiment == Experiment::double_well) {
                const auto& d = cfg.double_well;
                p = {d.omega, d.lambda, d.n_basis, d.m, d.basis_omega};
            } else {
                const auto b = double_well::bender_case(cfg.bender.beta, cfg.bender.omega, cfg.bender.n_basis);
                p = b.params;
                p.m = cfg.bender.m;
                shift = b.shift;
                model.metadata.push_back("dropped constant energy offset = " +
                                         detail::fmt_real(b.energy_offset));
            }
            auto h = std::make_shared<DenseHermitian>(double_well::build_double_well_matrix(p));
            const auto init = double_well::displaced_eigenstate_coeffs(p);
            model.psi0 = init.psi;
            model.metadata.push_back("x0 = " + detail::fmt_real(p.x0()));
            model.metadata.push_back("initial truncation leakage = " + detail::fmt_real(init.leakage));
            const double nu = p.nu();
            const bool bender = cfg.experiment == Experiment::bender;
            model.probe.columns = {bender ? "q_mean" : "x_mean", "sigma", "norm", "energy"};
            model.probe.measure = [h, nu, shift](const StateVector& psi) {
                const auto pos = double_well::position_observables(psi, nu);
                return std::vector<double>{pos.x_mean + shift, pos.sigma, norm(psi), expectation(*h, psi)};
            };
            model.primary_column = model.probe.columns.front();
            model.hamiltonian = h;
            break;
        }
    }
    return model;
}

inline std::string fmt_csv(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

/// '#'-prefixed metadata block: version, seed, extra lines, config echo.
inline void write_csv_preamble(std::ostream& out, const RunConfig& cfg,
                               const std::vector<std::string>& extra) {
    out << "# polyprop " << kVersion << "\n";
    out << "# seed = " << cfg.seed << "\n";
    for (const auto& line : extra) out << "# " << line << "\n";
    std::istringstream echo(serialize(cfg));
    std::string line;
    while (std::getline(echo, line)) out << "# " << line << "\n";
}

inline void write_csv_header(std::ostream& out, const std::vector<std::string>& columns) {
    out << "t";
    for (const auto& c : columns) out << "," << c;
    out << "\n";
}

inline void write_csv_row(std::ostream& out, double t, const std::vector<double>& values) {
    out << fmt_csv(t);
    for (double v : values) out << "," << fmt_csv(v);
    out << "\n";
}

inline void write_csv(std::ostream& out, const TimeSeries& series) {
    write_csv_header(out, series.columns());
    for (const auto& row : series.rows()) write_csv_row(out, row.t, row.values);
}

struct RunResult {
    TimeSeries series;
    AggregateReport report;
    PropagatorConfig resolved;
};

/// Builds the model, evolves it, records every record_every steps (and the
/// last step) and, when output_path is set, streams the rows to a CSV file.
/// A convergence failure leaves the rows written so far plus a
/// "# FAILED: ..." footer, then rethrows.
inline RunResult run_experiment(const RunConfig& cfg) {
    Model model = build_model(cfg);
    std::ofstream file;
    if (!cfg.output_path.empty()) {
        file.open(cfg.output_path, std::ios::out | std::ios::trunc);
        if (!file) throw UsageError("run_experiment: cannot open '" + cfg.output_path + "'");
        write_csv_preamble(file, cfg, model.metadata);
        write_csv_header(file, model.probe.columns);
    }

    RunResult result{TimeSeries(model.probe.columns), {}, cfg.propagator};
    auto record = [&](double t, const StateVector& psi) {
        auto values = model.probe.measure(psi);
        if (file.is_open()) write_csv_row(file, t, values);
        result.series.append(t, std::move(values));
    };
    record(0.0, model.psi0);

    std::size_t step_count = 0;
    EvolveOptions opts;
    opts.observer = [&](double t, const StateVector& psi) {
        ++step_count;
        if (step_count % cfg.record_every == 0 || step_count == cfg.n_steps) record(t, psi);
    };

    try {
        EvolveResult ev = evolve(*model.hamiltonian, model.psi0, cfg.propagator, cfg.n_steps, Probe{}, opts);
        result.report = ev.report;
        result.resolved = ev.resolved;
    } catch (const std::exception& e) {
        if (file.is_open()) {
            file << "# FAILED: " << e.what() << "\n";
            file.flush();
        }
        throw;
    }
    return result;
}

}  // namespace polyprop::harness
