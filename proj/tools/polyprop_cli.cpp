// polyprop command-line driver.
//
//   polyprop run --config run.cfg [--set section.key=value ...] [-o out.csv]
//   polyprop bench --config run.cfg [--methods laguerre,rk4] [--dt rk4=0.0036] [--horizon T]
//   polyprop identity-check
//   polyprop advise-dt --E-m 24 -k 30 --lambda 0.5
//
// Exit codes: 0 success, 1 other failure, 2 configuration or usage error,
// 3 convergence failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "polyprop/polyprop.hpp"

using namespace polyprop;
using namespace polyprop::harness;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), overrides);
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides,
            const std::string& output) {
    RunConfig cfg = load_config(config_path, overrides);
    if (!output.empty()) cfg.output_path = output;
    if (!cfg.output_path.empty()) {
        const auto res = run_experiment(cfg);
        std::fprintf(stderr, "%zu steps, %lld matvecs, max norm drift %.3e -> %s\n", res.report.steps,
                     res.report.matvecs, res.report.max_abs_norm_drift, cfg.output_path.c_str());
        return kExitOk;
    }

    // No file: stream rows to stdout as they are produced.
    const Model model = build_model(cfg);
    write_csv_preamble(std::cout, cfg, model.metadata);
    write_csv_header(std::cout, model.probe.columns);
    write_csv_row(std::cout, 0.0, model.probe.measure(model.psi0));
    std::size_t count = 0;
    EvolveOptions opts;
    opts.observer = [&](double t, const StateVector& psi) {
        ++count;
        if (count % cfg.record_every == 0 || count == cfg.n_steps) write_csv_row(std::cout, t, model.probe.measure(psi));
    };
    try {
        evolve(*model.hamiltonian, model.psi0, cfg.propagator, cfg.n_steps, Probe{}, opts);
    } catch (const std::exception& e) {
        std::cout << "# FAILED: " << e.what() << "\n";
        std::cout.flush();
        throw;
    }
    return kExitOk;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

int cmd_bench(const std::string& config_path, const std::vector<std::string>& overrides,
              const std::string& methods_arg, const std::vector<std::string>& dt_args, double horizon,
              const std::string& csv_path) {
    const RunConfig cfg = load_config(config_path, overrides);
    std::vector<Method> methods;
    for (const auto& name : split_list(methods_arg)) {
        const auto m = method_from_string(name);
        if (!m) throw ConfigError("unknown method '" + name + "'", "--methods");
        methods.push_back(*m);
    }

    // Polynomial methods default to the config dt, the reference
    // integrators to a tenth of it.
    std::map<Method, double> dt_map;
    for (Method m : methods) dt_map[m] = is_polynomial(m) ? cfg.propagator.dt : cfg.propagator.dt / 10.0;
    for (const auto& arg : dt_args) {
        const auto eq = arg.find('=');
        const auto m = eq == std::string::npos ? std::nullopt : method_from_string(arg.substr(0, eq));
        if (!m) throw ConfigError("--dt expects method=value, got '" + arg + "'", "--dt");
        try {
            dt_map[*m] = std::stod(arg.substr(eq + 1));
        } catch (const std::exception&) {
            throw ConfigError("--dt expects method=value, got '" + arg + "'", "--dt");
        }
    }
    if (horizon <= 0.0) horizon = static_cast<double>(cfg.n_steps) * cfg.propagator.dt;

    const auto result = benchmark_compare(cfg, methods, dt_map, horizon);
    std::cout << format_table(result);
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw UsageError("cannot open '" + csv_path + "'");
        write_benchmark_csv(out, result);
    }
    return kExitOk;
}

int cmd_identity_check() {
    // L_k^{-1/2}(x^2) = (-1)^k / (2^{2k} k!) H_{2k}(x)
    double worst = 0.0;
    std::printf("%3s %6s %24s %24s %10s\n", "k", "x", "laguerre", "hermite form", "rel_err");
    for (int k = 0; k <= 10; ++k) {
        for (double x : {0.5, 1.0, 2.0}) {
            const double lhs = laguerre_scalar(k, -0.5, x * x);
            const double rhs = (k % 2 ? -1.0 : 1.0) / (std::ldexp(1.0, 2 * k) * std::tgamma(k + 1.0)) *
                               hermite_scalar(2 * k, x);
            const double rel = std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
            worst = std::max(worst, rel);
            std::printf("%3d %6.2f %24.16e %24.16e %10.2e\n", k, x, lhs, rhs, rel);
        }
    }
    const bool ok = worst <= 1e-9;
    std::printf("max relative error %.3e: %s\n", worst, ok ? "ok" : "FAILED");
    return ok ? kExitOk : kExitFailure;
}

int cmd_advise_dt(double e_m, int k, double lambda) {
    if (!(e_m >= 0.0) || k < 1 || !(lambda > 0.0)) throw UsageError("advise-dt needs E_m >= 0, k >= 1, lambda > 0");
    std::printf("hermite  dt <= %.6g  (E_m = %g, k = %d, lambda = %g)\n", suggest_dt_hermite(e_m, k, lambda), e_m, k,
                lambda);
    std::printf("laguerre dt <= %.6g  (E_m = %g, k = %d)\n", suggest_dt_laguerre(e_m, k), e_m, k);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polynomial-expansion propagators for the time-dependent Schroedinger equation"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string config_path, output, methods = "laguerre,rk4", csv_path;
    std::vector<std::string> overrides, dt_args;
    double horizon = 0.0, e_m = 0.0, lambda = 0.5;
    int k = 30;

    auto* run = app.add_subcommand("run", "Run one experiment and write its time series as CSV");
    run->add_option("--config", config_path, "Config file")->required();
    run->add_option("--set", overrides, "Override, section.key=value (repeatable)");
    run->add_option("-o,--output", output, "Output CSV (default: output.path, else stdout)");

    auto* bench = app.add_subcommand("bench", "Compare matvecs and wall time across methods");
    bench->add_option("--config", config_path, "Config file providing the model")->required();
    bench->add_option("--set", overrides, "Override, section.key=value (repeatable)");
    bench->add_option("--methods", methods, "Comma-separated methods")->capture_default_str();
    bench->add_option("--dt", dt_args, "Per-method step, method=value (repeatable)");
    bench->add_option("--horizon", horizon, "Physical horizon (default n_steps * dt)");
    bench->add_option("--csv", csv_path, "Also write the table as CSV");

    auto* identity = app.add_subcommand("identity-check", "Check the Laguerre-Hermite polynomial identity");

    auto* advise = app.add_subcommand("advise-dt", "Print the Hermite and Laguerre step-size bounds");
    advise->add_option("--E-m", e_m, "Energy scale E_m")->required();
    advise->add_option("-k,--terms", k, "Series terms")->capture_default_str();
    advise->add_option("--lambda", lambda, "Hermite scale lambda")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) return cmd_run(config_path, overrides, output);
        if (*bench) return cmd_bench(config_path, overrides, methods, dt_args, horizon, csv_path);
        if (*identity) return cmd_identity_check();
        if (*advise) return cmd_advise_dt(e_m, k, lambda);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitConfig;
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitConfig;
    } catch (const ConvergenceError& e) {
        std::fprintf(stderr, "convergence failure: %s\n", e.what());
        if (e.details().required_terms > 0) std::fprintf(stderr, "  required terms: %zu\n", e.details().required_terms);
        if (e.details().suggested_dt > 0.0) std::fprintf(stderr, "  suggested dt: %.6g\n", e.details().suggested_dt);
        return kExitConvergence;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFailure;
    }
    return kExitFailure;
}
