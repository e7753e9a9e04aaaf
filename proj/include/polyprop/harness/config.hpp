#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polyprop/errors.hpp"
#include "polyprop/propagators/config.hpp"

namespace polyprop::harness {

// Line-oriented config:
//
//   # comment
//   [experiment]
//   type = spin_bath          # spin_bath | double_well | bender
//   n_steps = 900
//   seed = 42
//   [propagator]
//   method = laguerre         # chebyshev | hermite | laguerre | rk4 | abm4
//   dt = 0.036
//   tol = 1e-6
//   k_max = 30
//   lambda = 1                # default 1/2 for hermite, 1 otherwise
//   alpha = -0.5
//   E0 = 60                   # optional, chebyshev only
//   renormalize = false
//   [model]
//   J = 16                    # spin_bath: J, N, A_max
//   N = 12                    # double_well: omega, lambda, n_basis, m, basis_omega
//   A_max = 0.5               # bender: beta, omega, n_basis, m
//   [output]
//   path = run.csv
//   record_every = 1

enum class Experiment { spin_bath, double_well, bender };

inline std::string_view to_string(Experiment e) noexcept {
    switch (e) {
        case Experiment::spin_bath: return "spin_bath";
        case Experiment::double_well: return "double_well";
        case Experiment::bender: return "bender";
    }
    return "unknown";
}

struct SpinBathModel {
    double J = 16.0;
    int N = 0;
    double A_max = 0.5;
    bool operator==(const SpinBathModel&) const = default;
};

struct DoubleWellModel {
    double omega = 1.0;
    double lambda = 0.0013;
    int n_basis = 50;
    int m = 0;
    std::optional<double> basis_omega;
    bool operator==(const DoubleWellModel&) const = default;
};

struct BenderModel {
    double beta = 2.5;
    std::optional<double> omega;  // defaults to 2
    int n_basis = 32;
    int m = 0;
    bool operator==(const BenderModel&) const = default;
};

struct RunConfig {
    Experiment experiment = Experiment::spin_bath;
    SpinBathModel spin_bath;
    DoubleWellModel double_well;
    BenderModel bender;
    PropagatorConfig propagator;
    std::size_t n_steps = 900;
    std::string output_path;
    std::size_t record_every = 1;
    std::uint64_t seed = 0;

    bool operator==(const RunConfig&) const = default;
};

namespace detail {

struct Entry {
    std::string value;
    std::size_t line = 0;  // 0: command line
};

using EntryMap = std::map<std::string, Entry>;  // "section.key" -> value

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline EntryMap read_entries(std::string_view text) {
    EntryMap entries;
    std::string section;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header", {}, line_no);
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            static const std::set<std::string> known{"experiment", "propagator", "model", "output"};
            if (!known.contains(section)) throw ConfigError("unknown section", section, line_no);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value", {}, line_no);
        if (section.empty()) throw ConfigError("key outside of any section", {}, line_no);
        const std::string key = section + "." + trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (value.empty()) throw ConfigError("empty value", key, line_no);
        if (entries.contains(key)) throw ConfigError("duplicate key", key, line_no);
        entries[key] = {value, line_no};
    }
    return entries;
}

class Reader {
public:
    explicit Reader(EntryMap entries) : entries_(std::move(entries)) {}

    bool has(const std::string& key) const { return entries_.contains(key); }

    std::optional<std::string> text(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        used_.insert(key);
        return it->second.value;
    }

    std::optional<double> real(const std::string& key) {
        auto v = text(key);
        if (!v) return std::nullopt;
        std::size_t pos = 0;
        double out = 0.0;
        try {
            out = std::stod(*v, &pos);
        } catch (...) {
            pos = 0;
        }
        if (pos != v->size()) throw ConfigError("expected a real number, got '" + *v + "'", key, line(key));
        return out;
    }

    std::optional<long long> integer(const std::string& key) {
        auto v = text(key);
        if (!v) return std::nullopt;
        std::size_t pos = 0;
        long long out = 0;
        try {
            out = std::stoll(*v, &pos);
        } catch (...) {
            pos = 0;
        }
        if (pos != v->size()) throw ConfigError("expected an integer, got '" + *v + "'", key, line(key));
        return out;
    }

    std::optional<bool> boolean(const std::string& key) {
        auto v = text(key);
        if (!v) return std::nullopt;
        if (*v == "true" || *v == "1") return true;
        if (*v == "false" || *v == "0") return false;
        throw ConfigError("expected true or false, got '" + *v + "'", key, line(key));
    }

    std::size_t line(const std::string& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? 0 : it->second.line;
    }

    void reject_unused() const {
        for (const auto& [key, entry] : entries_) {
            if (!used_.contains(key)) throw ConfigError("unknown key", key, entry.line);
        }
    }

private:
    EntryMap entries_;
    std::set<std::string> used_;
};

inline void require(bool ok, const std::string& what, const std::string& key, Reader& r) {
    if (!ok) throw ConfigError(what, key, r.line(key));
}

/// Shortest text that parses back to exactly v.
inline std::string fmt_real(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace detail

/// Parses and validates a run configuration. `overrides` are
/// "section.key=value" strings that replace or add file entries.
inline RunConfig parse_config(std::string_view text, const std::vector<std::string>& overrides = {}) {
    detail::EntryMap entries = detail::read_entries(text);
    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos || o.find('.') > eq) {
            throw ConfigError("override must look like section.key=value: '" + o + "'");
        }
        const std::string key = detail::trim(std::string_view(o).substr(0, eq));
        const std::string value = detail::trim(std::string_view(o).substr(eq + 1));
        static const std::set<std::string> known{"experiment", "propagator", "model", "output"};
        if (!known.contains(key.substr(0, key.find('.')))) throw ConfigError("unknown section", key);
        entries[key] = {value, 0};
    }

    std::vector<std::string> missing;
    for (const char* k : {"experiment.type", "propagator.method", "propagator.dt"}) {
        if (!entries.contains(k)) missing.emplace_back(k);
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
        throw ConfigError("missing required keys: " + list);
    }

    detail::Reader r(std::move(entries));
    RunConfig cfg;

    const std::string type = *r.text("experiment.type");
    if (type == "spin_bath") cfg.experiment = Experiment::spin_bath;
    else if (type == "double_well") cfg.experiment = Experiment::double_well;
    else if (type == "bender") cfg.experiment = Experiment::bender;
    else throw ConfigError("unknown experiment type '" + type + "'", "experiment.type", r.line("experiment.type"));

    if (auto v = r.integer("experiment.n_steps")) {
        detail::require(*v >= 0, "n_steps must be >= 0", "experiment.n_steps", r);
        cfg.n_steps = static_cast<std::size_t>(*v);
    }
    if (auto v = r.integer("experiment.seed")) {
        detail::require(*v >= 0, "seed must be >= 0", "experiment.seed", r);
        cfg.seed = static_cast<std::uint64_t>(*v);
    }

    const std::string method = *r.text("propagator.method");
    const auto m = method_from_string(method);
    if (!m) throw ConfigError("unknown method '" + method + "'", "propagator.method", r.line("propagator.method"));
    cfg.propagator = PropagatorConfig::defaults(*m, *r.real("propagator.dt"));
    auto& p = cfg.propagator;
    detail::require(p.dt > 0.0, "dt must be > 0", "propagator.dt", r);
    if (auto v = r.real("propagator.tol")) p.tol = *v;
    detail::require(p.tol > 0.0, "tol must be > 0", "propagator.tol", r);
    if (auto v = r.integer("propagator.k_max")) {
        detail::require(*v >= 1 && *v <= kMaxSeriesTerms, "k_max must be in [1, 200]", "propagator.k_max", r);
        p.k_max = static_cast<int>(*v);
    }
    if (auto v = r.real("propagator.lambda")) p.lambda = *v;
    detail::require(p.lambda > 0.0, "lambda must be > 0", "propagator.lambda", r);
    if (auto v = r.real("propagator.alpha")) p.alpha = *v;
    detail::require(p.alpha > -1.0, "alpha must be > -1", "propagator.alpha", r);
    if (auto v = r.real("propagator.E0")) {
        detail::require(*v > 0.0, "E0 must be > 0", "propagator.E0", r);
        p.E0 = *v;
    }
    if (auto v = r.boolean("propagator.renormalize")) p.renormalize = *v;

    switch (cfg.experiment) {
        case Experiment::spin_bath: {
            auto& s = cfg.spin_bath;
            for (const char* k : {"model.J", "model.N"}) {
                detail::require(r.has(k), "missing required key for spin_bath", k, r);
            }
            s.J = *r.real("model.J");
            const auto n = *r.integer("model.N");
            detail::require(n >= 0 && n <= 24, "N must be in [0, 24]", "model.N", r);
            s.N = static_cast<int>(n);
            if (auto v = r.real("model.A_max")) s.A_max = *v;
            detail::require(s.A_max > 0.0, "A_max must be > 0", "model.A_max", r);
            break;
        }
        case Experiment::double_well: {
            auto& d = cfg.double_well;
            for (const char* k : {"model.omega", "model.lambda"}) {
                detail::require(r.has(k), "missing required key for double_well", k, r);
            }
            d.omega = *r.real("model.omega");
            detail::require(d.omega > 0.0, "omega must be > 0", "model.omega", r);
            d.lambda = *r.real("model.lambda");
            detail::require(d.lambda > 0.0, "lambda must be > 0", "model.lambda", r);
            if (auto v = r.integer("model.n_basis")) d.n_basis = static_cast<int>(*v);
            detail::require(d.n_basis >= 2 && d.n_basis <= 4096, "n_basis must be in [2, 4096]", "model.n_basis", r);
            if (auto v = r.integer("model.m")) d.m = static_cast<int>(*v);
            detail::require(d.m >= 0 && d.m < d.n_basis, "m must be in [0, n_basis)", "model.m", r);
            if (auto v = r.real("model.basis_omega")) {
                detail::require(*v > 0.0, "basis_omega must be > 0", "model.basis_omega", r);
                d.basis_omega = *v;
            }
            break;
        }
        case Experiment::bender: {
            auto& b = cfg.bender;
            detail::require(r.has("model.beta"), "missing required key for bender", "model.beta", r);
            b.beta = *r.real("model.beta");
            detail::require(b.beta > 0.0, "beta must be > 0", "model.beta", r);
            if (auto v = r.real("model.omega")) {
                detail::require(*v > 0.0, "omega must be > 0", "model.omega", r);
                b.omega = *v;
            }
            if (auto v = r.integer("model.n_basis")) b.n_basis = static_cast<int>(*v);
            detail::require(b.n_basis >= 2 && b.n_basis <= 4096, "n_basis must be in [2, 4096]", "model.n_basis", r);
            if (auto v = r.integer("model.m")) b.m = static_cast<int>(*v);
            detail::require(b.m >= 0 && b.m < b.n_basis, "m must be in [0, n_basis)", "model.m", r);
            break;
        }
    }

    if (auto v = r.text("output.path")) cfg.output_path = *v;
    if (auto v = r.integer("output.record_every")) {
        detail::require(*v >= 1, "record_every must be >= 1", "output.record_every", r);
        cfg.record_every = static_cast<std::size_t>(*v);
    }

    r.reject_unused();
    return cfg;
}

/// Writes every field explicitly; parse_config(serialize(c)) == c.
inline std::string serialize(const RunConfig& cfg) {
    using detail::fmt_real;
    std::ostringstream o;
    o << "[experiment]\n"
      << "type = " << to_string(cfg.experiment) << "\n"
      << "n_steps = " << cfg.n_steps << "\n"
      << "seed = " << cfg.seed << "\n";
    const auto& p = cfg.propagator;
    o << "[propagator]\n"
      << "method = " << to_string(p.method) << "\n"
      << "dt = " << fmt_real(p.dt) << "\n"
      << "tol = " << fmt_real(p.tol) << "\n"
      << "k_max = " << p.k_max << "\n"
      << "lambda = " << fmt_real(p.lambda) << "\n"
      << "alpha = " << fmt_real(p.alpha) << "\n";
    if (p.E0) o << "E0 = " << fmt_real(*p.E0) << "\n";
    o << "renormalize = " << (p.renormalize ? "true" : "false") << "\n";
    o << "[model]\n";
    switch (cfg.experiment) {
        case Experiment::spin_bath:
            o << "J = " << fmt_real(cfg.spin_bath.J) << "\n"
              << "N = " << cfg.spin_bath.N << "\n"
              << "A_max = " << fmt_real(cfg.spin_bath.A_max) << "\n";
            break;
        case Experiment::double_well:
            o << "omega = " << fmt_real(cfg.double_well.omega) << "\n"
              << "lambda = " << fmt_real(cfg.double_well.lambda) << "\n"
              << "n_basis = " << cfg.double_well.n_basis << "\n"
              << "m = " << cfg.double_well.m << "\n";
            if (cfg.double_well.basis_omega) o << "basis_omega = " << fmt_real(*cfg.double_well.basis_omega) << "\n";
            break;
        case Experiment::bender:
            o << "beta = " << fmt_real(cfg.bender.beta) << "\n";
            if (cfg.bender.omega) o << "omega = " << fmt_real(*cfg.bender.omega) << "\n";
            o << "n_basis = " << cfg.bender.n_basis << "\n"
              << "m = " << cfg.bender.m << "\n";
            break;
    }
    o << "[output]\n";
    if (!cfg.output_path.empty()) o << "path = " << cfg.output_path << "\n";
    o << "record_every = " << cfg.record_every << "\n";
    return o.str();
}

}  // namespace polyprop::harness
