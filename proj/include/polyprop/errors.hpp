#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace polyprop {

/// Caller violated a precondition (dimension mismatch, bad argument).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input is numerically degenerate, e.g. normalizing a zero vector.
class DegenerateInputError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An operator broke the Hermitian contract.
class OperatorContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Spectral bound estimation failed to converge.
class EstimationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A series expansion did not reach the requested tolerance within k_max terms,
/// or the step lost unitarity beyond what the tolerance allows.
class ConvergenceError : public std::runtime_error {
public:
    struct Details {
        std::size_t required_terms = 0;      // 0 when unknown
        double suggested_dt = 0.0;           // 0 when no hint is available
        double expansion_radius = 0.0;       // |s| for the Laguerre series
        std::optional<std::size_t> step_index;
    };

    ConvergenceError(const std::string& what, Details details)
        : std::runtime_error(what), details_(details) {}

    const Details& details() const noexcept { return details_; }

    ConvergenceError at_step(std::size_t step) const {
        Details d = details_;
        d.step_index = step;
        return ConvergenceError("step " + std::to_string(step) + ": " + what(), d);
    }

private:
    Details details_;
};

/// Basis truncation leaks too much probability.
class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidDensityMatrixError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// No dominant spectral peak stands out of the noise floor.
class NoPeriodError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense eigensolver did not converge.
class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or invalid run configuration.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, std::string key = {}, std::size_t line = 0)
        : std::runtime_error(format(what, key, line)), key_(std::move(key)), line_(line) {}

    const std::string& key() const noexcept { return key_; }
    std::size_t line() const noexcept { return line_; }

private:
    static std::string format(const std::string& what, const std::string& key, std::size_t line) {
        std::string out = "config error";
        if (!key.empty()) out += " [" + key + "]";
        if (line != 0) out += " (line " + std::to_string(line) + ")";
        return out + ": " + what;
    }

    std::string key_;
    std::size_t line_;
};

}  // namespace polyprop
