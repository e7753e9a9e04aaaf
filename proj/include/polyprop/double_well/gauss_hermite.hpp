#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "polyprop/errors.hpp"

namespace polyprop::double_well {

/// Nodes and log-weights of the order-n Gauss-Hermite rule for
/// int exp(-y^2) f(y) dy. Weights are returned as logarithms so that the
/// caller can fold them into other exponentials.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> log_weights;
};

inline constexpr int kMaxGaussHermiteOrder = 560;

namespace detail {

/// Number of eigenvalues below x of the order-n Hermite Jacobi matrix
/// (zero diagonal, off-diagonal sqrt(k/2)), by Sturm sequence.
inline int hermite_eigs_below(int n, double x) {
    int count = 0;
    double q = x;
    for (int k = 0; k < n; ++k) {
        if (k > 0) q = x - (0.5 * k) / q;
        if (q == 0.0) q = 1e-300;
        if (q > 0.0) ++count;  // q is minus the LDL pivot of (J - x)
    }
    return count;
}

/// Hermite function h_n(z) = p_n(z) exp(-z^2/2) and sqrt(2n) h_{n-1}(z).
inline std::pair<double, double> hermite_function_and_slope(int n, double z) {
    double p1 = std::exp(-0.5 * z * z) / std::pow(std::numbers::pi, 0.25), p2 = 0.0;
    for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
    }
    return {p1, std::sqrt(2.0 * n) * p2};
}

}  // namespace detail

/// Nodes by Sturm bisection on the Jacobi matrix, polished by Newton steps
/// that are only accepted inside the bisection bracket. Values are carried
/// as Hermite functions so the recurrence stays bounded at the outer nodes.
/// Above order 560 exp(-z^2) at the outermost node nears the double
/// underflow limit, so larger orders are rejected.
inline GaussHermiteRule gauss_hermite(int n) {
    if (n < 1 || n > kMaxGaussHermiteOrder) {
        throw UsageError("gauss_hermite: order must be in [1, " +
                         std::to_string(kMaxGaussHermiteOrder) + "]");
    }
    GaussHermiteRule rule;
    rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
    rule.log_weights.assign(static_cast<std::size_t>(n), 0.0);
    const double edge = std::sqrt(2.0 * n + 1.0) + 1.0;  // all zeros lie inside
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // i-th largest zero: exactly n - 1 - i eigenvalues lie below it.
        const int below = n - 1 - i;
        double lo = 0.0, hi = edge;
        if (n % 2 == 1 && i == m - 1) lo = hi = 0.0;
        while (hi - lo > 1e-9 * std::max(1.0, hi)) {
            const double mid = 0.5 * (lo + hi);
            (detail::hermite_eigs_below(n, mid) > below ? hi : lo) = mid;
        }
        double z = 0.5 * (lo + hi);
        for (int it = 0; it < 8; ++it) {
            const auto [f, df] = detail::hermite_function_and_slope(n, z);
            if (df == 0.0) break;
            const double next = z - f / df;
            if (!(next >= lo - 1e-9 && next <= hi + 1e-9)) break;
            const bool done = std::abs(next - z) <= 1e-15 * std::max(1.0, std::abs(z));
            z = next;
            if (done) break;
        }
        const double pp = detail::hermite_function_and_slope(n, z).second;
        if (!(std::abs(pp) > 0.0) || !std::isfinite(pp)) {
            throw OracleError("gauss_hermite: degenerate derivative at node " + std::to_string(i));
        }
        const double lw = std::log(2.0) - z * z - 2.0 * std::log(std::abs(pp));
        rule.nodes[static_cast<std::size_t>(i)] = z;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = -z;
        rule.log_weights[static_cast<std::size_t>(i)] = lw;
        rule.log_weights[static_cast<std::size_t>(n - 1 - i)] = lw;
    }
    return rule;
}

/// Orthonormal Hermite polynomials p_0..p_{count-1} at xi, stored as
/// sign * exp(log_abs), so that p_k(xi) exp(-xi^2/2) is the k-th Hermite
/// function. Rescales internally to avoid overflow.
struct ScaledValues {
    std::vector<double> log_abs;
    std::vector<double> sign;
};

inline ScaledValues orthonormal_hermite_values(std::size_t count, double xi) {
    ScaledValues out{std::vector<double>(count), std::vector<double>(count)};
    double scale_log = 0.0;  // true value = mantissa * exp(scale_log)
    double prev = 0.0;
    double cur = 1.0 / std::pow(std::numbers::pi, 0.25);
    for (std::size_t k = 0; k < count; ++k) {
        if (k > 0) {
            const double kk = static_cast<double>(k);
            const double next = std::sqrt(2.0 / kk) * xi * cur - std::sqrt((kk - 1.0) / kk) * prev;
            prev = cur;
            cur = next;
            const double mag = std::abs(cur);
            if (mag > 1e150) {
                const double f = std::log(mag);
                cur /= mag;
                prev /= mag;
                scale_log += f;
            }
        }
        out.sign[k] = cur < 0.0 ? -1.0 : 1.0;
        out.log_abs[k] = (cur == 0.0) ? -INFINITY : std::log(std::abs(cur)) + scale_log;
    }
    return out;
}

}  // namespace polyprop::double_well
