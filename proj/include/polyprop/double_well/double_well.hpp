#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "polyprop/core/hermitian_operator.hpp"
#include "polyprop/double_well/gauss_hermite.hpp"

namespace polyprop::double_well {

/// H = p^2/2 - omega^2 x^2 / 2 + lambda x^4 in a truncated harmonic
/// oscillator basis |0> .. |n_basis-1>.
struct DoubleWellParams {
    double omega = 1.0;        // well parameter, also the frequency of the initial packet
    double lambda = 0.0013;    // quartic coupling
    int n_basis = 50;
    int m = 0;                 // index of the displaced oscillator eigenstate
    std::optional<double> basis_omega;  // basis frequency; defaults to omega

    double nu() const { return basis_omega.value_or(omega); }

    /// Bottom of the right well, omega / sqrt(4 lambda).
    double x0() const { return omega / std::sqrt(4.0 * lambda); }

    void validate() const {
        if (!(omega > 0.0) || !std::isfinite(omega)) throw UsageError("double well: omega must be > 0");
        if (!(lambda > 0.0) || !std::isfinite(lambda)) throw UsageError("double well: lambda must be > 0");
        if (n_basis < 2 || n_basis > 4096) throw UsageError("double well: n_basis must be in [2, 4096]");
        if (m < 0 || m >= n_basis) throw UsageError("double well: need 0 <= m < n_basis");
        if (basis_omega && !(*basis_omega > 0.0)) throw UsageError("double well: basis_omega must be > 0");
    }

    bool operator==(const DoubleWellParams&) const = default;
};

namespace detail {

/// Real symmetric band matrix with half-bandwidth `w`, entry (i, i+d) at
/// band[d][i].
struct Band {
    std::size_t n;
    int w;
    std::vector<std::vector<double>> band;

    Band(std::size_t n_, int w_) : n(n_), w(w_), band(static_cast<std::size_t>(w_) + 1, std::vector<double>(n_, 0.0)) {}

    double at(std::size_t i, std::size_t j) const {
        const std::size_t lo = std::min(i, j), hi = std::max(i, j);
        const std::size_t d = hi - lo;
        return d > static_cast<std::size_t>(w) ? 0.0 : band[d][lo];
    }
};

/// Product of two symmetric band matrices restricted to the n x n block.
inline Band multiply(const Band& a, const Band& b) {
    Band c(a.n, a.w + b.w);
    for (std::size_t i = 0; i < a.n; ++i) {
        for (int d = 0; d <= c.w; ++d) {
            const std::size_t j = i + static_cast<std::size_t>(d);
            if (j >= a.n) break;
            const std::size_t klo = i >= static_cast<std::size_t>(a.w) ? i - static_cast<std::size_t>(a.w) : 0;
            const std::size_t khi = std::min(a.n - 1, i + static_cast<std::size_t>(a.w));
            double s = 0.0;
            for (std::size_t k = klo; k <= khi; ++k) s += a.at(i, k) * b.at(k, j);
            c.band[static_cast<std::size_t>(d)][i] = s;
        }
    }
    return c;
}

/// X = a + a^dagger truncated to n states.
inline Band ladder_sum(std::size_t n) {
    Band x(n, 1);
    for (std::size_t k = 0; k + 1 < n; ++k) x.band[1][k] = std::sqrt(static_cast<double>(k + 1));
    return x;
}

}  // namespace detail

/// Matrix of H in the basis of the oscillator with frequency nu:
///   H = -nu/4 (a+ - a)^2 - omega^2/(4 nu) (a+ + a)^2 + lambda/(4 nu^2) (a+ + a)^4,
/// which for nu = omega is -omega/2 [(a+)^2 + a^2] + lambda/(4 omega^2)(a+ + a)^4.
/// Powers are products of truncated ladder matrices, so only the last four
/// rows and columns differ from the infinite matrix. Nonzero entries sit on
/// offsets 0, 2 and 4.
inline DenseHermitian build_double_well_matrix(const DoubleWellParams& p) {
    p.validate();
    const auto n = static_cast<std::size_t>(p.n_basis);
    const double nu = p.nu();
    const detail::Band x = detail::ladder_sum(n);
    const detail::Band x2 = detail::multiply(x, x);
    const detail::Band x4 = detail::multiply(x2, x2);

    // (a+ - a)^2 = (a+)^2 + a^2 - a+a - aa+ ; with truncated factors
    // (a+ - a)^2 + (a+ + a)^2 = 2[(a+)^2 + a^2] holds exactly.
    detail::Band y2(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        y2.band[0][i] = -x2.band[0][i];
        if (i + 2 < n) y2.band[2][i] = x2.band[2][i];
    }

    DenseHermitian h(n);
    const double c_p = -nu / 4.0;
    const double c_x2 = -p.omega * p.omega / (4.0 * nu);
    const double c_x4 = p.lambda / (4.0 * nu * nu);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 0; d <= 4 && i + d < n; ++d) {
            const double v = c_p * y2.at(i, i + d) + c_x2 * x2.at(i, i + d) + c_x4 * x4.at(i, i + d);
            if (v != 0.0) h.set_pair(i, i + d, v);
        }
    }
    return h;
}

/// Position operator x = (a + a^dagger) / sqrt(2 nu) applied without
/// truncation: the result has n + 1 entries.
inline std::vector<cplx> apply_position_extended(std::span<const cplx> psi, double nu) {
    const std::size_t n = psi.size();
    const double s = 1.0 / std::sqrt(2.0 * nu);
    std::vector<cplx> out(n + 1, cplx{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) out[k - 1] += s * std::sqrt(static_cast<double>(k)) * psi[k];
        out[k + 1] += s * std::sqrt(static_cast<double>(k + 1)) * psi[k];
    }
    return out;
}

struct PositionMoments {
    double x_mean = 0.0;
    double sigma = 0.0;
};

/// <x> and sigma = sqrt(<x^2> - <x>^2), the latter computed as
/// |(x - <x>) psi| to avoid cancellation.
inline PositionMoments position_observables(const StateVector& psi, double basis_omega) {
    if (!(basis_omega > 0.0)) throw UsageError("position_observables: basis_omega must be > 0");
    const double n2 = squared_norm(psi.span());
    if (n2 == 0.0) throw DegenerateInputError("position_observables: zero state");
    const std::vector<cplx> xpsi = apply_position_extended(psi.span(), basis_omega);
    double mean = 0.0;
    for (std::size_t k = 0; k < psi.dim(); ++k) mean += (std::conj(psi[k]) * xpsi[k]).real();
    mean /= n2;
    double var = 0.0;
    for (std::size_t k = 0; k < xpsi.size(); ++k) {
        const cplx own = k < psi.dim() ? psi[k] : cplx{0.0, 0.0};
        var += std::norm(xpsi[k] - mean * own);
    }
    return {mean, std::sqrt(var / n2)};
}

struct DisplacedState {
    StateVector psi;
    double leakage = 0.0;  // 1 - sum |c_n|^2 before renormalization
};

inline constexpr double kMaxLeakage = 1e-6;

/// Coefficients of phi_m(x - center) (oscillator eigenstate of frequency
/// omega) in the basis of frequency nu. For m = 0 and nu = omega this is the
/// coherent state c_n = exp(-a0^2/2) a0^n / sqrt(n!), a0 = center sqrt(omega/2);
/// otherwise overlaps come from Gauss-Hermite quadrature of order
/// 2 n_basis + 16. Throws TruncationError if the basis misses more than 1e-6
/// of the norm.
inline DisplacedState displaced_eigenstate_coeffs(const DoubleWellParams& p, double center) {
    p.validate();
    const auto n = static_cast<std::size_t>(p.n_basis);
    const double omega = p.omega;
    const double nu = p.nu();
    std::vector<cplx> c(n, cplx{0.0, 0.0});

    if (p.m == 0 && nu == omega) {
        const double a0 = center * std::sqrt(omega / 2.0);
        if (a0 == 0.0) {
            c[0] = 1.0;
        } else {
            const double la = std::log(std::abs(a0));
            for (std::size_t k = 0; k < n; ++k) {
                const double kk = static_cast<double>(k);
                const double mag = std::exp(-0.5 * a0 * a0 + kk * la - 0.5 * std::lgamma(kk + 1.0));
                c[k] = (a0 < 0.0 && (k % 2 == 1)) ? -mag : mag;
            }
        }
    } else {
        const int order = 2 * p.n_basis + 16;
        if (order > kMaxGaussHermiteOrder) {
            throw UsageError("displaced_eigenstate_coeffs: n_basis too large for the quadrature path "
                             "(max " + std::to_string((kMaxGaussHermiteOrder - 16) / 2) + ")");
        }
        const GaussHermiteRule rule = gauss_hermite(order);
        const double centre = omega * center / (nu + omega);
        const double stretch = std::sqrt(2.0 / (nu + omega));
        const double k_exp = -nu * omega * center * center / (2.0 * (nu + omega));
        const double log_pref = std::log(stretch) + 0.25 * std::log(nu * omega) + k_exp;
        const auto mcount = static_cast<std::size_t>(p.m) + 1;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double x = centre + stretch * rule.nodes[i];
            const ScaledValues pn = orthonormal_hermite_values(n, std::sqrt(nu) * x);
            const ScaledValues pm = orthonormal_hermite_values(mcount, std::sqrt(omega) * (x - center));
            const double base = log_pref + rule.log_weights[i] + pm.log_abs[mcount - 1];
            const double sgn = pm.sign[mcount - 1];
            for (std::size_t k = 0; k < n; ++k) {
                const double e = base + pn.log_abs[k];
                if (e > -745.0) c[k] += sgn * pn.sign[k] * std::exp(e);
            }
        }
    }

    double kept = 0.0;
    for (const auto& x : c) kept += std::norm(x);
    const double leakage = 1.0 - kept;
    if (leakage > kMaxLeakage) {
        throw TruncationError("displaced_eigenstate_coeffs: basis of " + std::to_string(n) +
                              " states loses " + std::to_string(leakage) +
                              " of the norm; increase n_basis");
    }
    return {normalize(StateVector(std::move(c))), leakage};
}

inline DisplacedState displaced_eigenstate_coeffs(const DoubleWellParams& p) {
    return displaced_eigenstate_coeffs(p, p.x0());
}

/// Parameters reproducing H = p^2/2 + 4 q^2 (q - beta)^2 / beta^2 with
/// q = x + beta/2. Completing the square gives
///   (4/beta^2) x^4 - 2 x^2 + beta^2/4,
/// so lambda = 4/beta^2 and the quadratic term fixes omega = 2. The constant
/// beta^2/4 only adds a global phase and is dropped (kept here as
/// energy_offset).
struct BenderCase {
    DoubleWellParams params;
    double shift = 0.0;          // <q> = <x> + shift
    double energy_offset = 0.0;  // dropped constant
};

inline BenderCase bender_case(double beta, std::optional<double> omega = std::nullopt,
                              int n_basis = 32) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw UsageError("bender_case: beta must be > 0");
    BenderCase b;
    b.params.omega = omega.value_or(2.0);
    b.params.lambda = 4.0 / (beta * beta);
    b.params.n_basis = n_basis;
    b.params.m = 0;
    b.shift = beta / 2.0;
    b.energy_offset = beta * beta / 4.0;
    return b;
}

}  // namespace polyprop::double_well
