#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "polyprop/core/hermitian_operator.hpp"
#include "polyprop/core/parallel.hpp"
#include "polyprop/spin_bath/density_matrix.hpp"

namespace polyprop::spin_bath {

// Basis index layout, most significant bit first: s1 s2 I_1 ... I_N.
// Bit value 1 is spin up. For a central-pair value a = (s1 s2) in 0..3 and
// an environment index e, the full index is a * 2^N + e.

inline constexpr int kMaxBathSpins = 24;

struct SpinBathParams {
    double J = 16.0;
    int N = 0;
    std::vector<double> A;  // size N
    std::uint64_t seed = 0;

    std::size_t dim() const { return std::size_t{1} << (N + 2); }

    void validate() const {
        if (N < 0 || N > kMaxBathSpins) {
            throw UsageError("SpinBathParams: N must be in [0, " + std::to_string(kMaxBathSpins) +
                             "]");
        }
        if (A.size() != static_cast<std::size_t>(N)) {
            throw UsageError("SpinBathParams: need exactly N couplings");
        }
        if (!std::isfinite(J)) throw UsageError("SpinBathParams: J must be finite");
        for (double a : A)
            if (!std::isfinite(a)) throw UsageError("SpinBathParams: couplings must be finite");
    }
};

namespace detail {
// Independent RNG streams per seed for couplings and environment amplitudes.
inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t purpose) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(purpose)};
    return std::mt19937_64(seq);
}
}  // namespace detail

/// N i.i.d. uniform couplings in [0, A_max], reproducible per seed.
inline std::vector<double> sample_couplings(int n, double a_max, std::uint64_t seed) {
    if (n < 0) throw UsageError("sample_couplings: N must be >= 0");
    if (!(a_max > 0.0)) throw UsageError("sample_couplings: A_max must be > 0");
    auto rng = detail::stream(seed, 1);
    std::uniform_real_distribution<double> uni(0.0, a_max);
    std::vector<double> a(static_cast<std::size_t>(n));
    for (auto& x : a) x = uni(rng);
    return a;
}

inline SpinBathParams make_params(double j, int n, double a_max, std::uint64_t seed) {
    SpinBathParams p{j, n, sample_couplings(n, a_max, seed), seed};
    p.validate();
    return p;
}

/// H = 2J s1.s2 + sum_k A_k (s1 + s2).I_k, applied matrix-free.
///
/// Every Heisenberg pair contributes c (sz sz' + (s+ s'- + s- s'+)/2): a
/// diagonal +-c/4 and, when the two bits differ, c/2 times the amplitude
/// with both bits flipped. apply() gathers each output entry from its
/// inputs, so index ranges are independent.
class SpinBathHamiltonian final : public HermitianOperator {
public:
    explicit SpinBathHamiltonian(SpinBathParams params) : params_(std::move(params)) {
        params_.validate();
        const int n = params_.N;
        pairs_.push_back({n + 1, n, 2.0 * params_.J});
        for (int k = 0; k < n; ++k) {
            const int bit = n - 1 - k;  // I_1 is the most significant bath bit
            pairs_.push_back({n + 1, bit, params_.A[static_cast<std::size_t>(k)]});
            pairs_.push_back({n, bit, params_.A[static_cast<std::size_t>(k)]});
        }
        diag_.assign(params_.dim(), 0.0);
        for (std::size_t i = 0; i < diag_.size(); ++i) {
            double d = 0.0;
            for (const auto& p : pairs_) d += differ(i, p) ? -0.25 * p.c : 0.25 * p.c;
            diag_[i] = d;
        }
    }

    const SpinBathParams& params() const noexcept { return params_; }
    std::size_t dim() const noexcept override { return diag_.size(); }

    void apply(std::span<const cplx> in, std::span<cplx> out) const override {
        polyprop::detail::require_same_dim(dim(), in.size(), "SpinBathHamiltonian::apply");
        polyprop::detail::require_same_dim(dim(), out.size(), "SpinBathHamiltonian::apply");
        parallel_for(dim(), [&](std::size_t first, std::size_t last) {
            for (std::size_t i = first; i < last; ++i) out[i] = diag_[i] * in[i];
            for (const auto& p : pairs_) {
                const double half = 0.5 * p.c;
                const std::size_t mask = (std::size_t{1} << p.a) | (std::size_t{1} << p.b);
                for (std::size_t i = first; i < last; ++i) {
                    if (differ(i, p)) out[i] += half * in[i ^ mask];
                }
            }
        });
    }

    /// 2 (2|J| 3/4 + 3/2 sum_k |A_k|) >= 2 max|E|.
    std::optional<double> analytic_spectral_bound() const override {
        double bath = 0.0;
        for (double a : params_.A) bath += std::abs(a);
        return 2.0 * (2.0 * std::abs(params_.J) * 0.75 + 1.5 * bath);
    }

private:
    struct Pair {
        int a, b;  // bit positions
        double c;  // coupling
    };

    static bool differ(std::size_t i, const Pair& p) {
        return (((i >> p.a) ^ (i >> p.b)) & 1u) != 0;
    }

    SpinBathParams params_;
    std::vector<Pair> pairs_;
    std::vector<double> diag_;
};

/// |up down> (x) |env>, env a normalized vector of i.i.d. complex Gaussian
/// amplitudes drawn from the seed's environment stream.
inline StateVector initial_state(const SpinBathParams& params) {
    params.validate();
    const std::size_t env_dim = std::size_t{1} << params.N;
    StateVector psi(params.dim());
    if (params.N == 0) {
        psi[0b10] = 1.0;
        return psi;
    }
    auto rng = detail::stream(params.seed, 2);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double n2 = 0.0;
    std::vector<cplx> env(env_dim);
    for (auto& x : env) {
        x = {gauss(rng), gauss(rng)};
        n2 += std::norm(x);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (std::size_t e = 0; e < env_dim; ++e) psi[0b10 * env_dim + e] = env[e] * inv;
    return psi;
}

inline int bath_size_of(const StateVector& psi) {
    const std::size_t d = psi.dim();
    if (d < 4 || (d & (d - 1)) != 0) {
        throw UsageError("spin bath state dimension must be 2^(N+2)");
    }
    int bits = 0;
    while ((std::size_t{1} << bits) < d) ++bits;
    return bits - 2;
}

/// <s1^z> = sum_i (+-1/2) |psi_i|^2 with the sign of the s1 bit.
inline double s1z_expectation(const StateVector& psi) {
    const int n = bath_size_of(psi);
    const std::size_t half = std::size_t{1} << (n + 1);
    double up = 0.0, down = 0.0;
    for (std::size_t i = 0; i < half; ++i) down += std::norm(psi[i]);
    for (std::size_t i = half; i < psi.dim(); ++i) up += std::norm(psi[i]);
    return 0.5 * (up - down);
}

/// Partial trace over the bath. Row r of the result is the pair state with
/// bit value a = 3 - r (so row 0 is |up up>).
inline ReducedDensityMatrix reduced_density_matrix(const StateVector& psi) {
    const int n = bath_size_of(psi);
    const std::size_t env = std::size_t{1} << n;
    ReducedDensityMatrix rho;
    for (std::size_t r = 0; r < 4; ++r) {
        const std::size_t a = 3 - r;
        for (std::size_t c = r; c < 4; ++c) {
            const std::size_t b = 3 - c;
            cplx acc{0.0, 0.0};
            for (std::size_t e = 0; e < env; ++e) acc += psi[a * env + e] * std::conj(psi[b * env + e]);
            rho(r, c) = acc;
            rho(c, r) = std::conj(acc);
        }
    }
    return rho;
}

}  // namespace polyprop::spin_bath
