#pragma once

#include <cmath>
#include <vector>

#include "polyprop/core/hermitian_operator.hpp"
#include "polyprop/core/jacobi.hpp"

namespace polyprop::double_well {

inline constexpr std::size_t kMaxOracleDim = 512;

/// psi(t) = V exp(-i Lambda t) V^dagger psi0 from one full Jacobi
/// eigendecomposition, reused for every t.
class ExactPropagator {
public:
    explicit ExactPropagator(const DenseHermitian& h) {
        if (h.size() > kMaxOracleDim) throw UsageError("ExactPropagator: dimension above 512");
        const auto e = h.entries();
        eig_ = jacobi_eigen(std::vector<cplx>(e.begin(), e.end()), h.size(),
                            JacobiOptions{100, 1e-14});
    }

    const EigenSystem& eigensystem() const noexcept { return eig_; }

    StateVector evolve(const StateVector& psi0, double t) const {
        const std::size_t n = eig_.n;
        polyprop::detail::require_same_dim(n, psi0.dim(), "ExactPropagator::evolve");
        std::vector<cplx> coeff(n);
        for (std::size_t j = 0; j < n; ++j) {
            cplx acc{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) acc += std::conj(eig_.vector_entry(k, j)) * psi0[k];
            coeff[j] = acc * std::polar(1.0, -eig_.values[j] * t);
        }
        StateVector out(n);
        for (std::size_t k = 0; k < n; ++k) {
            cplx acc{0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j) acc += eig_.vector_entry(k, j) * coeff[j];
            out[k] = acc;
        }
        return out;
    }

private:
    EigenSystem eig_;
};

inline StateVector exact_diag_oracle(const DenseHermitian& h, const StateVector& psi0, double t) {
    return ExactPropagator(h).evolve(psi0, t);
}

}  // namespace polyprop::double_well
