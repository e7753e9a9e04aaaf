#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "polyprop/core/jacobi.hpp"

namespace polyprop::spin_bath {

/// 4x4 density matrix of the two central spins in the ordered basis
/// {|up up>, |up down>, |down up>, |down down>}.
class ReducedDensityMatrix {
public:
    ReducedDensityMatrix() { rho_.fill(cplx{0.0, 0.0}); }

    cplx& operator()(std::size_t r, std::size_t c) { return rho_[r * 4 + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return rho_[r * 4 + c]; }

    double trace() const { return (rho_[0] + rho_[5] + rho_[10] + rho_[15]).real(); }

    /// Tr(rho^2)
    double purity() const {
        double p = 0.0;
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) p += std::norm((*this)(r, c));
        return p;
    }

    double hermiticity_defect() const {
        double worst = 0.0;
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = r; c < 4; ++c)
                worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        return worst;
    }

    std::vector<double> eigenvalues() const {
        return jacobi_eigen(std::vector<cplx>(rho_.begin(), rho_.end()), 4,
                            JacobiOptions{30, 1e-13})
            .values;
    }

private:
    std::array<cplx, 16> rho_;
};

/// -sum_i l_i ln l_i over the eigenvalues of rho, with 0 ln 0 = 0.
/// Eigenvalues in [-1e-8, 0) are treated as rounding noise and clamped,
/// as is a result a few ulps below zero.
inline double von_neumann_entropy(const ReducedDensityMatrix& rho) {
    if (rho.hermiticity_defect() > 1e-10) {
        throw InvalidDensityMatrixError("von_neumann_entropy: matrix is not Hermitian");
    }
    double s = 0.0;
    for (double l : rho.eigenvalues()) {
        if (l < -1e-8) {
            throw InvalidDensityMatrixError("von_neumann_entropy: eigenvalue " + std::to_string(l) +
                                            " is negative");
        }
        if (l > 0.0) s -= l * std::log(l);
    }
    return std::max(s, 0.0);  // an eigenvalue of 1 + eps gives -eps
}

}  // namespace polyprop::spin_bath
