#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "polyprop/core/state_vector.hpp"

namespace polyprop {

/// Eigenpairs of a Hermitian matrix. `vectors` is row-major n x n with
/// eigenvector j stored in column j; values are ascending.
struct EigenSystem {
    std::size_t n = 0;
    std::vector<double> values;
    std::vector<cplx> vectors;

    cplx vector_entry(std::size_t row, std::size_t col) const { return vectors[row * n + col]; }
};

struct JacobiOptions {
    int max_sweeps = 30;
    /// Converged when the off-diagonal Frobenius norm drops below
    /// off_tolerance * max(1, ||A||_F).
    double off_tolerance = 1e-13;
};

/// Cyclic Jacobi eigensolver for a Hermitian matrix given row-major.
///
/// Each rotation first removes the phase of the pivot A_pq by rescaling
/// column/row q, then applies the classical real rotation. Throws
/// OracleError when the sweep budget runs out.
inline EigenSystem jacobi_eigen(std::vector<cplx> a, std::size_t n, JacobiOptions opt = {}) {
    if (a.size() != n * n) throw UsageError("jacobi_eigen: matrix size does not match n");
    auto at = [&](std::size_t r, std::size_t c) -> cplx& { return a[r * n + c]; };

    std::vector<cplx> v(n * n, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    double frob = 0.0;
    for (const auto& x : a) frob += std::norm(x);
    frob = std::sqrt(frob);
    const double threshold = opt.off_tolerance * std::max(1.0, frob);

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (r != c) s += std::norm(at(r, c));
        return std::sqrt(s);
    };

    bool converged = off_norm() < threshold;
    for (int sweep = 0; sweep < opt.max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double g = std::abs(at(p, q));
                if (g == 0.0) continue;

                // Make A_pq real and positive: column q *= conj(e), row q *= e.
                const cplx e = at(p, q) / g;
                const cplx ec = std::conj(e);
                for (std::size_t k = 0; k < n; ++k) at(k, q) *= ec;
                for (std::size_t k = 0; k < n; ++k) at(q, k) *= e;
                for (std::size_t k = 0; k < n; ++k) v[k * n + q] *= ec;

                const double app = at(p, p).real();
                const double aqq = at(q, q).real();
                const double theta = (aqq - app) / (2.0 * g);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v[k * n + p], vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
        converged = off_norm() < threshold;
    }
    if (!converged) {
        throw OracleError("jacobi_eigen: no convergence after " + std::to_string(opt.max_sweeps) +
                          " sweeps (off-diagonal norm " + std::to_string(off_norm()) + ")");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return at(i, i).real() < at(j, j).real(); });

    EigenSystem out;
    out.n = n;
    out.values.resize(n);
    out.vectors.resize(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = at(order[j], order[j]).real();
        for (std::size_t k = 0; k < n; ++k) out.vectors[k * n + j] = v[k * n + order[j]];
    }
    return out;
}

}  // namespace polyprop
