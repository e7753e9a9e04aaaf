#pragma once

#include "polyprop/errors.hpp"

namespace polyprop {

/// Physicists' Hermite polynomial H_k(x) by H_{k+1} = 2x H_k - 2k H_{k-1}.
inline double hermite_scalar(int k, double x) {
    if (k < 0 || k > 200) throw UsageError("hermite_scalar: k must be in [0, 200]");
    double prev = 1.0;
    if (k == 0) return prev;
    double cur = 2.0 * x;
    for (int n = 1; n < k; ++n) {
        const double next = 2.0 * x * cur - 2.0 * n * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Generalized Laguerre polynomial L_k^alpha(x) by
/// (k+1) L_{k+1} = (2k + alpha + 1 - x) L_k - (k + alpha) L_{k-1}.
inline double laguerre_scalar(int k, double alpha, double x) {
    if (k < 0 || k > 200) throw UsageError("laguerre_scalar: k must be in [0, 200]");
    double prev = 1.0;
    if (k == 0) return prev;
    double cur = alpha + 1.0 - x;
    for (int n = 1; n < k; ++n) {
        const double next = ((2.0 * n + alpha + 1.0 - x) * cur - (n + alpha) * prev) / (n + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace polyprop
