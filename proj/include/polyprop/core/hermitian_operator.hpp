#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polyprop/core/parallel.hpp"
#include "polyprop/core/state_vector.hpp"

namespace polyprop {

/// Matrix-free Hermitian operator (energy units, hbar = 1).
///
/// Implementations must be linear and Hermitian and must not mutate shared
/// state in apply(); concurrent applies on distinct buffers are allowed.
class HermitianOperator {
public:
    virtual ~HermitianOperator() = default;

    virtual std::size_t dim() const noexcept = 0;

    /// out = H in. `in` and `out` must not alias.
    virtual void apply(std::span<const cplx> in, std::span<cplx> out) const = 0;

    /// Model-supplied E0 with E0 >= 2 max|E|, if the model knows one.
    virtual std::optional<double> analytic_spectral_bound() const { return std::nullopt; }

    /// 2 * max_i sum_j |H_ij| for operators backed by an explicit matrix.
    virtual std::optional<double> gershgorin_bound() const { return std::nullopt; }
};

inline StateVector apply(const HermitianOperator& h, const StateVector& v) {
    detail::require_same_dim(h.dim(), v.dim(), "apply");
    StateVector out(v.dim());
    h.apply(v.span(), out.span());
    return out;
}

/// Re <v, H v>. Throws OperatorContractError if the imaginary part exceeds
/// 1e-10 (1 + |Re|).
inline double expectation(const HermitianOperator& h, const StateVector& v) {
    const StateVector hv = apply(h, v);
    const cplx e = inner_product(v, hv);
    if (std::abs(e.imag()) > 1e-10 * (1.0 + std::abs(e.real()))) {
        throw OperatorContractError("expectation: <v,Hv> has imaginary part " +
                                    std::to_string(e.imag()) + "; operator is not Hermitian");
    }
    return e.real();
}

/// Wraps a callable as an operator. No spectral hints.
class FunctionOperator final : public HermitianOperator {
public:
    using Kernel = std::function<void(std::span<const cplx>, std::span<cplx>)>;

    FunctionOperator(std::size_t dim, Kernel kernel) : dim_(dim), kernel_(std::move(kernel)) {
        if (dim == 0) throw UsageError("FunctionOperator: dimension must be at least 1");
    }

    std::size_t dim() const noexcept override { return dim_; }

    void apply(std::span<const cplx> in, std::span<cplx> out) const override {
        detail::require_same_dim(dim_, in.size(), "FunctionOperator::apply");
        detail::require_same_dim(dim_, out.size(), "FunctionOperator::apply");
        kernel_(in, out);
    }

private:
    std::size_t dim_;
    Kernel kernel_;
};

/// Dense n x n Hermitian matrix, row-major.
class DenseHermitian final : public HermitianOperator {
public:
    DenseHermitian() = default;

    explicit DenseHermitian(std::size_t n) : n_(n), entries_(n * n, cplx{0.0, 0.0}) {
        if (n == 0) throw UsageError("DenseHermitian: dimension must be at least 1");
    }

    static DenseHermitian diagonal(std::span<const double> d) {
        DenseHermitian m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t dim() const noexcept override { return n_; }
    std::size_t size() const noexcept { return n_; }

    cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * n_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return entries_[r * n_ + c]; }

    /// Sets (r, c) and its Hermitian mirror.
    void set_pair(std::size_t r, std::size_t c, cplx v) {
        (*this)(r, c) = v;
        (*this)(c, r) = std::conj(v);
    }

    std::span<const cplx> entries() const noexcept { return entries_; }

    void apply(std::span<const cplx> in, std::span<cplx> out) const override {
        detail::require_same_dim(n_, in.size(), "DenseHermitian::apply");
        detail::require_same_dim(n_, out.size(), "DenseHermitian::apply");
        parallel_for(
            n_,
            [&](std::size_t first, std::size_t last) {
                for (std::size_t r = first; r < last; ++r) {
                    const cplx* row = &entries_[r * n_];
                    cplx acc{0.0, 0.0};
                    for (std::size_t c = 0; c < n_; ++c) {
                        if (row[c] != cplx{0.0, 0.0}) acc += row[c] * in[c];
                    }
                    out[r] = acc;
                }
            },
            256);
    }

    std::optional<double> gershgorin_bound() const override {
        double worst = 0.0;
        for (std::size_t r = 0; r < n_; ++r) {
            double row = 0.0;
            for (std::size_t c = 0; c < n_; ++c) row += std::abs((*this)(r, c));
            worst = std::max(worst, row);
        }
        return 2.0 * worst;
    }

    /// Largest |H_rc - conj(H_cr)|.
    double hermiticity_defect() const {
        double worst = 0.0;
        for (std::size_t r = 0; r < n_; ++r) {
            for (std::size_t c = r; c < n_; ++c) {
                worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
            }
        }
        return worst;
    }

private:
    std::size_t n_ = 0;
    std::vector<cplx> entries_;
};

}  // namespace polyprop
