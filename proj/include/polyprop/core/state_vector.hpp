#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "polyprop/errors.hpp"

namespace polyprop {

using cplx = std::complex<double>;

/// Complex amplitude vector over a finite Hilbert space.
///
/// Storage is one contiguous array of std::complex<double>, which the
/// standard lays out as interleaved (re, im) pairs.
class StateVector {
public:
    StateVector() = default;

    explicit StateVector(std::size_t dim) : amp_(dim, cplx{0.0, 0.0}) {
        if (dim == 0) throw UsageError("StateVector: dimension must be at least 1");
    }

    StateVector(std::initializer_list<cplx> values) : amp_(values) {
        if (amp_.empty()) throw UsageError("StateVector: dimension must be at least 1");
    }

    explicit StateVector(std::vector<cplx> values) : amp_(std::move(values)) {
        if (amp_.empty()) throw UsageError("StateVector: dimension must be at least 1");
    }

    /// Unit vector e_index.
    static StateVector basis(std::size_t dim, std::size_t index) {
        if (index >= dim) throw UsageError("StateVector::basis: index out of range");
        StateVector v(dim);
        v.amp_[index] = 1.0;
        return v;
    }

    std::size_t dim() const noexcept { return amp_.size(); }

    cplx& operator[](std::size_t i) { return amp_[i]; }
    const cplx& operator[](std::size_t i) const { return amp_[i]; }

    std::span<cplx> span() noexcept { return amp_; }
    std::span<const cplx> span() const noexcept { return amp_; }

    cplx* data() noexcept { return amp_.data(); }
    const cplx* data() const noexcept { return amp_.data(); }

    auto begin() noexcept { return amp_.begin(); }
    auto end() noexcept { return amp_.end(); }
    auto begin() const noexcept { return amp_.begin(); }
    auto end() const noexcept { return amp_.end(); }

    bool all_finite() const noexcept {
        for (const auto& a : amp_) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
        }
        return true;
    }

    StateVector& operator*=(cplx s) noexcept {
        for (auto& a : amp_) a *= s;
        return *this;
    }

    bool operator==(const StateVector&) const = default;

private:
    std::vector<cplx> amp_;
};

namespace detail {

inline void require_same_dim(std::size_t a, std::size_t b, const char* where) {
    if (a != b) {
        throw UsageError(std::string(where) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
    }
}

}  // namespace detail

/// Sum_i conj(a_i) b_i, conjugate-linear in the first argument.
/// Accumulated sequentially in index order.
inline cplx inner_product(std::span<const cplx> a, std::span<const cplx> b) {
    detail::require_same_dim(a.size(), b.size(), "inner_product");
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

inline cplx inner_product(const StateVector& a, const StateVector& b) {
    return inner_product(a.span(), b.span());
}

inline double squared_norm(std::span<const cplx> v) noexcept {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return s;
}

inline double norm(std::span<const cplx> v) noexcept { return std::sqrt(squared_norm(v)); }
inline double norm(const StateVector& v) noexcept { return norm(v.span()); }

inline StateVector normalize(StateVector v) {
    const double n = norm(v);
    if (!(n >= 1e-300)) throw DegenerateInputError("normalize: vector has zero norm");
    v *= cplx{1.0 / n, 0.0};
    return v;
}

/// y += a * x
inline void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y) {
    detail::require_same_dim(x.size(), y.size(), "axpy");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

/// ||a - b||_2
inline double distance(std::span<const cplx> a, std::span<const cplx> b) {
    detail::require_same_dim(a.size(), b.size(), "distance");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
}

inline double distance(const StateVector& a, const StateVector& b) {
    return distance(a.span(), b.span());
}

}  // namespace polyprop
