#pragma once

#include <array>
#include <cstddef>

#include "polyprop/propagators/series.hpp"

namespace polyprop {

namespace detail {

/// out = -i H in
inline void schrodinger_rhs(const HermitianOperator& h, std::span<const cplx> in,
                            std::span<cplx> out) {
    h.apply(in, out);
    for (auto& x : out) x = cplx{x.imag(), -x.real()};
}

/// Classical RK4 step for d psi/dt = -i H psi given k1 = f(psi).
inline StateVector rk4_from_k1(const HermitianOperator& h, const StateVector& psi,
                               const StateVector& k1, double dt) {
    const std::size_t n = psi.dim();
    StateVector tmp(n), k2(n), k3(n), k4(n);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + 0.5 * dt * k1[i];
    schrodinger_rhs(h, tmp.span(), k2.span());
    for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + 0.5 * dt * k2[i];
    schrodinger_rhs(h, tmp.span(), k3.span());
    for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + dt * k3[i];
    schrodinger_rhs(h, tmp.span(), k4.span());
    StateVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = psi[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

}  // namespace detail

/// Classical fourth-order Runge-Kutta step; exactly 4 matvecs.
inline StepResult rk4_step(const HermitianOperator& h, const StateVector& psi, double dt) {
    detail::require_same_dim(h.dim(), psi.dim(), "rk4_step");
    StepResult r{psi, {0, 0, 0.0, 0.0}};
    if (dt == 0.0) return r;
    StateVector k1(psi.dim());
    detail::schrodinger_rhs(h, psi.span(), k1.span());
    r.psi = detail::rk4_from_k1(h, psi, k1, dt);
    r.report.matvecs = 4;
    r.report.norm_drift = norm(r.psi) - norm(psi);
    return r;
}

/// State plus derivative history for the Adams-Bashforth-Moulton PECE
/// integrator. derivs[0] is f(psi_n), derivs[1] is f(psi_{n-1}), ...
class AbmHistory {
public:
    AbmHistory(const HermitianOperator& h, StateVector psi0, double dt)
        : psi_(std::move(psi0)), dt_(dt) {
        detail::require_same_dim(h.dim(), psi_.dim(), "AbmHistory");
        StateVector f(psi_.dim());
        detail::schrodinger_rhs(h, psi_.span(), f.span());
        push(std::move(f));
        pending_matvecs_ = 1;
    }

    const StateVector& psi() const noexcept { return psi_; }
    double dt() const noexcept { return dt_; }
    std::size_t stored() const noexcept { return stored_; }
    bool ready() const noexcept { return stored_ == 4; }

private:
    friend StepResult abm4_step(const HermitianOperator& h, AbmHistory& hist);

    void push(StateVector f) {
        for (std::size_t i = 3; i > 0; --i) derivs_[i] = std::move(derivs_[i - 1]);
        derivs_[0] = std::move(f);
        stored_ = std::min<std::size_t>(stored_ + 1, 4);
    }

    StateVector psi_;
    double dt_;
    std::array<StateVector, 4> derivs_;
    std::size_t stored_ = 0;
    long long pending_matvecs_ = 0;
};

/// Advances `hist` by one step. While fewer than four derivatives are
/// stored the step is RK4 (reusing the stored f(psi_n), so 4 matvecs
/// including the new derivative); afterwards it is ABM4 PECE with 2 matvecs
/// (predictor evaluation and final evaluation). The derivative of the
/// initial state is charged to the first step.
inline StepResult abm4_step(const HermitianOperator& h, AbmHistory& hist) {
    const std::size_t n = hist.psi_.dim();
    const double dt = hist.dt_;
    const double before = norm(hist.psi_);
    StepResult r{StateVector(n), {0, hist.pending_matvecs_, 0.0, 0.0}};
    hist.pending_matvecs_ = 0;

    const auto& f = hist.derivs_;
    if (!hist.ready()) {
        r.psi = detail::rk4_from_k1(h, hist.psi_, f[0], dt);
        r.report.matvecs += 3;
    } else {
        StateVector pred(n);
        for (std::size_t i = 0; i < n; ++i) {
            pred[i] = hist.psi_[i] + (dt / 24.0) * (55.0 * f[0][i] - 59.0 * f[1][i] +
                                                    37.0 * f[2][i] - 9.0 * f[3][i]);
        }
        StateVector fp(n);
        detail::schrodinger_rhs(h, pred.span(), fp.span());
        for (std::size_t i = 0; i < n; ++i) {
            r.psi[i] = hist.psi_[i] + (dt / 24.0) * (9.0 * fp[i] + 19.0 * f[0][i] -
                                                     5.0 * f[1][i] + f[2][i]);
        }
        r.report.matvecs += 1;
    }
    StateVector fnew(n);
    detail::schrodinger_rhs(h, r.psi.span(), fnew.span());
    r.report.matvecs += 1;
    hist.push(std::move(fnew));
    hist.psi_ = r.psi;
    r.report.norm_drift = norm(r.psi) - before;
    return r;
}

}  // namespace polyprop
