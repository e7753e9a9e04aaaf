#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "polyprop/core/contract.hpp"
#include "polyprop/double_well/double_well.hpp"
#include "polyprop/double_well/exact_diag.hpp"
#include "polyprop/propagators/evolve.hpp"

using namespace polyprop;
using namespace polyprop::double_well;

namespace {

/// x = (a + a+)/sqrt(2 nu) and p = i sqrt(nu/2)(a+ - a) as dense matrices.
struct Ladder {
    oracle::Mat a, x, p;
    Ladder(int n, double nu) : a(oracle::Mat::Zero(n, n)) {
        for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
        x = (a + a.adjoint()) / std::sqrt(2.0 * nu);
        p = oracle::cplx(0.0, std::sqrt(nu / 2.0)) * (a.adjoint() - a);
    }
};

/// p^2/2 - omega^2 x^2/2 + lambda x^4 in a basis padded by `pad` states,
/// cut back to n: exact matrix elements away from the cut.
oracle::Mat reference_hamiltonian(const DoubleWellParams& d, int pad = 8) {
    const int big = d.n_basis + pad;
    const Ladder l(big, d.nu());
    const oracle::Mat x2 = l.x * l.x;
    const oracle::Mat h = 0.5 * l.p * l.p - 0.5 * d.omega * d.omega * x2 + d.lambda * x2 * x2;
    return h.topLeftCorner(d.n_basis, d.n_basis);
}

}  // namespace

TEST(DoubleWellMatrix, ClosedFormElements) {
    for (double omega : {0.7, 1.0, 2.0}) {
        const DoubleWellParams d{omega, 0.05, 20, 0, {}};
        const auto h = build_double_well_matrix(d);
        const double lam = d.lambda;
        EXPECT_NEAR(h(0, 0).real(), 3.0 * lam / (4.0 * omega * omega), 1e-14);
        EXPECT_NEAR(h(2, 0).real(), -omega / std::sqrt(2.0) + 1.5 * std::sqrt(2.0) * lam / (omega * omega), 1e-14);
        EXPECT_EQ(h(1, 0), cplx(0.0));
    }
}

TEST(DoubleWellMatrix, BandStructureAndSymmetry) {
    const auto h = build_double_well_matrix({1.0, 0.0013, 50, 0, {}});
    EXPECT_EQ(h.hermiticity_defect(), 0.0);
    for (std::size_t i = 0; i < 50; ++i) {
        for (std::size_t j = 0; j < 50; ++j) {
            const std::size_t d = i > j ? i - j : j - i;
            if (d != 0 && d != 2 && d != 4) {
                EXPECT_EQ(h(i, j), cplx(0.0)) << i << "," << j;
            }
            EXPECT_EQ(h(i, j).imag(), 0.0);
        }
    }
}

TEST(DoubleWellMatrix, MatchesPaddedOperatorProducts) {
    for (const DoubleWellParams& d : {DoubleWellParams{1.0, 0.0013, 30, 0, {}},
                                      DoubleWellParams{2.0, 0.64, 32, 0, {}},
                                      DoubleWellParams{1.0, 0.02, 24, 0, 1.7}}) {
        const auto h = build_double_well_matrix(d);
        const auto want = reference_hamiltonian(d);
        const int n = d.n_basis;
        // Only the last four rows and columns feel the truncation.
        for (int i = 0; i < n - 4; ++i)
            for (int j = 0; j < n - 4; ++j)
                EXPECT_NEAR(std::abs(h(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) - want(i, j)), 0.0,
                            1e-11 * std::max(1.0, std::abs(want(i, j))));
    }
}

TEST(DoubleWellMatrix, GroundStateConvergedInBasisSize) {
    // omega small enough that both wells fit inside 50 oscillator states.
    const double omega = 0.4;
    auto lowest = [&](int n) {
        const auto h = build_double_well_matrix({omega, 0.0013 * omega, n, 0, {}});
        Eigen::SelfAdjointEigenSolver<oracle::Mat> es(oracle::dense_of(h), Eigen::EigenvaluesOnly);
        return es.eigenvalues()(0);
    };
    EXPECT_LT(std::abs(lowest(50) - lowest(64)), 1e-8);
}

TEST(DoubleWellMatrix, ContractHolds) {
    const auto h = build_double_well_matrix({1.0, 0.01, 40, 0, {}});
    const auto rep = check_operator_contract(h, 50, 1);
    EXPECT_LE(rep.linearity_error, 1e-12);
    EXPECT_LE(rep.hermiticity_error, 1e-12);
}

TEST(DoubleWellParamsType, Validation) {
    EXPECT_THROW(build_double_well_matrix({0.0, 0.1, 10, 0, {}}), UsageError);
    EXPECT_THROW(build_double_well_matrix({1.0, -0.1, 10, 0, {}}), UsageError);
    EXPECT_THROW(build_double_well_matrix({1.0, 0.1, 1, 0, {}}), UsageError);
    EXPECT_THROW(build_double_well_matrix({1.0, 0.1, 4097, 0, {}}), UsageError);
    EXPECT_THROW(build_double_well_matrix({1.0, 0.1, 10, 10, {}}), UsageError);
    const DoubleWellParams d{2.0, 0.25, 10, 0, {}};
    EXPECT_DOUBLE_EQ(d.x0(), 2.0);
}

TEST(DisplacedState, Examples) {
    const DoubleWellParams d{1.0, 0.05, 50, 0, {}};
    const auto centred = displaced_eigenstate_coeffs(d, 0.0);
    EXPECT_TRUE(centred.psi == StateVector::basis(50, 0));

    const auto s = displaced_eigenstate_coeffs(d);
    const double a0 = d.x0() * std::sqrt(d.omega / 2.0);
    EXPECT_NEAR(s.psi[0].real(), std::exp(-a0 * a0 / 2.0), 1e-12);
    EXPECT_NEAR(position_observables(s.psi, d.omega).x_mean, d.x0(), 1e-8);
    EXPECT_NEAR(position_observables(s.psi, d.omega).sigma, std::sqrt(1.0 / (2.0 * d.omega)), 1e-8);
}

TEST(DisplacedState, QuadratureMatchesDisplacementOperator) {
    // phi_m(x - x0) = exp(a0 (a+ - a)) |m>, evaluated with a matrix exponential
    // in a large basis.
    const DoubleWellParams d{1.3, 0.08, 40, 3, {}};
    const int big = 160;
    const Ladder l(big, d.omega);
    const double a0 = d.x0() * std::sqrt(d.omega / 2.0);
    const oracle::Mat gen = a0 * (l.a.adjoint() - l.a);
    const oracle::Mat disp = gen.exp();
    const auto s = displaced_eigenstate_coeffs(d);
    for (int k = 0; k < d.n_basis; ++k) EXPECT_NEAR(std::abs(s.psi[static_cast<std::size_t>(k)] - disp(k, d.m)), 0.0, 1e-10);
    EXPECT_LT(s.leakage, 1e-6);
}

TEST(DisplacedState, QuadratureAgreesWithClosedFormForGroundState) {
    DoubleWellParams d{1.0, 0.05, 50, 0, {}};
    const auto closed = displaced_eigenstate_coeffs(d);
    d.basis_omega = 1.0 + 1e-15;  // forces the quadrature path
    const auto quad = displaced_eigenstate_coeffs(d);
    EXPECT_LE(distance(closed.psi, quad.psi), 1e-10);
}

TEST(DisplacedState, OtherBasisFrequencyKeepsMean) {
    const DoubleWellParams d{1.0, 0.05, 60, 0, 1.6};
    const auto s = displaced_eigenstate_coeffs(d);
    EXPECT_NEAR(position_observables(s.psi, 1.6).x_mean, d.x0(), 1e-8);
    EXPECT_NEAR(position_observables(s.psi, 1.6).sigma, std::sqrt(0.5), 1e-8);
}

TEST(DisplacedState, TruncationLeakageRejected) {
    // x0 = 13.9 needs about 100 states at omega = 1
    EXPECT_THROW(displaced_eigenstate_coeffs({1.0, 0.0013, 50, 0, {}}), TruncationError);
    EXPECT_THROW(displaced_eigenstate_coeffs({1.0, 0.0013, 50, 1, {}}), TruncationError);
}

TEST(Position, OscillatorEigenstates) {
    for (double omega : {0.5, 1.0, 3.0}) {
        const auto g = position_observables(StateVector::basis(10, 0), omega);
        EXPECT_NEAR(g.x_mean, 0.0, 1e-15);
        EXPECT_NEAR(g.sigma, std::sqrt(1.0 / (2.0 * omega)), 1e-14);
        const auto e = position_observables(StateVector::basis(10, 1), omega);
        EXPECT_NEAR(e.x_mean, 0.0, 1e-15);
        EXPECT_NEAR(e.sigma, std::sqrt(3.0 / (2.0 * omega)), 1e-14);
    }
}

TEST(Position, SigmaMatchesDenseMoments) {
    std::mt19937_64 rng(77);
    const double nu = 0.8;
    const Ladder l(31, nu);  // one extra state so x psi is not truncated
    for (int trial = 0; trial < 10; ++trial) {
        const auto psi = random_state(30, rng);
        oracle::Vec v = oracle::Vec::Zero(31);
        v.head(30) = oracle::to_eigen(psi);
        const double m1 = (v.adjoint() * l.x * v)(0).real();
        const double m2 = (v.adjoint() * l.x * l.x * v)(0).real();
        const auto got = position_observables(psi, nu);
        EXPECT_NEAR(got.x_mean, m1, 1e-12);
        EXPECT_NEAR(got.sigma, std::sqrt(m2 - m1 * m1), 1e-10);
        EXPECT_GE(got.sigma, 0.0);
    }
}

TEST(Bender, Parameters) {
    const auto b = bender_case(2.5);
    EXPECT_DOUBLE_EQ(b.params.lambda, 0.64);
    EXPECT_DOUBLE_EQ(b.shift, 1.25);
    EXPECT_DOUBLE_EQ(b.params.omega, 2.0);
    EXPECT_DOUBLE_EQ(b.params.x0(), 1.25);
    EXPECT_DOUBLE_EQ(b.energy_offset, 1.5625);
    EXPECT_EQ(b.params.n_basis, 32);
    const auto s = displaced_eigenstate_coeffs(b.params);
    EXPECT_NEAR(position_observables(s.psi, b.params.nu()).x_mean + b.shift, 2.5, 1e-6);
    EXPECT_THROW(bender_case(0.0), UsageError);
    EXPECT_DOUBLE_EQ(bender_case(2.5, std::sqrt(8.0)).params.omega, std::sqrt(8.0));
}

// 4 q^2 (q - beta)^2 / beta^2 = lambda x^4 - 2 x^2 + beta^2/4 with q = x + beta/2.
TEST(Bender, PotentialIdentity) {
    const double beta = 2.5;
    const auto b = bender_case(beta);
    for (double x = -3.0; x <= 3.0; x += 0.25) {
        const double q = x + b.shift;
        const double lhs = 4.0 * q * q * (q - beta) * (q - beta) / (beta * beta);
        const double rhs = b.params.lambda * std::pow(x, 4) - 0.5 * b.params.omega * b.params.omega * x * x + b.energy_offset;
        EXPECT_NEAR(lhs, rhs, 1e-12);
    }
}

TEST(ExactDiag, IdentityAtZeroAndUnitary) {
    std::mt19937_64 rng(9);
    const auto h = build_double_well_matrix({1.0, 0.03, 40, 0, {}});
    const ExactPropagator ex(h);
    for (int trial = 0; trial < 5; ++trial) {
        const auto psi = random_state(40, rng);
        EXPECT_LE(distance(ex.evolve(psi, 0.0), psi), 1e-12);
        EXPECT_NEAR(norm(ex.evolve(psi, 3.7)), 1.0, 1e-10);
        EXPECT_LE(distance(exact_diag_oracle(h, psi, 1.1), ex.evolve(psi, 1.1)), 1e-14);
    }
}

TEST(ExactDiag, MatchesEigenPropagation) {
    std::mt19937_64 rng(10);
    const auto h = build_double_well_matrix({2.0, 0.64, 32, 0, {}});
    const auto psi = random_state(32, rng);
    const auto want = oracle::propagate(oracle::dense_of(h), oracle::to_eigen(psi), 2.3);
    EXPECT_LE((oracle::to_eigen(exact_diag_oracle(h, psi, 2.3)) - want).norm(), 1e-9);
    EXPECT_THROW(ExactPropagator(DenseHermitian(513)), UsageError);
}

TEST(DoubleWellDynamics, MirroredStateNegatesMean) {
    const DoubleWellParams d{1.0, 0.05, 50, 0, {}};
    const auto h = build_double_well_matrix(d);
    const auto right = displaced_eigenstate_coeffs(d, d.x0()).psi;
    const auto left = displaced_eigenstate_coeffs(d, -d.x0()).psi;
    const Probe probe{{"x"}, [&](const StateVector& v) { return std::vector<double>{position_observables(v, 1.0).x_mean}; }};
    auto cfg = PropagatorConfig::defaults(Method::laguerre, 0.01);
    cfg.tol = 1e-10;
    const auto a = evolve(h, right, cfg, 500, probe);
    const auto b = evolve(h, left, cfg, 500, probe);
    for (std::size_t i = 0; i < a.series.size(); ++i) {
        EXPECT_NEAR(a.series.rows()[i].values[0], -b.series.rows()[i].values[0], 1e-12);
    }
}

TEST(DoubleWellDynamics, EnergyConservedUnderPolynomialEvolution) {
    const DoubleWellParams d{0.4, 0.0013 * 0.4, 50, 0, {}};
    const auto h = build_double_well_matrix(d);
    const Probe energy{{"E"}, [&](const StateVector& v) { return std::vector<double>{expectation(h, v)}; }};
    for (Method m : {Method::chebyshev, Method::hermite, Method::laguerre}) {
        auto cfg = PropagatorConfig::defaults(m, 0.02);
        cfg.tol = 1e-12;
        cfg.k_max = 60;
        const auto res = evolve(h, displaced_eigenstate_coeffs(d).psi, cfg, 1000, energy);
        const auto e = res.series.column("E");
        for (double v : e) EXPECT_NEAR(v, e.front(), 1e-8) << to_string(m);
    }
}

TEST(GaussHermiteRule, Moments) {
    for (int n : {1, 5, 20, 116, 560}) {
        const auto rule = gauss_hermite(n);
        double m0 = 0.0, m2 = 0.0, m4 = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double w = std::exp(rule.log_weights[i]);
            const double x = rule.nodes[i];
            m0 += w;
            m2 += w * x * x;
            m4 += w * x * x * x * x;
        }
        const double sp = std::sqrt(std::numbers::pi);
        EXPECT_NEAR(m0, sp, 1e-12) << n;
        if (n >= 2) {
            EXPECT_NEAR(m2, sp / 2.0, 1e-12) << n;
        }
        if (n >= 3) {
            EXPECT_NEAR(m4, 3.0 * sp / 4.0, 1e-11) << n;
        }
    }
    EXPECT_THROW(gauss_hermite(0), UsageError);
    EXPECT_THROW(gauss_hermite(561), UsageError);
}
