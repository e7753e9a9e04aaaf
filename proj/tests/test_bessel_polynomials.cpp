#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "polyprop/propagators/bessel.hpp"
#include "polyprop/propagators/polynomials.hpp"

using namespace polyprop;

TEST(Bessel, ZeroArgumentIsKronecker) {
    const auto j = bessel_j_sequence(0.0, 12);
    ASSERT_EQ(j.size(), 13u);
    EXPECT_EQ(j[0], 1.0);
    for (std::size_t k = 1; k < j.size(); ++k) EXPECT_EQ(j[k], 0.0);
}

TEST(Bessel, J0AtOne) {
    EXPECT_NEAR(oracle::bessel_j_series(0, 1.0), 0.7651976865579666, 1e-16);
    EXPECT_NEAR(bessel_j_sequence(1.0, 5)[0], 0.7651976865579666, 1e-15);
}

TEST(Bessel, MatchesPowerSeries) {
    for (double tau : {0.01, 0.3, 1.0, 2.5, 4.0, 7.5, 9.9}) {
        const auto j = bessel_j_sequence(tau, 40);
        for (int k = 0; k <= 40; ++k) {
            EXPECT_NEAR(j[static_cast<std::size_t>(k)], oracle::bessel_j_series(k, tau), 1e-13)
                << "tau " << tau << " k " << k;
        }
    }
}

TEST(Bessel, MatchesStandardLibraryAtLargeArgument) {
    for (double tau : {15.0, 33.3, 80.0}) {
        const auto j = bessel_j_sequence(tau, 120);
        for (int k = 0; k <= 120; k += 7) {
            EXPECT_NEAR(j[static_cast<std::size_t>(k)], std::cyl_bessel_j(static_cast<double>(k), tau), 1e-13)
                << "tau " << tau << " k " << k;
        }
    }
}

TEST(Bessel, NormalizationIdentity) {
    for (double tau = 0.05; tau < 10.0; tau += 0.37) {
        const auto j = bessel_j_sequence(tau, 60);
        double s = j[0];
        for (std::size_t k = 2; k < j.size(); k += 2) s += 2.0 * j[k];
        EXPECT_NEAR(s, 1.0, 1e-12) << tau;
    }
}

TEST(Bessel, NegativeArgumentParity) {
    const auto p = bessel_j_sequence(3.2, 20);
    const auto m = bessel_j_sequence(-3.2, 20);
    for (std::size_t k = 0; k < p.size(); ++k) EXPECT_EQ(m[k], (k % 2 ? -1.0 : 1.0) * p[k]);
}

TEST(Bessel, RejectsBadArguments) {
    EXPECT_THROW(bessel_j_sequence(std::numeric_limits<double>::quiet_NaN(), 3), UsageError);
    EXPECT_THROW(bessel_j_sequence(std::numeric_limits<double>::infinity(), 3), UsageError);
    EXPECT_THROW(bessel_j_sequence(1e4, 3), UsageError);
    EXPECT_THROW(bessel_j_sequence(1.0, -1), UsageError);
}

TEST(ScalarPolynomials, Examples) {
    EXPECT_DOUBLE_EQ(hermite_scalar(2, 1.0), 2.0);
    EXPECT_DOUBLE_EQ(laguerre_scalar(1, -0.5, 2.0), -1.5);
    EXPECT_DOUBLE_EQ(hermite_scalar(0, 3.0), 1.0);
    EXPECT_DOUBLE_EQ(laguerre_scalar(0, 0.3, 3.0), 1.0);
    EXPECT_THROW(hermite_scalar(201, 0.0), UsageError);
    EXPECT_THROW(laguerre_scalar(-1, 0.0, 0.0), UsageError);
}

TEST(ScalarPolynomials, MatchStandardLibrary) {
    for (int k = 0; k <= 25; ++k) {
        for (double x : {-1.7, -0.2, 0.0, 0.9, 2.4}) {
            const double h = std::hermite(static_cast<unsigned>(k), x);
            EXPECT_NEAR(hermite_scalar(k, x), h, 1e-12 * std::max(1.0, std::abs(h)));
            for (unsigned a : {0u, 1u, 3u}) {
                const double l = std::assoc_laguerre(static_cast<unsigned>(k), a, std::abs(x) * 3.0);
                EXPECT_NEAR(laguerre_scalar(k, a, std::abs(x) * 3.0), l, 1e-11 * std::max(1.0, std::abs(l)));
            }
        }
    }
}

TEST(ScalarPolynomials, LaguerreHermiteIdentity) {
    for (int k = 0; k <= 10; ++k) {
        for (double x : {0.5, 1.0, 2.0}) {
            const double lhs = laguerre_scalar(k, -0.5, x * x);
            const double rhs = (k % 2 ? -1.0 : 1.0) / (std::pow(2.0, 2 * k) * std::tgamma(k + 1.0)) *
                               hermite_scalar(2 * k, x);
            EXPECT_LE(std::abs(lhs - rhs), 1e-9 * std::abs(rhs)) << "k " << k << " x " << x;
        }
    }
}
