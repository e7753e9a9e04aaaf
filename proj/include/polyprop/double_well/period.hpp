#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "polyprop/errors.hpp"
#include "polyprop/time_series.hpp"

namespace polyprop {

/// Dominant period of a uniformly sampled signal.
///
/// The mean-subtracted, Hann-windowed signal is transformed with a direct
/// DFT zero-padded by `pad`; the peak bin is refined by fitting a parabola
/// through it and its neighbours. Throws NoPeriodError when the peak is
/// not 5x above the median spectral magnitude, or when fewer than two
/// periods fit in the record.
inline double estimate_period(const std::vector<double>& t, const std::vector<double>& y,
                              int pad = 8) {
    const std::size_t n = y.size();
    if (t.size() != n) throw UsageError("estimate_period: t and y differ in length");
    if (n < 8) throw UsageError("estimate_period: need at least 8 samples");
    const double dt = t[1] - t[0];
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs((t[i] - t[i - 1]) - dt) > 1e-9 * std::max(1.0, std::abs(dt))) {
            throw UsageError("estimate_period: samples must be uniformly spaced");
        }
    }

    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double hann = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                                 static_cast<double>(n - 1));
        w[i] = (y[i] - mean) * hann;
    }

    const std::size_t m = n * static_cast<std::size_t>(std::max(1, pad));
    const std::size_t bins = m / 2;
    std::vector<double> mag(bins + 1, 0.0);
    for (std::size_t b = 1; b <= bins; ++b) {
        // Rotating phasor; renormalized each sample to keep |z| = 1.
        const std::complex<double> step = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(b) / static_cast<double>(m));
        std::complex<double> z{1.0, 0.0}, acc{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            acc += w[i] * z;
            z *= step;
            if ((i & 63) == 63) z /= std::abs(z);
        }
        mag[b] = std::abs(acc);
    }

    std::size_t peak = 1;
    for (std::size_t b = 2; b <= bins; ++b)
        if (mag[b] > mag[peak]) peak = b;

    std::vector<double> sorted(mag.begin() + 1, mag.end());
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2), sorted.end());
    const double floor = sorted[sorted.size() / 2];
    if (!(mag[peak] > 5.0 * floor)) {
        throw NoPeriodError("estimate_period: no spectral peak above 5x the noise floor");
    }

    double offset = 0.0;
    if (peak > 1 && peak < bins) {
        const double a = mag[peak - 1], b = mag[peak], c = mag[peak + 1];
        const double denom = a - 2.0 * b + c;
        if (denom != 0.0) offset = 0.5 * (a - c) / denom;
    }
    const double freq = (static_cast<double>(peak) + offset) / (static_cast<double>(m) * dt);
    const double period = 1.0 / freq;
    const double span = t.back() - t.front();
    if (period * 2.0 > span) {
        throw NoPeriodError("estimate_period: fewer than two periods in the record");
    }
    return period;
}

inline double estimate_period(const TimeSeries& series, const std::string& field) {
    return estimate_period(series.times(), series.column(field));
}

}  // namespace polyprop
