// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace rmt::detail {

/// Kahan-compensated accumulator; keeps long-sum error near machine epsilon.
class KahanSum {
public:
    void add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline std::complex<double> mean(const std::vector<std::complex<double>>& xs) {
    KahanSum re, im;
    for (const auto& x : xs) {
        re.add(x.real());
        im.add(x.imag());
    }
    const double inv = 1.0 / static_cast<double>(xs.size());
    return {re.value() * inv, im.value() * inv};
}

/// Population second moment about mu: (1/L) * sum |x - mu|^2.
inline double centered_power(const std::vector<std::complex<double>>& xs,
                             std::complex<double> mu) {
    KahanSum acc;
    for (const auto& x : xs) acc.add(std::norm(x - mu));
    return acc.value() / static_cast<double>(xs.size());
}

inline double mean_power(const std::vector<std::complex<double>>& xs) {
    return centered_power(xs, {0.0, 0.0});
}

/// Type-7 quantile (linear interpolation between order statistics);
/// input must be sorted ascending, q in [0, 1].
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double pos = q * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= n) return sorted[n - 1];
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline double median_sorted(const std::vector<double>& sorted) {
    return quantile_sorted(sorted, 0.5);
}

inline double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    return median_sorted(xs);
}

/// Trapezoidal integral of values over grid (same length, grid ascending).
inline double trapezoid(const std::vector<double>& grid,
                        const std::vector<double>& values) {
    double acc = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        acc += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
    return acc;
}

} // namespace rmt::detail
