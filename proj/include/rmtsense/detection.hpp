// SPDX-License-Identifier: Apache-2.0
//
// Law deviations -> decisions: MP-distance metric, ring inner-radius
// estimate, noise-calibrated thresholds.
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "rmtsense/core_matrix.hpp"
#include "rmtsense/density_estimation.hpp"
#include "rmtsense/ensemble_ops.hpp"
#include "rmtsense/errors.hpp"
#include "rmtsense/spectral_laws.hpp"

namespace rmt {

enum class MetricKind { mp_l1, ring_inner_radius };
enum class Decision { noise_only, signal_present };

inline const char* to_string(MetricKind kind) {
    return kind == MetricKind::mp_l1 ? "mp_l1" : "ring_inner_radius";
}
inline const char* to_string(Decision d) {
    return d == Decision::noise_only ? "noise_only" : "signal_present";
}

/// One detection outcome with the inputs that produced it.
struct DetectionReport {
    MetricKind metric_kind = MetricKind::mp_l1;
    double metric_value = 0.0;
    double threshold = 0.0;
    Decision decision = Decision::noise_only;
    std::variant<std::monostate, MPParams, RingParams> params;
    std::string input_label;
};

/// Noise-only Monte Carlo samples and the quantile threshold they imply.
struct CalibrationTable {
    MetricKind metric_kind = MetricKind::mp_l1;
    std::vector<double> samples; // sorted ascending
    double target_fpr = 0.05;
    double threshold = 0.0;
};

/// L1 distance between the spectrum's KDE and the MP density, both sampled
/// on a shared grid over [0, 1.5*b]. When the spectrum pokes past that (a
/// strong signal), the grid grows to lambda_max + 4h so escaped mass still
/// counts toward the deviation.
inline double mp_deviation(const HermitianSpectrum& eigs, const MPParams& params,
                           const KernelSpec& kernel = {}, std::size_t grid_points = 512) {
    if (eigs.size() == 0) throw DomainError("mp_deviation: empty spectrum");
    if (grid_points < 2) throw DomainError("mp_deviation: need at least 2 grid points");
    const auto [a, b] = mp_support(params);
    (void)a;
    double h = kernel.bandwidth;
    if (h == 0.0) h = auto_bandwidth(eigs);
    const double lambda_max = *std::max_element(eigs.eigenvalues.begin(), eigs.eigenvalues.end());
    const double hi = std::max(1.5 * b, lambda_max + 4.0 * h);
    KernelSpec resolved = kernel;
    resolved.bandwidth = h;
    const auto grid = linspace(0.0, hi, grid_points);
    const DensityCurve estimate = kde(eigs, resolved, grid);
    DensityCurve law;
    law.grid = grid;
    law.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) law.values[i] = mp_density(grid[i], params);
    return l1_distance(estimate, law);
}

/// Robust inner-edge estimate: the quantile-level order statistic of the
/// eigenvalue moduli (k = ceil(q*p), 1-based).
inline double ring_inner_estimate(const EigenCloud& cloud, double quantile = 0.02) {
    if (cloud.values.empty()) throw DomainError("ring_inner_estimate: empty cloud");
    if (!(quantile > 0.0) || !(quantile < 0.5))
        throw DomainError("ring_inner_estimate: quantile must be in (0, 0.5)");
    std::vector<double> moduli;
    moduli.reserve(cloud.values.size());
    for (const auto& z : cloud.values) moduli.push_back(std::abs(z));
    std::sort(moduli.begin(), moduli.end());
    const double pos = quantile * static_cast<double>(moduli.size());
    auto k = static_cast<std::size_t>(std::ceil(pos - 1e-12));
    if (k < 1) k = 1;
    if (k > moduli.size()) k = moduli.size();
    return moduli[k - 1];
}

/// Threshold = empirical quantile of the noise-only metric samples:
/// the (1 - target_fpr) order statistic for mp_l1 (which grows under
/// signal), the target_fpr order statistic for the ring radius (which
/// shrinks under signal).
inline CalibrationTable calibrate(std::vector<double> noise_runs, MetricKind kind,
                                  double target_fpr) {
    if (noise_runs.size() < 50)
        throw InsufficientRuns("calibrate: need at least 50 noise-only runs");
    if (!(target_fpr > 0.0) || !(target_fpr < 1.0))
        throw DomainError("calibrate: target_fpr must be in (0, 1)");
    std::sort(noise_runs.begin(), noise_runs.end());
    const auto count = noise_runs.size();
    std::size_t k;
    if (kind == MetricKind::mp_l1) {
        // (1 - fpr) quantile, computed as count - floor(fpr * count) to keep
        // k exact when fpr * count is integral.
        const auto drop = static_cast<std::size_t>(
            std::floor(target_fpr * static_cast<double>(count) + 1e-12));
        k = count - std::min(drop, count - 1);
    } else {
        const double pos = target_fpr * static_cast<double>(count);
        k = static_cast<std::size_t>(std::ceil(pos - 1e-12));
        if (k < 1) k = 1;
        if (k > count) k = count;
    }
    CalibrationTable table;
    table.metric_kind = kind;
    table.target_fpr = target_fpr;
    table.threshold = noise_runs[k - 1];
    table.samples = std::move(noise_runs);
    return table;
}

/// Crossing direction depends on the metric; ties decide noise_only.
inline DetectionReport decide(MetricKind kind, double metric_value,
                              const CalibrationTable& table, std::string input_label = {}) {
    if (kind != table.metric_kind)
        throw MetricKindMismatch("decide: metric kind does not match calibration table");
    DetectionReport report;
    report.metric_kind = kind;
    report.metric_value = metric_value;
    report.threshold = table.threshold;
    report.input_label = std::move(input_label);
    const bool signal = kind == MetricKind::mp_l1 ? metric_value > table.threshold
                                                  : metric_value < table.threshold;
    report.decision = signal ? Decision::signal_present : Decision::noise_only;
    return report;
}

} // namespace rmt
