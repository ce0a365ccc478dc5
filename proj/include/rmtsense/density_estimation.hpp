// SPDX-License-Identifier: Apache-2.0
//
// Empirical spectral densities: histogram, kernel density estimate, curve
// distances, and the (beta, s) power-law grid fit.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "rmtsense/core_matrix.hpp"
#include "rmtsense/detail/stats.hpp"
#include "rmtsense/errors.hpp"
#include "rmtsense/parallel.hpp"
#include "rmtsense/spectral_laws.hpp"

namespace rmt {

/// A real function sampled on a strictly increasing grid.
struct DensityCurve {
    std::vector<double> grid;
    std::vector<double> values;
};

enum class KernelKind { gaussian, epanechnikov };

/// Kernel choice; bandwidth 0 means "auto" (Silverman rule).
struct KernelSpec {
    KernelKind kind = KernelKind::gaussian;
    double bandwidth = 0.0;
};

/// Result of the exhaustive (beta, s) grid search.
struct PowerLawFit {
    double beta_hat = 0.0;
    double s_hat = 1.0;
    double sse = 0.0;
    double beta_step = 0.0;
    double s_step = 0.0;
};

/// Inclusive arithmetic progression lo, lo+step, ..., <= hi. A nonpositive
/// step (or hi <= lo) degenerates to the single point lo.
struct GridRange {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;

    std::vector<double> enumerate() const {
        std::vector<double> out;
        if (!(step > 0.0) || !(hi > lo)) {
            out.push_back(lo);
            return out;
        }
        for (double v = lo; v <= hi + 0.5 * step; v += step)
            out.push_back(std::min(v, hi));
        if (out.size() >= 2 && out[out.size() - 1] == out[out.size() - 2]) out.pop_back();
        return out;
    }
};

inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
    if (count < 2 || !(hi > lo)) throw DomainError("linspace: need count >= 2 and hi > lo");
    std::vector<double> out(count);
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
    out.back() = hi;
    return out;
}

/// Histogram of the spectrum over [lo, hi]; heights are normalized so the
/// curve integrates to (eigenvalues inside range) / (total eigenvalues).
/// Grid points are the bin centers.
inline DensityCurve esd_histogram(const HermitianSpectrum& eigs, int num_bins,
                                  double lo, double hi) {
    if (num_bins < 1) throw DomainError("esd_histogram: need at least 1 bin");
    if (!(hi > lo)) throw DomainError("esd_histogram: need lo < hi");
    if (eigs.size() == 0) throw DomainError("esd_histogram: empty spectrum");
    const double width = (hi - lo) / static_cast<double>(num_bins);
    std::vector<std::size_t> counts(static_cast<std::size_t>(num_bins), 0);
    std::size_t inside = 0;
    for (double v : eigs.eigenvalues) {
        if (v < lo || v > hi) continue;
        auto bin = static_cast<std::size_t>((v - lo) / width);
        if (bin >= counts.size()) bin = counts.size() - 1; // v == hi
        ++counts[bin];
        ++inside;
    }
    if (inside == 0) throw EmptyRange("esd_histogram: no eigenvalues in range");
    DensityCurve curve;
    curve.grid.resize(counts.size());
    curve.values.resize(counts.size());
    const double scale = 1.0 / (static_cast<double>(eigs.size()) * width);
    for (std::size_t b = 0; b < counts.size(); ++b) {
        curve.grid[b] = lo + (static_cast<double>(b) + 0.5) * width;
        curve.values[b] = static_cast<double>(counts[b]) * scale;
    }
    return curve;
}

/// Silverman-style bandwidth h = 0.9 * min(sd, IQR/1.34) * p^(-1/5), with the
/// sample (p-1 divisor) standard deviation and type-7 quartiles. Falls back
/// to whichever of sd/IQR is positive when the other degenerates.
inline double auto_bandwidth(const HermitianSpectrum& eigs) {
    const std::size_t p = eigs.size();
    if (p < 2) throw DomainError("auto_bandwidth: need at least 2 eigenvalues");
    std::vector<double> sorted = eigs.eigenvalues;
    std::sort(sorted.begin(), sorted.end());
    detail::KahanSum sum;
    for (double v : sorted) sum.add(v);
    const double mean = sum.value() / static_cast<double>(p);
    detail::KahanSum sq;
    for (double v : sorted) sq.add((v - mean) * (v - mean));
    const double sd = std::sqrt(sq.value() / static_cast<double>(p - 1));
    const double iqr =
        detail::quantile_sorted(sorted, 0.75) - detail::quantile_sorted(sorted, 0.25);
    double spread = sd;
    if (iqr > 0.0) spread = std::min(spread, iqr / 1.34);
    if (!(spread > 0.0))
        throw DegenerateSpectrum("auto_bandwidth: all eigenvalues equal");
    return 0.9 * spread * std::pow(static_cast<double>(p), -0.2);
}

/// f(x) = (1/(p h)) sum_i K((x - lambda_i)/h) sampled on the given grid.
inline DensityCurve kde(const HermitianSpectrum& eigs, const KernelSpec& spec,
                        std::vector<double> grid) {
    if (eigs.size() == 0) throw DomainError("kde: empty spectrum");
    if (grid.size() < 1) throw DomainError("kde: empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw DomainError("kde: grid must be strictly increasing");
    double h = spec.bandwidth;
    if (h == 0.0) h = auto_bandwidth(eigs);
    if (!(h > 0.0)) throw DomainError("kde: bandwidth must be positive");

    constexpr double inv_sqrt_2pi = 0.39894228040143267794;
    DensityCurve curve;
    curve.grid = std::move(grid);
    curve.values.assign(curve.grid.size(), 0.0);
    const double norm = 1.0 / (static_cast<double>(eigs.size()) * h);
    for (std::size_t g = 0; g < curve.grid.size(); ++g) {
        const double x = curve.grid[g];
        double acc = 0.0;
        if (spec.kind == KernelKind::gaussian) {
            for (double lambda : eigs.eigenvalues) {
                const double u = (x - lambda) / h;
                acc += std::exp(-0.5 * u * u) * inv_sqrt_2pi;
            }
        } else {
            for (double lambda : eigs.eigenvalues) {
                const double u = (x - lambda) / h;
                if (u > -1.0 && u < 1.0) acc += 0.75 * (1.0 - u * u);
            }
        }
        curve.values[g] = acc * norm;
    }
    return curve;
}

/// Trapezoidal integral of |fa - fb|; both curves must share one grid.
inline double l1_distance(const DensityCurve& fa, const DensityCurve& fb) {
    if (fa.grid.size() != fb.grid.size() || !std::equal(fa.grid.begin(), fa.grid.end(), fb.grid.begin()))
        throw GridMismatch("l1_distance: curves sampled on different grids");
    double acc = 0.0;
    for (std::size_t i = 1; i < fa.grid.size(); ++i) {
        const double da = std::abs(fa.values[i] - fb.values[i]);
        const double db = std::abs(fa.values[i - 1] - fb.values[i - 1]);
        acc += 0.5 * (da + db) * (fa.grid[i] - fa.grid[i - 1]);
    }
    return acc;
}

/// Samples rho_beta on a grid, treating x <= 0 as density zero (the x -> 0+
/// limit) and optionally renormalizing the sampled curve to unit mass.
inline DensityCurve sample_power_law(const std::vector<double>& grid,
                                     const PowerLawParams& params, double quad_tol,
                                     bool renormalize) {
    DensityCurve curve;
    curve.grid = grid;
    curve.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        curve.values[i] = grid[i] > 0.0 ? power_law_density(grid[i], params, quad_tol) : 0.0;
    if (renormalize) {
        const double mass = detail::trapezoid(curve.grid, curve.values);
        if (mass > 0.0)
            for (auto& v : curve.values) v /= mass;
    }
    return curve;
}

/// Exhaustive (beta, s) grid fit of the power law against a KDE target.
/// For each scale s the spectrum is rescaled as if the underlying data were
/// renormalized by x = s*(raw - mu)/sigma^2 (eigenvalues scale by the square
/// of s/sigma^2, with sigma^2 = eigs_raw.source_sigma2), the KDE is rebuilt
/// on the target grid, and SSE = sum over grid of (rho_beta - kde)^2. The
/// minimizer is unique by the tie-break: smaller SSE, then smaller beta,
/// then smaller s, regardless of evaluation order.
inline PowerLawFit fit_power_law(const DensityCurve& target, const HermitianSpectrum& eigs_raw,
                                 const GridRange& beta_range, const GridRange& s_range,
                                 double quad_tol = 1e-7, const KernelSpec& kernel = {},
                                 bool renormalize = true) {
    if (target.grid.size() < 2) throw DomainError("fit_power_law: target grid too small");
    if (eigs_raw.size() == 0) throw DomainError("fit_power_law: empty spectrum");
    if (!(eigs_raw.source_sigma2 > 0.0))
        throw DomainError("fit_power_law: source_sigma2 must be positive");
    const std::vector<double> betas = beta_range.enumerate();
    const std::vector<double> scales = s_range.enumerate();

    // KDE target depends on s only; build once per scale.
    std::vector<DensityCurve> kde_per_scale(scales.size());
    for (std::size_t si = 0; si < scales.size(); ++si) {
        const double factor = scales[si] / eigs_raw.source_sigma2;
        HermitianSpectrum scaled = eigs_raw;
        for (auto& v : scaled.eigenvalues) v *= factor * factor;
        kde_per_scale[si] = kde(scaled, kernel, target.grid);
    }

    const std::size_t cells = betas.size() * scales.size();
    std::vector<double> sse(cells);
    parallel_for(cells, [&](std::size_t cell) {
        const std::size_t bi = cell / scales.size();
        const std::size_t si = cell % scales.size();
        const auto params =
            PowerLawParams::with_mp_edges(betas[bi], eigs_raw.source_c, scales[si]);
        const DensityCurve law = sample_power_law(target.grid, params, quad_tol, renormalize);
        const auto& est = kde_per_scale[si].values;
        double acc = 0.0;
        for (std::size_t i = 0; i < law.values.size(); ++i) {
            const double d = law.values[i] - est[i];
            acc += d * d;
        }
        sse[cell] = acc;
    });

    std::size_t best = 0;
    for (std::size_t cell = 1; cell < cells; ++cell) {
        const double b_new = betas[cell / scales.size()];
        const double s_new = scales[cell % scales.size()];
        const double b_old = betas[best / scales.size()];
        const double s_old = scales[best % scales.size()];
        if (sse[cell] < sse[best] ||
            (sse[cell] == sse[best] &&
             (b_new < b_old || (b_new == b_old && s_new < s_old))))
            best = cell;
    }
    PowerLawFit fit;
    fit.beta_hat = betas[best / scales.size()];
    fit.s_hat = scales[best % scales.size()];
    fit.sse = sse[best];
    fit.beta_step = betas.size() > 1 ? beta_range.step : 0.0;
    fit.s_step = scales.size() > 1 ? s_range.step : 0.0;
    return fit;
}

} // namespace rmt
