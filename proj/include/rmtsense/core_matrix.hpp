// SPDX-License-Identifier: Apache-2.0
//
// Raw complex time series -> normalized data matrices -> sample covariance
// spectra. All operations are pure; values are safe to share across threads.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rmtsense/detail/stats.hpp"
#include "rmtsense/errors.hpp"

namespace rmt {

using cplx = std::complex<double>;

/// A finite sequence of complex baseband samples.
struct TimeSeries {
    std::vector<cplx> samples;
    double sample_rate_hz = 1.0;
    std::string label;

    std::size_t size() const { return samples.size(); }
};

/// Mean/scale pair removed by normalize().
struct NormalizationStats {
    cplx mean{0.0, 0.0};
    double std_dev = 1.0; // sqrt(E|x - mean|^2), population divisor
};

/// N x n complex data matrix with aspect ratio c = N/n in (0, 1].
class DataMatrix {
public:
    explicit DataMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
        if (entries_.rows() < 1 || entries_.cols() < 1)
            throw DomainError("data matrix must be at least 1x1");
        if (entries_.rows() > entries_.cols())
            throw BadAspect("rows exceed columns (need N <= n)");
        if (!entries_.allFinite())
            throw DomainError("data matrix entries must be finite");
    }

    Eigen::Index rows() const { return entries_.rows(); }
    Eigen::Index cols() const { return entries_.cols(); }
    double aspect_ratio() const {
        return static_cast<double>(rows()) / static_cast<double>(cols());
    }
    const Eigen::MatrixXcd& entries() const { return entries_; }

private:
    Eigen::MatrixXcd entries_;
};

/// Eigenvalues of the N x N sample covariance form (1/n) X X^H, ascending.
struct HermitianSpectrum {
    std::vector<double> eigenvalues; // sorted ascending, >= 0 after clamping
    double source_c = 1.0;           // N/n of the source matrix
    double source_sigma2 = 1.0;      // mean |entry|^2 of the source matrix

    std::size_t size() const { return eigenvalues.size(); }
};

/// Subtracts the sample mean (DC offset / zero-frequency leakage). Two
/// passes, so the residual mean is far below the 1e-12 * RMS contract.
inline TimeSeries remove_dc(const TimeSeries& series) {
    if (series.samples.empty()) throw DomainError("remove_dc: empty series");
    TimeSeries out;
    out.sample_rate_hz = series.sample_rate_hz;
    out.label = series.label;
    out.samples.resize(series.size());
    const cplx mu = detail::mean(series.samples);
    for (std::size_t i = 0; i < series.size(); ++i)
        out.samples[i] = series.samples[i] - mu;
    const cplx residual = detail::mean(out.samples);
    for (auto& x : out.samples) x -= residual;
    return out;
}

/// Centers and scales to zero mean, unit power: x = (raw - mu) / sigma with
/// sigma = sqrt(E|raw - mu|^2) over the full series (population divisor).
inline std::pair<TimeSeries, NormalizationStats> normalize(const TimeSeries& series) {
    if (series.size() < 2)
        throw DegenerateSeries("normalize: need at least 2 samples");
    const cplx mu = detail::mean(series.samples);
    const double var = detail::centered_power(series.samples, mu);
    if (!(var > 0.0))
        throw DegenerateSeries("normalize: zero-variance (constant) series");
    const double sigma = std::sqrt(var);
    TimeSeries out;
    out.sample_rate_hz = series.sample_rate_hz;
    out.label = series.label;
    out.samples.resize(series.size());
    const double inv = 1.0 / sigma;
    for (std::size_t i = 0; i < series.size(); ++i)
        out.samples[i] = (series.samples[i] - mu) * inv;
    return {std::move(out), NormalizationStats{mu, sigma}};
}

/// Normalizes each consecutive length-n realization with its own mean/scale.
/// Alternative to the global rule above for pipelines that want it.
inline TimeSeries normalize_per_row(const TimeSeries& series, std::size_t row_length) {
    if (row_length < 2) throw DomainError("normalize_per_row: row length < 2");
    if (series.size() % row_length != 0)
        throw LengthMismatch("normalize_per_row: length not a multiple of row length");
    TimeSeries out;
    out.sample_rate_hz = series.sample_rate_hz;
    out.label = series.label;
    out.samples.reserve(series.size());
    std::vector<cplx> row(row_length);
    for (std::size_t start = 0; start < series.size(); start += row_length) {
        std::copy(series.samples.begin() + static_cast<std::ptrdiff_t>(start),
                  series.samples.begin() + static_cast<std::ptrdiff_t>(start + row_length),
                  row.begin());
        const cplx mu = detail::mean(row);
        const double var = detail::centered_power(row, mu);
        if (!(var > 0.0))
            throw DegenerateSeries("normalize_per_row: constant realization");
        const double inv = 1.0 / std::sqrt(var);
        for (const auto& x : row) out.samples.push_back((x - mu) * inv);
    }
    return out;
}

/// Row-major fill: entry (i, j) = sample[i*n + j].
inline DataMatrix reshape_to_matrix(const TimeSeries& series, Eigen::Index n_rows,
                                    Eigen::Index n_cols) {
    if (n_rows < 1 || n_cols < 1)
        throw DomainError("reshape_to_matrix: dimensions must be positive");
    if (n_rows > n_cols)
        throw BadAspect("reshape_to_matrix: need N <= n");
    const auto needed = static_cast<std::size_t>(n_rows) * static_cast<std::size_t>(n_cols);
    if (series.size() != needed)
        throw LengthMismatch("reshape_to_matrix: series length != N*n");
    Eigen::MatrixXcd m(n_rows, n_cols);
    for (Eigen::Index i = 0; i < n_rows; ++i)
        for (Eigen::Index j = 0; j < n_cols; ++j)
            m(i, j) = series.samples[static_cast<std::size_t>(i * n_cols + j)];
    return DataMatrix(std::move(m));
}

/// Flattens row-major; inverse of reshape_to_matrix.
inline TimeSeries flatten(const DataMatrix& m, double sample_rate_hz = 1.0) {
    TimeSeries out;
    out.sample_rate_hz = sample_rate_hz;
    out.samples.reserve(static_cast<std::size_t>(m.rows() * m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out.samples.push_back(m.entries()(i, j));
    return out;
}

/// Eigenvalues of S = (1/n) X X^H, the N x N companion of (1/n) X^H X with
/// the identical nonzero spectrum. Negative values above -1e-10 are rounding
/// and get clamped to zero; anything lower counts as a clamp failure, and
/// more than 0.1% of those means the solve cannot be trusted.
inline HermitianSpectrum sample_covariance_spectrum(const DataMatrix& x) {
    const Eigen::Index n_rows = x.rows();
    const Eigen::Index n_cols = x.cols();
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n_rows, n_rows);
    s.selfadjointView<Eigen::Lower>().rankUpdate(x.entries(), 1.0 / static_cast<double>(n_cols));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
    solver.compute(s, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalFailure("sample_covariance_spectrum: eigensolver did not converge");

    HermitianSpectrum spectrum;
    spectrum.source_c = x.aspect_ratio();
    spectrum.source_sigma2 =
        x.entries().squaredNorm() / static_cast<double>(n_rows * n_cols);
    spectrum.eigenvalues.resize(static_cast<std::size_t>(n_rows));
    std::size_t badly_negative = 0;
    for (Eigen::Index i = 0; i < n_rows; ++i) {
        double v = solver.eigenvalues()(i);
        if (v < 0.0) {
            if (v < -1e-10) ++badly_negative;
            v = 0.0;
        }
        spectrum.eigenvalues[static_cast<std::size_t>(i)] = v;
    }
    if (static_cast<double>(badly_negative) > 1e-3 * static_cast<double>(n_rows))
        throw NumericalFailure("sample_covariance_spectrum: too many negative eigenvalues");
    return spectrum;
}

} // namespace rmt
