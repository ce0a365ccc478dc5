// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "rmtsense/core_matrix.hpp"
#include "rmtsense/rng.hpp"
#include "support/oracles.hpp"

using rmt::cplx;
using rmt::DataMatrix;
using rmt::TimeSeries;

namespace {

TimeSeries series_of(std::initializer_list<cplx> xs) {
    TimeSeries s;
    s.samples = xs;
    return s;
}

TimeSeries complex_gaussian_series(std::size_t length, std::uint64_t seed) {
    rmt::Xoshiro256pp rng(seed);
    TimeSeries s;
    s.samples.resize(length);
    for (auto& x : s.samples) x = rng.complex_gaussian();
    return s;
}

double rms(const TimeSeries& s) { return std::sqrt(oracles::sample_power(s.samples)); }

} // namespace

TEST_CASE("remove_dc on a constant series yields zeros") {
    const auto out = rmt::remove_dc(series_of({{1, 0}, {1, 0}, {1, 0}}));
    for (const auto& x : out.samples) REQUIRE(std::abs(x) == 0.0);
}

TEST_CASE("remove_dc leaves a zero-mean series unchanged") {
    const auto out = rmt::remove_dc(series_of({{1, 0}, {-1, 0}, {1, 0}, {-1, 0}}));
    REQUIRE(out.samples[0] == cplx{1, 0});
    REQUIRE(out.samples[1] == cplx{-1, 0});
    REQUIRE(out.samples[2] == cplx{1, 0});
    REQUIRE(out.samples[3] == cplx{-1, 0});
}

TEST_CASE("remove_dc subtracts the mean") {
    const auto out = rmt::remove_dc(series_of({{2, 0}, {0, 0}}));
    REQUIRE(std::abs(out.samples[0] - cplx{1, 0}) < 1e-15);
    REQUIRE(std::abs(out.samples[1] - cplx{-1, 0}) < 1e-15);
}

TEST_CASE("remove_dc residual mean is below 1e-12 of the input RMS") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        auto s = complex_gaussian_series(100000, seed);
        for (auto& x : s.samples) x += cplx{3.5, -1.25}; // large offset
        const auto out = rmt::remove_dc(s);
        REQUIRE(std::abs(oracles::sample_mean(out.samples)) <= 1e-12 * rms(s));
        REQUIRE(out.samples.size() == s.samples.size());
    }
}

TEST_CASE("normalize two-point real series") {
    const auto [out, stats] = rmt::normalize(series_of({{0, 0}, {2, 0}}));
    REQUIRE(std::abs(out.samples[0] - cplx{-1, 0}) < 1e-15);
    REQUIRE(std::abs(out.samples[1] - cplx{1, 0}) < 1e-15);
    REQUIRE(std::abs(stats.mean - cplx{1, 0}) < 1e-15);
    REQUIRE(std::abs(stats.std_dev - 1.0) < 1e-15);
}

TEST_CASE("normalize rejects constant series") {
    REQUIRE_THROWS_AS(rmt::normalize(series_of({{5, 0}, {5, 0}, {5, 0}})),
                      rmt::DegenerateSeries);
}

TEST_CASE("normalize output has unit variance and zero mean at scale") {
    const auto s = complex_gaussian_series(640000, 42);
    const auto [out, stats] = rmt::normalize(s);
    // independent recomputation of the output statistics
    REQUIRE(std::abs(oracles::sample_mean(out.samples)) <= 1e-10);
    REQUIRE(std::abs(oracles::sample_variance_about_mean(out.samples) - 1.0) <= 1e-10);
    REQUIRE(stats.std_dev > 0.0);
}

TEST_CASE("normalize is idempotent up to 1e-8") {
    const auto s = complex_gaussian_series(10000, 5);
    const auto [once, stats1] = rmt::normalize(s);
    const auto [twice, stats2] = rmt::normalize(once);
    for (std::size_t i = 0; i < once.samples.size(); ++i)
        REQUIRE(std::abs(twice.samples[i] - once.samples[i]) <= 1e-8);
}

TEST_CASE("normalize_per_row gives each realization zero mean and unit power") {
    const auto s = complex_gaussian_series(4000, 17);
    const auto out = rmt::normalize_per_row(s, 400);
    for (std::size_t r = 0; r < 10; ++r) {
        std::vector<cplx> row(out.samples.begin() + static_cast<std::ptrdiff_t>(r * 400),
                              out.samples.begin() + static_cast<std::ptrdiff_t>((r + 1) * 400));
        REQUIRE(std::abs(oracles::sample_mean(row)) < 1e-10);
        REQUIRE(std::abs(oracles::sample_variance_about_mean(row) - 1.0) < 1e-10);
    }
}

TEST_CASE("reshape fills row-major") {
    const auto m = rmt::reshape_to_matrix(
        series_of({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}}), 2, 3);
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 3);
    for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index j = 0; j < 3; ++j)
            REQUIRE(m.entries()(i, j) == cplx{static_cast<double>(i * 3 + j), 0});
}

TEST_CASE("reshape at the experiment scale") {
    const auto s = complex_gaussian_series(640000, 1);
    const auto m = rmt::reshape_to_matrix(s, 400, 1600);
    REQUIRE(m.rows() == 400);
    REQUIRE(m.cols() == 1600);
    REQUIRE(m.aspect_ratio() == 0.25);
    REQUIRE(m.entries()(3, 7) == s.samples[3 * 1600 + 7]);
}

TEST_CASE("reshape errors") {
    const auto s7 = complex_gaussian_series(7, 2);
    REQUIRE_THROWS_AS(rmt::reshape_to_matrix(s7, 2, 3), rmt::LengthMismatch);
    const auto s6 = complex_gaussian_series(6, 2);
    REQUIRE_THROWS_AS(rmt::reshape_to_matrix(s6, 3, 2), rmt::BadAspect);
}

TEST_CASE("reshape then flatten is the identity") {
    const auto s = complex_gaussian_series(6 * 17, 9);
    const auto back = rmt::flatten(rmt::reshape_to_matrix(s, 6, 17));
    REQUIRE(back.samples == s.samples);
}

TEST_CASE("covariance spectrum of the identity") {
    const auto spec = rmt::sample_covariance_spectrum(DataMatrix(Eigen::MatrixXcd::Identity(2, 2)));
    REQUIRE(spec.size() == 2);
    REQUIRE(std::abs(spec.eigenvalues[0] - 0.5) < 1e-14);
    REQUIRE(std::abs(spec.eigenvalues[1] - 0.5) < 1e-14);
}

TEST_CASE("covariance spectrum of a diagonal matrix") {
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(2, 2);
    x(0, 0) = 1.0;
    x(1, 1) = 2.0;
    const auto spec = rmt::sample_covariance_spectrum(DataMatrix(std::move(x)));
    REQUIRE(std::abs(spec.eigenvalues[0] - 0.5) < 1e-14);
    REQUIRE(std::abs(spec.eigenvalues[1] - 2.0) < 1e-14);
}

TEST_CASE("largest eigenvalue concentrates near the upper MP edge") {
    const auto s = complex_gaussian_series(640000, 7);
    const auto spec = rmt::sample_covariance_spectrum(rmt::reshape_to_matrix(s, 400, 1600));
    const double top = spec.eigenvalues.back();
    REQUIRE(top >= 2.25 - 0.15);
    REQUIRE(top <= 2.25 + 0.15);
}

TEST_CASE("spectrum is invariant under a global phase") {
    const auto s = complex_gaussian_series(50 * 200, 21);
    const auto x = rmt::reshape_to_matrix(s, 50, 200);
    const cplx phase = std::polar(1.0, 1.234);
    const DataMatrix rotated(x.entries() * phase);
    const auto a = rmt::sample_covariance_spectrum(x);
    const auto b = rmt::sample_covariance_spectrum(rotated);
    for (std::size_t i = 0; i < a.size(); ++i)
        REQUIRE(std::abs(a.eigenvalues[i] - b.eigenvalues[i]) <= 1e-10);
}

TEST_CASE("eigenvalue sum matches the trace") {
    const auto s = complex_gaussian_series(100 * 400, 33);
    const auto x = rmt::reshape_to_matrix(s, 100, 400);
    const auto spec = rmt::sample_covariance_spectrum(x);
    double sum = 0.0;
    for (double v : spec.eigenvalues) sum += v;
    const double trace = x.entries().squaredNorm() / 400.0;
    REQUIRE(std::abs(sum - trace) <= 1e-8 * trace);
}

TEST_CASE("noise spectra stay inside the buffered MP support") {
    for (std::uint64_t seed : {101ull, 102ull, 103ull}) {
        const auto s = complex_gaussian_series(640000, seed);
        const auto spec = rmt::sample_covariance_spectrum(rmt::reshape_to_matrix(s, 400, 1600));
        std::size_t outside = 0;
        for (double v : spec.eigenvalues)
            if (v < 0.15 || v > 2.35) ++outside;
        REQUIRE(static_cast<double>(outside) <= 0.01 * static_cast<double>(spec.size()));
    }
}
