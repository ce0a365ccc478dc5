// SPDX-License-Identifier: Apache-2.0
//
// Closed-form spectral laws: Marchenko-Pastur, the single ring law for
// products of singular-value-equivalent matrices, and the beta power-law
// family evaluated by adaptive quadrature.
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <utility>

#include "rmtsense/errors.hpp"

namespace rmt {

/// Marchenko-Pastur parameters: aspect ratio c = N/n and entry variance.
struct MPParams {
    double c = 0.25;
    double sigma2 = 1.0;

    void validate() const {
        if (!(c > 0.0) || c > 1.0) throw DomainError("MPParams: c must be in (0, 1]");
        if (!(sigma2 > 0.0)) throw DomainError("MPParams: sigma2 must be positive");
    }
};

/// Ring law parameters: aspect ratio and factor count alpha.
struct RingParams {
    double c = 0.25;
    int alpha = 1;

    void validate() const {
        if (!(c > 0.0) || c > 1.0) throw DomainError("RingParams: c must be in (0, 1]");
        if (alpha < 1) throw DomainError("RingParams: alpha must be >= 1");
    }
};

/// Power-law parameters. The integration limits are not pinned down by the
/// closed form itself; the default constructor places them at the MP edges
/// s*(1 -+ sqrt(c))^2 so the large-beta regime nests the MP shape.
struct PowerLawParams {
    double beta = 1.0;
    double c = 0.25;
    double s = 1.0; // variance scale used in the fitting normalization
    double x_minus = 0.0;
    double x_plus = 1.0;

    static PowerLawParams with_mp_edges(double beta, double c, double s) {
        const double root = std::sqrt(c);
        return PowerLawParams{beta, c, s, s * (1.0 - root) * (1.0 - root),
                              s * (1.0 + root) * (1.0 + root)};
    }

    void validate() const {
        if (!(beta > 0.0)) throw DomainError("PowerLawParams: beta must be positive");
        if (!(c > 0.0) || c > 1.0) throw DomainError("PowerLawParams: c must be in (0, 1]");
        if (s < 0.8 - 1e-12 || s > 1.2 + 1e-12)
            throw DomainError("PowerLawParams: s must be in [0.8, 1.2]");
        if (!(x_minus >= 0.0) || !(x_plus > x_minus))
            throw DomainError("PowerLawParams: need 0 <= x_minus < x_plus");
    }
};

/// Support edges a = sigma2*(1-sqrt(c))^2, b = sigma2*(1+sqrt(c))^2.
inline std::pair<double, double> mp_support(const MPParams& p) {
    p.validate();
    const double root = std::sqrt(p.c);
    return {p.sigma2 * (1.0 - root) * (1.0 - root),
            p.sigma2 * (1.0 + root) * (1.0 + root)};
}

/// f_MP(x) = sqrt((b-x)(x-a)) / (2 pi x c sigma2) on [a, b], 0 elsewhere.
inline double mp_density(double x, const MPParams& p) {
    const auto [a, b] = mp_support(p);
    if (x <= a || x >= b) return 0.0;
    constexpr double pi = 3.14159265358979323846;
    return std::sqrt((b - x) * (x - a)) / (2.0 * pi * x * p.c * p.sigma2);
}

/// Annulus radii: inner (1-c)^(alpha/2), outer 1.
inline std::pair<double, double> ring_radii(const RingParams& p) {
    p.validate();
    return {std::pow(1.0 - p.c, 0.5 * static_cast<double>(p.alpha)), 1.0};
}

/// Ring density |z|^(2/alpha - 2) / (pi c alpha) on the annulus, 0 outside.
/// Depends on |z| only, hence exactly rotation invariant.
inline double ring_density(std::complex<double> z, const RingParams& p) {
    const auto [inner, outer] = ring_radii(p);
    const double r = std::abs(z);
    if (r < inner || r > outer) return 0.0;
    constexpr double pi = 3.14159265358979323846;
    const double expo = 2.0 / static_cast<double>(p.alpha) - 2.0;
    return std::pow(r, expo) / (pi * p.c * static_cast<double>(p.alpha));
}

/// Radial CDF of the ring law: P(|z| <= r) = (r^(2/alpha) - (1-c)) / c on
/// [inner, 1]. Useful for goodness-of-fit against eigenvalue moduli.
inline double ring_radial_cdf(double r, const RingParams& p) {
    const auto [inner, outer] = ring_radii(p);
    if (r <= inner) return 0.0;
    if (r >= outer) return 1.0;
    return (std::pow(r, 2.0 / static_cast<double>(p.alpha)) - (1.0 - p.c)) / p.c;
}

namespace detail {

// Integrates t^beta * exp(-k t) * sqrt((t - lo)(hi - t)) dt over [lo, hi]
// with Gauss-Chebyshev (second kind) nodes, which absorb the sqrt weight
// exactly; the smooth remainder converges spectrally under node doubling.
// Returns log of the integral (the integrand is rescaled by its peak to
// avoid under/overflow for large beta or k).
inline double log_edge_weighted_integral(double beta, double k, double lo, double hi,
                                         double rel_tol) {
    constexpr double pi = 3.14159265358979323846;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    auto log_core = [&](double t) {
        return t > 0.0 ? beta * std::log(t) - k * t
                       : -std::numeric_limits<double>::infinity();
    };
    // peak of beta*ln t - k*t sits at t = beta/k
    const double t_star = std::min(hi, std::max(lo, k > 0.0 ? beta / k : hi));
    const double log_peak = log_core(t_star > 0.0 ? t_star : mid);

    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int m = 16; m <= 16384; m *= 2) {
        double acc = 0.0;
        for (int i = 1; i <= m; ++i) {
            const double theta = pi * static_cast<double>(i) / static_cast<double>(m + 1);
            const double t = mid + half * std::cos(theta);
            const double sin_theta = std::sin(theta);
            acc += sin_theta * sin_theta * std::exp(log_core(t) - log_peak);
        }
        const double integral = acc * (pi / static_cast<double>(m + 1)) * half * half;
        if (std::isfinite(prev) &&
            std::abs(integral - prev) <= rel_tol * std::abs(integral) + 1e-300)
            return log_peak + std::log(integral);
        prev = integral;
    }
    throw QuadratureFailure("edge-weighted integral did not reach requested tolerance");
}

} // namespace detail

/// rho_beta(x): prefactor (c beta / x)^(beta+2) / (2 pi c beta Gamma(beta+1))
/// times the edge-weighted integral over [x_minus, x_plus], evaluated to
/// relative tolerance quad_tol. Not guaranteed to integrate to one for
/// arbitrary integration limits.
inline double power_law_density(double x, const PowerLawParams& p, double quad_tol = 1e-8) {
    p.validate();
    if (!(x > 0.0)) throw DomainError("power_law_density: x must be positive");
    if (!(quad_tol > 0.0)) throw DomainError("power_law_density: quad_tol must be positive");
    constexpr double pi = 3.14159265358979323846;
    const double k = p.c * p.beta / x;
    const double log_integral =
        detail::log_edge_weighted_integral(p.beta, k, p.x_minus, p.x_plus, quad_tol);
    const double log_prefactor = (p.beta + 2.0) * std::log(k) - std::lgamma(p.beta + 1.0) -
                                 std::log(2.0 * pi * p.c * p.beta);
    return std::exp(log_prefactor + log_integral);
}

} // namespace rmt
