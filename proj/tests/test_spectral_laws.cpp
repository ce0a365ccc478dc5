// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "rmtsense/spectral_laws.hpp"
#include "support/oracles.hpp"

using rmt::MPParams;
using rmt::PowerLawParams;
using rmt::RingParams;

TEST_CASE("MP support edges") {
    const auto [a1, b1] = rmt::mp_support({0.25, 1.0});
    REQUIRE(a1 == 0.25);
    REQUIRE(b1 == 2.25);
    const auto [a2, b2] = rmt::mp_support({1.0, 1.0});
    REQUIRE(a2 == 0.0);
    REQUIRE(b2 == 4.0);
    const auto [a3, b3] = rmt::mp_support({0.25, 2.0});
    REQUIRE(a3 == 0.5);
    REQUIRE(b3 == 4.5);
}

TEST_CASE("MP support edges move monotonically in c") {
    double prev_a = 1e9, prev_b = -1e9;
    for (double c : {0.1, 0.25, 0.5, 0.75, 1.0}) {
        const auto [a, b] = rmt::mp_support({c, 1.0});
        REQUIRE(a < prev_a);
        REQUIRE(b > prev_b);
        prev_a = a;
        prev_b = b;
    }
}

TEST_CASE("MP density values") {
    const MPParams p{0.25, 1.0};
    REQUIRE(rmt::mp_density(3.0, p) == 0.0);
    REQUIRE(rmt::mp_density(0.25, p) == 0.0);
    REQUIRE(rmt::mp_density(2.25, p) == 0.0);
    // closed form at x = 1: (2/pi) * sqrt(1.25 * 0.75)
    const double expected = (2.0 / 3.14159265358979323846) * std::sqrt(1.25 * 0.75);
    REQUIRE(std::abs(rmt::mp_density(1.0, p) - expected) < 1e-12);
    REQUIRE(std::abs(expected - 0.61638) < 1e-4);
}

TEST_CASE("MP density integrates to one") {
    for (double c : {0.25, 0.5, 0.9}) {
        const MPParams p{c, 1.0};
        const auto [a, b] = rmt::mp_support(p);
        // substitute x = a + (b-a) sin^2(theta) to smooth the sqrt edges
        const double width = b - a;
        const auto integrand = [&](double theta) {
            const double sin_t = std::sin(theta);
            const double cos_t = std::cos(theta);
            const double x = a + width * sin_t * sin_t;
            return rmt::mp_density(x, p) * width * 2.0 * sin_t * cos_t;
        };
        const double mass =
            oracles::adaptive_simpson(integrand, 0.0, 1.57079632679489661923, 1e-10);
        REQUIRE(std::abs(mass - 1.0) < 1e-6);
    }
}

TEST_CASE("ring radii") {
    const auto [in1, out1] = rmt::ring_radii({1.0, 3});
    REQUIRE(in1 == 0.0);
    REQUIRE(out1 == 1.0);
    const auto [in2, out2] = rmt::ring_radii({0.25, 1});
    REQUIRE(std::abs(in2 - 0.8660254037844386) < 1e-12);
    REQUIRE(out2 == 1.0);
    const auto [in3, out3] = rmt::ring_radii({0.25, 5});
    REQUIRE(std::abs(in3 - std::pow(0.75, 2.5)) < 1e-15);
    REQUIRE(std::abs(in3 - 0.48714) < 1e-5);
}

TEST_CASE("inner radius shrinks as alpha grows") {
    double prev = 1.0;
    for (int alpha : {1, 2, 5, 10}) {
        const auto [inner, outer] = rmt::ring_radii({0.25, alpha});
        REQUIRE(inner < prev);
        prev = inner;
    }
}

TEST_CASE("ring density values") {
    const RingParams p{0.25, 5};
    // inside the annulus at |z| = 0.5
    const double expected = std::pow(0.5, 2.0 / 5.0 - 2.0) / (3.14159265358979323846 * 1.25);
    REQUIRE(std::abs(rmt::ring_density({0.5, 0.0}, p) - expected) < 1e-12);
    REQUIRE(std::abs(expected - 0.77190) < 1e-4);
    // inside the hole
    REQUIRE(rmt::ring_density({0.3, 0.0}, p) == 0.0);
    // circular-law constant
    const double quarter = rmt::ring_density({0.5, 0.0}, RingParams{1.0, 1});
    REQUIRE(std::abs(quarter - 1.0 / 3.14159265358979323846) < 1e-15);
}

TEST_CASE("ring density is rotation invariant") {
    const RingParams p{0.25, 5};
    const std::complex<double> z{0.6, 0.2};
    const double base = rmt::ring_density(z, p);
    for (double theta : {0.3, 1.1, 2.9, 4.4}) {
        const double rotated = rmt::ring_density(z * std::polar(1.0, theta), p);
        REQUIRE(std::abs(rotated - base) <= 1e-9 * base);
    }
}

TEST_CASE("ring density integrates to one over the annulus") {
    for (int alpha : {1, 3, 5}) {
        const RingParams p{0.25, alpha};
        const auto [inner, outer] = rmt::ring_radii(p);
        const auto radial = [&](double r) {
            return rmt::ring_density({r, 0.0}, p) * 2.0 * 3.14159265358979323846 * r;
        };
        const double mass = oracles::adaptive_simpson(radial, inner, outer, 1e-10);
        REQUIRE(std::abs(mass - 1.0) < 1e-5);
    }
}

TEST_CASE("ring radial CDF matches integrated density") {
    const RingParams p{0.25, 5};
    const auto [inner, outer] = rmt::ring_radii(p);
    REQUIRE(rmt::ring_radial_cdf(inner, p) == 0.0);
    REQUIRE(rmt::ring_radial_cdf(1.0, p) == 1.0);
    const auto radial = [&](double r) {
        return rmt::ring_density({r, 0.0}, p) * 2.0 * 3.14159265358979323846 * r;
    };
    for (double r : {0.55, 0.7, 0.9}) {
        const double integrated = oracles::adaptive_simpson(radial, inner, r, 1e-11);
        REQUIRE(std::abs(rmt::ring_radial_cdf(r, p) - integrated) < 1e-8);
    }
}

TEST_CASE("power law rejects nonpositive x") {
    const auto p = PowerLawParams::with_mp_edges(1.0, 0.25, 1.0);
    REQUIRE_THROWS_AS(rmt::power_law_density(0.0, p), rmt::DomainError);
    REQUIRE_THROWS_AS(rmt::power_law_density(-1.0, p), rmt::DomainError);
}

TEST_CASE("power law decays at infinity") {
    const auto p = PowerLawParams::with_mp_edges(1.0, 0.25, 1.0);
    REQUIRE(rmt::power_law_density(1e6, p) < 1e-6);
}

TEST_CASE("power law agrees with a fixed-order Gauss-Legendre oracle") {
    PowerLawParams p;
    p.beta = 1.0;
    p.c = 0.25;
    p.s = 1.0;
    p.x_minus = 0.25;
    p.x_plus = 2.25;
    const double x = 1.0;
    const double value = rmt::power_law_density(x, p, 1e-10);

    const double k = p.c * p.beta / x;
    const auto integrand = [&](double t) {
        return std::pow(t, p.beta) * std::exp(-k * t) *
               std::sqrt((t - p.x_minus) * (p.x_plus - t));
    };
    const double integral = oracles::gauss_legendre_integrate(integrand, p.x_minus, p.x_plus, 2000);
    const double prefactor = std::pow(k, p.beta + 2.0) /
                             (2.0 * 3.14159265358979323846 * p.c * p.beta * std::tgamma(p.beta + 1.0));
    const double expected = prefactor * integral;
    REQUIRE(std::abs(value - expected) <= 1e-6 * expected);
}

TEST_CASE("power law is continuous on a fine grid") {
    const auto p = PowerLawParams::with_mp_edges(2.0, 0.25, 1.0);
    const double lo = 0.05, hi = 5.0;
    const int points = 600;
    std::vector<double> f(points);
    const double dx = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i)
        f[static_cast<std::size_t>(i)] = rmt::power_law_density(lo + i * dx, p, 1e-9);
    for (int i = 1; i + 2 < points; ++i) {
        const double jump = std::abs(f[i + 1] - f[i]);
        const double neighbor =
            std::max(std::abs(f[i] - f[i - 1]), std::abs(f[i + 2] - f[i + 1]));
        REQUIRE(jump <= 3.0 * neighbor + 1e-9);
    }
}

TEST_CASE("parameter validation") {
    REQUIRE_THROWS_AS(rmt::mp_support({0.0, 1.0}), rmt::DomainError);
    REQUIRE_THROWS_AS(rmt::mp_support({1.5, 1.0}), rmt::DomainError);
    REQUIRE_THROWS_AS(rmt::mp_support({0.25, -1.0}), rmt::DomainError);
    REQUIRE_THROWS_AS(rmt::ring_radii({0.25, 0}), rmt::DomainError);
    PowerLawParams bad_s = PowerLawParams::with_mp_edges(1.0, 0.25, 1.0);
    bad_s.s = 1.5;
    REQUIRE_THROWS_AS(bad_s.validate(), rmt::DomainError);
    PowerLawParams bad_edges = PowerLawParams::with_mp_edges(1.0, 0.25, 1.0);
    bad_edges.x_plus = bad_edges.x_minus;
    REQUIRE_THROWS_AS(bad_edges.validate(), rmt::DomainError);
}
