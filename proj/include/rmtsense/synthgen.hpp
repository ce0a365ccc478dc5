// SPDX-License-Identifier: Apache-2.0
//
// Deterministic synthetic waveform generators standing in for RF captures:
// white noise with receiver impairments, i.i.d. BPSK, AR(1) correlated
// signals, tones, framed packets with repeating headers, and multi-sensor
// scenes at a configurable SNR. Everything is a pure function of its spec.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rmtsense/core_matrix.hpp"
#include "rmtsense/detail/stats.hpp"
#include "rmtsense/errors.hpp"
#include "rmtsense/rng.hpp"

namespace rmt {

/// Complex white noise, optionally with DC offset and oscillator leakage.
struct NoiseSpec {
    std::size_t length = 0;
    double variance = 1.0; // E|x|^2 of the noise part
    std::uint64_t seed = 0;
    cplx dc_offset{0.0, 0.0};
    double lo_leakage_amp = 0.0; // zero-frequency leakage amplitude

    void validate() const {
        if (length < 1) throw DomainError("NoiseSpec: length must be >= 1");
        if (!(variance > 0.0)) throw DomainError("NoiseSpec: variance must be positive");
        if (lo_leakage_amp < 0.0) throw DomainError("NoiseSpec: negative leakage amplitude");
    }
};

enum class SignalKind { bpsk_iid, ar1, tone, framed };

inline const char* to_string(SignalKind kind) {
    switch (kind) {
        case SignalKind::bpsk_iid: return "bpsk_iid";
        case SignalKind::ar1: return "ar1";
        case SignalKind::tone: return "tone";
        default: return "framed";
    }
}

/// Fixed 32-chip +-1 header used by the framed generator unless overridden
/// (bits of the splitmix64 increment constant, mapped LSB-first to +-1).
inline std::vector<double> default_frame_header() {
    std::vector<double> header(32);
    const std::uint64_t bits = 0x9E3779B97F4A7C15ull;
    for (std::size_t k = 0; k < header.size(); ++k)
        header[k] = ((bits >> k) & 1u) ? 1.0 : -1.0;
    return header;
}

/// Signal description; the kind selects which parameters matter.
struct SignalSpec {
    SignalKind kind = SignalKind::bpsk_iid;
    std::size_t length = 0;
    std::uint64_t seed = 0;
    // ar1
    double rho = 0.0;
    // tone: cycles per sample in [-0.5, 0.5]
    double tone_freq = 0.1;
    // framed
    std::vector<double> header = default_frame_header();
    std::size_t frame_length = 128;
    std::uint64_t payload_seed = 1;

    void validate() const {
        if (length < 1) throw DomainError("SignalSpec: length must be >= 1");
        switch (kind) {
            case SignalKind::ar1:
                if (!(rho > -1.0) || !(rho < 1.0))
                    throw DomainError("SignalSpec: ar1 rho must be in (-1, 1)");
                break;
            case SignalKind::tone:
                if (std::abs(tone_freq) > 0.5)
                    throw DomainError("SignalSpec: tone frequency must be in [-0.5, 0.5]");
                break;
            case SignalKind::framed:
                if (header.empty()) throw DomainError("SignalSpec: empty frame header");
                if (frame_length < header.size())
                    throw DomainError("SignalSpec: frame shorter than header");
                break;
            default: break;
        }
    }
};

/// alpha sensors observing an optional shared signal in independent noise.
struct SceneSpec {
    std::size_t alpha = 1;
    std::optional<SignalSpec> signal;
    double snr_db = 0.0;
    std::uint64_t noise_seed_base = 0;
    std::size_t length = 0;
    double noise_variance = 1.0;

    void validate() const {
        if (alpha < 1) throw DomainError("SceneSpec: alpha must be >= 1");
        if (length < 1) throw DomainError("SceneSpec: length must be >= 1");
        if (!(noise_variance > 0.0)) throw DomainError("SceneSpec: noise variance must be positive");
    }
};

/// Circularly-symmetric complex Gaussian noise plus the configured DC offset
/// and a constant leakage phasor whose phase is drawn first from the seed.
inline TimeSeries gen_noise(const NoiseSpec& spec) {
    spec.validate();
    Xoshiro256pp rng(spec.seed);
    constexpr double two_pi = 6.28318530717958647692;
    cplx leakage{0.0, 0.0};
    if (spec.lo_leakage_amp > 0.0) {
        const double phase = two_pi * rng.uniform01();
        leakage = spec.lo_leakage_amp * cplx{std::cos(phase), std::sin(phase)};
    }
    const double amp = std::sqrt(spec.variance);
    TimeSeries out;
    out.label = "noise";
    out.samples.resize(spec.length);
    for (auto& x : out.samples) x = amp * rng.complex_gaussian() + spec.dc_offset + leakage;
    return out;
}

inline TimeSeries gen_signal(const SignalSpec& spec) {
    spec.validate();
    Xoshiro256pp rng(spec.seed);
    TimeSeries out;
    out.label = to_string(spec.kind);
    out.samples.resize(spec.length);
    switch (spec.kind) {
        case SignalKind::bpsk_iid:
            for (auto& x : out.samples)
                x = (rng.next() >> 63) ? cplx{1.0, 0.0} : cplx{-1.0, 0.0};
            break;
        case SignalKind::ar1: {
            // unit stationary variance: x_t = rho x_{t-1} + sqrt(1-rho^2) w_t
            const double innovation = std::sqrt(1.0 - spec.rho * spec.rho);
            cplx state = rng.complex_gaussian();
            out.samples[0] = state;
            for (std::size_t t = 1; t < spec.length; ++t) {
                state = spec.rho * state + innovation * rng.complex_gaussian();
                out.samples[t] = state;
            }
            break;
        }
        case SignalKind::tone: {
            constexpr double two_pi = 6.28318530717958647692;
            const double phase0 = two_pi * rng.uniform01();
            for (std::size_t t = 0; t < spec.length; ++t) {
                const double phase = phase0 + two_pi * spec.tone_freq * static_cast<double>(t);
                out.samples[t] = {std::cos(phase), std::sin(phase)};
            }
            break;
        }
        case SignalKind::framed: {
            // fixed header at the top of every frame, random BPSK payload
            Xoshiro256pp payload_rng(spec.payload_seed);
            for (std::size_t t = 0; t < spec.length; ++t) {
                const std::size_t pos = t % spec.frame_length;
                if (pos < spec.header.size())
                    out.samples[t] = {spec.header[pos], 0.0};
                else
                    out.samples[t] = (payload_rng.next() >> 63) ? cplx{1.0, 0.0} : cplx{-1.0, 0.0};
            }
            break;
        }
    }
    return out;
}

/// Sensor i receives g*signal + noise_i with noise seed (base + i); the gain
/// g is set per sensor so the realized signal/noise power ratio equals
/// 10^(snr_db/10) on this realization.
inline std::vector<TimeSeries> gen_scene(const SceneSpec& spec) {
    spec.validate();
    std::optional<TimeSeries> shared;
    double signal_power = 0.0;
    if (spec.signal) {
        SignalSpec sig = *spec.signal;
        sig.length = spec.length;
        shared = gen_signal(sig);
        signal_power = detail::mean_power(shared->samples);
        if (!(signal_power > 0.0)) throw DomainError("gen_scene: degenerate signal power");
    }
    const double snr = std::pow(10.0, spec.snr_db / 10.0);
    std::vector<TimeSeries> sensors;
    sensors.reserve(spec.alpha);
    for (std::size_t i = 0; i < spec.alpha; ++i) {
        NoiseSpec noise_spec;
        noise_spec.length = spec.length;
        noise_spec.variance = spec.noise_variance;
        noise_spec.seed = spec.noise_seed_base + i;
        TimeSeries sensor = gen_noise(noise_spec);
        sensor.label = "sensor-" + std::to_string(i);
        if (shared) {
            const double noise_power = detail::mean_power(sensor.samples);
            const double gain = std::sqrt(snr * noise_power / signal_power);
            for (std::size_t t = 0; t < spec.length; ++t)
                sensor.samples[t] += gain * shared->samples[t];
        }
        sensors.push_back(std::move(sensor));
    }
    return sensors;
}

} // namespace rmt
