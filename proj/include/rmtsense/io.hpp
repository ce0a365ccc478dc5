// SPDX-License-Identifier: Apache-2.0
//
// File formats and result documents.
//
// Binary IQ layout (little-endian):
//   bytes 0..6    magic "RMTSIQ1"
//   bytes 7..14   sample_rate_hz, IEEE-754 binary64
//   bytes 15..22  count, uint64
//   body          count * (float32 re, float32 im)
//
// A CSV fallback ("re,im" per line, '#' comments allowed) is accepted
// anywhere binary IQ is; files are told apart by the magic bytes.
#pragma once

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rmtsense/core_matrix.hpp"
#include "rmtsense/density_estimation.hpp"
#include "rmtsense/detection.hpp"
#include "rmtsense/ensemble_ops.hpp"
#include "rmtsense/errors.hpp"
#include "rmtsense/version.hpp"

namespace rmt {

using json = nlohmann::json;

inline constexpr char iq_magic[7] = {'R', 'M', 'T', 'S', 'I', 'Q', '1'};

namespace detail {

inline void put_u64_le(std::string& out, std::uint64_t v) {
    for (int k = 0; k < 8; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xFF));
}
inline void put_u32_le(std::string& out, std::uint32_t v) {
    for (int k = 0; k < 4; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xFF));
}
inline std::uint64_t get_u64_le(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int k = 7; k >= 0; --k) v = (v << 8) | p[k];
    return v;
}
inline std::uint32_t get_u32_le(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int k = 3; k >= 0; --k) v = (v << 8) | p[k];
    return v;
}

inline std::string format_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace detail

inline std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IOFailure("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IOFailure("read error: " + path);
    return std::move(buf).str();
}

inline void write_file_bytes(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IOFailure("cannot open for writing: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IOFailure("write error: " + path);
}

/// FNV-1a 64-bit content hash, used for input provenance.
inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string content_hash(const std::string& bytes) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

inline std::string encode_iq(const TimeSeries& series) {
    std::string out;
    out.reserve(23 + 8 * series.size());
    out.append(iq_magic, sizeof(iq_magic));
    detail::put_u64_le(out, std::bit_cast<std::uint64_t>(series.sample_rate_hz));
    detail::put_u64_le(out, static_cast<std::uint64_t>(series.size()));
    for (const auto& x : series.samples) {
        detail::put_u32_le(out, std::bit_cast<std::uint32_t>(static_cast<float>(x.real())));
        detail::put_u32_le(out, std::bit_cast<std::uint32_t>(static_cast<float>(x.imag())));
    }
    return out;
}

inline TimeSeries decode_iq(const std::string& bytes, const std::string& label = {}) {
    if (bytes.size() < sizeof(iq_magic) ||
        std::memcmp(bytes.data(), iq_magic, sizeof(iq_magic)) != 0)
        throw BadMagic("not an RMTSIQ1 file");
    if (bytes.size() < 23) throw TruncatedFile("IQ header incomplete");
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    const double rate = std::bit_cast<double>(detail::get_u64_le(p + 7));
    const std::uint64_t count = detail::get_u64_le(p + 15);
    const std::size_t body = bytes.size() - 23;
    if (body < count * 8) throw TruncatedFile("IQ body shorter than sample count");
    if (body > count * 8) throw IOFailure("IQ body longer than sample count");
    TimeSeries series;
    series.sample_rate_hz = rate;
    series.label = label;
    series.samples.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const unsigned char* q = p + 23 + 8 * i;
        const float re = std::bit_cast<float>(detail::get_u32_le(q));
        const float im = std::bit_cast<float>(detail::get_u32_le(q + 4));
        series.samples[i] = {static_cast<double>(re), static_cast<double>(im)};
    }
    return series;
}

inline void write_iq(const TimeSeries& series, const std::string& path) {
    write_file_bytes(path, encode_iq(series));
}

inline TimeSeries read_iq(const std::string& path) {
    return decode_iq(read_file_bytes(path), path);
}

inline void write_series_csv(const TimeSeries& series, const std::string& path) {
    std::string out;
    out.reserve(series.size() * 32);
    for (const auto& x : series.samples) {
        out += detail::format_g17(x.real());
        out += ',';
        out += detail::format_g17(x.imag());
        out += '\n';
    }
    write_file_bytes(path, out);
}

namespace detail {

inline bool parse_two_doubles(const std::string& line, double& a, double& b) {
    const char* p = line.c_str();
    char* end = nullptr;
    a = std::strtod(p, &end);
    if (end == p) return false;
    p = end;
    while (*p == ',' || *p == ' ' || *p == '\t' || *p == ';') ++p;
    b = std::strtod(p, &end);
    if (end == p) b = 0.0; // single column: treat as a real sample
    return true;
}

} // namespace detail

inline TimeSeries read_series_csv(const std::string& text, const std::string& label = {}) {
    TimeSeries series;
    series.label = label;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        double re = 0.0, im = 0.0;
        if (!detail::parse_two_doubles(line, re, im))
            throw IOFailure("CSV sample line not parseable: " + line);
        series.samples.emplace_back(re, im);
    }
    if (series.samples.empty()) throw IOFailure("CSV contains no samples");
    return series;
}

/// Reads either format, distinguished by the magic bytes.
inline TimeSeries read_series(const std::string& path) {
    const std::string bytes = read_file_bytes(path);
    if (bytes.size() >= sizeof(iq_magic) &&
        std::memcmp(bytes.data(), iq_magic, sizeof(iq_magic)) == 0)
        return decode_iq(bytes, path);
    return read_series_csv(bytes, path);
}

/// Two-column CSV (grid,value). 17 significant digits, so doubles re-import
/// exactly.
inline void write_curve_csv(const DensityCurve& curve, const std::string& path) {
    std::string out = "# grid,value\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        out += detail::format_g17(curve.grid[i]);
        out += ',';
        out += detail::format_g17(curve.values[i]);
        out += '\n';
    }
    write_file_bytes(path, out);
}

inline DensityCurve read_curve_csv(const std::string& path) {
    const std::string text = read_file_bytes(path);
    DensityCurve curve;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        double g = 0.0, v = 0.0;
        if (!detail::parse_two_doubles(line, g, v))
            throw IOFailure("CSV curve line not parseable: " + line);
        curve.grid.push_back(g);
        curve.values.push_back(v);
    }
    if (curve.grid.empty()) throw IOFailure("CSV contains no curve points");
    for (std::size_t i = 1; i < curve.grid.size(); ++i)
        if (!(curve.grid[i] > curve.grid[i - 1]))
            throw IOFailure("CSV curve grid not strictly increasing");
    return curve;
}

// ---- JSON mappings ----

inline void to_json(json& j, const DensityCurve& curve) {
    j = json{{"grid", curve.grid}, {"values", curve.values}};
}
inline void from_json(const json& j, DensityCurve& curve) {
    j.at("grid").get_to(curve.grid);
    j.at("values").get_to(curve.values);
}

inline void to_json(json& j, const KernelSpec& spec) {
    j = json{{"kind", spec.kind == KernelKind::gaussian ? "gaussian" : "epanechnikov"}};
    if (spec.bandwidth > 0.0)
        j["bandwidth"] = spec.bandwidth;
    else
        j["bandwidth"] = "auto";
}
inline void from_json(const json& j, KernelSpec& spec) {
    const std::string kind = j.value("kind", "gaussian");
    if (kind == "gaussian")
        spec.kind = KernelKind::gaussian;
    else if (kind == "epanechnikov")
        spec.kind = KernelKind::epanechnikov;
    else
        throw DomainError("unknown kernel kind: " + kind);
    if (j.contains("bandwidth") && j["bandwidth"].is_number())
        spec.bandwidth = j["bandwidth"].get<double>();
    else
        spec.bandwidth = 0.0;
}

inline void to_json(json& j, const GridRange& r) { j = json::array({r.lo, r.hi, r.step}); }
inline void from_json(const json& j, GridRange& r) {
    if (!j.is_array() || j.size() != 3) throw DomainError("grid range must be [lo, hi, step]");
    r.lo = j[0].get<double>();
    r.hi = j[1].get<double>();
    r.step = j[2].get<double>();
}

inline void to_json(json& j, const CalibrationTable& t) {
    j = json{{"metric_kind", to_string(t.metric_kind)},
             {"target_fpr", t.target_fpr},
             {"threshold", t.threshold},
             {"samples", t.samples}};
}
inline void from_json(const json& j, CalibrationTable& t) {
    const std::string kind = j.at("metric_kind").get<std::string>();
    if (kind == "mp_l1")
        t.metric_kind = MetricKind::mp_l1;
    else if (kind == "ring_inner_radius")
        t.metric_kind = MetricKind::ring_inner_radius;
    else
        throw DomainError("unknown metric kind: " + kind);
    j.at("target_fpr").get_to(t.target_fpr);
    j.at("threshold").get_to(t.threshold);
    j.at("samples").get_to(t.samples);
}

inline void to_json(json& j, const DetectionReport& r) {
    j = json{{"metric_kind", to_string(r.metric_kind)},
             {"metric_value", r.metric_value},
             {"threshold", r.threshold},
             {"decision", to_string(r.decision)},
             {"input_label", r.input_label}};
    if (std::holds_alternative<MPParams>(r.params)) {
        const auto& p = std::get<MPParams>(r.params);
        j["params"] = json{{"law", "mp"}, {"c", p.c}, {"sigma2", p.sigma2}};
    } else if (std::holds_alternative<RingParams>(r.params)) {
        const auto& p = std::get<RingParams>(r.params);
        j["params"] = json{{"law", "ring"}, {"c", p.c}, {"alpha", p.alpha}};
    }
}

inline json cloud_to_json(const EigenCloud& cloud) {
    json pairs = json::array();
    for (const auto& z : cloud.values) pairs.push_back(json::array({z.real(), z.imag()}));
    return pairs;
}

/// Pipeline defaults; the documented defaults are the single-receiver
/// experiment values (N=400, n=1600).
struct RunConfig {
    Eigen::Index n_rows = 400;
    Eigen::Index n_cols = 1600;
    KernelSpec kernel{};
    int bins = 100;
    GridRange beta_range{0.5, 4.0, 0.25};
    GridRange s_range{0.8, 1.2, 0.05};
    int alpha = 1;
    double ring_quantile = 0.02;
    double target_fpr = 0.05;
    std::uint64_t seed = 1;
    bool per_row_normalization = false;
    double snr_db = 0.0;

    void validate() const {
        if (n_rows < 1 || n_cols < 1) throw DomainError("RunConfig: matrix dims must be positive");
        if (n_rows > n_cols) throw BadAspect("RunConfig: need n_rows <= n_cols");
        if (bins < 1) throw DomainError("RunConfig: bins must be >= 1");
        if (alpha < 1) throw DomainError("RunConfig: alpha must be >= 1");
        if (!(ring_quantile > 0.0) || !(ring_quantile < 0.5))
            throw DomainError("RunConfig: ring quantile must be in (0, 0.5)");
        if (!(target_fpr > 0.0) || !(target_fpr < 1.0))
            throw DomainError("RunConfig: target_fpr must be in (0, 1)");
    }
};

inline void to_json(json& j, const RunConfig& c) {
    j = json{{"n_rows", c.n_rows},
             {"n_cols", c.n_cols},
             {"kernel", c.kernel},
             {"bins", c.bins},
             {"beta_range", c.beta_range},
             {"s_range", c.s_range},
             {"alpha", c.alpha},
             {"ring_quantile", c.ring_quantile},
             {"target_fpr", c.target_fpr},
             {"seed", c.seed},
             {"per_row_normalization", c.per_row_normalization},
             {"snr_db", c.snr_db}};
}
inline void from_json(const json& j, RunConfig& c) {
    c.n_rows = j.value("n_rows", c.n_rows);
    c.n_cols = j.value("n_cols", c.n_cols);
    if (j.contains("kernel")) j.at("kernel").get_to(c.kernel);
    c.bins = j.value("bins", c.bins);
    if (j.contains("beta_range")) j.at("beta_range").get_to(c.beta_range);
    if (j.contains("s_range")) j.at("s_range").get_to(c.s_range);
    c.alpha = j.value("alpha", c.alpha);
    c.ring_quantile = j.value("ring_quantile", c.ring_quantile);
    c.target_fpr = j.value("target_fpr", c.target_fpr);
    c.seed = j.value("seed", c.seed);
    c.per_row_normalization = j.value("per_row_normalization", c.per_row_normalization);
    c.snr_db = j.value("snr_db", c.snr_db);
    c.validate();
}

inline RunConfig load_config(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file_bytes(path));
    } catch (const json::exception& e) {
        throw IOFailure("config parse failure: " + std::string(e.what()));
    }
    return j.get<RunConfig>();
}

inline std::string iso8601_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

/// Provenance block: everything needed to re-run the computation. Documents
/// produced from identical inputs are byte-identical apart from the
/// "generated_at" timestamp.
inline json make_provenance(const std::vector<std::uint64_t>& seeds, const json& config_echo,
                            const std::vector<std::string>& input_hashes) {
    return json{{"seeds", seeds},
                {"config", config_echo},
                {"input_hashes", input_hashes},
                {"tool_version", version_string},
                {"generated_at", iso8601_utc_now()}};
}

inline json make_document(const std::string& kind, json payload, json provenance) {
    payload["kind"] = kind;
    payload["provenance"] = std::move(provenance);
    return payload;
}

} // namespace rmt
