// SPDX-License-Identifier: Apache-2.0
// evcm - eigen-domain MIMO channel simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#ifndef EVCM_TRACE_IO_HPP
#define EVCM_TRACE_IO_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "evcm/analysis.hpp"
#include "evcm/model.hpp"
#include "evcm/scenario.hpp"
#include "evcm/spectrum.hpp"

namespace evcm {

inline constexpr const char* evcm_version = "1.0.0";

// The binary layout is little-endian by contract; this library writes host
// bytes directly, so it requires a little-endian host.
static_assert(std::endian::native == std::endian::little,
              "trace serialization assumes a little-endian host");

enum class PayloadKind : std::uint32_t {
    eigen = 0,      // per sample: U (NxN), S diagonal (min(N,M)), V (MxM)
    physical = 1,   // per sample: H (NxM)
    both = 2,       // per sample: U, S diagonal, V, then H
};

struct TraceHeader {
    static constexpr std::array<char, 4> magic = {'E', 'V', 'C', 'M'};
    static constexpr std::uint32_t format_version = 1;

    std::uint32_t n = 0;                  // receive antennas
    std::uint32_t m = 0;                  // transmit antennas
    std::uint64_t n_samples = 0;
    double f_d_hz = 0.0;
    double s_f = 0.0;
    double k_f = 0.0;
    std::uint32_t class_tag = 5;          // ChannelClass numeric value
    std::uint64_t seed = 0;
    PayloadKind payload = PayloadKind::eigen;

    static constexpr std::size_t byte_size = 4 + 4 + 4 + 4 + 8 + 8 + 8 + 8 + 4 + 8 + 4;

    std::size_t complex_per_sample() const {
        const std::size_t nn = n, mm = m;
        const std::size_t mn = std::min(nn, mm);
        const std::size_t eigen_part = nn * nn + mn + mm * mm;
        const std::size_t physical_part = nn * mm;
        switch (payload) {
            case PayloadKind::eigen: return eigen_part;
            case PayloadKind::physical: return physical_part;
            case PayloadKind::both: return eigen_part + physical_part;
        }
        return 0;
    }
    std::size_t payload_bytes() const {
        return static_cast<std::size_t>(n_samples) * complex_per_sample() * 16;
    }
};

inline TraceHeader make_header(const ModelConfig& cfg, PayloadKind kind) {
    TraceHeader h;
    h.n = static_cast<std::uint32_t>(cfg.n_rx);
    h.m = static_cast<std::uint32_t>(cfg.n_tx);
    h.n_samples = cfg.n_samples;
    h.f_d_hz = cfg.f_d_hz;
    h.s_f = cfg.s_f;
    h.k_f = cfg.k_f;
    h.class_tag = static_cast<std::uint32_t>(cfg.channel_class);
    h.seed = cfg.seed;
    h.payload = kind;
    return h;
}

struct TraceFile {
    TraceHeader header;
    EigenTrace eigen;        // populated for payload eigen/both
    ChannelTrace physical;   // populated for payload physical/both
};

namespace detail {

struct ByteWriter {
    std::vector<unsigned char> buf;
    template <typename T>
    void put(const T& v) {
        const auto* p = reinterpret_cast<const unsigned char*>(&v);
        buf.insert(buf.end(), p, p + sizeof(T));
    }
};

struct ByteReader {
    const unsigned char* p;
    const unsigned char* end;
    template <typename T>
    T get() {
        if (p + sizeof(T) > end) throw std::runtime_error("trace file truncated inside header");
        T v;
        std::memcpy(&v, p, sizeof(T));
        p += sizeof(T);
        return v;
    }
};

inline void put_complex(std::vector<unsigned char>& buf, const Complex& c) {
    const double re = c.real(), im = c.imag();
    const auto* pr = reinterpret_cast<const unsigned char*>(&re);
    const auto* pi = reinterpret_cast<const unsigned char*>(&im);
    buf.insert(buf.end(), pr, pr + 8);
    buf.insert(buf.end(), pi, pi + 8);
}

inline Complex get_complex(const unsigned char*& p) {
    double re, im;
    std::memcpy(&re, p, 8);
    std::memcpy(&im, p + 8, 8);
    p += 16;
    return {re, im};
}

inline void put_matrix(std::vector<unsigned char>& buf, const CMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) put_complex(buf, m.at(i, j));
}

inline CMatrix get_matrix(const unsigned char*& p, std::size_t rows, std::size_t cols) {
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = get_complex(p);
    return m;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Binary writer: header then payload, written to "<path>.partial" and
// renamed onto the final name only after a complete, flushed write — a
// final-named file is never truncated or corrupt.
// Returns the total byte count written.
// ---------------------------------------------------------------------------
inline std::size_t write_trace(const TraceFile& tf, const std::string& path) {
    const TraceHeader& h = tf.header;
    const bool want_eigen = h.payload == PayloadKind::eigen || h.payload == PayloadKind::both;
    const bool want_physical = h.payload == PayloadKind::physical || h.payload == PayloadKind::both;
    if (want_eigen && tf.eigen.size() != h.n_samples)
        throw std::invalid_argument("eigen payload sample count does not match header");
    if (want_physical && tf.physical.size() != h.n_samples)
        throw std::invalid_argument("physical payload sample count does not match header");

    detail::ByteWriter w;
    w.buf.reserve(TraceHeader::byte_size + h.payload_bytes());
    w.buf.insert(w.buf.end(), TraceHeader::magic.begin(), TraceHeader::magic.end());
    w.put(TraceHeader::format_version);
    w.put(h.n);
    w.put(h.m);
    w.put(h.n_samples);
    w.put(h.f_d_hz);
    w.put(h.s_f);
    w.put(h.k_f);
    w.put(h.class_tag);
    w.put(h.seed);
    w.put(static_cast<std::uint32_t>(h.payload));

    const std::size_t mn = std::min(h.n, h.m);
    for (std::size_t s = 0; s < h.n_samples; ++s) {
        if (want_eigen) {
            detail::put_matrix(w.buf, tf.eigen.u[s]);
            for (std::size_t k = 0; k < mn; ++k)
                detail::put_complex(w.buf, tf.eigen.s[s][k]);
            detail::put_matrix(w.buf, tf.eigen.v[s]);
        }
        if (want_physical) detail::put_matrix(w.buf, tf.physical.h[s]);
    }

    const std::string partial = path + ".partial";
    {
        std::ofstream out(partial, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + partial + "' for writing");
        out.write(reinterpret_cast<const char*>(w.buf.data()),
                  static_cast<std::streamsize>(w.buf.size()));
        out.flush();
        if (!out) throw std::runtime_error("write failed for '" + partial + "'");
    }
    std::error_code ec;
    std::filesystem::rename(partial, path, ec);
    if (ec) throw std::runtime_error("cannot finalize '" + path + "': " + ec.message());
    return w.buf.size();
}

// Convenience: build header from config and write an eigen / physical / both
// payload in one step.
inline std::size_t write_trace(const EigenTrace& eig,
                               const ModelConfig& cfg,
                               const std::string& path) {
    TraceFile tf;
    tf.header = make_header(cfg, PayloadKind::eigen);
    tf.eigen = eig;
    return write_trace(tf, path);
}

inline TraceFile read_trace(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    if (buf.size() < TraceHeader::byte_size)
        throw std::runtime_error("trace file too short: " + std::to_string(buf.size()) +
                                 " bytes, header needs " + std::to_string(TraceHeader::byte_size));

    detail::ByteReader r{buf.data(), buf.data() + buf.size()};
    std::array<char, 4> magic;
    for (auto& c : magic) c = static_cast<char>(r.get<unsigned char>());
    if (magic != TraceHeader::magic)
        throw std::runtime_error("bad magic: not a trace file");
    const auto version = r.get<std::uint32_t>();
    if (version != TraceHeader::format_version)
        throw std::runtime_error("unsupported trace format version " + std::to_string(version));

    TraceFile tf;
    TraceHeader& h = tf.header;
    h.n = r.get<std::uint32_t>();
    h.m = r.get<std::uint32_t>();
    h.n_samples = r.get<std::uint64_t>();
    h.f_d_hz = r.get<double>();
    h.s_f = r.get<double>();
    h.k_f = r.get<double>();
    h.class_tag = r.get<std::uint32_t>();
    h.seed = r.get<std::uint64_t>();
    const auto kind_raw = r.get<std::uint32_t>();
    if (kind_raw > 2) throw std::runtime_error("unknown payload kind " + std::to_string(kind_raw));
    h.payload = static_cast<PayloadKind>(kind_raw);
    if (h.n == 0 || h.m == 0 || h.n > 8 || h.m > 8)
        throw std::runtime_error("header has invalid antenna counts");

    const std::size_t expect = TraceHeader::byte_size + h.payload_bytes();
    if (buf.size() != expect)
        throw std::runtime_error("payload length mismatch: file has " +
                                 std::to_string(buf.size()) + " bytes, header implies " +
                                 std::to_string(expect));

    const bool want_eigen = h.payload == PayloadKind::eigen || h.payload == PayloadKind::both;
    const bool want_physical = h.payload == PayloadKind::physical || h.payload == PayloadKind::both;
    const std::size_t mn = std::min(h.n, h.m);
    const unsigned char* p = buf.data() + TraceHeader::byte_size;
    for (std::size_t s = 0; s < h.n_samples; ++s) {
        if (want_eigen) {
            tf.eigen.u.push_back(detail::get_matrix(p, h.n, h.n));
            CVector sv(mn);
            for (std::size_t k = 0; k < mn; ++k) sv[k] = detail::get_complex(p);
            tf.eigen.s.push_back(std::move(sv));
            tf.eigen.v.push_back(detail::get_matrix(p, h.m, h.m));
        }
        if (want_physical) tf.physical.h.push_back(detail::get_matrix(p, h.n, h.m));
    }
    return tf;
}

// ---------------------------------------------------------------------------
// CSV export: plot-ready text with unit-bearing headers, 12 significant
// digits.  Time is exported normalized (t * f_d) when the series was built
// with the sampling factor as its rate (see run_tracking's f_s parameter).
// ---------------------------------------------------------------------------
namespace detail {

inline std::string fmt12(double v) {
    char tmp[32];
    std::snprintf(tmp, sizeof tmp, "%.12g", v);
    return tmp;
}

inline void write_text_file(const std::string& path, const std::string& body) {
    const std::string partial = path + ".partial";
    {
        std::ofstream out(partial, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + partial + "' for writing");
        out << body;
        out.flush();
        if (!out) throw std::runtime_error("write failed for '" + partial + "'");
    }
    std::error_code ec;
    std::filesystem::rename(partial, path, ec);
    if (ec) throw std::runtime_error("cannot finalize '" + path + "': " + ec.message());
}

} // namespace detail

inline void export_csv(const SirSeries& series, const std::string& path) {
    std::ostringstream os;
    os << "t_norm";
    for (std::size_t m = 0; m < series.mode_count; ++m) os << ",sir" << (m + 1) << "_db";
    os << "\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        os << detail::fmt12(series.t[i]);
        for (std::size_t m = 0; m < series.mode_count; ++m)
            os << "," << detail::fmt12(series.sir_db[m][i]);
        os << "\n";
    }
    detail::write_text_file(path, os.str());
}

inline void export_csv(const Spectrum& spec, double f_d_hz, const std::string& path) {
    if (!(f_d_hz > 0.0)) throw std::invalid_argument("f_d must be positive");
    std::ostringstream os;
    os << "f_over_fd,psd_db\n";
    for (std::size_t i = 0; i < spec.freq_hz.size(); ++i)
        os << detail::fmt12(spec.freq_hz[i] / f_d_hz) << "," << detail::fmt12(spec.psd_db[i]) << "\n";
    detail::write_text_file(path, os.str());
}

inline void export_csv(const Cdf& cdf, const std::string& path) {
    std::ostringstream os;
    os << "level_db,prob\n";
    for (std::size_t i = 0; i < cdf.levels_db.size(); ++i)
        os << detail::fmt12(cdf.levels_db[i]) << "," << detail::fmt12(cdf.prob[i]) << "\n";
    detail::write_text_file(path, os.str());
}

// Re-import of an exported CDF (level_db,prob rows).
inline Cdf read_cdf_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV");
    Cdf out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("malformed CSV row: " + line);
        out.levels_db.push_back(std::stod(line.substr(0, comma)));
        out.prob.push_back(std::stod(line.substr(comma + 1)));
    }
    out.sample_count = out.levels_db.size();
    return out;
}

// ---------------------------------------------------------------------------
// Config document: plain-text `key = value` lines, '#' comments.
// Keys: n, m, class, f_d_hz, s_f, samples, k_f, s_ratios, omega, n_s, seed.
// The sampling-factor default depends on what the config is for: value
// generation runs at 8x the Doppler shift, tracking scenarios at 20x.
// ---------------------------------------------------------------------------
enum class ConfigPurpose { generation, scenario };

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline double parse_double_field(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("field '" + key + "': cannot parse '" + value + "' as a number");
    }
}

inline std::uint64_t parse_uint_field(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("field '" + key + "': cannot parse '" + value +
                                    "' as a non-negative integer");
    }
}

inline ChannelClass parse_class_field(std::string v) {
    std::transform(v.begin(), v.end(), v.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (v == "I" || v == "1") return ChannelClass::class1;
    if (v == "II" || v == "2") return ChannelClass::class2;
    if (v == "III" || v == "3") return ChannelClass::class3;
    if (v == "IV" || v == "4") return ChannelClass::class4;
    if (v == "V" || v == "5") return ChannelClass::class5;
    throw std::invalid_argument("field 'class': unknown class '" + v + "' (use I..V or 1..5)");
}

inline const char* class_token(ChannelClass c) {
    switch (c) {
        case ChannelClass::class1: return "I";
        case ChannelClass::class2: return "II";
        case ChannelClass::class3: return "III";
        case ChannelClass::class4: return "IV";
        case ChannelClass::class5: return "V";
    }
    return "?";
}

} // namespace detail

inline ModelConfig parse_config(const std::string& text,
                                ConfigPurpose purpose = ConfigPurpose::generation) {
    ModelConfig cfg;
    cfg.s_f = purpose == ConfigPurpose::scenario ? 20.0 : 8.0;

    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": expected 'key = value', got '" + line + "'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (value.empty())
            throw std::invalid_argument("field '" + key + "': empty value");

        if (key == "n") {
            cfg.n_rx = detail::parse_uint_field(key, value);
        } else if (key == "m") {
            cfg.n_tx = detail::parse_uint_field(key, value);
        } else if (key == "class") {
            cfg.channel_class = detail::parse_class_field(value);
        } else if (key == "f_d_hz") {
            cfg.f_d_hz = detail::parse_double_field(key, value);
            if (!(cfg.f_d_hz > 0.0)) throw std::invalid_argument("field 'f_d_hz': must be positive");
        } else if (key == "s_f") {
            cfg.s_f = detail::parse_double_field(key, value);
            if (!(cfg.s_f > 2.0)) throw std::invalid_argument("field 's_f': must exceed 2");
        } else if (key == "samples") {
            cfg.n_samples = detail::parse_uint_field(key, value);
            if (cfg.n_samples < 60) throw std::invalid_argument("field 'samples': must be at least 60");
        } else if (key == "k_f") {
            cfg.k_f = detail::parse_double_field(key, value);
            if (cfg.k_f < 0.0) throw std::invalid_argument("field 'k_f': must be non-negative");
        } else if (key == "s_ratios") {
            cfg.s_ratios.clear();
            std::istringstream rs(value);
            std::string tok;
            while (std::getline(rs, tok, ',')) {
                tok = detail::trim(tok);
                if (tok.empty()) throw std::invalid_argument("field 's_ratios': empty entry");
                const double r = detail::parse_double_field(key, tok);
                if (!(r > 0.0)) throw std::invalid_argument("field 's_ratios': entries must be positive");
                cfg.s_ratios.push_back(r);
            }
        } else if (key == "omega") {
            cfg.omega_rad_s = detail::parse_double_field(key, value);
            if (cfg.omega_rad_s < 0.0) throw std::invalid_argument("field 'omega': must be non-negative");
        } else if (key == "n_s") {
            cfg.n_s = detail::parse_uint_field(key, value);
            if (cfg.n_s < 1) throw std::invalid_argument("field 'n_s': must be at least 1");
        } else if (key == "seed") {
            cfg.seed = detail::parse_uint_field(key, value);
        } else {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

inline std::string serialize_config(const ModelConfig& cfg) {
    std::ostringstream os;
    os << "n = " << cfg.n_rx << "\n";
    os << "m = " << cfg.n_tx << "\n";
    os << "class = " << detail::class_token(cfg.channel_class) << "\n";
    os << "f_d_hz = " << detail::fmt12(cfg.f_d_hz) << "\n";
    os << "s_f = " << detail::fmt12(cfg.s_f) << "\n";
    os << "samples = " << cfg.n_samples << "\n";
    os << "k_f = " << detail::fmt12(cfg.k_f) << "\n";
    if (!cfg.s_ratios.empty()) {
        os << "s_ratios = ";
        for (std::size_t i = 0; i < cfg.s_ratios.size(); ++i) {
            if (i) os << ",";
            os << detail::fmt12(cfg.s_ratios[i]);
        }
        os << "\n";
    }
    if (cfg.omega_rad_s > 0.0) os << "omega = " << detail::fmt12(cfg.omega_rad_s) << "\n";
    os << "n_s = " << cfg.n_s << "\n";
    os << "seed = " << cfg.seed << "\n";
    return os.str();
}

} // namespace evcm

#endif // EVCM_TRACE_IO_HPP
