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

#ifndef EVCM_DET_CLASSES_HPP
#define EVCM_DET_CLASSES_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "evcm/linalg.hpp"
#include "evcm/model.hpp"
#include "evcm/rng.hpp"

namespace evcm {

// Deterministic and semi-deterministic test classes. Each class produces
// unitary singular-vector matrices with known, easily checked dynamics and
// constant singular values, so a tracking device under test can be stressed
// with fully predictable channels:
//   class1 - bipolar (square-wave) vector flips
//   class2 - smooth sinusoidal vector rotation
//   class3 - constant-magnitude elements with sinusoidally modulated phase
//   class4 - ring-scatterer driven first column, constant total gain
// The stochastic class (class V) lives in model.hpp as gen_class_v.

struct UvPair {
    CMatrix u;
    CMatrix v;
};

namespace detail {

// Stress angle omega*t at sample n; omega defaults to pi * f_d when unset.
inline double stress_angle(std::size_t n, const ModelConfig& cfg) {
    const double omega = cfg.omega_rad_s > 0.0 ? cfg.omega_rad_s : std::numbers::pi * cfg.f_d_hz;
    return omega * static_cast<double>(n) / (cfg.s_f * cfg.f_d_hz);
}

inline void require_square_2_or_4(const ModelConfig& cfg) {
    if (cfg.n_rx != cfg.n_tx || (cfg.n_rx != 2 && cfg.n_rx != 4))
        throw std::invalid_argument("deterministic classes support square 2x2 and 4x4 only");
}

} // namespace detail

// Constant singular values used by the deterministic classes: a fixed
// descending ramp s_i^2 = 2N(N+1-i)/(N+1), whose total power is exactly
// N*N so the trace meets the global power normalization by construction.
inline std::vector<double> constant_singular_values(std::size_t n_dim) {
    std::vector<double> s(n_dim);
    for (std::size_t i = 0; i < n_dim; ++i) {
        const double num = 2.0 * static_cast<double>(n_dim) *
                           static_cast<double>(n_dim - i);
        s[i] = std::sqrt(num / static_cast<double>(n_dim + 1));
    }
    return s;
}

// The same ladder in trace layout: complex gains with zero phase.
inline CVector constant_gain_vector(std::size_t n_dim) {
    const std::vector<double> s = constant_singular_values(n_dim);
    CVector g(n_dim);
    for (std::size_t i = 0; i < n_dim; ++i) g[i] = Complex(s[i], 0.0);
    return g;
}

// ---------------------------------------------------------------------------
// class1: bipolar flips. A sign wave sgn(sin(omega t)) toggles the vector
// arrangement; every zero crossing swaps which basis pattern is active.
// ---------------------------------------------------------------------------
inline UvPair class1(std::size_t n, const ModelConfig& cfg) {
    detail::require_square_2_or_4(cfg);
    const double s = std::sin(detail::stress_angle(n, cfg));
    const double g = s >= 0.0 ? 1.0 : -1.0;   // bipolar square wave
    if (cfg.n_rx == 2) {
        const double r = 1.0 / std::sqrt(2.0);
        CMatrix u(2, 2), v(2, 2);
        u.at(0, 0) = r;      u.at(0, 1) = -g * r;
        u.at(1, 0) = g * r;  u.at(1, 1) = r;
        v.at(0, 0) = r;      v.at(0, 1) = g * r;
        v.at(1, 0) = -g * r; v.at(1, 1) = r;
        return {u, v};
    }
    const double za = 0.5 * g, zb = 0.5, zc = -0.5 * g, zd = -0.5;
    const double rows[4][4] = {
        {za, zc, zc, za},
        {zb, zb, zb, zb},
        {zb, zb, zd, zd},
        {za, zc, za, zc},
    };
    CMatrix u(4, 4), v(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            u.at(i, j) = rows[i][j];
            v.at(i, j) = rows[j][i];   // V = U transposed
        }
    return {u, v};
}

// ---------------------------------------------------------------------------
// class2: smooth rotation. U rotates sinusoidally while V stays constant.
// The 4x4 form is the Kronecker product of the 2x2 rotation with a scaled
// Hadamard block, which keeps two sine-weighted and two cosine-weighted
// rows while remaining exactly unitary for all t.
// ---------------------------------------------------------------------------
inline UvPair class2(std::size_t n, const ModelConfig& cfg) {
    detail::require_square_2_or_4(cfg);
    const double a = detail::stress_angle(n, cfg);
    const double s = std::sin(a), c = std::cos(a);
    const double r = 1.0 / std::sqrt(2.0);
    if (cfg.n_rx == 2) {
        CMatrix u(2, 2), v(2, 2);
        u.at(0, 0) = s;  u.at(0, 1) = -c;
        u.at(1, 0) = c;  u.at(1, 1) = s;
        v.at(0, 0) = r;  v.at(0, 1) = -r;
        v.at(1, 0) = r;  v.at(1, 1) = r;
        return {u, v};
    }
    // rot = [[s, -c], [c, s]], had = [[1, 1], [1, -1]]/sqrt(2); U = kron(rot, had)
    const double rot[2][2] = {{s, -c}, {c, s}};
    const double had[2][2] = {{r, r}, {r, -r}};
    CMatrix u(4, 4), v(4, 4);
    for (std::size_t bi = 0; bi < 2; ++bi)
        for (std::size_t bj = 0; bj < 2; ++bj)
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j)
                    u.at(2 * bi + i, 2 * bj + j) = rot[bi][bj] * had[i][j];
    // Constant V: the full +-1/2 pattern (orthogonal rows by construction).
    const double vz[4][4] = {
        {0.5, -0.5, 0.5, -0.5},
        {0.5, -0.5, -0.5, 0.5},
        {0.5, 0.5, -0.5, -0.5},
        {0.5, 0.5, 0.5, 0.5},
    };
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) v.at(i, j) = vz[i][j];
    return {u, v};
}

// ---------------------------------------------------------------------------
// class3: constant element magnitudes, sinusoidally modulated phase.
// 2x2 closed form; 4x4 first column is given analytically and the rest of
// the frame is carried along by the transition chain (see class3_trace).
// ---------------------------------------------------------------------------
inline Complex class3_phase_sin(double angle) {
    const double p = std::numbers::pi * std::sin(angle);
    return Complex(std::cos(p), std::sin(p));
}
inline Complex class3_phase_cos(double angle) {
    const double p = std::numbers::pi * std::cos(angle);
    return Complex(std::cos(p), std::sin(p));
}

inline UvPair class3(std::size_t n, const ModelConfig& cfg, double theta) {
    detail::require_square_2_or_4(cfg);
    if (cfg.n_rx != 2)
        throw std::invalid_argument("class3 per-sample closed form exists for 2x2 only; use class3_trace for 4x4");
    const double a = detail::stress_angle(n, cfg) + theta;
    const double r = 1.0 / std::sqrt(2.0);
    const Complex us = class3_phase_sin(a) * r;
    const Complex uc = class3_phase_cos(a) * r;
    CMatrix u(2, 2), v(2, 2);
    u.at(0, 0) = us;  u.at(0, 1) = -us;
    u.at(1, 0) = uc;  u.at(1, 1) = uc;
    v.at(0, 0) = r;   v.at(0, 1) = -r;
    v.at(1, 0) = r;   v.at(1, 1) = r;
    return {u, v};
}

// ---------------------------------------------------------------------------
// Ring-scatterer series: a sum of N_s unit tones whose frequencies are set
// by scatterer angles around a ring, sampled at S_f times the maximum
// Doppler shift.  samples[n] = sum_i exp(j(2 pi n sin(phi_i)/S_f + theta_i)).
// Angles are equally spaced with one uniform random rotation; phases are
// independent uniform draws.
// ---------------------------------------------------------------------------
struct RingScatterSeries {
    std::vector<Complex> samples;
    std::size_t n_s = 0;
    double s_f = 0.0;
    std::vector<double> angles;   // phi_i, radians
    std::vector<double> phases;   // theta_i, radians
};

inline RingScatterSeries ring_scatter_series(std::size_t n_s,
                                             double s_f,
                                             std::size_t length,
                                             RandomStream& rng) {
    if (n_s < 1) throw std::invalid_argument("ring scatterer count must be positive");
    if (!(s_f > 2.0)) throw std::invalid_argument("sampling factor must exceed 2");
    RingScatterSeries out;
    out.n_s = n_s;
    out.s_f = s_f;
    out.angles.resize(n_s);
    out.phases.resize(n_s);
    const double rot = rng.phase();
    for (std::size_t i = 0; i < n_s; ++i) {
        out.angles[i] = rot + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_s);
        out.phases[i] = rng.phase();
    }
    out.samples.resize(length);
    // Each scatterer is a fixed-frequency tone: advance by recurrence.
    std::vector<Complex> state(n_s), step(n_s);
    for (std::size_t i = 0; i < n_s; ++i) {
        state[i] = Complex(std::cos(out.phases[i]), std::sin(out.phases[i]));
        const double w = 2.0 * std::numbers::pi * std::sin(out.angles[i]) / s_f;
        step[i] = Complex(std::cos(w), std::sin(w));
    }
    for (std::size_t n = 0; n < length; ++n) {
        Complex acc(0.0, 0.0);
        for (std::size_t i = 0; i < n_s; ++i) acc += state[i];
        out.samples[n] = acc;
        if ((n & 1023u) == 1023u) {
            // Periodic exact re-seed against recurrence roundoff drift.
            for (std::size_t i = 0; i < n_s; ++i) {
                const double arg = 2.0 * std::numbers::pi * static_cast<double>(n + 1) *
                                   std::sin(out.angles[i]) / s_f + out.phases[i];
                state[i] = Complex(std::cos(arg), std::sin(arg));
            }
        } else {
            for (std::size_t i = 0; i < n_s; ++i) state[i] *= step[i];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Trace builders: full EigenTrace per class, uniform with gen_class_v.
// ---------------------------------------------------------------------------
inline EigenTrace class1_trace(const ModelConfig& cfg) {
    cfg.validate();
    detail::require_square_2_or_4(cfg);
    EigenTrace t;
    t.u.reserve(cfg.n_samples);
    t.v.reserve(cfg.n_samples);
    t.s.assign(cfg.n_samples, constant_gain_vector(cfg.n_rx));
    for (std::size_t n = 0; n < cfg.n_samples; ++n) {
        UvPair p = class1(n, cfg);
        t.u.push_back(std::move(p.u));
        t.v.push_back(std::move(p.v));
    }
    return t;
}

inline EigenTrace class2_trace(const ModelConfig& cfg) {
    cfg.validate();
    detail::require_square_2_or_4(cfg);
    EigenTrace t;
    t.u.reserve(cfg.n_samples);
    t.v.reserve(cfg.n_samples);
    t.s.assign(cfg.n_samples, constant_gain_vector(cfg.n_rx));
    for (std::size_t n = 0; n < cfg.n_samples; ++n) {
        UvPair p = class2(n, cfg);
        t.u.push_back(std::move(p.u));
        t.v.push_back(std::move(p.v));
    }
    return t;
}

// 4x4 class3 first column: phase-modulated quartet with elements of exact
// magnitude 1/2, so the column has exactly unit norm at every sample.
inline CVector class3_first_column(double angle) {
    const Complex us = class3_phase_sin(angle) * 0.5;
    const Complex uc = class3_phase_cos(angle) * 0.5;
    return {us, uc, us, uc};
}

inline EigenTrace class3_trace(const ModelConfig& cfg) {
    cfg.validate();
    detail::require_square_2_or_4(cfg);
    RandomStream theta_rng(cfg.seed, "class3-theta");
    const double theta = theta_rng.phase();

    EigenTrace t;
    t.s.assign(cfg.n_samples, constant_gain_vector(cfg.n_rx));
    if (cfg.n_rx == 2) {
        t.u.reserve(cfg.n_samples);
        t.v.reserve(cfg.n_samples);
        for (std::size_t n = 0; n < cfg.n_samples; ++n) {
            UvPair p = class3(n, cfg, theta);
            t.u.push_back(std::move(p.u));
            t.v.push_back(std::move(p.v));
        }
        return t;
    }
    // 4x4: analytic first column, frame carried by the transition chain from
    // a constant orthogonal seed; V constant (class2's 4x4 V pattern).
    std::vector<CVector> first(cfg.n_samples);
    for (std::size_t n = 0; n < cfg.n_samples; ++n)
        first[n] = class3_first_column(detail::stress_angle(n, cfg) + theta);
    CMatrix seed(4, 4);
    const double vz[4][4] = {
        {0.5, -0.5, 0.5, -0.5},
        {0.5, -0.5, -0.5, 0.5},
        {0.5, 0.5, -0.5, -0.5},
        {0.5, 0.5, 0.5, 0.5},
    };
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) seed.at(i, j) = vz[i][j];
    t.u = complete_matrices(first, seed);
    CMatrix v = seed;
    t.v.assign(cfg.n_samples, v);
    return t;
}

// class4: first columns driven by normalized ring-scatter variables, full
// frames carried by the transition chain, constant singular values (fixed
// total gain makes any mis-tracking show up directly in total mode power).
inline EigenTrace class4_trace(const ModelConfig& cfg) {
    cfg.validate();
    detail::require_square_2_or_4(cfg);
    if (cfg.n_s < 6)
        throw std::invalid_argument("class4 requires at least 6 ring scatterers");
    const std::size_t dim = cfg.n_rx;

    auto make_first = [&](const char* tag) {
        std::vector<RingScatterSeries> rings;
        rings.reserve(dim);
        for (std::size_t e = 0; e < dim; ++e) {
            RandomStream rng(cfg.seed, std::string(tag), e);
            rings.push_back(ring_scatter_series(cfg.n_s, cfg.s_f, cfg.n_samples, rng));
        }
        std::vector<CVector> cols(cfg.n_samples, CVector(dim));
        for (std::size_t n = 0; n < cfg.n_samples; ++n) {
            double norm2 = 0.0;
            for (std::size_t e = 0; e < dim; ++e) norm2 += std::norm(rings[e].samples[n]);
            const double inv = 1.0 / std::sqrt(norm2);
            for (std::size_t e = 0; e < dim; ++e) cols[n][e] = rings[e].samples[n] * inv;
        }
        return cols;
    };

    RandomStream seed_rng(cfg.seed, "class4-seed");
    CMatrix h0(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            h0.at(i, j) = Complex(seed_rng.gaussian(), seed_rng.gaussian()) / std::sqrt(2.0);
    SvdTriple base = svd(h0);

    EigenTrace t;
    t.u = complete_matrices(make_first("class4-u"), base.u);
    t.v = complete_matrices(make_first("class4-v"), base.v);
    t.s.assign(cfg.n_samples, constant_gain_vector(dim));
    return t;
}

// Uniform entry point across all five classes.
inline EigenTrace gen_trace(const ModelConfig& cfg, ChannelClass cls) {
    switch (cls) {
        case ChannelClass::class1: return class1_trace(cfg);
        case ChannelClass::class2: return class2_trace(cfg);
        case ChannelClass::class3: return class3_trace(cfg);
        case ChannelClass::class4: return class4_trace(cfg);
        case ChannelClass::class5: return gen_class_v(cfg);
    }
    throw std::invalid_argument("unknown channel class");
}

inline EigenTrace gen_trace(const ModelConfig& cfg) {
    return gen_trace(cfg, cfg.channel_class);
}

} // namespace evcm

#endif // EVCM_DET_CLASSES_HPP
