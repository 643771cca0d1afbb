// SPDX-License-Identifier: Apache-2.0
//
// evcm - eigen-domain MIMO channel simulator
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "linalg.hpp"
#include "rng.hpp"

namespace evcm {

// Tone grids for the vector generators span +-0.255 f_d; the spectral shaping
// below is singular at the band edge for the value generators, so their grid
// stops one slot short of +-f_d.
inline constexpr double vector_band_ratio = 0.255;

// Spectral amplitude for singular-vector elements: 1/f shaping inside
// +-0.255 f_d, clamped at the zero-frequency level A_uv = 1/sqrt(n_dim).
// The damping constant was tuned for 2x2 matrices; it has to grow with the
// matrix dimension or the element-power budget of a unit first column is
// exceeded on a third of the samples at n_dim = 4. Scaling it by (n_dim - 1)
// keeps the capped fraction of samples well below 1% for n_dim up to 8.
inline double vector_filter(double f, double f_d, std::size_t n_sam, double k_f,
                            std::size_t n_dim)
{
    if (f_d <= 0.0 || n_sam == 0 || n_dim == 0)
        throw std::invalid_argument("vector_filter: f_d, n_sam and n_dim must be positive");
    if (k_f < 0.0)
        throw std::invalid_argument("vector_filter: k_f must be non-negative");

    const double a_uv = 1.0 / std::sqrt(static_cast<double>(n_dim));
    const double x = std::abs(f / f_d);
    if (x == 0.0)
        return a_uv;
    if (x >= vector_band_ratio)
        return 0.0;
    const double damping = 0.6 * static_cast<double>(n_dim > 2 ? n_dim - 1 : 1);
    const double raw =
        1.0 / (damping * static_cast<double>(n_sam) * std::sqrt(1.0 + k_f) * x);
    return std::min(raw, a_uv);
}

// Classical Jakes shaping for the singular-value generators. Defined on the
// open interval (-f_d, f_d); the band edge itself is a pole and is rejected.
inline double value_filter(double f, double f_d)
{
    if (f_d <= 0.0)
        throw std::invalid_argument("value_filter: f_d must be positive");
    const double x = std::abs(f / f_d);
    if (x == 1.0)
        throw std::invalid_argument("value_filter: |f| == f_d is singular");
    if (x > 1.0)
        return 0.0;
    return 1.0 / std::sqrt(1.0 - x * x);
}

enum class ToneKind { vector, value };

// A frozen set of tones: frequencies in Hz, non-negative amplitudes, and one
// random phase per tone. Sampling it is fully deterministic.
struct ToneSet {
    ToneKind kind = ToneKind::vector;
    double f_d = 0.0;
    std::vector<double> freq_hz;
    std::vector<double> amp;
    std::vector<double> phase;

    std::size_t size() const { return freq_hz.size(); }
};

// Number of tones for a generated run of n_sam samples (round half up).
inline std::size_t tone_count(std::size_t n_sam)
{
    return static_cast<std::size_t>(std::floor(static_cast<double>(n_sam) / 30.0 + 0.5));
}

// Build a tone set for one scalar generator.
//
// vector kind: uniform grid over [-0.255 f_d, +0.255 f_d] that always contains
// a zero-frequency tone (the grid is indexed -floor(n/2) .. n-1-floor(n/2));
// amplitudes follow vector_filter, so the zero tone carries 1/sqrt(n_dim).
//
// value kind: symmetric grid with outermost tones at +-f_d * n/(n+1), which
// keeps the Jakes pole at +-f_d off the grid; amplitudes follow value_filter.
inline ToneSet make_tone_set(ToneKind kind, double f_d, std::size_t n_sam, double k_f,
                             std::size_t n_dim, RandomStream &rng)
{
    if (n_sam < 60)
        throw std::invalid_argument("make_tone_set: need n_sam >= 60 for at least two tones");
    const std::size_t n_freq = tone_count(n_sam);

    ToneSet ts;
    ts.kind = kind;
    ts.f_d = f_d;
    ts.freq_hz.resize(n_freq);
    ts.amp.resize(n_freq);
    ts.phase.resize(n_freq);

    if (kind == ToneKind::vector) {
        const std::size_t half = n_freq / 2;
        const double step = vector_band_ratio * f_d / static_cast<double>(half);
        for (std::size_t p = 0; p < n_freq; ++p) {
            const double k = static_cast<double>(p) - static_cast<double>(half);
            ts.freq_hz[p] = k * step;
            ts.amp[p] = vector_filter(ts.freq_hz[p], f_d, n_sam, k_f, n_dim);
        }
    } else {
        const double edge =
            f_d * static_cast<double>(n_freq) / static_cast<double>(n_freq + 1);
        const double step = 2.0 * edge / static_cast<double>(n_freq - 1);
        for (std::size_t p = 0; p < n_freq; ++p) {
            ts.freq_hz[p] = -edge + static_cast<double>(p) * step;
            ts.amp[p] = value_filter(ts.freq_hz[p], f_d);
        }
    }
    for (std::size_t p = 0; p < n_freq; ++p)
        ts.phase[p] = rng.phase();
    return ts;
}

// Sum of tones at sample index n with sampling rate f_s = s_f * f_d:
// sum_p A_p exp(j(2 pi n f_p / (s_f f_d) + phi_p)).
inline Complex tone_sum(const ToneSet &ts, std::uint64_t n, double s_f, double f_d)
{
    if (s_f <= 0.0 || f_d <= 0.0)
        throw std::invalid_argument("tone_sum: s_f and f_d must be positive");
    Complex acc{};
    const double scale = 2.0 * std::numbers::pi * static_cast<double>(n) / (s_f * f_d);
    for (std::size_t p = 0; p < ts.size(); ++p) {
        const double arg = scale * ts.freq_hz[p] + ts.phase[p];
        acc += ts.amp[p] * Complex{std::cos(arg), std::sin(arg)};
    }
    return acc;
}

// Unit-modulus phase trajectory: tone_sum normalised to the unit circle.
// An exactly zero sum (a measure-zero event) reuses the most recent nonzero
// phase; a series that is zero from the start pins the phase at 1.
inline Complex phase_trajectory(const ToneSet &ts, std::uint64_t n, double s_f, double f_d)
{
    for (std::uint64_t k = n;; --k) {
        const Complex v = tone_sum(ts, k, s_f, f_d);
        const double mag = std::abs(v);
        if (mag > 0.0)
            return v / mag;
        if (k == 0)
            return Complex{1.0, 0.0};
    }
}

// Streaming evaluator for long tone series. Each tone is advanced by a fixed
// per-sample rotation; the states are re-seeded from the closed form every
// resync_period samples, so accumulated rounding stays near machine epsilon
// while the cost per sample is one complex multiply-add per tone.
//
// States are kept as separate real/imaginary arrays and summed into four
// independent accumulator lanes: tone counts run into the thousands for long
// traces, and this layout lets the compiler vectorize what is by far the
// hottest loop in the library.
class ToneOscillator {
  public:
    ToneOscillator(const ToneSet &ts, double s_f, double f_d, std::size_t resync_period = 1024)
        : ts_(ts), s_f_(s_f), f_d_(f_d), resync_(resync_period == 0 ? 1024 : resync_period)
    {
        const double scale = 2.0 * std::numbers::pi / (s_f * f_d);
        const std::size_t k = ts_.size();
        rot_re_.resize(k);
        rot_im_.resize(k);
        st_re_.resize(k);
        st_im_.resize(k);
        for (std::size_t p = 0; p < k; ++p) {
            const double w = scale * ts_.freq_hz[p];
            rot_re_[p] = std::cos(w);
            rot_im_[p] = std::sin(w);
        }
        seed_states(0);
    }

    // Value at the current index, then advance by one sample.
    Complex next()
    {
        if (since_seed_ == resync_)
            seed_states(n_);
        const std::size_t k = st_re_.size();
        const double *sr = st_re_.data();
        const double *si = st_im_.data();
        const double *rr = rot_re_.data();
        const double *ri = rot_im_.data();
        double *nr = st_re_.data();
        double *ni = st_im_.data();
        double ar0 = 0.0, ar1 = 0.0, ar2 = 0.0, ar3 = 0.0;
        double ai0 = 0.0, ai1 = 0.0, ai2 = 0.0, ai3 = 0.0;
        std::size_t p = 0;
        for (; p + 4 <= k; p += 4) {
            const double r0 = sr[p], i0 = si[p];
            const double r1 = sr[p + 1], i1 = si[p + 1];
            const double r2 = sr[p + 2], i2 = si[p + 2];
            const double r3 = sr[p + 3], i3 = si[p + 3];
            ar0 += r0;
            ai0 += i0;
            ar1 += r1;
            ai1 += i1;
            ar2 += r2;
            ai2 += i2;
            ar3 += r3;
            ai3 += i3;
            nr[p] = r0 * rr[p] - i0 * ri[p];
            ni[p] = r0 * ri[p] + i0 * rr[p];
            nr[p + 1] = r1 * rr[p + 1] - i1 * ri[p + 1];
            ni[p + 1] = r1 * ri[p + 1] + i1 * rr[p + 1];
            nr[p + 2] = r2 * rr[p + 2] - i2 * ri[p + 2];
            ni[p + 2] = r2 * ri[p + 2] + i2 * rr[p + 2];
            nr[p + 3] = r3 * rr[p + 3] - i3 * ri[p + 3];
            ni[p + 3] = r3 * ri[p + 3] + i3 * rr[p + 3];
        }
        for (; p < k; ++p) {
            const double r = sr[p], i = si[p];
            ar0 += r;
            ai0 += i;
            nr[p] = r * rr[p] - i * ri[p];
            ni[p] = r * ri[p] + i * rr[p];
        }
        ++n_;
        ++since_seed_;
        return Complex{(ar0 + ar1) + (ar2 + ar3), (ai0 + ai1) + (ai2 + ai3)};
    }

    std::uint64_t index() const { return n_; }

  private:
    void seed_states(std::uint64_t n)
    {
        const double scale = 2.0 * std::numbers::pi * static_cast<double>(n) / (s_f_ * f_d_);
        for (std::size_t p = 0; p < ts_.size(); ++p) {
            const double arg = scale * ts_.freq_hz[p] + ts_.phase[p];
            st_re_[p] = ts_.amp[p] * std::cos(arg);
            st_im_[p] = ts_.amp[p] * std::sin(arg);
        }
        since_seed_ = 0;
    }

    ToneSet ts_;
    double s_f_;
    double f_d_;
    std::size_t resync_;
    std::vector<double> rot_re_;
    std::vector<double> rot_im_;
    std::vector<double> st_re_;
    std::vector<double> st_im_;
    std::uint64_t n_ = 0;
    std::size_t since_seed_ = 0;
};

} // namespace evcm
