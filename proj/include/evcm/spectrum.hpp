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

namespace evcm {

// Two-sided power spectral density in dB, normalised so the peak bin is 0 dB.
// Bin frequencies are ascending and span [-f_s/2, f_s/2).
struct Spectrum {
    std::vector<double> freq_hz;
    std::vector<double> psd_db;
    double resolution_hz = 0.0;
};

namespace detail {

// Iterative radix-2 Cooley-Tukey, in place. Length must be a power of two.
inline void fft_radix2(std::vector<Complex> &x)
{
    const std::size_t n = x.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_radix2: length must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const Complex wl{std::cos(ang), std::sin(ang)};
        for (std::size_t i = 0; i < n; i += len) {
            Complex w{1.0, 0.0};
            for (std::size_t k = 0; k < len / 2; ++k) {
                const Complex a = x[i + k];
                const Complex b = x[i + k + len / 2] * w;
                x[i + k] = a + b;
                x[i + k + len / 2] = a - b;
                w *= wl;
            }
        }
    }
}

} // namespace detail

// Welch estimate with a Hann window and 50% segment overlap. The segment
// length is the largest power of two that still yields at least `segments`
// half-overlapped segments; the averaged spectrum is normalised to a 0 dB
// peak, which is the reference every rejection measure in this library uses.
inline Spectrum periodogram(const std::vector<Complex> &series, double f_s,
                            std::size_t segments = 16)
{
    if (f_s <= 0.0)
        throw std::invalid_argument("periodogram: f_s must be positive");
    if (segments == 0)
        segments = 1;
    const std::size_t len = series.size();

    std::size_t seg_len = 8;
    while (seg_len * 2 <= 2 * len / (segments + 1))
        seg_len *= 2;
    if (len < 2 * seg_len || len < 16)
        throw std::invalid_argument("periodogram: series shorter than two segments");

    std::vector<double> window(seg_len);
    for (std::size_t i = 0; i < seg_len; ++i)
        window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                         static_cast<double>(seg_len - 1));

    std::vector<double> acc(seg_len, 0.0);
    std::vector<Complex> buf(seg_len);
    const std::size_t step = seg_len / 2;
    std::size_t count = 0;
    for (std::size_t start = 0; start + seg_len <= len; start += step) {
        for (std::size_t i = 0; i < seg_len; ++i)
            buf[i] = series[start + i] * window[i];
        detail::fft_radix2(buf);
        for (std::size_t i = 0; i < seg_len; ++i)
            acc[i] += std::norm(buf[i]);
        ++count;
    }

    Spectrum out;
    out.resolution_hz = f_s / static_cast<double>(seg_len);
    out.freq_hz.resize(seg_len);
    out.psd_db.resize(seg_len);
    double peak = 0.0;
    for (double v : acc)
        peak = std::max(peak, v);
    if (peak <= 0.0)
        peak = 1.0;
    // fftshift: bins k >= seg_len/2 are the negative frequencies.
    for (std::size_t i = 0; i < seg_len; ++i) {
        const std::size_t src = (i + seg_len / 2) % seg_len;
        const double k = static_cast<double>(i) - static_cast<double>(seg_len / 2);
        out.freq_hz[i] = k * out.resolution_hz;
        const double p = acc[src] / (static_cast<double>(count) * peak);
        out.psd_db[i] = 10.0 * std::log10(std::max(p / 1.0, 1e-300));
    }
    // Re-normalise: peak of the averaged, shifted spectrum is 0 dB.
    double mx = out.psd_db[0];
    for (double v : out.psd_db)
        mx = std::max(mx, v);
    for (double &v : out.psd_db)
        v -= mx;
    return out;
}

// Peak-relative rejection beyond a band edge: 0 dB peak minus the largest
// PSD bin with |f| > f_edge. Larger is better.
inline double rejection_beyond(const Spectrum &spec, double f_edge)
{
    double worst = -1e300;
    bool any = false;
    for (std::size_t i = 0; i < spec.freq_hz.size(); ++i)
        if (std::abs(spec.freq_hz[i]) > f_edge) {
            worst = std::max(worst, spec.psd_db[i]);
            any = true;
        }
    if (!any)
        throw std::invalid_argument("rejection_beyond: no bins beyond the band edge");
    return -worst;
}

} // namespace evcm
