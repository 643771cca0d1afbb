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

#ifndef EVCM_ANALYSIS_HPP
#define EVCM_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "evcm/linalg.hpp"
#include "evcm/model.hpp"
#include "evcm/spectrum.hpp"
#include "evcm/svd.hpp"

namespace evcm {

// ---------------------------------------------------------------------------
// Empirical CDFs on a fixed dB grid.
// Levels are amplitude dB relative to the series RMS (so every CDF is
// centred near 0 dB regardless of absolute scale); the staircase lives on
// a 0.05 dB grid.
// ---------------------------------------------------------------------------
inline constexpr double cdf_grid_db = 0.05;
inline constexpr double cdf_floor_db = -320.0;   // bucket for exact zeros

struct Cdf {
    std::vector<double> levels_db;   // ascending grid levels with mass at or below
    std::vector<double> prob;        // P(X <= level), non-decreasing, ends at 1
    std::size_t sample_count = 0;

    // Staircase evaluation: probability at the greatest grid level <= level.
    double at(double level_db) const {
        auto it = std::upper_bound(levels_db.begin(), levels_db.end(), level_db);
        if (it == levels_db.begin()) return 0.0;
        return prob[static_cast<std::size_t>(it - levels_db.begin()) - 1];
    }
};

inline Cdf empirical_cdf(const std::vector<double>& magnitudes) {
    if (magnitudes.size() < 100)
        throw std::invalid_argument("empirical_cdf needs at least 100 samples");
    double sum_sq = 0.0;
    for (double m : magnitudes) {
        if (m < 0.0) throw std::invalid_argument("magnitudes must be non-negative");
        sum_sq += m * m;
    }
    const double rms = std::sqrt(sum_sq / static_cast<double>(magnitudes.size()));
    if (!(rms > 0.0)) throw std::invalid_argument("all-zero magnitude series");

    // Histogram on the grid: index = ceil(level / grid).
    std::vector<std::int64_t> idx(magnitudes.size());
    std::int64_t lo = 0, hi = 0;
    const std::int64_t floor_idx = static_cast<std::int64_t>(std::llround(cdf_floor_db / cdf_grid_db));
    for (std::size_t i = 0; i < magnitudes.size(); ++i) {
        double level = magnitudes[i] > 0.0
                           ? 20.0 * std::log10(magnitudes[i] / rms)
                           : cdf_floor_db;
        if (level < cdf_floor_db) level = cdf_floor_db;
        std::int64_t k = static_cast<std::int64_t>(std::ceil(level / cdf_grid_db - 1e-9));
        if (k < floor_idx) k = floor_idx;
        idx[i] = k;
        if (i == 0 || k < lo) lo = k;
        if (i == 0 || k > hi) hi = k;
    }
    std::vector<std::size_t> counts(static_cast<std::size_t>(hi - lo + 1), 0);
    for (std::int64_t k : idx) ++counts[static_cast<std::size_t>(k - lo)];

    Cdf out;
    out.sample_count = magnitudes.size();
    std::size_t acc = 0;
    for (std::size_t b = 0; b < counts.size(); ++b) {
        if (counts[b] == 0) continue;
        acc += counts[b];
        out.levels_db.push_back(static_cast<double>(lo + static_cast<std::int64_t>(b)) * cdf_grid_db);
        out.prob.push_back(static_cast<double>(acc) / static_cast<double>(magnitudes.size()));
    }
    return out;
}

// Least-squares slope of level (dB) against log10(probability) over the
// probability window [p_lo, p_hi].  A Rayleigh-distributed series gives
// 10 dB/decade in the deep tail.
inline double rayleigh_slope(const Cdf& cdf, double p_lo = 1e-3, double p_hi = 1e-1) {
    if (!(p_lo > 0.0) || !(p_lo < p_hi) || !(p_hi < 0.5))
        throw std::invalid_argument("probability window must satisfy 0 < p_lo < p_hi < 0.5");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < cdf.levels_db.size(); ++i) {
        if (cdf.prob[i] >= p_lo && cdf.prob[i] <= p_hi) {
            xs.push_back(std::log10(cdf.prob[i]));
            ys.push_back(cdf.levels_db[i]);
        }
    }
    if (xs.size() < 10)
        throw std::runtime_error("insufficient CDF points in the probability window for a slope fit");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) { mx += xs[i]; my += ys[i]; }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx <= 0.0) throw std::runtime_error("degenerate CDF: no level spread in the fit window");
    return sxy / sxx;
}

// ---------------------------------------------------------------------------
// Out-of-band rejection: peak PSD minus the highest PSD beyond the Doppler
// edge, with a 5% guard band excluding the leakage shoulder.
// ---------------------------------------------------------------------------
inline double oob_rejection(const Spectrum& spec, double f_d_hz, double guard = 0.05) {
    if (!(f_d_hz > 0.0)) throw std::invalid_argument("f_d must be positive");
    return rejection_beyond(spec, f_d_hz * (1.0 + guard));
}

// ---------------------------------------------------------------------------
// Swap detection: consecutive-sample correlation of the leading column.
// A swap replaces the column with an (almost) orthogonal one, so the
// correlation collapses at the event.
// ---------------------------------------------------------------------------
inline std::vector<std::size_t> detect_swaps(const std::vector<CMatrix>& u_series,
                                             double threshold = 0.5) {
    if (u_series.size() < 2)
        throw std::invalid_argument("need at least two samples to detect swaps");
    if (!(threshold > 0.0) || !(threshold < 1.0))
        throw std::invalid_argument("threshold must lie in (0, 1)");
    std::vector<std::size_t> events;
    for (std::size_t n = 0; n + 1 < u_series.size(); ++n) {
        Complex corr(0.0, 0.0);
        for (std::size_t r = 0; r < u_series[n].rows(); ++r)
            corr += std::conj(u_series[n].at(r, 0)) * u_series[n + 1].at(r, 0);
        if (std::abs(corr) < threshold) events.push_back(n);
    }
    return events;
}

// ---------------------------------------------------------------------------
// Kolmogorov-Smirnov-style sup distance between two CDFs over their common
// level range.
// ---------------------------------------------------------------------------
inline double distribution_compare(const Cdf& a, const Cdf& b) {
    if (a.levels_db.empty() || b.levels_db.empty())
        throw std::invalid_argument("empty CDF");
    const double lo = std::max(a.levels_db.front(), b.levels_db.front());
    const double hi = std::min(a.levels_db.back(), b.levels_db.back());
    if (lo > hi) throw std::invalid_argument("CDF level ranges do not overlap");
    double dist = 0.0;
    auto scan = [&](const Cdf& grid) {
        for (std::size_t i = 0; i < grid.levels_db.size(); ++i) {
            const double level = grid.levels_db[i];
            if (level < lo || level > hi) continue;
            const double d = std::abs(a.at(level) - b.at(level));
            if (d > dist) dist = d;
        }
    };
    scan(a);
    scan(b);
    return dist;
}

// ---------------------------------------------------------------------------
// Gain-selection equivalence: sorting the trace's per-sample gains must
// reproduce the descending singular values of the assembled channel —
// gains are basis-independent, so the two representations agree to
// round-trip precision.  Returns the maximum relative deviation.
// ---------------------------------------------------------------------------
inline double selection_equivalence(const EigenTrace& trace) {
    if (trace.size() == 0) throw std::invalid_argument("empty trace");
    if (trace.u.front().rows() != trace.v.front().rows())
        throw std::invalid_argument("selection_equivalence expects a square channel");
    double worst = 0.0;
    for (std::size_t n = 0; n < trace.size(); ++n) {
        CMatrix h = assemble(trace.u[n], trace.s[n], trace.v[n]);
        SvdTriple d = svd(h, SvdOrder::descending);
        std::vector<double> sorted(trace.s[n].size());
        for (std::size_t m = 0; m < sorted.size(); ++m) sorted[m] = std::abs(trace.s[n][m]);
        std::sort(sorted.begin(), sorted.end(), std::greater<double>());
        for (std::size_t m = 0; m < sorted.size(); ++m) {
            const double s_ref = d.s.at(m, m).real();
            const double ref = std::max(std::abs(s_ref), 1e-300);
            const double dev = std::abs(sorted[m] - s_ref) / ref;
            if (dev > worst) worst = dev;
        }
    }
    return worst;
}

} // namespace evcm

#endif // EVCM_ANALYSIS_HPP
