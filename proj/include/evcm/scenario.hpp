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

#ifndef EVCM_SCENARIO_HPP
#define EVCM_SCENARIO_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "evcm/linalg.hpp"
#include "evcm/model.hpp"
#include "evcm/svd.hpp"

namespace evcm {

// dB clamp range for SIR reporting; +sir_db_cap doubles as the "effectively
// infinite" sentinel (perfect tracking), -sir_db_cap as "zero signal".
inline constexpr double sir_db_cap = 300.0;

// Interference is treated as numerically zero (sentinel SIR) when its power
// is below this factor times the strongest mode's signal power.  The factor
// corresponds to an interference amplitude 1e-12 of the signal scale: far
// below any physical interference, comfortably above the ~1e-15 relative
// floor that double-precision assembly and projection leave behind.
inline constexpr double sir_zero_interference_rel = 1e-24;

enum class UpdateKind : std::uint32_t {
    frozen_at_start = 0,   // weights fixed to the trace's first sample
    every_sample = 1,      // weights refreshed from the trace each sample
    every_k_samples = 2,   // weights refreshed every k-th sample
};

struct UpdateRule {
    UpdateKind kind = UpdateKind::every_sample;
    std::size_t k = 1;

    void validate() const {
        if (kind == UpdateKind::every_k_samples && k < 1)
            throw std::invalid_argument("update period k must be at least 1");
    }
    // True when the weights should be re-read from the trace at sample n.
    bool refresh_at(std::size_t n) const {
        switch (kind) {
            case UpdateKind::frozen_at_start: return n == 0;
            case UpdateKind::every_sample: return true;
            case UpdateKind::every_k_samples: return n % k == 0;
        }
        return true;
    }
    std::string describe(const char* side) const {
        switch (kind) {
            case UpdateKind::frozen_at_start: return std::string(side) + "=frozen-at-t0";
            case UpdateKind::every_sample: return std::string(side) + "=every-sample";
            case UpdateKind::every_k_samples:
                return std::string(side) + "=every-" + std::to_string(k) + "-samples";
        }
        return std::string(side) + "=?";
    }
};

struct TrackingPolicy {
    UpdateRule u_update;
    UpdateRule v_update;
    std::size_t swap_period = 0;   // 0 = no swap injection; else block period in samples

    void validate() const {
        u_update.validate();
        v_update.validate();
    }
    std::string describe() const {
        std::string s = u_update.describe("u") + "," + v_update.describe("v");
        if (swap_period > 0) s += ",swap-period=" + std::to_string(swap_period);
        return s;
    }
};

struct SirSeries {
    std::vector<double> t;                       // seconds
    std::vector<std::vector<double>> sir_db;     // [mode][sample]
    std::size_t mode_count = 0;
    std::string policy;

    std::size_t size() const { return t.size(); }
};

// ---------------------------------------------------------------------------
// Per-mode SIR of a channel observed through weight matrices U_hat, V_hat:
// mode i's receive weight is U_hat's column i and its transmit weight is
// V_hat's column i.  With P = U_hat^H H V_hat,
//     SIR_i = |P(i,i)|^2 / |sum_{j != i} P(i,j)|^2
// (the interference terms add coherently).  Returned in dB, clamped to
// [-sir_db_cap, +sir_db_cap]; see sir_zero_interference_rel for the
// sentinel rule.  When `power_sum` is set, interference is accumulated as
// sum_j |P(i,j)|^2 instead (sensitivity variant; off by default).
// ---------------------------------------------------------------------------
inline std::vector<double> sir(const CMatrix& h,
                               const CMatrix& u_hat,
                               const CMatrix& v_hat,
                               bool power_sum = false) {
    if (u_hat.rows() != h.rows() || v_hat.rows() != h.cols())
        throw std::invalid_argument("weight matrix shapes do not match the channel");
    const std::size_t modes = u_hat.cols() < v_hat.cols() ? u_hat.cols() : v_hat.cols();
    if (modes == 0) throw std::invalid_argument("no modes to evaluate");

    // P = U_hat^H * H * V_hat, restricted to the first `modes` columns.
    CMatrix hv = h * v_hat;
    std::vector<double> signal(modes, 0.0);
    std::vector<double> interference(modes, 0.0);
    double max_signal = 0.0;
    for (std::size_t i = 0; i < modes; ++i) {
        Complex coherent(0.0, 0.0);
        double powsum = 0.0;
        Complex diag(0.0, 0.0);
        for (std::size_t j = 0; j < modes; ++j) {
            Complex p(0.0, 0.0);
            for (std::size_t r = 0; r < h.rows(); ++r)
                p += std::conj(u_hat.at(r, i)) * hv.at(r, j);
            if (j == i) {
                diag = p;
            } else {
                coherent += p;
                powsum += std::norm(p);
            }
        }
        signal[i] = std::norm(diag);
        interference[i] = power_sum ? powsum : std::norm(coherent);
        if (signal[i] > max_signal) max_signal = signal[i];
    }

    std::vector<double> out(modes);
    for (std::size_t i = 0; i < modes; ++i) {
        if (interference[i] <= sir_zero_interference_rel * max_signal) {
            out[i] = sir_db_cap;   // interference indistinguishable from zero
        } else if (signal[i] <= 0.0) {
            out[i] = -sir_db_cap;
        } else {
            double db = 10.0 * std::log10(signal[i] / interference[i]);
            if (db > sir_db_cap) db = sir_db_cap;
            if (db < -sir_db_cap) db = -sir_db_cap;
            out[i] = db;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Forced swaps: periodically exchange the leading vector pairs of U while
// leaving S and V untouched.  The assembled channel becomes intentionally
// unphysical (Doppler components beyond f_d); the point is to hammer a
// tracker with guaranteed, precisely timed swap events.
// Block-toggle convention: samples [0, period) keep the natural order,
// [period, 2*period) are swapped, and so on.
// ---------------------------------------------------------------------------
inline CMatrix swap_pattern(std::size_t dim) {
    if (dim == 2) {
        CMatrix r(2, 2);
        r.at(0, 1) = 1.0;
        r.at(1, 0) = -1.0;
        return r;
    }
    if (dim == 4) {
        // Pure pair-swap permutation: columns (0,1) exchange, (2,3) exchange.
        CMatrix r(4, 4);
        r.at(0, 1) = 1.0;
        r.at(1, 0) = 1.0;
        r.at(2, 3) = 1.0;
        r.at(3, 2) = 1.0;
        return r;
    }
    throw std::invalid_argument("swap pattern defined for 2x2 and 4x4 only");
}

inline EigenTrace forced_swap(const EigenTrace& trace, std::size_t period) {
    if (period == 0) throw std::invalid_argument("swap period must be at least 1");
    EigenTrace out = trace;
    if (trace.size() == 0) return out;
    const CMatrix pattern = swap_pattern(trace.u.front().rows());
    for (std::size_t n = 0; n < out.size(); ++n) {
        const bool swapped = (n / period) % 2 == 1;
        if (swapped) out.u[n] = out.u[n] * pattern;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tracking runs: walk a trace, maintain weight matrices per policy (frozen /
// periodic refresh from the trace itself; perfect knowledge at n = 0),
// assemble H each sample, and evaluate per-mode SIR.
// ---------------------------------------------------------------------------
namespace detail {

inline SirSeries run_sir_loop(const EigenTrace& trace,
                              const TrackingPolicy& policy,
                              double f_s_hz,
                              const std::vector<CMatrix>& u_source,
                              const std::vector<CMatrix>& v_source,
                              const std::vector<CMatrix>& h_series,
                              const std::string& label,
                              bool power_sum = false) {
    const std::size_t n_sam = trace.size();
    const std::size_t modes = trace.s.empty() ? 0 : trace.s.front().size();
    SirSeries out;
    out.mode_count = modes;
    out.policy = label;
    out.t.resize(n_sam);
    out.sir_db.assign(modes, std::vector<double>(n_sam));

    CMatrix u_hat, v_hat;
    for (std::size_t n = 0; n < n_sam; ++n) {
        if (n == 0 || policy.u_update.refresh_at(n)) u_hat = u_source[n];
        if (n == 0 || policy.v_update.refresh_at(n)) v_hat = v_source[n];
        out.t[n] = static_cast<double>(n) / f_s_hz;
        const std::vector<double> s = sir(h_series[n], u_hat, v_hat, power_sum);
        for (std::size_t m = 0; m < modes; ++m) out.sir_db[m][n] = s[m];
    }
    return out;
}

} // namespace detail

// Natural-path tracking.  With swap injection, the channel is assembled
// from the swapped trace while the tracker's weights still refresh from the
// natural (pre-swap) trace — the tracker does not know about the injected
// swaps, which is precisely the stress being applied.
inline SirSeries run_tracking(const EigenTrace& trace,
                              const TrackingPolicy& policy,
                              double f_s_hz = 1.0,
                              bool power_sum = false) {
    policy.validate();
    if (trace.size() == 0) throw std::invalid_argument("empty trace");
    const EigenTrace* channel = &trace;
    EigenTrace swapped;
    if (policy.swap_period > 0) {
        swapped = forced_swap(trace, policy.swap_period);
        channel = &swapped;
    }
    ChannelTrace ch = assemble_trace(*channel);
    return detail::run_sir_loop(*channel, policy, f_s_hz, trace.u, trace.v, ch.h,
                                "natural:" + policy.describe(), power_sum);
}

// Re-decomposed variant: assemble H, re-decompose every sample in descending
// singular-value order, and track those vectors instead.  This is how a
// conventional per-sample decomposition behaves: mode identities reshuffle
// whenever gains cross, so the tracker sees extra swap events.
inline SirSeries sorted_decomposition_sir(const EigenTrace& trace,
                                          const TrackingPolicy& policy,
                                          double f_s_hz = 1.0) {
    policy.validate();
    if (trace.size() == 0) throw std::invalid_argument("empty trace");
    const EigenTrace* channel = &trace;
    EigenTrace swapped;
    if (policy.swap_period > 0) {
        swapped = forced_swap(trace, policy.swap_period);
        channel = &swapped;
    }
    ChannelTrace ch = assemble_trace(*channel);
    // The sorted tracker observes the channel as assembled (swaps included)
    // and re-derives its weights from it each sample.
    std::vector<CMatrix> u_sorted(ch.size()), v_sorted(ch.size());
    for (std::size_t n = 0; n < ch.size(); ++n) {
        SvdTriple d = svd(ch.h[n], SvdOrder::descending);
        u_sorted[n] = std::move(d.u);
        v_sorted[n] = std::move(d.v);
    }
    return detail::run_sir_loop(*channel, policy, f_s_hz, u_sorted, v_sorted, ch.h,
                                "sorted:" + policy.describe());
}

} // namespace evcm

#endif // EVCM_SCENARIO_HPP
