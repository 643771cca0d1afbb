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

#ifndef EVCM_MODEL_HPP
#define EVCM_MODEL_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "evcm/doppler.hpp"
#include "evcm/linalg.hpp"
#include "evcm/rng.hpp"
#include "evcm/svd.hpp"

namespace evcm {

// The five channel classes: four deterministic / semi-deterministic stress
// families (det_classes.hpp) plus the stochastic eigen-domain model
// (gen_class_v below).
enum class ChannelClass : std::uint32_t {
    class1 = 1,
    class2 = 2,
    class3 = 3,
    class4 = 4,
    class5 = 5,
};

// ---------------------------------------------------------------------------
// Configuration for channel traces.
// ---------------------------------------------------------------------------
struct ModelConfig {
    std::size_t n_rx = 2;            // receive antennas (rows of H)
    std::size_t n_tx = 2;            // transmit antennas (columns of H)
    std::size_t n_samples = 10000;   // kept samples per trace
    double f_d_hz = 1.0;             // maximum Doppler shift
    double s_f = 8.0;                // sampling rate as a multiple of f_d
    double k_f = 0.0;                // Ricean power ratio (0 = pure scatter)
    std::vector<double> s_ratios;    // mean-magnitude ratios s[i+1]/s[i]; empty = independent
    std::uint64_t seed = 4;          // master RNG seed (see README on the default choice)
    double omega_rad_s = 0.0;        // deterministic-class stress frequency; 0 = pi * f_d
    std::size_t n_s = 20;            // ring scatterer count (class4)
    ChannelClass channel_class = ChannelClass::class5;

    std::size_t min_dim() const { return n_rx < n_tx ? n_rx : n_tx; }

    void validate() const {
        if (n_rx == 0 || n_tx == 0) throw std::invalid_argument("antenna counts must be positive");
        if (n_rx > 8 || n_tx > 8) throw std::invalid_argument("antenna counts above 8 are not supported");
        if (n_samples < 60) throw std::invalid_argument("n_samples must be at least 60");
        if (!(f_d_hz > 0.0)) throw std::invalid_argument("f_d_hz must be positive");
        if (!(s_f > 2.0)) throw std::invalid_argument("sampling rate must exceed twice the Doppler shift");
        if (k_f < 0.0) throw std::invalid_argument("k_f must be non-negative");
        if (!s_ratios.empty() && s_ratios.size() != min_dim() - 1)
            throw std::invalid_argument("s_ratios must have min(N,M)-1 entries");
        for (double r : s_ratios)
            if (!(r > 0.0)) throw std::invalid_argument("s_ratios entries must be positive");
    }
};

/// A time series of eigen-domain factors: H(t_n) = U(t_n) S(t_n) V(t_n)^H.
struct EigenTrace {
    std::vector<CMatrix> u;   // n_samples unitary N x N matrices
    std::vector<CVector> s;   // n_samples vectors of min(N,M) complex mode gains
                              // (|s_i| are the singular values; the phase is a
                              // gauge absorbed by the right singular vectors)
    std::vector<CMatrix> v;   // n_samples unitary M x M matrices

    std::size_t size() const { return u.size(); }
};

// A time series of physical channel matrices.
struct ChannelTrace {
    std::vector<CMatrix> h;   // n_samples N x M matrices

    std::size_t size() const { return h.size(); }
};

namespace detail {

// Generated (pre-discard) length: the first 20% of every trajectory is
// dropped so tone-phase transients cannot leak into the kept samples.
inline std::size_t generated_length(std::size_t n_keep) {
    return static_cast<std::size_t>(std::ceil(static_cast<double>(n_keep) / 0.8));
}

} // namespace detail

// ---------------------------------------------------------------------------
// First-column generation: each element of the column gets an independent
// band-limited magnitude trajectory plus an independent phase trajectory;
// the last element's magnitude closes the column to unit norm.  When the
// partial sum of squared magnitudes exceeds one, the preceding elements are
// scaled back onto the unit sphere and the closing element is set to zero
// for that sample ("capping").
// ---------------------------------------------------------------------------
struct FirstColumnSeries {
    std::vector<CVector> column;   // n_keep samples of an N-element unit column
    double violation_rate = 0.0;   // fraction of kept samples that were capped
};

inline FirstColumnSeries gen_first_vector_series(std::size_t dim,
                                                 double f_d_hz,
                                                 double s_f,
                                                 std::size_t n_keep,
                                                 double k_f,
                                                 std::uint64_t seed,
                                                 const std::string& tag,
                                                 double abort_threshold = 0.05) {
    if (dim < 2) throw std::invalid_argument("first-vector dimension must be at least 2");
    const std::size_t n_gen = detail::generated_length(n_keep);
    const std::size_t n_drop = n_gen - n_keep;

    // Tone sets: one magnitude set per leading element (the last element's
    // magnitude is the unit-norm closure), one phase set per element.  Each
    // trajectory draws from its own tagged stream, so they stay independent
    // without any cross-element draw accounting.
    std::vector<ToneOscillator> mag_osc;
    std::vector<ToneOscillator> phase_osc;
    mag_osc.reserve(dim - 1);
    phase_osc.reserve(dim);
    for (std::size_t e = 0; e < dim; ++e) {
        if (e + 1 < dim) {
            RandomStream mag_rng(seed, tag + "/mag", e);
            mag_osc.emplace_back(make_tone_set(ToneKind::vector, f_d_hz, n_gen, k_f, dim, mag_rng), s_f, f_d_hz);
        }
        RandomStream ph_rng(seed, tag + "/phase", e);
        phase_osc.emplace_back(make_tone_set(ToneKind::vector, f_d_hz, n_gen, k_f, dim, ph_rng), s_f, f_d_hz);
    }

    FirstColumnSeries out;
    out.column.assign(n_keep, CVector(dim));
    std::vector<Complex> prev_phase(dim, Complex(1.0, 0.0));
    std::size_t n_capped = 0;

    for (std::size_t n = 0; n < n_gen; ++n) {
        CVector col(dim);
        // Magnitudes for the first dim-1 elements; closure for the last.
        double sum_sq = 0.0;
        std::vector<double> mags(dim, 0.0);
        for (std::size_t e = 0; e + 1 < dim; ++e) {
            mags[e] = std::abs(mag_osc[e].next());
            sum_sq += mags[e] * mags[e];
        }
        bool capped = false;
        if (sum_sq > 1.0) {
            capped = true;
            const double scale = 1.0 / std::sqrt(sum_sq);
            for (std::size_t e = 0; e + 1 < dim; ++e) mags[e] *= scale;
            mags[dim - 1] = 0.0;
        } else {
            mags[dim - 1] = std::sqrt(1.0 - sum_sq);
        }
        // Phases: an independent trajectory per element; a zero tone sum
        // reuses the previous sample's phase.
        for (std::size_t e = 0; e < dim; ++e) {
            Complex ph = phase_osc[e].next();
            if (std::abs(ph) < 1e-300) {
                ph = prev_phase[e];
            }
            ph /= std::abs(ph);
            prev_phase[e] = ph;
            col[e] = mags[e] * ph;
        }
        if (n >= n_drop) {
            out.column[n - n_drop] = std::move(col);
            if (capped) ++n_capped;
        }
    }
    out.violation_rate = static_cast<double>(n_capped) / static_cast<double>(n_keep);
    if (out.violation_rate > abort_threshold)
        throw std::runtime_error("first-vector constraint violation rate " +
                                 std::to_string(out.violation_rate) +
                                 " exceeds abort threshold " + std::to_string(abort_threshold));
    return out;
}

// ---------------------------------------------------------------------------
// Unitary completion: carry a full unitary frame along a first-column
// trajectory with a chain of rank-one transitions.  Each step maps the
// previous first column onto the next one exactly.  When the direct
// transition is ill-conditioned (the step is nearly phase-free, which turns
// the map into a 2D reflection that kicks the completion columns), the step
// is routed through a quarter-turn midpoint as two well-conditioned
// transitions.  Columns are re-orthonormalized every `mgs_period` samples
// against accumulated roundoff, keeping the first column fixed.
// ---------------------------------------------------------------------------
namespace detail {

inline void apply_transition_chain_step(CMatrix& frame,
                                        const CVector& u_prev,
                                        const CVector& u_next) {
    const std::size_t n = u_prev.size();
    CVector w(n);
    double w_norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = u_prev[i] - u_next[i];
        w_norm2 += std::norm(w[i]);
    }
    const double w_norm = std::sqrt(w_norm2);
    if (w_norm < 1e-12) return;
    const Complex beta = cdot(w, u_prev);
    if (std::abs(beta) < 1e-12) return;
    if (std::abs(beta) >= 0.25 * w_norm) {
        frame = householder_transition(u_prev, u_next) * frame;
        return;
    }
    CVector mid(n);
    double s_norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mid[i] = u_prev[i] + u_next[i];
        s_norm2 += std::norm(mid[i]);
    }
    const double s_norm = std::sqrt(s_norm2);
    if (s_norm < 1e-6) {
        frame = householder_transition(u_prev, u_next) * frame;
        return;
    }
    const Complex quarter_turn(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) mid[i] *= quarter_turn / s_norm;
    frame = householder_transition(u_prev, mid) * frame;
    frame = householder_transition(mid, u_next) * frame;
}

} // namespace detail

inline std::vector<CMatrix> complete_matrices(const std::vector<CVector>& first_columns,
                                              const CMatrix& seed_frame,
                                              std::size_t mgs_period = 1000) {
    if (first_columns.empty()) return {};
    const std::size_t dim = first_columns.front().size();
    if (seed_frame.rows() != dim || seed_frame.cols() != dim)
        throw std::invalid_argument("seed frame shape does not match first-column dimension");
    if (mgs_period == 0) throw std::invalid_argument("mgs_period must be positive");

    std::vector<CMatrix> out;
    out.reserve(first_columns.size());

    // Rotate the seed frame so its first column coincides with the
    // trajectory's starting column.
    CMatrix frame = seed_frame;
    detail::apply_transition_chain_step(frame, seed_frame.col(0), first_columns.front());
    frame.set_col(0, first_columns.front());

    for (std::size_t n = 0; n < first_columns.size(); ++n) {
        if (n > 0) {
            detail::apply_transition_chain_step(frame, first_columns[n - 1], first_columns[n]);
        }
        if ((n + 1) % mgs_period == 0) {
            frame.set_col(0, first_columns[n]);
            orthonormalize_columns(frame);
        }
        frame.set_col(0, first_columns[n]);
        out.push_back(frame);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mode-gain trajectories: per-mode band-limited complex series on the value
// tone grid, optional Ricean line-of-sight term, optional sequential
// mean-magnitude ratios, and a global normalization making the summed mean
// square magnitude equal N*M exactly over the kept samples.  The series stay
// complex: |s_i(t)| is the i-th singular value, while the phase rides along
// into assembly as a right-singular-vector gauge.  Keeping the phase is what
// gives assembled channel entries full phase diversity (Rayleigh deep fades)
// and confines their spectrum to the tone band; taking magnitudes here would
// rectify the series and smear energy far out of band.
// ---------------------------------------------------------------------------
inline std::vector<CVector> gen_singular_values(const ModelConfig& cfg,
                                                const std::string& tag = "values") {
    cfg.validate();
    const std::size_t n_modes = cfg.min_dim();
    const std::size_t n_gen = detail::generated_length(cfg.n_samples);
    const std::size_t n_drop = n_gen - cfg.n_samples;

    std::vector<CVector> modes(n_modes, CVector(cfg.n_samples));
    for (std::size_t m = 0; m < n_modes; ++m) {
        RandomStream rng(cfg.seed, tag, m);
        ToneSet ts = make_tone_set(ToneKind::value, cfg.f_d_hz, n_gen, cfg.k_f, 0, rng);
        double amp_sum = 0.0;
        for (double a : ts.amp) amp_sum += a;
        ToneOscillator osc(ts, cfg.s_f, cfg.f_d_hz);
        const double los_gain = std::sqrt(cfg.k_f) / amp_sum;
        for (std::size_t n = 0; n < n_gen; ++n) {
            Complex s = osc.next();
            if (cfg.k_f > 0.0) {
                const double arg = 2.0 * std::numbers::pi * static_cast<double>(n) / cfg.s_f;
                s += los_gain * Complex(std::cos(arg), std::sin(arg));
            }
            if (n >= n_drop) modes[m][n - n_drop] = s;
        }
    }

    // Sequential mean-magnitude ratios.
    if (!cfg.s_ratios.empty()) {
        for (std::size_t j = 0; j + 1 < n_modes; ++j) {
            double mean_prev = 0.0, mean_next = 0.0;
            for (std::size_t n = 0; n < cfg.n_samples; ++n) {
                mean_prev += std::abs(modes[j][n]);
                mean_next += std::abs(modes[j + 1][n]);
            }
            if (mean_next <= 0.0) throw std::runtime_error("degenerate singular-value trajectory");
            const double scale = cfg.s_ratios[j] * mean_prev / mean_next;
            for (Complex& x : modes[j + 1]) x *= scale;
        }
    }

    // Global normalization: sum_i mean |s_i|^2 = N*M over kept samples.
    double total = 0.0;
    for (const auto& mode : modes) {
        double acc = 0.0;
        for (const Complex& x : mode) acc += std::norm(x);
        total += acc / static_cast<double>(cfg.n_samples);
    }
    if (total <= 0.0) throw std::runtime_error("degenerate singular-value power");
    const double scale = std::sqrt(static_cast<double>(cfg.n_rx * cfg.n_tx) / total);
    for (auto& mode : modes)
        for (Complex& x : mode) x *= scale;

    // Transpose to per-sample vectors.
    std::vector<CVector> out(cfg.n_samples, CVector(n_modes));
    for (std::size_t n = 0; n < cfg.n_samples; ++n)
        for (std::size_t m = 0; m < n_modes; ++m) out[n][m] = modes[m][n];
    return out;
}

// ---------------------------------------------------------------------------
// Full stochastic eigen-domain trace (class V): time-varying U, S, V with
// independently generated first columns, transition-chain completions seeded
// from the SVD of one complex Gaussian draw, and Doppler-shaped values.
// ---------------------------------------------------------------------------
inline EigenTrace gen_class_v(const ModelConfig& cfg) {
    cfg.validate();

    // Seed frames from the SVD of a single complex Gaussian matrix.
    RandomStream seed_rng(cfg.seed, "seed-matrix");
    CMatrix h0(cfg.n_rx, cfg.n_tx);
    for (std::size_t i = 0; i < cfg.n_rx; ++i)
        for (std::size_t j = 0; j < cfg.n_tx; ++j)
            h0.at(i, j) = Complex(seed_rng.gaussian(), seed_rng.gaussian()) / std::sqrt(2.0);
    SvdTriple base = svd(h0);

    FirstColumnSeries u1 = gen_first_vector_series(cfg.n_rx, cfg.f_d_hz, cfg.s_f,
                                                   cfg.n_samples, cfg.k_f, cfg.seed, "u-first");
    FirstColumnSeries v1 = gen_first_vector_series(cfg.n_tx, cfg.f_d_hz, cfg.s_f,
                                                   cfg.n_samples, cfg.k_f, cfg.seed, "v-first");

    EigenTrace trace;
    trace.u = complete_matrices(u1.column, base.u);
    trace.v = complete_matrices(v1.column, base.v);
    trace.s = gen_singular_values(cfg);
    return trace;
}

// Assemble physical channel matrices H(t_n) = U(t_n) S(t_n) V(t_n)^H.
inline ChannelTrace assemble_trace(const EigenTrace& eig) {
    ChannelTrace out;
    out.h.reserve(eig.size());
    for (std::size_t n = 0; n < eig.size(); ++n)
        out.h.push_back(assemble(eig.u[n], eig.s[n], eig.v[n]));
    return out;
}

} // namespace evcm

#endif // EVCM_MODEL_HPP
