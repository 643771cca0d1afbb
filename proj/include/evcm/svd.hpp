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

#include <numeric>

#include "linalg.hpp"

namespace evcm {

enum class SvdOrder {
    descending, // singular values sorted non-increasing, ties by original index
    natural     // order as produced by the sweep, no sorting
};

struct SvdTriple {
    CMatrix u; // N x N unitary
    CMatrix s; // N x M, real non-negative diagonal
    CMatrix v; // M x M unitary

    CVector singular_values() const
    {
        const std::size_t k = std::min(s.rows(), s.cols());
        CVector d(k);
        for (std::size_t i = 0; i < k; ++i)
            d[i] = s(i, i);
        return d;
    }
};

namespace detail {

// One-sided Jacobi on the columns of a tall matrix (rows >= cols): rotate
// column pairs until all are mutually orthogonal, accumulating the rotations
// in V. At convergence the columns are U_j * sigma_j.
inline bool jacobi_orthogonalize(CMatrix &b, CMatrix &v, double off_tol, int max_sweeps)
{
    const std::size_t c = b.cols();
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < c; ++p) {
            for (std::size_t q = p + 1; q < c; ++q) {
                double app = 0.0, aqq = 0.0;
                Complex apq{};
                for (std::size_t i = 0; i < b.rows(); ++i) {
                    app += std::norm(b(i, p));
                    aqq += std::norm(b(i, q));
                    apq += std::conj(b(i, p)) * b(i, q);
                }
                const double mag = std::abs(apq);
                if (mag <= off_tol * std::sqrt(app * aqq) || mag == 0.0)
                    continue;
                rotated = true;

                const Complex phase = apq / mag; // e^{j alpha}
                const double zeta = (aqq - app) / (2.0 * mag);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;

                // [b_p, b_q] <- [b_p, b_q] * diag(1, conj(phase)) * R(theta)
                const Complex cph = std::conj(phase);
                for (std::size_t i = 0; i < b.rows(); ++i) {
                    const Complex bp = b(i, p);
                    const Complex bq = b(i, q) * cph;
                    b(i, p) = cs * bp - sn * bq;
                    b(i, q) = sn * bp + cs * bq;
                }
                for (std::size_t i = 0; i < v.rows(); ++i) {
                    const Complex vp = v(i, p);
                    const Complex vq = v(i, q) * cph;
                    v(i, p) = cs * vp - sn * vq;
                    v(i, q) = sn * vp + cs * vq;
                }
            }
        }
        if (!rotated)
            return true;
    }
    return false;
}

// Fill the unset columns of u with an orthonormal completion of the set ones.
inline void complete_basis(CMatrix &u, const std::vector<bool> &set)
{
    const std::size_t n = u.rows();
    std::vector<std::size_t> done;
    for (std::size_t j = 0; j < n; ++j)
        if (set[j])
            done.push_back(j);

    std::size_t cand = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (set[j])
            continue;
        for (; cand <= n; ++cand) {
            if (cand == n)
                throw std::runtime_error("svd: basis completion failed");
            CVector e(n);
            e[cand] = 1.0;
            for (std::size_t k : done) {
                const CVector ck = u.col(k);
                const Complex proj = cdot(ck, e);
                for (std::size_t i = 0; i < n; ++i)
                    e[i] -= proj * ck[i];
            }
            const double len = norm2(e);
            if (len < 1e-8)
                continue;
            for (Complex &x : e)
                x /= len;
            u.set_col(j, e);
            done.push_back(j);
            ++cand;
            break;
        }
    }
}

} // namespace detail

// Jacobi SVD specialised for the small matrices this library works with
// (at most 8x8). Column phases are gauged so the first element of each V
// column with magnitude above gauge_tol is real and positive; U columns are
// rotated by the same phase, keeping U S V^H invariant.
inline SvdTriple svd(const CMatrix &h, SvdOrder order = SvdOrder::descending,
                     double off_tol = 1e-14, int max_sweeps = 100, double gauge_tol = 1e-12)
{
    const std::size_t n = h.rows(), m = h.cols();
    if (n == 0 || m == 0 || n > 8 || m > 8)
        throw std::invalid_argument("svd: dimensions must be within 1..8");

    const bool transposed = n < m;
    CMatrix b = transposed ? h.adjoint() : h;
    const std::size_t r = b.rows(), c = b.cols();

    CMatrix w = CMatrix::identity(c);
    if (!detail::jacobi_orthogonalize(b, w, off_tol, max_sweeps))
        throw std::runtime_error("svd: Jacobi sweeps did not converge");

    std::vector<double> sigma(c);
    for (std::size_t j = 0; j < c; ++j)
        sigma[j] = norm2(b.col(j));

    std::vector<std::size_t> idx(c);
    std::iota(idx.begin(), idx.end(), 0);
    if (order == SvdOrder::descending)
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t bb) { return sigma[a] > sigma[bb]; });

    CMatrix bu(r, r), bv(c, c);
    std::vector<bool> set(r, false);
    for (std::size_t j = 0; j < c; ++j) {
        const std::size_t src = idx[j];
        bv.set_col(j, w.col(src));
        if (sigma[src] > 1e-300) {
            CVector col = b.col(src);
            for (Complex &x : col)
                x /= sigma[src];
            bu.set_col(j, col);
            set[j] = true;
        }
    }
    detail::complete_basis(bu, set);

    SvdTriple out;
    if (transposed) {
        out.u = bv;
        out.v = bu;
        out.s = CMatrix(n, m);
        for (std::size_t j = 0; j < c && j < std::min(n, m); ++j)
            out.s(j, j) = sigma[idx[j]];
    } else {
        out.u = bu;
        out.v = bv;
        out.s = CMatrix(n, m);
        for (std::size_t j = 0; j < c; ++j)
            out.s(j, j) = sigma[idx[j]];
    }

    // Phase gauge on V columns, mirrored onto U.
    const std::size_t k = std::min(n, m);
    for (std::size_t j = 0; j < out.v.cols(); ++j) {
        Complex pivot{};
        for (std::size_t i = 0; i < out.v.rows(); ++i)
            if (std::abs(out.v(i, j)) > gauge_tol) {
                pivot = out.v(i, j);
                break;
            }
        if (pivot == Complex{})
            continue;
        const Complex ph = pivot / std::abs(pivot);
        for (std::size_t i = 0; i < out.v.rows(); ++i)
            out.v(i, j) /= ph;
        if (j < k && j < out.u.cols())
            for (std::size_t i = 0; i < out.u.rows(); ++i)
                out.u(i, j) /= ph;
    }
    return out;
}

} // namespace evcm
