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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace evcm {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

// Dense complex matrix, row-major. Sizes here are tiny (at most 8x8), so the
// implementation favours clarity over blocking or expression templates.
class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMatrix identity(std::size_t n)
    {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Complex &at(std::size_t i, std::size_t j)
    {
        if (i >= rows_ || j >= cols_)
            throw std::out_of_range("CMatrix::at: index out of range");
        return data_[i * cols_ + j];
    }
    const Complex &at(std::size_t i, std::size_t j) const
    {
        if (i >= rows_ || j >= cols_)
            throw std::out_of_range("CMatrix::at: index out of range");
        return data_[i * cols_ + j];
    }

    const CVector &data() const { return data_; }
    CVector &data() { return data_; }

    CVector col(std::size_t j) const
    {
        CVector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    void set_col(std::size_t j, const CVector &c)
    {
        if (c.size() != rows_)
            throw std::invalid_argument("set_col: length mismatch");
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, j) = c[i];
    }

    CMatrix adjoint() const
    {
        CMatrix a(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                a(j, i) = std::conj((*this)(i, j));
        return a;
    }

    bool operator==(const CMatrix &o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    CVector data_;
};

inline CMatrix operator*(const CMatrix &a, const CMatrix &b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product: inner dimensions differ");
    CMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{})
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

inline CVector operator*(const CMatrix &a, const CVector &x)
{
    if (a.cols() != x.size())
        throw std::invalid_argument("matrix-vector product: dimensions differ");
    CVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < a.cols(); ++j)
            acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

// Inner product with conjugation on the first argument: a^H b.
inline Complex cdot(const CVector &a, const CVector &b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("cdot: length mismatch");
    Complex acc{};
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += std::conj(a[i]) * b[i];
    return acc;
}

inline double norm2(const CVector &a)
{
    double acc = 0.0;
    for (const Complex &v : a)
        acc += std::norm(v);
    return std::sqrt(acc);
}

inline double max_abs_diff(const CMatrix &a, const CMatrix &b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

inline double frobenius(const CMatrix &a)
{
    double acc = 0.0;
    for (const Complex &v : a.data())
        acc += std::norm(v);
    return std::sqrt(acc);
}

// max |(M^H M - I)_{ij}| for a square matrix; 0 iff M is exactly unitary.
inline double unitarity_error(const CMatrix &m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("unitarity_error: square matrix required");
    const std::size_t n = m.rows();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc{};
            for (std::size_t k = 0; k < n; ++k)
                acc += std::conj(m(k, i)) * m(k, j);
            if (i == j)
                acc -= 1.0;
            worst = std::max(worst, std::abs(acc));
        }
    return worst;
}

// Rank-one transport between unit vectors: T = I - w w^H / (w^H u_prev) with
// w = u_prev - u_next. T is unitary and maps u_prev onto u_next exactly.
// The only degenerate geometry is u_next == u_prev (w and the projection
// both vanish), which falls back to the identity; antipodal inputs are fine
// and produce the exact reflection I - 2 u u^H.
inline CMatrix householder_transition(const CVector &u_prev, const CVector &u_next,
                                      double tol = 1e-12)
{
    if (u_prev.size() != u_next.size())
        throw std::invalid_argument("householder_transition: length mismatch");
    const std::size_t n = u_prev.size();
    if (std::abs(norm2(u_prev) - 1.0) > 1e-6 || std::abs(norm2(u_next) - 1.0) > 1e-6)
        throw std::invalid_argument("householder_transition: inputs must be unit vectors");

    CVector w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = u_prev[i] - u_next[i];

    const Complex beta = cdot(w, u_prev);
    if (norm2(w) < tol || std::abs(beta) < tol)
        return CMatrix::identity(n);

    CMatrix t = CMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            t(i, j) -= w[i] * std::conj(w[j]) / beta;
    return t;
}

// Modified Gram-Schmidt re-orthonormalisation. Column 0 is normalised but its
// direction is kept; the remaining columns are orthogonalised in order.
inline void orthonormalize_columns(CMatrix &m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("orthonormalize_columns: square matrix required");
    const std::size_t n = m.rows();
    for (std::size_t j = 0; j < n; ++j) {
        CVector cj = m.col(j);
        for (std::size_t k = 0; k < j; ++k) {
            const CVector ck = m.col(k);
            const Complex proj = cdot(ck, cj);
            for (std::size_t i = 0; i < n; ++i)
                cj[i] -= proj * ck[i];
        }
        const double len = norm2(cj);
        if (len < 1e-14)
            throw std::runtime_error("orthonormalize_columns: rank deficient");
        for (Complex &v : cj)
            v /= len;
        m.set_col(j, cj);
    }
}

// Physical channel from an eigen-domain sample: H = U S V^H.
inline CMatrix assemble(const CMatrix &u, const CMatrix &s, const CMatrix &v)
{
    if (u.rows() != u.cols() || v.rows() != v.cols())
        throw std::invalid_argument("assemble: U and V must be square");
    if (s.rows() != u.rows() || s.cols() != v.rows())
        throw std::invalid_argument("assemble: S must be rows(U) x rows(V)");
    return u * s * v.adjoint();
}

// Diagonal N x M matrix from the leading min(N, M) complex gains.
inline CMatrix diag_rect(std::size_t n, std::size_t m, const CVector &d)
{
    if (d.size() != std::min(n, m))
        throw std::invalid_argument("diag_rect: need min(n, m) entries");
    CMatrix s(n, m);
    for (std::size_t i = 0; i < d.size(); ++i)
        s(i, i) = d[i];
    return s;
}

// Same assembly, with the gains given as complex values of length min(N, M).
// A complex gain is a singular value |g| with a phase that the decomposition
// absorbs into the right-singular-vector gauge.
inline CMatrix assemble(const CMatrix &u, const CVector &gains, const CMatrix &v)
{
    if (gains.size() != std::min(u.rows(), v.rows()))
        throw std::invalid_argument("assemble: need min(rows(U), rows(V)) gains");
    return assemble(u, diag_rect(u.rows(), v.rows(), gains), v);
}

// Same assembly, with the gains given as a real vector of length min(N, M).
inline CMatrix assemble(const CMatrix &u, const std::vector<double> &gains, const CMatrix &v)
{
    if (gains.size() != std::min(u.rows(), v.rows()))
        throw std::invalid_argument("assemble: need min(rows(U), rows(V)) gains");
    CVector d(gains.size());
    for (std::size_t i = 0; i < gains.size(); ++i)
        d[i] = Complex(gains[i], 0.0);
    return assemble(u, diag_rect(u.rows(), v.rows(), d), v);
}

} // namespace evcm
