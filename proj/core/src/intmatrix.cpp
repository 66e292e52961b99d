/*
   Copyright 2026 The difftower Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "difftower/intmatrix.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "difftower/error.hpp"

namespace difftower {

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw DomainError("matrix rows have different lengths");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntVector IntMatrix::row(std::size_t i) const {
    return IntVector(a_.begin() + static_cast<long>(i * cols_), a_.begin() + static_cast<long>((i + 1) * cols_));
}

std::vector<IntVector> IntMatrix::row_vectors() const {
    std::vector<IntVector> r;
    for (std::size_t i = 0; i < rows_; ++i) r.push_back(row(i));
    return r;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::add_row(std::size_t i, std::size_t j, const mpz_class& c) {
    if (sgn(c) == 0) return;
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) += c * (*this)(j, k);
}

void IntMatrix::add_col(std::size_t i, std::size_t j, const mpz_class& c) {
    if (sgn(c) == 0) return;
    for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) += c * (*this)(k, j);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix dimensions do not match");
    IntMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (sgn(a(i, k)) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

mpz_class det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    IntMatrix a = m;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(a(k, k)) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(a(p, k)) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

namespace {

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

HnfTransform hnf_with_transform(const IntMatrix& m) {
    IntMatrix h = m, u = IntMatrix::identity(m.rows());
    std::size_t r = 0;
    for (std::size_t j = 0; j < h.cols() && r < h.rows(); ++j) {
        for (;;) {
            // Smallest nonzero entry at or below row r moves to the pivot.
            std::optional<std::size_t> best;
            for (std::size_t i = r; i < h.rows(); ++i)
                if (sgn(h(i, j)) != 0 && (!best || abs(h(i, j)) < abs(h(*best, j)))) best = i;
            if (!best) break;
            h.swap_rows(r, *best);
            u.swap_rows(r, *best);
            bool done = true;
            for (std::size_t i = r + 1; i < h.rows(); ++i) {
                if (sgn(h(i, j)) == 0) continue;
                const mpz_class q = -floor_div(h(i, j), h(r, j));
                h.add_row(i, r, q);
                u.add_row(i, r, q);
                if (sgn(h(i, j)) != 0) done = false;
            }
            if (done) break;
        }
        if (sgn(h(r, j)) == 0) continue;
        if (sgn(h(r, j)) < 0) {
            h.negate_row(r);
            u.negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            const mpz_class q = -floor_div(h(i, j), h(r, j));
            h.add_row(i, r, q);
            u.add_row(i, r, q);
        }
        ++r;
    }
    return {h, u};
}

namespace {

bool zero_row(const IntMatrix& m, std::size_t i) {
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (sgn(m(i, j)) != 0) return false;
    return true;
}

IntMatrix take_rows(const IntMatrix& m, const std::vector<std::size_t>& idx) {
    IntMatrix r(idx.size(), m.cols());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(idx[i], j);
    return r;
}

}  // namespace

IntMatrix hnf(const IntMatrix& m) {
    const IntMatrix h = hnf_with_transform(m).h;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < h.rows(); ++i)
        if (!zero_row(h, i)) keep.push_back(i);
    return take_rows(h, keep);
}

IntMatrix integer_kernel(const IntMatrix& m) {
    const HnfTransform t = hnf_with_transform(m.transpose());
    std::vector<std::size_t> zero;
    for (std::size_t i = 0; i < t.h.rows(); ++i)
        if (zero_row(t.h, i)) zero.push_back(i);
    return hnf(take_rows(t.u, zero));
}

IntVector reduce_mod(const IntVector& v, const IntMatrix& basis) {
    if (v.size() != basis.cols()) throw DomainError("vector length does not match the lattice");
    IntVector r = v;
    for (std::size_t i = 0; i < basis.rows(); ++i) {
        std::size_t p = 0;
        while (p < basis.cols() && sgn(basis(i, p)) == 0) ++p;
        if (p == basis.cols()) continue;
        const mpz_class q = floor_div(r[p], basis(i, p));
        if (sgn(q) == 0) continue;
        for (std::size_t j = p; j < basis.cols(); ++j) r[j] -= q * basis(i, j);
    }
    return r;
}

bool in_lattice(const IntVector& v, const IntMatrix& basis) {
    const IntVector r = reduce_mod(v, basis);
    return std::all_of(r.begin(), r.end(), [](const mpz_class& c) { return sgn(c) == 0; });
}

std::vector<mpz_class> SmithForm::diagonal() const {
    std::vector<mpz_class> d;
    for (std::size_t i = 0; i < std::min(s.rows(), s.cols()); ++i) d.push_back(s(i, i));
    return d;
}

SmithForm smith_normal_form(const IntMatrix& m) {
    IntMatrix s = m, u = IntMatrix::identity(m.rows()), v = IntMatrix::identity(m.cols());
    const std::size_t n = std::min(m.rows(), m.cols());
    auto row_op = [&](std::size_t i, std::size_t j, const mpz_class& c) {
        s.add_row(i, j, c);
        u.add_row(i, j, c);
    };
    auto col_op = [&](std::size_t i, std::size_t j, const mpz_class& c) {
        s.add_col(i, j, c);
        v.add_col(i, j, c);
    };
    for (std::size_t t = 0; t < n; ++t) {
        bool empty = false;
        for (;;) {
            std::optional<std::pair<std::size_t, std::size_t>> best;
            for (std::size_t i = t; i < s.rows(); ++i)
                for (std::size_t j = t; j < s.cols(); ++j)
                    if (sgn(s(i, j)) != 0 && (!best || abs(s(i, j)) < abs(s(best->first, best->second))))
                        best = {i, j};
            if (!best) {
                empty = true;
                break;
            }
            s.swap_rows(t, best->first);
            u.swap_rows(t, best->first);
            s.swap_cols(t, best->second);
            v.swap_cols(t, best->second);
            bool clean = true;
            for (std::size_t i = t + 1; i < s.rows(); ++i) {
                row_op(i, t, -floor_div(s(i, t), s(t, t)));
                if (sgn(s(i, t)) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < s.cols(); ++j) {
                col_op(j, t, -floor_div(s(t, j), s(t, t)));
                if (sgn(s(t, j)) != 0) clean = false;
            }
            if (!clean) continue;
            // The pivot must divide the rest of the block.
            std::optional<std::size_t> bad;
            for (std::size_t i = t + 1; i < s.rows() && !bad; ++i)
                for (std::size_t j = t + 1; j < s.cols(); ++j)
                    if (!mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (!bad) break;
            row_op(t, *bad, 1);
        }
        if (empty) break;
        if (sgn(s(t, t)) < 0) {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    return {u, s, v};
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw DomainError("inverse of a non-square matrix");
    const HnfTransform t = hnf_with_transform(m);
    if (!(t.h == IntMatrix::identity(m.rows()))) throw DomainError("matrix is not unimodular");
    return t.u;
}

std::string to_string(const IntVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
    return s + ")";
}

std::string to_string(const IntMatrix& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) s += (i ? ", " : "") + to_string(m.row(i));
    return s + "]";
}

}  // namespace difftower
