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

// Dense integer matrices: Hermite and Smith normal forms, integer kernels.

#ifndef DIFFTOWER_INTMATRIX_HPP
#define DIFFTOWER_INTMATRIX_HPP

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace difftower {

using IntVector = std::vector<mpz_class>;

class IntMatrix {
   public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    /// Rows must all have length `cols`.
    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    mpz_class& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const mpz_class& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    IntVector row(std::size_t i) const;
    std::vector<IntVector> row_vectors() const;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    /// row i += c * row j
    void add_row(std::size_t i, std::size_t j, const mpz_class& c);
    void add_col(std::size_t i, std::size_t j, const mpz_class& c);
    void negate_row(std::size_t i);

    IntMatrix transpose() const;
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b);

   private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<mpz_class> a_;
};

mpz_class det(const IntMatrix& m);

/// Row Hermite normal form with zero rows removed: echelon form with positive
/// pivots and entries above each pivot in [0, pivot).
IntMatrix hnf(const IntMatrix& m);

struct HnfTransform {
    IntMatrix h;  // U * m, zero rows kept at the bottom
    IntMatrix u;  // unimodular
};
HnfTransform hnf_with_transform(const IntMatrix& m);

/// Basis (as rows) of {k in Z^cols : m k = 0}, in Hermite normal form.
IntMatrix integer_kernel(const IntMatrix& m);

/// v reduced modulo the row lattice of an HNF basis: pivot entries land in
/// [0, pivot).
IntVector reduce_mod(const IntVector& v, const IntMatrix& hnf_basis);
/// Membership in the row lattice of an HNF basis.
bool in_lattice(const IntVector& v, const IntMatrix& hnf_basis);

struct SmithForm {
    IntMatrix u, s, v;  // u * m * v = s, u and v unimodular
    /// The diagonal of s, min(rows, cols) entries.
    std::vector<mpz_class> diagonal() const;
};

/// Diagonal entries nonnegative with d_i | d_(i+1) (zeros last).
SmithForm smith_normal_form(const IntMatrix& m);

/// Inverse of a unimodular matrix.
IntMatrix unimodular_inverse(const IntMatrix& m);

std::string to_string(const IntMatrix& m);
std::string to_string(const IntVector& v);

}  // namespace difftower

#endif  // DIFFTOWER_INTMATRIX_HPP
