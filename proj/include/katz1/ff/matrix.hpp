/*
   Copyright 2026 The katz1 Authors

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

#ifndef KATZ1_FF_MATRIX_HPP
#define KATZ1_FF_MATRIX_HPP

#include <optional>
#include <span>
#include <vector>

#include "katz1/ff/field.hpp"
#include "katz1/ff/poly.hpp"

namespace katz1::ff {

using Vec = std::vector<Elt>;

/// Dense row-major matrix over a finite field.
///
/// Over GF(2) the elimination and multiplication kernels run on a bit-packed copy of
/// the rows; every other field uses word-sized residues.
class Matrix {
public:
    Matrix() = default;
    Matrix(Field f, std::size_t rows, std::size_t cols);
    Matrix(Field f, std::size_t rows, std::size_t cols, std::vector<Elt> entries);

    static Matrix identity(Field f, std::size_t n);
    static Matrix from_rows(Field f, std::size_t cols, const std::vector<Vec>& rows);

    const Field& field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Elt operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    Elt& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    std::span<const Elt> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }
    std::span<Elt> row(std::size_t i) { return {a_.data() + i * cols_, cols_}; }
    const std::vector<Elt>& entries() const { return a_; }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(Elt s) const;
    Vec operator*(std::span<const Elt> v) const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix transpose() const;
    bool is_zero() const;
    Elt trace() const;

    /// Rows [r0, r1) as a new matrix.
    Matrix row_block(std::size_t r0, std::size_t r1) const;
    /// Appends the rows of o (same column count).
    Matrix stack(const Matrix& o) const;
    /// Entries read row by row as a single vector.
    Vec flatten() const { return a_; }
    static Matrix unflatten(Field f, std::size_t n, std::span<const Elt> v);

private:
    Field f_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Elt> a_;
};

struct Echelon {
    Matrix rref;  // nonzero rows only
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. The returned matrix holds only the nonzero rows, so its
/// row count equals the rank.
Echelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Rows form a basis of the right null space {v : m v = 0}.
Matrix kernel(const Matrix& m);

/// Rows form a basis (in reduced echelon form) of span(rows a) ∩ span(rows b).
Matrix intersect(const Matrix& a, const Matrix& b);

/// Rows form a basis (in reduced echelon form) of span(rows a) + span(rows b).
Matrix span_sum(const Matrix& a, const Matrix& b);

/// Some x with m x = b, or nothing when inconsistent. Free variables are set to zero.
std::optional<Vec> solve(const Matrix& m, std::span<const Elt> b);

std::optional<Matrix> inverse(const Matrix& m);

Matrix power(Matrix m, std::uint64_t e);

/// f(m) for a square matrix m.
Matrix evaluate(const Poly& f, const Matrix& m);

/// Monic generator of {f : f(m) = 0}.
Poly min_poly(const Matrix& m);

/// det(X - m), via reduction to Hessenberg form.
Poly char_poly(const Matrix& m);

/// Coordinates of v in the row span of an echelon basis (as returned by rref), or nothing
/// when v is outside the span.
std::optional<Vec> coordinates(const Echelon& basis, std::span<const Elt> v);

/// A growing set of vectors kept in semi-echelon form, for repeated span-membership tests.
/// Coordinates are reported relative to the vectors in the order they were accepted.
/// Over GF(2) rows are stored bit-packed.
class IncrementalBasis {
public:
    IncrementalBasis(Field f, std::size_t ncols);

    std::size_t size() const { return count_; }
    std::size_t ambient() const { return ncols_; }
    const Field& field() const { return f_; }

    /// Adds v when it lies outside the current span; returns whether it was added.
    bool add(std::span<const Elt> v);
    bool contains(std::span<const Elt> v) const;
    /// Coordinates with respect to the accepted vectors, or nothing when outside the span.
    std::optional<Vec> coordinates(std::span<const Elt> v) const;
    /// The accepted vectors as rows, in acceptance order.
    Matrix vectors() const;

private:
    // Reduces r in place; fills used[t] with the multiple of echelon row t subtracted.
    void reduce(Vec& r, Vec* used) const;
    void reduce_bits(std::vector<std::uint64_t>& r, Vec* used) const;

    Field f_;
    std::size_t ncols_, words_;
    std::size_t count_ = 0;
    bool gf2_;
    std::vector<Vec> rows_;                         // echelon rows (generic)
    std::vector<std::vector<std::uint64_t>> bits_;  // echelon rows (GF(2))
    std::vector<std::size_t> piv_;
    std::vector<Vec> combo_;  // echelon row t as a combination of accepted vectors
    std::vector<Vec> original_;
};

}  // namespace katz1::ff

#endif  // KATZ1_FF_MATRIX_HPP
