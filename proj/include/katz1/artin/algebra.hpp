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

#ifndef KATZ1_ARTIN_ALGEBRA_HPP
#define KATZ1_ARTIN_ALGEBRA_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "katz1/errors.hpp"
#include "katz1/ff/matrix.hpp"

namespace katz1::artin {

using ff::Elt;
using ff::Field;
using ff::Matrix;
using ff::Vec;

struct LabeledMatrix {
    std::string label;
    Matrix m;
};

/// A commutative unital algebra of n x n matrices over a finite field, generated by a
/// labeled family of commuting matrices.
///
/// The vector-space basis is stored in reduced echelon form relative to the row-major
/// flattening of matrix entries, so membership tests and dimensions are canonical.
class MatrixAlgebra {
public:
    MatrixAlgebra() = default;

    /// Smallest unital algebra containing the generators. Throws NonCommuting.
    static MatrixAlgebra close(Field f, std::size_t n, std::vector<LabeledMatrix> generators);

    const Field& field() const { return f_; }
    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return basis_.pivots.size(); }

    const std::vector<LabeledMatrix>& generators() const { return gens_; }
    bool has(const std::string& label) const;
    /// Throws MissingOperator when no generator carries the label.
    const Matrix& generator(const std::string& label) const;

    Matrix unit() const { return Matrix::identity(f_, n_); }
    Matrix basis_element(std::size_t i) const;
    std::vector<Matrix> basis() const;
    const ff::Echelon& echelon() const { return basis_; }

    bool contains(const Matrix& x) const;
    /// Coordinates in the echelon basis, or nothing when x is outside the algebra.
    std::optional<Vec> coords(const Matrix& x) const;
    Matrix element(std::span<const Elt> coords) const;

    /// Matrix of x -> x^q (q = |field|) on the basis; columns are images.
    Matrix frobenius() const;

    /// Algebra generated by the restrictions of the generators to an invariant subspace
    /// (rows of `subspace` form its basis). Labels are kept.
    MatrixAlgebra restrict_to(const Matrix& subspace) const;

    /// Restriction of a matrix that preserves `subspace`; the result acts on coordinates
    /// with respect to the rows of `subspace`. Throws InvariantError if x does not preserve it.
    static Matrix restrict_matrix(const Matrix& x, const ff::Echelon& subspace);

private:
    Field f_;
    std::size_t n_ = 0;
    std::vector<LabeledMatrix> gens_;
    ff::Echelon basis_;
};

/// Subspace of an algebra closed under multiplication by the algebra.
struct AlgebraIdeal {
    /// Rows are coordinate vectors in the parent's echelon basis, in reduced echelon form.
    Matrix basis;
    std::size_t dim() const { return basis.rows(); }
    std::vector<Matrix> elements(const MatrixAlgebra& parent) const;
    bool contains(const MatrixAlgebra& parent, const Matrix& x) const;
};

/// Builds the ideal spanned by the given algebra elements and verifies closure under
/// every generator of `parent` and every extra operator. Throws NotAnIdeal.
AlgebraIdeal make_ideal(const MatrixAlgebra& parent, const std::vector<Matrix>& spanning,
                        const std::vector<Matrix>& extra_operators = {});

/// span(a) ∩ u·span(a). Verified closed under u and every generator of a.
/// Throws IdealClosureFailure.
AlgebraIdeal ideal_from_intersection(const MatrixAlgebra& a, const Matrix& u);

struct Quotient {
    /// Regular representation of a/i on the complement basis, with induced labels.
    MatrixAlgebra algebra;
    /// Image of an element of the parent algebra. Throws InvariantError when the argument
    /// is not in the parent.
    std::function<Matrix(const Matrix&)> project;
    /// Coordinates of the image of a parent element in the quotient's underlying space,
    /// so that project(x) * vector_of(y) = vector_of(x * y).
    std::function<Vec(const Matrix&)> vector_of;
};

/// Throws NotAnIdeal when i is not stable under the generators of a.
Quotient quotient(const MatrixAlgebra& a, const AlgebraIdeal& i);

/// One local factor of a commutative algebra.
struct LocalFactor {
    Matrix idempotent;        // in the parent's ambient space
    ff::Echelon subspace;     // image of the idempotent, rows in parent ambient coordinates
    MatrixAlgebra algebra;    // the factor, acting faithfully on the subspace
    AlgebraIdeal maximal;     // coordinates in algebra's basis
    unsigned residue_degree;  // over the base field
    std::size_t nilpotency;   // least d with maximal^d = 0

    /// Restriction of a parent element (or any operator preserving the subspace).
    Matrix project(const Matrix& parent_element) const;
    Field residue_field() const;
};

/// Orthogonal primitive idempotents of the algebra generated by commuting matrices,
/// obtained by splitting along coprime factors of each minimal polynomial in turn.
/// This alone does not separate factors whose residue fields are non-split over each
/// other; decompose_local refines further.
std::vector<Matrix> generator_idempotents(const Field& f, std::size_t n, const std::vector<Matrix>& generators);

std::vector<LocalFactor> decompose_local(const MatrixAlgebra& a);

/// Local factor data for an algebra already known to be local. Throws InvariantError if not.
LocalFactor as_local(const MatrixAlgebra& a);

/// Identification of the residue field of a local algebra with the canonical field
/// GF(p^(m f)), where the base field is GF(p^m) and f is the residue degree.
///
/// The identification sends the canonical generator z of GF(p^(m f)) to the first root
/// of its modulus found by enumerating the residue field in coordinate order, so it is
/// reproducible; other choices differ by a power of Frobenius.
class ResidueMap {
public:
    explicit ResidueMap(const LocalFactor& f);
    const Field& field() const { return k_; }
    /// Residue of an element of the factor algebra.
    Elt operator()(const Matrix& factor_element) const;

private:
    Field k_;
    Quotient q_;
    Matrix to_power_basis_;  // GF(p) coordinates -> coefficients in powers of the root
};

/// True iff the socle Ann(m) is one-dimensional over the residue field.
bool is_gorenstein(const LocalFactor& f);

struct UpRelation {
    Matrix T, D;
    /// Rows: (t, d) coordinate pairs spanning the homogeneous solutions t·u = d.
    Matrix homogeneous;
};

/// T, D in a with u² − T u + D = 0, the first solution of the echelonized system
/// (free variables zero). Throws NoSolution.
UpRelation solve_up_relation(const MatrixAlgebra& a, const Matrix& u);

/// Structural summary: "F₂" style for a field, "F₂[ε]" style for F_q[x]/(x^2), otherwise
/// "local(dim=d,res=F_q,nil=k)".
std::string describe_local(const LocalFactor& f);

}  // namespace katz1::artin

#endif  // KATZ1_ARTIN_ALGEBRA_HPP
