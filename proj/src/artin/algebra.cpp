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

#include "katz1/artin/algebra.hpp"

#include <algorithm>
#include <deque>

#include "katz1/ff/poly.hpp"

namespace katz1::artin {

using ff::Echelon;
using ff::IncrementalBasis;
using ff::Poly;

namespace {

bool is_zero_vec(std::span<const Elt> v) {
    return std::all_of(v.begin(), v.end(), [](Elt x) { return x == 0; });
}

// Column space of a square matrix, as echelon rows.
Echelon column_space(const Matrix& e) { return ff::rref(e.transpose()); }

Matrix matrix_from_columns(const Field& f, std::size_t rows, const std::vector<Vec>& cols) {
    Matrix m(f, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
}

// Least j with q^j >= d.
unsigned frobenius_depth(std::uint64_t q, std::size_t d) {
    unsigned j = 1;
    std::uint64_t qj = q;
    while (qj < d) {
        qj *= q;
        ++j;
    }
    return j;
}

}  // namespace

MatrixAlgebra MatrixAlgebra::close(Field f, std::size_t n, std::vector<LabeledMatrix> generators) {
    for (const auto& g : generators)
        if (g.m.rows() != n || g.m.cols() != n) throw std::invalid_argument("close: generator " + g.label + " has wrong shape");
    for (std::size_t i = 0; i < generators.size(); ++i)
        for (std::size_t j = i + 1; j < generators.size(); ++j)
            if (generators[i].m * generators[j].m != generators[j].m * generators[i].m)
                throw NonCommuting(generators[i].label, generators[j].label);

    IncrementalBasis span(f, n * n);
    std::vector<Matrix> elts;
    Matrix one = Matrix::identity(f, n);
    span.add(one.entries());
    elts.push_back(one);

    // Adjoin generators one at a time; a generator already in the closed span adds nothing.
    std::vector<const Matrix*> active;
    std::vector<std::size_t> next;
    for (const auto& g : generators) {
        if (span.contains(g.m.entries())) continue;
        active.push_back(&g.m);
        next.push_back(0);
        bool progress = true;
        while (progress) {
            progress = false;
            for (std::size_t k = 0; k < active.size(); ++k) {
                while (next[k] < elts.size()) {
                    Matrix y = *active[k] * elts[next[k]++];
                    if (span.add(y.entries())) elts.push_back(std::move(y));
                    progress = true;
                }
            }
        }
    }

    MatrixAlgebra a;
    a.f_ = std::move(f);
    a.n_ = n;
    a.gens_ = std::move(generators);
    a.basis_ = ff::rref(span.vectors());
    return a;
}

bool MatrixAlgebra::has(const std::string& label) const {
    return std::any_of(gens_.begin(), gens_.end(), [&](const LabeledMatrix& g) { return g.label == label; });
}

const Matrix& MatrixAlgebra::generator(const std::string& label) const {
    for (const auto& g : gens_)
        if (g.label == label) return g.m;
    throw MissingOperator("no operator labeled " + label);
}

Matrix MatrixAlgebra::basis_element(std::size_t i) const { return Matrix::unflatten(f_, n_, basis_.rref.row(i)); }

std::vector<Matrix> MatrixAlgebra::basis() const {
    std::vector<Matrix> out;
    out.reserve(dim());
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_element(i));
    return out;
}

bool MatrixAlgebra::contains(const Matrix& x) const { return coords(x).has_value(); }

std::optional<Vec> MatrixAlgebra::coords(const Matrix& x) const {
    if (x.rows() != n_ || x.cols() != n_) return std::nullopt;
    return ff::coordinates(basis_, x.entries());
}

Matrix MatrixAlgebra::element(std::span<const Elt> c) const {
    if (c.size() != dim()) throw std::invalid_argument("MatrixAlgebra::element: coordinate length");
    std::vector<Elt> acc(n_ * n_, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!c[i]) continue;
        auto row = basis_.rref.row(i);
        for (std::size_t j = 0; j < acc.size(); ++j)
            if (row[j]) acc[j] = f_->add(acc[j], f_->mul(c[i], row[j]));
    }
    return Matrix(f_, n_, n_, std::move(acc));
}

Matrix MatrixAlgebra::frobenius() const {
    std::vector<Vec> cols;
    for (std::size_t i = 0; i < dim(); ++i) {
        auto c = coords(ff::power(basis_element(i), f_->order()));
        if (!c) throw InvariantError("frobenius: algebra not closed under powers");
        cols.push_back(std::move(*c));
    }
    return matrix_from_columns(f_, dim(), cols);
}

Matrix MatrixAlgebra::restrict_matrix(const Matrix& x, const Echelon& subspace) {
    const Field& f = x.field();
    std::vector<Vec> cols;
    for (std::size_t i = 0; i < subspace.pivots.size(); ++i) {
        Vec img = x * subspace.rref.row(i);
        auto c = ff::coordinates(subspace, img);
        if (!c) throw InvariantError("restrict_matrix: subspace is not invariant");
        cols.push_back(std::move(*c));
    }
    return matrix_from_columns(f, subspace.pivots.size(), cols);
}

MatrixAlgebra MatrixAlgebra::restrict_to(const Matrix& subspace) const {
    Echelon e = ff::rref(subspace);
    std::vector<LabeledMatrix> gens;
    for (const auto& g : gens_) gens.push_back({g.label, restrict_matrix(g.m, e)});
    return close(f_, e.pivots.size(), std::move(gens));
}

std::vector<Matrix> AlgebraIdeal::elements(const MatrixAlgebra& parent) const {
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < basis.rows(); ++i) out.push_back(parent.element(basis.row(i)));
    return out;
}

bool AlgebraIdeal::contains(const MatrixAlgebra& parent, const Matrix& x) const {
    auto c = parent.coords(x);
    if (!c) return false;
    if (basis.rows() == 0) return is_zero_vec(*c);
    return ff::coordinates(ff::rref(basis), *c).has_value();
}

AlgebraIdeal make_ideal(const MatrixAlgebra& parent, const std::vector<Matrix>& spanning,
                        const std::vector<Matrix>& extra_operators) {
    const Field& f = parent.field();
    std::vector<Vec> rows;
    for (const auto& x : spanning) {
        auto c = parent.coords(x);
        if (!c) throw NotAnIdeal("make_ideal: spanning element outside the algebra");
        rows.push_back(std::move(*c));
    }
    AlgebraIdeal ideal{ff::rref(Matrix::from_rows(f, parent.dim(), rows)).rref};
    Echelon ech{ideal.basis, ff::rref(ideal.basis).pivots};
    auto check = [&](const Matrix& op, const std::string& name) {
        for (const auto& x : ideal.elements(parent)) {
            auto c = parent.coords(op * x);
            if (!c || !ff::coordinates(ech, *c)) throw NotAnIdeal("ideal not stable under " + name);
        }
    };
    for (const auto& g : parent.generators()) check(g.m, g.label);
    for (std::size_t i = 0; i < extra_operators.size(); ++i) check(extra_operators[i], "extra operator");
    return ideal;
}

AlgebraIdeal ideal_from_intersection(const MatrixAlgebra& a, const Matrix& u) {
    const Field& f = a.field();
    const std::size_t n = a.ambient_dim();
    Matrix us(f, a.dim(), n * n);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Matrix y = u * a.basis_element(i);
        std::copy(y.entries().begin(), y.entries().end(), us.row(i).begin());
    }
    Matrix inter = ff::intersect(a.echelon().rref, us);
    std::vector<Matrix> elems;
    for (std::size_t i = 0; i < inter.rows(); ++i) elems.push_back(Matrix::unflatten(f, n, inter.row(i)));
    try {
        return make_ideal(a, elems, {u});
    } catch (const NotAnIdeal& e) {
        throw IdealClosureFailure(std::string("ideal_from_intersection: ") + e.what());
    }
}

Quotient quotient(const MatrixAlgebra& a, const AlgebraIdeal& ideal) {
    const Field& f = a.field();
    const std::size_t d = a.dim();
    // Re-verify stability; a caller may have assembled the ideal by hand.
    for (const auto& x : ideal.elements(a))
        for (const auto& g : a.generators())
            if (!ideal.contains(a, g.m * x)) throw NotAnIdeal("quotient: not stable under " + g.label);

    Echelon ie = ff::rref(ideal.basis.rows() ? ideal.basis : Matrix(f, 0, d));
    std::vector<bool> pivot(d, false);
    for (auto p : ie.pivots) pivot[p] = true;
    std::vector<std::size_t> comp;
    for (std::size_t j = 0; j < d; ++j)
        if (!pivot[j]) comp.push_back(j);

    auto reduce = [f, ie, comp](Vec c) {
        for (std::size_t r = 0; r < ie.pivots.size(); ++r) {
            Elt x = c[ie.pivots[r]];
            if (!x) continue;
            Elt nx = f->neg(x);
            auto row = ie.rref.row(r);
            for (std::size_t j = 0; j < c.size(); ++j)
                if (row[j]) c[j] = f->add(c[j], f->mul(nx, row[j]));
        }
        Vec out(comp.size());
        for (std::size_t k = 0; k < comp.size(); ++k) out[k] = c[comp[k]];
        return out;
    };
    std::vector<Matrix> comp_basis;
    for (auto j : comp) comp_basis.push_back(a.basis_element(j));

    auto project = [a, reduce, comp_basis, f](const Matrix& x) {
        if (!a.contains(x)) throw InvariantError("quotient projection: element outside the algebra");
        std::vector<Vec> cols;
        for (const auto& b : comp_basis) cols.push_back(reduce(*a.coords(x * b)));
        return matrix_from_columns(f, comp_basis.size(), cols);
    };
    std::vector<LabeledMatrix> gens;
    for (const auto& g : a.generators()) gens.push_back({g.label, project(g.m)});
    auto vector_of = [a, reduce](const Matrix& x) {
        auto c = a.coords(x);
        if (!c) throw InvariantError("quotient vector_of: element outside the algebra");
        return reduce(std::move(*c));
    };
    Quotient q{MatrixAlgebra::close(f, comp.size(), std::move(gens)), project, vector_of};
    if (q.algebra.dim() != comp.size()) throw InvariantError("quotient: regular representation is not faithful");
    return q;
}

std::vector<Matrix> generator_idempotents(const Field& f, std::size_t n, const std::vector<Matrix>& generators) {
    if (n == 0) return {};
    // Invariant subspaces with basis rows in ambient coordinates and the generators
    // restricted to them. Each generator splits a piece along the primary components of its
    // minimal polynomial there.
    struct Piece {
        Matrix basis;
        std::vector<Matrix> gens;
    };
    std::vector<Piece> pieces{{Matrix::identity(f, n), generators}};
    for (std::size_t g = 0; g < generators.size(); ++g) {
        std::vector<Piece> next;
        for (auto& pc : pieces) {
            const Matrix& m = pc.gens[g];
            auto fac = ff::factor(ff::min_poly(m));
            if (fac.size() <= 1) {
                next.push_back(std::move(pc));
                continue;
            }
            for (const auto& [h, e] : fac) {
                Echelon sub = ff::rref(ff::kernel(ff::evaluate(ff::pow(h, static_cast<unsigned>(e)), m)));
                Piece child{sub.rref * pc.basis, {}};
                for (const auto& x : pc.gens) child.gens.push_back(MatrixAlgebra::restrict_matrix(x, sub));
                next.push_back(std::move(child));
            }
        }
        pieces = std::move(next);
    }
    if (pieces.size() == 1) return {Matrix::identity(f, n)};

    // Projections along the decomposition: S has the piece bases as columns.
    Matrix s(f, 0, n);
    for (const auto& pc : pieces) s = s.stack(pc.basis);
    auto inv = ff::inverse(s);  // rows of s are a basis, so s^T is invertible too
    if (!inv) throw InvariantError("generator_idempotents: pieces do not span the space");
    // v = sum of coordinates c with v^T = c s, so c = v^T s^-1 and the projection onto piece i
    // is v -> (basis_i)^T (columns i of s^-1)^T v.
    std::vector<Matrix> out;
    std::size_t off = 0;
    for (const auto& pc : pieces) {
        const std::size_t d = pc.basis.rows();
        Matrix cols(f, n, d);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < d; ++j) cols(i, j) = (*inv)(i, off + j);
        out.push_back((cols * pc.basis).transpose());
        off += d;
    }
    return out;
}

namespace {

// Splits an idempotent e of a into primitive idempotents using elements fixed by Frobenius:
// in a commutative algebra over F_q these span the split etale part, one dimension per
// local factor.
std::vector<Matrix> refine_by_frobenius(const MatrixAlgebra& a, const Matrix& e) {
    const Field& f = a.field();
    const std::size_t n = a.ambient_dim();
    IncrementalBasis span(f, n * n);
    std::vector<Matrix> elts;
    for (const auto& b : a.basis()) {
        Matrix y = e * b;
        if (span.add(y.entries())) elts.push_back(std::move(y));
    }
    const std::size_t d = elts.size();
    std::vector<Vec> cols;
    for (const auto& x : elts) {
        auto c = span.coordinates(ff::power(x, f->order()).entries());
        if (!c) throw InvariantError("refine_by_frobenius: not closed");
        cols.push_back(std::move(*c));
    }
    Matrix phi = matrix_from_columns(f, d, cols) - Matrix::identity(f, d);
    Matrix fixed = ff::kernel(phi);
    if (fixed.rows() <= 1) return {e};

    std::vector<Matrix> idem{e};
    for (std::size_t r = 0; r < fixed.rows() && idem.size() < fixed.rows(); ++r) {
        Matrix x(f, n, n);
        for (std::size_t i = 0; i < d; ++i)
            if (fixed(r, i)) x = x + elts[i] * fixed(r, i);
        // x^q = x, so its minimal polynomial has distinct roots in F.
        auto roots = ff::roots(ff::min_poly(x));
        std::vector<Matrix> next;
        for (const auto& cur : idem) {
            for (Elt lam : roots) {
                Matrix p = cur;
                for (Elt mu : roots) {
                    if (mu == lam) continue;
                    Elt s = f->inv(f->sub(lam, mu));
                    Matrix fac = (x - Matrix::identity(f, n) * mu) * s;
                    p = p * fac;
                }
                if (!p.is_zero()) next.push_back(std::move(p));
            }
        }
        idem = std::move(next);
    }
    if (idem.size() != fixed.rows()) throw InvariantError("refine_by_frobenius: split count mismatch");
    return idem;
}

// Sorted-stable key so the factor order does not depend on hash or address order.
bool idempotent_less(const Matrix& a, const Matrix& b) { return a.entries() > b.entries(); }

}  // namespace

LocalFactor as_local(const MatrixAlgebra& a) {
    const Field& f = a.field();
    const std::size_t d = a.dim();
    Matrix phi = a.frobenius();
    std::size_t fixed = ff::kernel(phi - Matrix::identity(f, d)).rows();
    if (fixed != 1) throw InvariantError("as_local: algebra has " + std::to_string(fixed) + " local factors");
    Matrix rad = ff::kernel(ff::power(phi, frobenius_depth(f->order(), d)));

    LocalFactor lf;
    lf.idempotent = a.unit();
    lf.subspace = ff::rref(Matrix::identity(f, a.ambient_dim()));
    lf.algebra = a;
    lf.maximal = AlgebraIdeal{ff::rref(rad).rref};
    lf.residue_degree = static_cast<unsigned>(d - rad.rows());

    // Nilpotency index: iterate m^k until it vanishes.
    std::vector<Matrix> m = lf.maximal.elements(a);
    std::vector<Matrix> power = m;
    std::size_t k = 1;
    while (!power.empty()) {
        IncrementalBasis next(f, a.ambient_dim() * a.ambient_dim());
        std::vector<Matrix> nextv;
        for (const auto& x : power)
            for (const auto& y : m) {
                Matrix z = x * y;
                if (next.add(z.entries())) nextv.push_back(std::move(z));
            }
        power = std::move(nextv);
        ++k;
        if (k > d + 1) throw InvariantError("as_local: maximal ideal is not nilpotent");
    }
    lf.nilpotency = k;
    if (m.empty()) lf.nilpotency = 1;
    return lf;
}

std::vector<LocalFactor> decompose_local(const MatrixAlgebra& a) {
    std::vector<Matrix> gens;
    for (const auto& g : a.generators()) gens.push_back(g.m);
    std::vector<Matrix> idem;
    for (const auto& e : generator_idempotents(a.field(), a.ambient_dim(), gens))
        for (auto& r : refine_by_frobenius(a, e)) idem.push_back(std::move(r));
    std::sort(idem.begin(), idem.end(), idempotent_less);

    std::vector<LocalFactor> out;
    for (const auto& e : idem) {
        Echelon sub = column_space(e);
        MatrixAlgebra local = a.restrict_to(sub.rref);
        LocalFactor lf = as_local(local);
        lf.idempotent = e;
        lf.subspace = std::move(sub);
        out.push_back(std::move(lf));
    }
    return out;
}

Matrix LocalFactor::project(const Matrix& parent_element) const {
    return MatrixAlgebra::restrict_matrix(parent_element, subspace);
}

Field LocalFactor::residue_field() const {
    const Field& f = algebra.field();
    return ff::FiniteField::make(f->characteristic(), f->degree() * residue_degree);
}

ResidueMap::ResidueMap(const LocalFactor& lf) : q_(quotient(lf.algebra, lf.maximal)) {
    const Field& f = lf.algebra.field();
    const std::uint32_t p = f->characteristic();
    const unsigned m = f->degree();
    const unsigned fdeg = lf.residue_degree;
    const unsigned total = m * fdeg;
    k_ = ff::FiniteField::make(p, total);
    const MatrixAlgebra& R = q_.algebra;

    std::uint64_t count = 1;
    for (unsigned i = 0; i < fdeg; ++i) count *= f->order();
    if (count > (std::uint64_t(1) << 22)) throw InvariantError("ResidueMap: residue field too large to enumerate");

    const auto& g = k_->modulus();
    std::optional<Matrix> theta;
    for (std::uint64_t idx = 0; idx < count && !theta; ++idx) {
        Vec c(fdeg);
        std::uint64_t v = idx;
        for (unsigned i = 0; i < fdeg; ++i) {
            c[i] = static_cast<Elt>(v % f->order());
            v /= f->order();
        }
        Matrix r = R.element(c);
        Matrix acc(f, R.ambient_dim(), R.ambient_dim());
        for (std::size_t i = g.size(); i-- > 0;) {
            acc = acc * r;
            for (std::size_t t = 0; t < acc.rows(); ++t) acc(t, t) = f->add(acc(t, t), g[i]);
        }
        if (acc.is_zero()) theta = r;
    }
    if (!theta) throw InvariantError("ResidueMap: no root of the canonical modulus in the residue field");

    // Columns: GF(p) coordinates of theta^i, i < total.
    Field fp = ff::FiniteField::make(p, 1);
    Matrix P(fp, total, total);
    Matrix pw = R.unit();
    for (unsigned i = 0; i < total; ++i) {
        Vec c = *R.coords(pw);
        for (unsigned j = 0; j < fdeg; ++j) {
            auto digits = f->coeffs(c[j]);
            for (unsigned t = 0; t < m; ++t) P(j * m + t, i) = digits[t];
        }
        pw = pw * *theta;
    }
    auto inv = ff::inverse(P);
    if (!inv) throw InvariantError("ResidueMap: root does not generate the residue field");
    to_power_basis_ = *inv;
}

Elt ResidueMap::operator()(const Matrix& x) const {
    const MatrixAlgebra& R = q_.algebra;
    const Field& f = R.field();
    const unsigned m = f->degree();
    Vec c = *R.coords(q_.project(x));
    Vec v(c.size() * m);
    for (std::size_t j = 0; j < c.size(); ++j) {
        auto digits = f->coeffs(c[j]);
        for (unsigned t = 0; t < m; ++t) v[j * m + t] = digits[t];
    }
    Vec a = to_power_basis_ * std::span<const Elt>(v);
    return k_->from_coeffs(a);
}

bool is_gorenstein(const LocalFactor& lf) {
    const MatrixAlgebra& a = lf.algebra;
    const Field& f = a.field();
    auto m = lf.maximal.elements(a);
    const std::size_t nn = a.ambient_dim() * a.ambient_dim();
    // Row j lists b_j * m_i over all i; the socle is the left kernel.
    Matrix rows(f, a.dim(), nn * m.size());
    for (std::size_t j = 0; j < a.dim(); ++j) {
        Matrix b = a.basis_element(j);
        for (std::size_t i = 0; i < m.size(); ++i) {
            Matrix y = b * m[i];
            std::copy(y.entries().begin(), y.entries().end(), rows.row(j).begin() + static_cast<std::ptrdiff_t>(i * nn));
        }
    }
    std::size_t socle = a.dim() - (m.empty() ? 0 : ff::rank(rows));
    return socle == lf.residue_degree;
}

UpRelation solve_up_relation(const MatrixAlgebra& a, const Matrix& u) {
    const Field& f = a.field();
    const std::size_t d = a.dim();
    const std::size_t nn = a.ambient_dim() * a.ambient_dim();
    // Unknowns (t, d): sum t_i b_i u - sum d_i b_i = u^2.
    Matrix sys(f, nn, 2 * d);
    for (std::size_t i = 0; i < d; ++i) {
        Matrix b = a.basis_element(i);
        Matrix bu = b * u;
        for (std::size_t r = 0; r < nn; ++r) {
            sys(r, i) = bu.entries()[r];
            sys(r, d + i) = f->neg(b.entries()[r]);
        }
    }
    Matrix u2 = u * u;
    auto sol = ff::solve(sys, u2.entries());
    if (!sol) throw NoSolution("solve_up_relation: u^2 is not in span(a) + u span(a)");
    Vec t(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(d));
    Vec dd(sol->begin() + static_cast<std::ptrdiff_t>(d), sol->end());
    UpRelation rel{a.element(t), a.element(dd), ff::kernel(sys)};
    if (!(u2 - rel.T * u + rel.D).is_zero()) throw NoSolution("solve_up_relation: verification failed");
    return rel;
}

std::string describe_local(const LocalFactor& lf) {
    const Field& f = lf.algebra.field();
    std::uint64_t q = 1;
    for (unsigned i = 0; i < lf.residue_degree; ++i) q *= f->order();
    static const char* sub[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
    std::string digits = std::to_string(q), fq = "F";
    for (char c : digits) fq += sub[c - '0'];
    const std::size_t d = lf.algebra.dim();
    if (d == lf.residue_degree) return fq;
    if (d == 2 * lf.residue_degree && lf.nilpotency == 2) return fq + "[ε]";
    return "local(dim=" + std::to_string(d) + ",res=" + fq + ",nil=" + std::to_string(lf.nilpotency) + ")";
}

}  // namespace katz1::artin
