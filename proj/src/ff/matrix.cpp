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

#include "katz1/ff/matrix.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace katz1::ff {

namespace {

void check_same_shape(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

// Bit-packed GF(2) rows: bit j of row i lives in word j / 64 at position j % 64.
struct BitMat {
    std::size_t rows = 0, cols = 0, words = 0;
    std::vector<std::uint64_t> w;

    BitMat(std::size_t r, std::size_t c) : rows(r), cols(c), words((c + 63) / 64), w(r * ((c + 63) / 64), 0) {}

    std::uint64_t* row(std::size_t i) { return w.data() + i * words; }
    const std::uint64_t* row(std::size_t i) const { return w.data() + i * words; }
    bool get(std::size_t i, std::size_t j) const { return (row(i)[j >> 6] >> (j & 63)) & 1u; }
    void set(std::size_t i, std::size_t j) { row(i)[j >> 6] |= std::uint64_t(1) << (j & 63); }

    static BitMat pack(const Matrix& m) {
        BitMat b(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (m(i, j)) b.set(i, j);
        return b;
    }

    Matrix unpack(const Field& f, std::size_t nrows) const {
        Matrix m(f, nrows, cols);
        for (std::size_t i = 0; i < nrows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (get(i, j)) m(i, j) = 1;
        return m;
    }
};

std::vector<std::size_t> gf2_rref_inplace(BitMat& b) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < b.cols && r < b.rows; ++c) {
        std::size_t wi = c >> 6;
        std::uint64_t bit = std::uint64_t(1) << (c & 63);
        std::size_t piv = r;
        while (piv < b.rows && !(b.row(piv)[wi] & bit)) ++piv;
        if (piv == b.rows) continue;
        if (piv != r)
            for (std::size_t k = 0; k < b.words; ++k) std::swap(b.row(piv)[k], b.row(r)[k]);
        const std::uint64_t* pr = b.row(r);
        for (std::size_t i = 0; i < b.rows; ++i) {
            if (i == r) continue;
            std::uint64_t* ri = b.row(i);
            if (ri[wi] & bit)
                for (std::size_t k = wi; k < b.words; ++k) ri[k] ^= pr[k];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

Echelon rref_generic(const Matrix& m) {
    const Field& F = m.field();
    Matrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    const std::size_t nr = a.rows(), nc = a.cols();
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t piv = r;
        while (piv < nr && a(piv, c) == 0) ++piv;
        if (piv == nr) continue;
        if (piv != r)
            for (std::size_t k = 0; k < nc; ++k) std::swap(a(piv, k), a(r, k));
        Elt inv = F->inv(a(r, c));
        if (inv != 1)
            for (std::size_t k = c; k < nc; ++k) a(r, k) = F->mul(a(r, k), inv);
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == r) continue;
            Elt f = a(i, c);
            if (!f) continue;
            Elt nf = F->neg(f);
            for (std::size_t k = c; k < nc; ++k)
                if (a(r, k)) a(i, k) = F->add(a(i, k), F->mul(nf, a(r, k)));
        }
        pivots.push_back(c);
        ++r;
    }
    return {a.row_block(0, r), std::move(pivots)};
}

}  // namespace

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : f_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols, std::vector<Elt> entries)
    : f_(std::move(f)), rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols) throw std::invalid_argument("Matrix: entry count does not match shape");
}

Matrix Matrix::identity(Field f, std::size_t n) {
    Matrix m(std::move(f), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(Field f, std::size_t cols, const std::vector<Vec>& rows) {
    Matrix m(std::move(f), rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("Matrix::from_rows: ragged rows");
        std::copy(rows[i].begin(), rows[i].end(), m.a_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix::operator*: shape mismatch");
    const Field& F = f_;
    if (F->is_gf2()) {
        BitMat b = BitMat::pack(o);
        BitMat c(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            std::uint64_t* ci = c.row(i);
            for (std::size_t k = 0; k < cols_; ++k) {
                if (!(*this)(i, k)) continue;
                const std::uint64_t* bk = b.row(k);
                for (std::size_t w = 0; w < c.words; ++w) ci[w] ^= bk[w];
            }
        }
        return c.unpack(F, rows_);
    }
    Matrix c(F, rows_, o.cols_);
    if (F->is_prime_field() && F->characteristic() < (1u << 16)) {
        // Products fit in 32 bits, so a 64-bit accumulator absorbs any realistic inner dimension.
        const std::uint64_t p = F->characteristic();
        std::vector<std::uint64_t> acc(o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            for (std::size_t k = 0; k < cols_; ++k) {
                std::uint64_t a = (*this)(i, k);
                if (!a) continue;
                const Elt* bk = o.a_.data() + k * o.cols_;
                for (std::size_t j = 0; j < o.cols_; ++j) acc[j] += a * bk[j];
            }
            for (std::size_t j = 0; j < o.cols_; ++j) c(i, j) = static_cast<Elt>(acc[j] % p);
        }
        return c;
    }
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            Elt a = (*this)(i, k);
            if (!a) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                Elt b = o(k, j);
                if (b) c(i, j) = F->add(c(i, j), F->mul(a, b));
            }
        }
    return c;
}

Matrix Matrix::operator+(const Matrix& o) const {
    check_same_shape(*this, o, "Matrix::operator+");
    Matrix c(f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] = f_->add(a_[i], o.a_[i]);
    return c;
}

Matrix Matrix::operator-(const Matrix& o) const {
    check_same_shape(*this, o, "Matrix::operator-");
    Matrix c(f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] = f_->sub(a_[i], o.a_[i]);
    return c;
}

Matrix Matrix::operator*(Elt s) const {
    Matrix c(f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] = f_->mul(a_[i], s);
    return c;
}

Vec Matrix::operator*(std::span<const Elt> v) const {
    if (v.size() != cols_) throw std::invalid_argument("Matrix::operator*(vector): length mismatch");
    Vec r(rows_, 0);
    if (f_->is_gf2()) {
        for (std::size_t i = 0; i < rows_; ++i) {
            const Elt* a = a_.data() + i * cols_;
            Elt s = 0;
            for (std::size_t j = 0; j < cols_; ++j) s ^= a[j] & v[j];
            r[i] = s;
        }
        return r;
    }
    if (f_->is_prime_field() && f_->characteristic() < (1u << 16)) {
        const std::uint64_t p = f_->characteristic();
        for (std::size_t i = 0; i < rows_; ++i) {
            const Elt* a = a_.data() + i * cols_;
            std::uint64_t s = 0;
            for (std::size_t j = 0; j < cols_; ++j) s += static_cast<std::uint64_t>(a[j]) * v[j];
            r[i] = static_cast<Elt>(s % p);
        }
        return r;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        Elt s = 0;
        for (std::size_t j = 0; j < cols_; ++j) {
            Elt a = (*this)(i, j);
            if (a && v[j]) s = f_->add(s, f_->mul(a, v[j]));
        }
        r[i] = s;
    }
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Matrix Matrix::transpose() const {
    Matrix t(f_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::is_zero() const {
    for (Elt x : a_)
        if (x) return false;
    return true;
}

Elt Matrix::trace() const {
    if (!is_square()) throw std::invalid_argument("Matrix::trace: not square");
    Elt s = 0;
    for (std::size_t i = 0; i < rows_; ++i) s = f_->add(s, (*this)(i, i));
    return s;
}

Matrix Matrix::row_block(std::size_t r0, std::size_t r1) const {
    if (r0 > r1 || r1 > rows_) throw std::out_of_range("Matrix::row_block");
    return Matrix(f_, r1 - r0, cols_,
                  std::vector<Elt>(a_.begin() + static_cast<std::ptrdiff_t>(r0 * cols_),
                                   a_.begin() + static_cast<std::ptrdiff_t>(r1 * cols_)));
}

Matrix Matrix::stack(const Matrix& o) const {
    if (rows_ == 0 && cols_ == 0) return o;
    if (o.rows_ == 0 && o.cols_ == 0) return *this;
    if (cols_ != o.cols_) throw std::invalid_argument("Matrix::stack: column mismatch");
    std::vector<Elt> e = a_;
    e.insert(e.end(), o.a_.begin(), o.a_.end());
    return Matrix(f_ ? f_ : o.f_, rows_ + o.rows_, cols_, std::move(e));
}

Matrix Matrix::unflatten(Field f, std::size_t n, std::span<const Elt> v) {
    if (v.size() != n * n) throw std::invalid_argument("Matrix::unflatten: length is not n^2");
    return Matrix(std::move(f), n, n, std::vector<Elt>(v.begin(), v.end()));
}

Echelon rref(const Matrix& m) {
    if (m.field() && m.field()->is_gf2()) {
        BitMat b = BitMat::pack(m);
        auto piv = gf2_rref_inplace(b);
        return {b.unpack(m.field(), piv.size()), std::move(piv)};
    }
    return rref_generic(m);
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Matrix kernel(const Matrix& m) {
    const Field& F = m.field();
    Echelon e = rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        Vec v(n, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = F->neg(e.rref(r, f));
        basis.push_back(std::move(v));
    }
    return Matrix::from_rows(F, n, basis);
}

Matrix intersect(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("intersect: ambient dimension mismatch");
    const Field& F = a.field() ? a.field() : b.field();
    const std::size_t n = a.cols();
    if (a.rows() == 0 || b.rows() == 0) return Matrix(F, 0, n);
    // Zassenhaus: rows (a|a) and (b|0); echelon rows with a zero left half span the intersection.
    Matrix z(F, a.rows() + b.rows(), 2 * n);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) z(i, j) = z(i, n + j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) z(a.rows() + i, j) = b(i, j);
    Echelon e = rref(z);
    std::vector<Vec> rows;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] < n) continue;
        auto row = e.rref.row(r);
        rows.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(n), row.end());
    }
    return rref(Matrix::from_rows(F, n, rows)).rref;
}

Matrix span_sum(const Matrix& a, const Matrix& b) { return rref(a.stack(b)).rref; }

std::optional<Vec> solve(const Matrix& m, std::span<const Elt> b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
    const Field& F = m.field();
    const std::size_t n = m.cols();
    Matrix aug(F, m.rows(), n + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n) = b[i];
    }
    Echelon e = rref(aug);
    if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;
    Vec x(n, 0);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.rref(r, n);
    return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse: not square");
    const Field& F = m.field();
    const std::size_t n = m.rows();
    Matrix aug(F, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    Echelon e = rref(aug);
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
    Matrix inv(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.rref(i, n + j);
    return inv;
}

Matrix power(Matrix m, std::uint64_t e) {
    if (!m.is_square()) throw std::invalid_argument("power: not square");
    Matrix r = Matrix::identity(m.field(), m.rows());
    while (e) {
        if (e & 1) r = r * m;
        e >>= 1;
        if (e) m = m * m;
    }
    return r;
}

Matrix evaluate(const Poly& f, const Matrix& m) {
    if (!m.is_square()) throw std::invalid_argument("evaluate: not square");
    const Field& F = m.field();
    Matrix r(F, m.rows(), m.cols());
    const auto& c = f.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
        r = r * m;
        for (std::size_t d = 0; d < m.rows(); ++d) r(d, d) = F->add(r(d, d), c[i]);
    }
    return r;
}

namespace {

// v -= c w, with fast paths for GF(2) and small prime fields.
void axpy(const FiniteField& F, Vec& v, Elt c, const Vec& w) {
    if (F.is_gf2()) {
        for (std::size_t j = 0; j < v.size(); ++j) v[j] ^= w[j];
        return;
    }
    if (F.is_prime_field() && F.characteristic() < (1u << 16)) {
        const std::uint64_t p = F.characteristic(), nc = p - c;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (w[j]) v[j] = static_cast<Elt>((v[j] + nc * w[j]) % p);
        return;
    }
    Elt nc = F.neg(c);
    for (std::size_t j = 0; j < v.size(); ++j)
        if (w[j]) v[j] = F.add(v[j], F.mul(nc, w[j]));
}

// Semi-echelon vector basis: each stored row has a 1 at its pivot and zeros at the pivots
// of all earlier rows. Pivots are searched among the first `width` entries only, so rows may
// carry extra bookkeeping columns.
struct SemiEchelon {
    Field F;
    std::vector<Vec> rows;
    std::vector<std::size_t> piv;

    void reduce(Vec& v) const {
        for (std::size_t t = 0; t < rows.size(); ++t)
            if (Elt c = v[piv[t]]) axpy(*F, v, c, rows[t]);
    }

    // Adds a reduced vector that is nonzero among its first `width` entries.
    void insert(Vec v, std::size_t width) {
        std::size_t p = 0;
        while (p < width && v[p] == 0) ++p;
        if (v[p] != 1) {
            Elt s = F->inv(v[p]);
            for (auto& x : v) x = F->mul(x, s);
        }
        rows.push_back(std::move(v));
        piv.push_back(p);
    }
};

bool is_zero_vec(const Vec& v) {
    for (Elt x : v)
        if (x) return false;
    return true;
}

}  // namespace

Poly min_poly(const Matrix& m) {
    if (!m.is_square()) throw std::invalid_argument("min_poly: not square");
    const Field& F = m.field();
    const std::size_t n = m.rows();
    Poly result = Poly::constant(F, 1);
    SemiEchelon invariant{F, {}, {}};
    auto zero_prefix = [n](const Vec& v) {
        for (std::size_t j = 0; j < n; ++j)
            if (v[j]) return false;
        return true;
    };
    for (std::size_t i = 0; i < n; ++i) {
        Vec e(n, 0);
        e[i] = 1;
        Vec probe = e;
        invariant.reduce(probe);
        if (zero_prefix(probe)) continue;
        // Krylov sequence of e. Rows are [g(m) e | coefficients of g], so reducing a new
        // vector also reduces its polynomial.
        SemiEchelon local{F, {}, {}};
        Vec w = e;
        for (std::size_t k = 0;; ++k) {
            Vec r(2 * n + 1, 0);
            std::copy(w.begin(), w.end(), r.begin());
            r[n + k] = 1;
            local.reduce(r);
            if (zero_prefix(r)) {
                result = lcm(result, Poly(F, Vec(r.begin() + static_cast<std::ptrdiff_t>(n), r.end())).monic());
                break;
            }
            local.insert(std::move(r), n);
            Vec add = w;
            invariant.reduce(add);
            if (!zero_prefix(add)) invariant.insert(std::move(add), n);
            w = m * std::span<const Elt>(w);
        }
    }
    return result;
}

Poly char_poly(const Matrix& m) {
    if (!m.is_square()) throw std::invalid_argument("char_poly: not square");
    const Field& F = m.field();
    const std::size_t n = m.rows();
    Matrix h = m;
    // Reduce to upper Hessenberg form by similarity transforms.
    for (std::size_t c = 0; c + 2 < n; ++c) {
        std::size_t piv = c + 1;
        while (piv < n && h(piv, c) == 0) ++piv;
        if (piv == n) continue;
        if (piv != c + 1) {
            for (std::size_t k = 0; k < n; ++k) std::swap(h(piv, k), h(c + 1, k));
            for (std::size_t k = 0; k < n; ++k) std::swap(h(k, piv), h(k, c + 1));
        }
        Elt inv = F->inv(h(c + 1, c));
        for (std::size_t i = c + 2; i < n; ++i) {
            Elt u = F->mul(h(i, c), inv);
            if (!u) continue;
            for (std::size_t k = 0; k < n; ++k) h(i, k) = F->sub(h(i, k), F->mul(u, h(c + 1, k)));
            for (std::size_t k = 0; k < n; ++k) h(k, c + 1) = F->add(h(k, c + 1), F->mul(u, h(k, i)));
        }
    }
    std::vector<Poly> p;
    p.push_back(Poly::constant(F, 1));
    for (std::size_t k = 0; k < n; ++k) {
        Poly next = (Poly::x(F) - Poly::constant(F, h(k, k))) * p[k];
        Elt t = 1;
        for (std::size_t i = k; i-- > 0;) {
            t = F->mul(t, h(i + 1, i));
            Elt coef = F->mul(t, h(i, k));
            if (coef) next = next - p[i] * coef;
        }
        p.push_back(std::move(next));
    }
    return p.back();
}

std::optional<Vec> coordinates(const Echelon& basis, std::span<const Elt> v) {
    const Matrix& b = basis.rref;
    const Field& F = b.field();
    if (v.size() != b.cols()) throw std::invalid_argument("coordinates: length mismatch");
    Vec rest(v.begin(), v.end());
    Vec c(basis.pivots.size(), 0);
    for (std::size_t r = 0; r < basis.pivots.size(); ++r) {
        Elt x = rest[basis.pivots[r]];
        c[r] = x;
        if (!x) continue;
        Elt nx = F->neg(x);
        auto row = b.row(r);
        for (std::size_t j = 0; j < rest.size(); ++j)
            if (row[j]) rest[j] = F->add(rest[j], F->mul(nx, row[j]));
    }
    if (!is_zero_vec(rest)) return std::nullopt;
    return c;
}

IncrementalBasis::IncrementalBasis(Field f, std::size_t ncols)
    : f_(std::move(f)), ncols_(ncols), words_((ncols + 63) / 64), gf2_(f_->is_gf2()) {}

void IncrementalBasis::reduce(Vec& r, Vec* used) const {
    if (used) used->assign(piv_.size(), 0);
    for (std::size_t t = 0; t < piv_.size(); ++t) {
        Elt c = r[piv_[t]];
        if (!c) continue;
        if (used) (*used)[t] = c;
        Elt nc = f_->neg(c);
        const Vec& row = rows_[t];
        for (std::size_t j = piv_[t]; j < ncols_; ++j)
            if (row[j]) r[j] = f_->add(r[j], f_->mul(nc, row[j]));
    }
}

void IncrementalBasis::reduce_bits(std::vector<std::uint64_t>& r, Vec* used) const {
    if (used) used->assign(piv_.size(), 0);
    for (std::size_t t = 0; t < piv_.size(); ++t) {
        std::size_t c = piv_[t];
        if (!((r[c >> 6] >> (c & 63)) & 1u)) continue;
        if (used) (*used)[t] = 1;
        const auto& row = bits_[t];
        for (std::size_t w = c >> 6; w < words_; ++w) r[w] ^= row[w];
    }
}

namespace {

std::vector<std::uint64_t> to_bits(std::span<const Elt> v, std::size_t words) {
    std::vector<std::uint64_t> b(words, 0);
    for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j]) b[j >> 6] |= std::uint64_t(1) << (j & 63);
    return b;
}

}  // namespace

bool IncrementalBasis::add(std::span<const Elt> v) {
    if (v.size() != ncols_) throw std::invalid_argument("IncrementalBasis::add: length mismatch");
    Vec used;
    std::size_t pivot = ncols_;
    Elt scale = 1;
    if (gf2_) {
        auto b = to_bits(v, words_);
        reduce_bits(b, &used);
        for (std::size_t w = 0; w < words_ && pivot == ncols_; ++w)
            if (b[w]) pivot = w * 64 + static_cast<std::size_t>(std::countr_zero(b[w]));
        if (pivot == ncols_) return false;
        bits_.push_back(std::move(b));
    } else {
        Vec r(v.begin(), v.end());
        reduce(r, &used);
        for (std::size_t j = 0; j < ncols_; ++j)
            if (r[j]) {
                pivot = j;
                break;
            }
        if (pivot == ncols_) return false;
        scale = f_->inv(r[pivot]);
        for (auto& x : r) x = f_->mul(x, scale);
        rows_.push_back(std::move(r));
    }
    // new echelon row = scale * (v - sum used_t row_t), rows expressed via accepted vectors
    Vec combo(count_ + 1, 0);
    combo[count_] = 1;
    for (std::size_t t = 0; t < used.size(); ++t) {
        if (!used[t]) continue;
        Elt nu = f_->neg(used[t]);
        for (std::size_t i = 0; i < combo_[t].size(); ++i)
            if (combo_[t][i]) combo[i] = f_->add(combo[i], f_->mul(nu, combo_[t][i]));
    }
    if (scale != 1)
        for (auto& x : combo) x = f_->mul(x, scale);
    combo_.push_back(std::move(combo));
    piv_.push_back(pivot);
    original_.emplace_back(v.begin(), v.end());
    ++count_;
    return true;
}

bool IncrementalBasis::contains(std::span<const Elt> v) const {
    if (gf2_) {
        auto b = to_bits(v, words_);
        reduce_bits(b, nullptr);
        return std::all_of(b.begin(), b.end(), [](std::uint64_t w) { return w == 0; });
    }
    Vec r(v.begin(), v.end());
    reduce(r, nullptr);
    return is_zero_vec(r);
}

std::optional<Vec> IncrementalBasis::coordinates(std::span<const Elt> v) const {
    if (v.size() != ncols_) throw std::invalid_argument("IncrementalBasis::coordinates: length mismatch");
    Vec used;
    if (gf2_) {
        auto b = to_bits(v, words_);
        reduce_bits(b, &used);
        if (!std::all_of(b.begin(), b.end(), [](std::uint64_t w) { return w == 0; })) return std::nullopt;
    } else {
        Vec r(v.begin(), v.end());
        reduce(r, &used);
        if (!is_zero_vec(r)) return std::nullopt;
    }
    Vec c(count_, 0);
    for (std::size_t t = 0; t < used.size(); ++t) {
        if (!used[t]) continue;
        for (std::size_t i = 0; i < combo_[t].size(); ++i)
            if (combo_[t][i]) c[i] = f_->add(c[i], f_->mul(used[t], combo_[t][i]));
    }
    return c;
}

Matrix IncrementalBasis::vectors() const { return Matrix::from_rows(f_, ncols_, original_); }

}  // namespace katz1::ff
