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

#include "katz1/weight1/qexp.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace katz1::weight1 {

QExpansion::QExpansion(Field f, std::size_t precision, unsigned weight, std::uint64_t level)
    : f_(std::move(f)), a_(precision, 0), weight_(weight), level_(level) {}

QExpansion::QExpansion(Field f, std::vector<Elt> coeffs, unsigned weight, std::uint64_t level)
    : f_(std::move(f)), a_(std::move(coeffs)), weight_(weight), level_(level) {}

Elt QExpansion::coeff(std::uint64_t n) const {
    if (n == 0) return 0;  // cusp forms
    if (n > a_.size())
        throw std::out_of_range("QExpansion: coefficient " + std::to_string(n) + " beyond precision " + std::to_string(a_.size()));
    return a_[n - 1];
}

void QExpansion::set(std::uint64_t n, Elt v) {
    if (n == 0 || n > a_.size()) throw std::out_of_range("QExpansion::set: index " + std::to_string(n) + " out of range");
    a_[n - 1] = v;
}

bool QExpansion::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](Elt x) { return x == 0; });
}

void QExpansion::check_compatible(const QExpansion& o) const {
    if (!(*f_ == *o.f_)) throw std::invalid_argument("QExpansion: field mismatch");
    if (a_.size() != o.a_.size()) throw std::invalid_argument("QExpansion: precision mismatch");
    if (weight_ != o.weight_ || level_ != o.level_) throw std::invalid_argument("QExpansion: weight or level mismatch");
}

QExpansion QExpansion::operator+(const QExpansion& o) const {
    check_compatible(o);
    QExpansion r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->add(a_[i], o.a_[i]);
    return r;
}

QExpansion QExpansion::operator*(Elt s) const {
    QExpansion r = *this;
    for (auto& x : r.a_) x = f_->mul(x, s);
    return r;
}

bool QExpansion::operator==(const QExpansion& o) const {
    return *f_ == *o.f_ && a_ == o.a_ && weight_ == o.weight_ && level_ == o.level_;
}

QExpansion QExpansion::truncated(std::size_t precision) const {
    if (precision > a_.size()) throw std::out_of_range("QExpansion::truncated: cannot raise precision");
    return QExpansion(f_, std::vector<Elt>(a_.begin(), a_.begin() + static_cast<std::ptrdiff_t>(precision)), weight_, level_);
}

std::string QExpansion::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < a_.size(); ++i) {
        if (!a_[i]) continue;
        if (!first) os << " + ";
        first = false;
        if (a_[i] != 1) os << a_[i] << "*";
        os << "q";
        if (i) os << "^" << (i + 1);
    }
    if (first) os << "0";
    os << " + O(q^" << (a_.size() + 1) << ")";
    return os.str();
}

QExpansion frobenius_twist(const QExpansion& f) {
    const std::uint32_t p = f.field()->characteristic();
    QExpansion out(f.field(), f.precision() * p, f.weight() * p, f.level());
    for (std::uint64_t n = 1; n <= f.precision(); ++n) out.set(n * p, f.coeff(n));
    return out;
}

namespace {

void check_common(const std::vector<QExpansion>& forms) {
    for (const auto& g : forms)
        if (g.precision() != forms.front().precision() || !(*g.field() == *forms.front().field()))
            throw std::invalid_argument("theta_kernel: forms must share field and precision");
}

}  // namespace

Matrix theta_kernel_combinations(const std::vector<QExpansion>& forms) {
    if (forms.empty()) return {};
    check_common(forms);
    const Field& f = forms.front().field();
    const std::uint32_t p = f->characteristic();
    std::vector<std::uint64_t> cols;
    for (std::uint64_t n = 1; n <= forms.front().precision(); ++n)
        if (n % p) cols.push_back(n);
    // c M = 0 where M has one row per form and one column per n prime to p.
    Matrix mt(f, cols.size(), forms.size());
    for (std::size_t i = 0; i < forms.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) mt(j, i) = forms[i].coeff(cols[j]);
    return ff::kernel(mt);
}

std::vector<QExpansion> theta_kernel(const std::vector<QExpansion>& forms) {
    if (forms.empty()) return {};
    Matrix combos = theta_kernel_combinations(forms);
    const Field& f = forms.front().field();
    const std::size_t B = forms.front().precision();
    Matrix rows(f, combos.rows(), B);
    for (std::size_t r = 0; r < combos.rows(); ++r)
        for (std::size_t i = 0; i < forms.size(); ++i) {
            Elt c = combos(r, i);
            if (!c) continue;
            for (std::size_t n = 0; n < B; ++n) rows(r, n) = f->add(rows(r, n), f->mul(c, forms[i].coefficients()[n]));
        }
    auto e = ff::rref(rows);
    std::vector<QExpansion> out;
    for (std::size_t r = 0; r < e.rref.rows(); ++r) {
        auto row = e.rref.row(r);
        out.emplace_back(f, std::vector<Elt>(row.begin(), row.end()), forms.front().weight(), forms.front().level());
    }
    return out;
}

HeckeFamily::HeckeFamily(const artin::MatrixAlgebra& a, std::uint64_t level, unsigned weight)
    : a_(a), units_(std::make_shared<nt::UnitGroup>(level)), level_(level), weight_(weight) {}

Matrix HeckeFamily::diamond(std::int64_t a) const {
    const auto N = static_cast<std::int64_t>(level_);
    auto r = static_cast<std::uint64_t>(nt::mod(a, N));
    if (std::gcd(r, level_) != 1) throw BadUnit("diamond: " + std::to_string(a) + " is not a unit mod " + std::to_string(level_));
    Matrix out = a_.unit();
    const auto& d = units_->dlog(r);
    const auto& gens = units_->generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (!d[i]) continue;
        out = out * ff::power(a_.generator("diamond_" + std::to_string(gens[i])), static_cast<std::uint64_t>(d[i]));
    }
    return out;
}

Matrix HeckeFamily::prime_power(std::uint64_t l, unsigned r) const {
    const std::string u = "U_" + std::to_string(l);
    if (a_.has(u)) return ff::power(a_.generator(u), r);
    const std::string t = "T_" + std::to_string(l);
    if (!a_.has(t)) throw MissingOperator("no operator labeled " + t + " or " + u);
    const Matrix& tl = a_.generator(t);
    if (level_ % l == 0) return ff::power(tl, r);
    const Field& f = a_.field();
    Matrix c = diamond(static_cast<std::int64_t>(l)) * f->from_int(static_cast<std::int64_t>(nt::pow_mod(l, weight_ - 1, f->characteristic())));
    Matrix prev = a_.unit(), cur = tl;
    for (unsigned i = 1; i < r; ++i) {
        Matrix next = tl * cur - c * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return r == 0 ? prev : cur;
}

Matrix HeckeFamily::T(std::uint64_t n) const {
    if (n == 0) throw std::invalid_argument("HeckeFamily::T: n must be positive");
    {
        std::lock_guard lk(mu_);
        if (auto it = cache_.find(n); it != cache_.end()) return it->second;
    }
    Matrix out = a_.unit();
    for (auto [l, e] : nt::factorize(n)) out = out * prime_power(l, static_cast<unsigned>(e));
    std::lock_guard lk(mu_);
    cache_.emplace(n, out);
    return out;
}

std::vector<QExpansion> dual_qexp(const artin::MatrixAlgebra& a, std::size_t precision, const HeckeFamily& family) {
    const Field& f = a.field();
    std::vector<std::vector<Elt>> coeffs(a.dim(), std::vector<Elt>(precision, 0));
    for (std::uint64_t n = 1; n <= precision; ++n) {
        auto c = a.coords(family.T(n));
        if (!c) throw InvariantError("dual_qexp: T_" + std::to_string(n) + " lies outside the algebra");
        for (std::size_t i = 0; i < a.dim(); ++i) coeffs[i][n - 1] = (*c)[i];
    }
    std::vector<QExpansion> out;
    for (auto& c : coeffs) out.emplace_back(f, std::move(c), family.weight(), family.level());
    return out;
}

}  // namespace katz1::weight1
