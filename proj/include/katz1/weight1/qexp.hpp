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

#ifndef KATZ1_WEIGHT1_QEXP_HPP
#define KATZ1_WEIGHT1_QEXP_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "katz1/artin/algebra.hpp"
#include "katz1/errors.hpp"
#include "katz1/nt.hpp"

namespace katz1::weight1 {

using ff::Elt;
using ff::Field;
using ff::Matrix;
using ff::Vec;

/// Truncated q-expansion a_1 q + ... + a_B q^B of a cusp form. Coefficients past the
/// precision are unknown, not zero: reading one throws std::out_of_range.
class QExpansion {
public:
    QExpansion() = default;
    /// The zero series.
    QExpansion(Field f, std::size_t precision, unsigned weight, std::uint64_t level);
    /// coeffs[i] is a_(i+1).
    QExpansion(Field f, std::vector<Elt> coeffs, unsigned weight, std::uint64_t level);

    const Field& field() const { return f_; }
    std::size_t precision() const { return a_.size(); }
    unsigned weight() const { return weight_; }
    std::uint64_t level() const { return level_; }
    const std::vector<Elt>& coefficients() const { return a_; }

    Elt coeff(std::uint64_t n) const;
    void set(std::uint64_t n, Elt v);
    bool is_zero() const;

    /// Both operands must agree in field, precision, weight and level.
    QExpansion operator+(const QExpansion& o) const;
    QExpansion operator*(Elt s) const;
    bool operator==(const QExpansion& o) const;

    QExpansion truncated(std::size_t precision) const;
    std::string to_string() const;

private:
    void check_compatible(const QExpansion& o) const;

    Field f_;
    std::vector<Elt> a_;
    unsigned weight_ = 0;
    std::uint64_t level_ = 0;
};

/// f -> f^p, i.e. sum a_n q^(np). Precision and weight are multiplied by p.
QExpansion frobenius_twist(const QExpansion& f);

/// Rows: coefficient vectors c with sum c_i f_i in the kernel of theta, i.e. with
/// a_n = 0 for every n prime to the characteristic. Basis of the combinations.
Matrix theta_kernel_combinations(const std::vector<QExpansion>& forms);

/// Basis, in reduced echelon form on coefficients, of the forms in span(forms) whose
/// coefficients a_n vanish for all n prime to the characteristic.
std::vector<QExpansion> theta_kernel(const std::vector<QExpansion>& forms);

/// The operators T_n inside an algebra, assembled from its labeled generators:
/// "T_l" or "U_l" for primes l and "diamond_g" for the generators g of (Z/N)^x.
///
/// T_mn = T_m T_n for coprime m, n. For a prime carrying a "U_l" label, T_(l^r) = U_l^r.
/// Otherwise T_(l^(r+1)) = T_l T_(l^r) - l^(k-1) <l> T_(l^(r-1)).
class HeckeFamily {
public:
    HeckeFamily(const artin::MatrixAlgebra& a, std::uint64_t level, unsigned weight);

    std::uint64_t level() const { return level_; }
    unsigned weight() const { return weight_; }

    /// Throws MissingOperator when a required label is absent.
    Matrix T(std::uint64_t n) const;
    /// Throws BadUnit when gcd(a, N) > 1 and MissingOperator when a diamond label is absent.
    Matrix diamond(std::int64_t a) const;

private:
    Matrix prime_power(std::uint64_t l, unsigned r) const;

    artin::MatrixAlgebra a_;
    std::shared_ptr<const nt::UnitGroup> units_;
    std::uint64_t level_;
    unsigned weight_;
    mutable std::mutex mu_;
    mutable std::map<std::uint64_t, Matrix> cache_;
};

/// Basis of Hom(a, F) written as q-expansions phi -> sum phi(T_n) q^n, n <= precision: the
/// i-th series is the i-th coordinate functional on a's echelon basis.
std::vector<QExpansion> dual_qexp(const artin::MatrixAlgebra& a, std::size_t precision, const HeckeFamily& family);

}  // namespace katz1::weight1

#endif  // KATZ1_WEIGHT1_QEXP_HPP
