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

#ifndef KATZ1_FF_FIELD_HPP
#define KATZ1_FF_FIELD_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace katz1::ff {

/// A field element, packed as the integer sum c_i p^i of its coordinates in the
/// power basis of the defining modulus. For prime fields this is the residue itself.
using Elt = std::uint32_t;

class FiniteField;
using Field = std::shared_ptr<const FiniteField>;

/// GF(p^k) presented as GF(p)[z]/(modulus).
///
/// Fields are immutable and shared by pointer. Instances built with make() are interned,
/// so two calls with the same (p, k) return the same object.
class FiniteField {
public:
    /// GF(p^k) with the lexicographically least monic irreducible modulus of degree k
    /// (lowest packed value of the non-leading coefficients).
    static Field make(std::uint32_t p, unsigned k = 1);

    /// GF(p^k) with an explicit monic modulus (ascending coefficients, degree k).
    /// Throws std::invalid_argument when the modulus is not irreducible.
    static Field make(std::uint32_t p, std::vector<std::uint32_t> modulus);

    std::uint32_t characteristic() const { return p_; }
    unsigned degree() const { return k_; }
    std::uint64_t order() const { return q_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    bool is_prime_field() const { return k_ == 1; }
    bool is_gf2() const { return p_ == 2 && k_ == 1; }

    Elt add(Elt a, Elt b) const;
    Elt sub(Elt a, Elt b) const;
    Elt neg(Elt a) const;
    Elt mul(Elt a, Elt b) const;
    Elt inv(Elt a) const;
    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
    Elt pow(Elt a, std::uint64_t e) const;
    Elt from_int(std::int64_t v) const;

    /// Coordinates in the power basis, length degree().
    std::vector<std::uint32_t> coeffs(Elt a) const;
    Elt from_coeffs(std::span<const std::uint32_t> c) const;

    /// Least element (by packed value) generating the multiplicative group.
    Elt primitive_element() const { return primitive_; }

    /// primitive_element()^((q-1)/n); throws when n does not divide q-1.
    Elt root_of_unity(std::uint64_t n) const;

    /// Discrete logarithm to base primitive_element(); throws on zero.
    std::uint64_t log(Elt a) const;

    /// "GF(p)" or "GF(p^k)[c0,...,ck]".
    std::string descriptor() const;

    bool operator==(const FiniteField& o) const { return p_ == o.p_ && modulus_ == o.modulus_; }

    FiniteField(std::uint32_t p, std::vector<std::uint32_t> modulus);

private:
    Elt mul_slow(Elt a, Elt b) const;

    std::uint32_t p_;
    unsigned k_;
    std::uint64_t q_;
    std::vector<std::uint32_t> modulus_;
    Elt primitive_ = 1;
    // Log/antilog tables, present for extension fields with q <= 2^16.
    std::vector<Elt> exp_;
    std::vector<std::uint32_t> log_;
};

/// Rabin irreducibility test for a monic polynomial over GF(p) (ascending coefficients).
bool is_irreducible_over_prime_field(std::uint32_t p, const std::vector<std::uint32_t>& f);

}  // namespace katz1::ff

#endif  // KATZ1_FF_FIELD_HPP
