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

#ifndef KATZ1_MODSYM_CHARACTER_HPP
#define KATZ1_MODSYM_CHARACTER_HPP

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "katz1/ff/field.hpp"
#include "katz1/nt.hpp"

namespace katz1::modsym {

using ff::Elt;
using ff::Field;

/// Dirichlet character (Z/N)^x -> F^x, stored by its values on the canonical generators
/// of nt::UnitGroup(N) and extended to a full value table (0 off the units).
class DirichletCharacter {
public:
    /// Throws std::invalid_argument when a value is not a root of unity of order dividing
    /// the order of its generator.
    DirichletCharacter(std::uint64_t N, Field f, std::vector<Elt> generator_values);

    static DirichletCharacter trivial(std::uint64_t N, Field f);

    /// chi(g_i) = w^((q-1) e_i / o_i), a primitive (o_i / gcd(o_i, e_i))-th root of unity, where
    /// w is the field's primitive element and o_i the order of the i-th generator. Throws
    /// std::invalid_argument when that order does not divide q - 1.
    static DirichletCharacter from_exponents(std::uint64_t N, Field f, const std::vector<std::uint64_t>& exps);

    std::uint64_t modulus() const { return n_; }
    const Field& field() const { return f_; }
    const nt::UnitGroup& group() const { return *group_; }
    const std::vector<Elt>& generator_values() const { return gen_values_; }

    Elt operator()(std::int64_t a) const { return table_[static_cast<std::size_t>(nt::mod(a, static_cast<std::int64_t>(n_)))]; }
    std::uint64_t order() const;
    bool is_trivial() const;

    /// e^(2 pi i j/(q-1)) where chi(a) = w^j; the Teichmueller lift to characteristic zero.
    std::complex<double> teichmuller(std::int64_t a) const;

    /// "trivial" or the generator values, e.g. "[1,3]".
    std::string label() const;

private:
    std::uint64_t n_;
    Field f_;
    std::shared_ptr<const nt::UnitGroup> group_;
    std::vector<Elt> gen_values_;
    std::vector<Elt> table_;
};

/// All characters of the prime-to-p part of (Z/N)^x, extended trivially on the p-part, with
/// values in the smallest field GF(p^m) that holds them all. Ordered by exponent vector.
std::vector<DirichletCharacter> prime_to_p_characters(std::uint64_t N, std::uint32_t p);

/// chi(g_i) = w^(e_i (q-1)/o_i) over the smallest GF(p^m) holding the values, where o_i is the
/// order of the i-th generator of (Z/N)^x. Throws CharacterOrderDivisibleByP when the order
/// of chi is divisible by p.
DirichletCharacter character_from_exponents(std::uint64_t N, std::uint32_t p, const std::vector<std::uint64_t>& exps);

/// "trivial" for the zero vector, otherwise "exp:e_1,...,e_r".
std::string exponent_label(const std::vector<std::uint64_t>& exps);

/// Exponent vectors of the characters of order prime to p, one per orbit of e -> p e (the
/// Galois conjugates have conjugate Hecke data); each is the least vector of its orbit, and
/// the trivial character comes first.
std::vector<std::vector<std::uint64_t>> prime_to_p_orbit_exponents(std::uint64_t N, std::uint32_t p);

}  // namespace katz1::modsym

#endif  // KATZ1_MODSYM_CHARACTER_HPP
