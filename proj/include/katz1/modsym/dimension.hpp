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

#ifndef KATZ1_MODSYM_DIMENSION_HPP
#define KATZ1_MODSYM_DIMENSION_HPP

// Classical dimension formulas, used to validate the mod-p modular symbol spaces.

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace katz1::modsym {

/// Index of Gamma_0(N) in SL_2(Z): N prod (1 + 1/q).
std::uint64_t gamma0_index(std::uint64_t N);

/// Number of x mod N with x^2 + 1 = 0, resp. x^2 + x + 1 = 0.
std::uint64_t count_sqrt_minus_one(std::uint64_t N);
std::uint64_t count_cube_roots(std::uint64_t N);

/// Number of cusps of X_0(N): sum over d | N of phi(gcd(d, N/d)).
std::uint64_t gamma0_cusps(std::uint64_t N);

/// Genus of X_0(N) from index, elliptic points and cusps.
std::uint64_t genus_x0(std::uint64_t N);

/// A complex-valued Dirichlet character mod N, as a value table (0 off the units).
using ComplexCharacter = std::vector<std::complex<double>>;

/// Every complex character mod N, in exponent order on nt::UnitGroup's generators.
std::vector<ComplexCharacter> complex_characters(std::uint64_t N);

/// dim S_k(Gamma_0(N), psi) for k >= 2 (Cohen-Oesterle); 0 when psi(-1) != (-1)^k.
std::int64_t cusp_form_dimension(std::uint64_t N, unsigned k, const ComplexCharacter& psi);

/// Sum of cusp_form_dimension over all psi mod N whose restriction to a subgroup S of
/// (Z/N)^x equals a given character. `restriction` returns that character's value at
/// units in S and nothing elsewhere.
std::int64_t cusp_form_dimension_sum(std::uint64_t N, unsigned k,
                                     const std::function<std::optional<std::complex<double>>(std::uint64_t)>& restriction);

/// ceil(k * index / 12).
std::uint64_t sturm_bound(unsigned k, std::uint64_t index);

}  // namespace katz1::modsym

#endif  // KATZ1_MODSYM_DIMENSION_HPP
