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

#ifndef KATZ1_MODSYM_MANIN_HPP
#define KATZ1_MODSYM_MANIN_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "katz1/errors.hpp"
#include "katz1/ff/matrix.hpp"
#include "katz1/ff/poly.hpp"
#include "katz1/modsym/character.hpp"

namespace katz1::modsym {

using ff::Matrix;
using ff::Vec;

/// Merel's matrices (a, b, c, d) with ad - bc = n, a > b >= 0, d > c >= 0.
std::vector<std::array<std::int64_t, 4>> heilbronn_merel(std::uint64_t n);

/// The subgroup S of (Z/N)^x (containing -1) by which Manin symbols are identified,
/// [P, (l c, l d)] = chi(l) [P, (c, d)] for l in S, together with the characteristic-zero
/// lift of chi used to decide which self-relations carry torsion.
struct ScalingGroup {
    std::uint64_t modulus = 0;
    std::vector<std::uint64_t> elements;      // sorted
    std::vector<Elt> value;                   // size N; chi on S, 0 elsewhere
    std::vector<std::complex<double>> lift;   // size N; lift of chi on S, 0 elsewhere
    std::string label;                        // "gamma0", "gamma1" or "prime_to_p"

    bool contains(std::uint64_t a) const { return value[a % modulus] != 0; }
    /// PSL_2(Z)-index of the corresponding congruence subgroup.
    std::uint64_t index() const;
};

/// S = (Z/N)^x with the given character: the Gamma_0(N) space with character.
ScalingGroup gamma0_scaling(const DirichletCharacter& chi, unsigned k);
/// S = {+1, -1}: the full Gamma_1(N) space.
ScalingGroup gamma1_scaling(std::uint64_t N, const Field& f, unsigned k);
/// S = {+1, -1} x (prime-to-p part of (Z/N)^x), with chi restricted to the prime-to-p part
/// and chi(-1) = (-1)^k. This is the generalized chi-component of the Gamma_1(N) space,
/// built directly.
ScalingGroup prime_to_p_scaling(const DirichletCharacter& chi, unsigned k);
/// S = ker(chi) . {+1, -1} over GF(p), where chi takes the values +-1. The order of chi must be
/// prime to p and chi(-1) = (-1)^k.
ScalingGroup kernel_scaling(const DirichletCharacter& chi, unsigned k);

/// Cuspidal modular symbols with Hecke and diamond operators: the interface consumed by
/// the weight-one pipeline. Operator matrices act on column vectors of cuspidal
/// coordinates and are cached; all methods are safe to call concurrently.
class HeckeModule {
public:
    virtual ~HeckeModule() = default;
    virtual std::uint64_t level() const = 0;
    virtual unsigned weight() const = 0;
    virtual const Field& field() const = 0;
    virtual std::size_t dim() const = 0;
    /// PSL_2(Z)-index of the underlying group (drives the Sturm bound).
    virtual std::uint64_t index() const = 0;
    virtual Matrix hecke(std::uint64_t n) const = 0;
    /// Throws BadUnit when gcd(a, N) > 1.
    virtual Matrix diamond(std::int64_t a) const = 0;
    virtual std::string describe() const = 0;

    std::uint64_t sturm_bound() const;
};

/// Manin-symbol presentation of weight-k modular symbols for the group attached to a
/// ScalingGroup, with its boundary map and cuspidal subspace.
///
/// Generators are pairs (class of (c, d), i) standing for [X^i Y^(k-2-i), (c, d)], indexed
/// class * (k - 1) + i. Matrices act on the right as P(X, Y) -> P(aX + bY, cX + dY),
/// (c, d) -> (c, d) M. At p = 2 and 3 a generator fixed by a 2-term (resp. 3-term) relation
/// whose characteristic-zero coefficient is 2 (resp. 3) is set to zero, so the space is the
/// reduction of the torsion-free lattice.
class ManinSymbolSpace final : public HeckeModule {
public:
    /// Throws BadLevel (N < 5 or p | N), CharacterParity, and ConfigError for weights whose
    /// elliptic torsion is not handled (p in {2, 3} with k > 3).
    static ManinSymbolSpace build(std::uint64_t N, unsigned k, Field f, ScalingGroup s);

    std::uint64_t level() const override;
    unsigned weight() const override;
    const Field& field() const override;
    std::size_t dim() const override;
    std::uint64_t index() const override;
    Matrix hecke(std::uint64_t n) const override;
    Matrix diamond(std::int64_t a) const override;
    std::string describe() const override;

    const ScalingGroup& scaling() const;
    std::size_t num_generators() const;
    std::size_t num_classes() const;
    /// Representative (c, d) of a class.
    std::pair<std::uint64_t, std::uint64_t> class_rep(std::size_t cls) const;
    /// Generators killed as torsion.
    std::size_t num_killed() const;

    /// Relations in reduced echelon form (rows over the generators).
    const Matrix& relation_matrix() const;
    /// Dimension of generators modulo relations.
    std::size_t quotient_dim() const;
    /// Generator index of each quotient basis element.
    const std::vector<std::size_t>& free_generators() const;
    /// Row g: generator g in quotient coordinates.
    const Matrix& generator_expressions() const;
    /// Rows: boundary classes that survive; columns: quotient coordinates.
    const Matrix& boundary_matrix() const;
    /// Rows span the cuspidal subspace, in quotient coordinates (reduced echelon form).
    const ff::Echelon& cuspidal_basis() const;

    Matrix hecke_on_quotient(std::uint64_t n) const;
    Matrix diamond_on_quotient(std::int64_t a) const;
    /// Involution induced by diag(-1, 1).
    Matrix star_on_quotient() const;
    Matrix star() const;

    /// Restriction of a quotient operator to the cuspidal subspace. Throws InvariantError
    /// if the subspace is not stable.
    Matrix to_cuspidal(const Matrix& quotient_op) const;

    struct Impl;

private:
    explicit ManinSymbolSpace(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<Impl> impl_;
};

/// build with gamma0_scaling.
ManinSymbolSpace build_space(std::uint64_t N, unsigned k, const DirichletCharacter& chi);
/// build with gamma1_scaling.
ManinSymbolSpace build_gamma1(std::uint64_t N, unsigned k, const Field& f);
/// build with prime_to_p_scaling.
ManinSymbolSpace build_prime_to_p(std::uint64_t N, unsigned k, const DirichletCharacter& chi);

/// Hecke-stable subspace of a parent module cut out by the idempotent of a character of
/// the prime-to-p part of the diamond group. Diamond operators for the prime-to-p part act
/// by the character; the p-part acts unipotently.
class CharacterComponent final : public HeckeModule {
public:
    CharacterComponent(std::shared_ptr<const HeckeModule> parent, const DirichletCharacter& chi);

    std::uint64_t level() const override { return parent_->level(); }
    unsigned weight() const override { return parent_->weight(); }
    const Field& field() const override { return parent_->field(); }
    std::size_t dim() const override { return basis_.pivots.size(); }
    std::uint64_t index() const override { return parent_->index(); }
    Matrix hecke(std::uint64_t n) const override;
    Matrix diamond(std::int64_t a) const override;
    std::string describe() const override;

    /// Rows: basis of the component in the parent's coordinates.
    const ff::Echelon& basis() const { return basis_; }

private:
    std::shared_ptr<const HeckeModule> parent_;
    std::string label_;
    ff::Echelon basis_;
};

/// Kernel of pi(<g>) in a parent module, for a unit g and a polynomial pi over the parent's
/// field. Hecke-stable because diamonds commute with the Hecke operators. index() is the
/// Gamma_0(N) index: every form in such a component has a nebentypus.
class DiamondKernel final : public HeckeModule {
public:
    DiamondKernel(std::shared_ptr<const HeckeModule> parent, std::uint64_t g, const ff::Poly& pi, std::string label);

    std::uint64_t level() const override { return parent_->level(); }
    unsigned weight() const override { return parent_->weight(); }
    const Field& field() const override { return parent_->field(); }
    std::size_t dim() const override { return basis_.pivots.size(); }
    std::uint64_t index() const override;
    Matrix hecke(std::uint64_t n) const override;
    Matrix diamond(std::int64_t a) const override;
    std::string describe() const override;

    const ff::Echelon& basis() const { return basis_; }

private:
    std::shared_ptr<const HeckeModule> parent_;
    std::string label_;
    ff::Echelon basis_;
};

/// Sum over i of the chi^(p^i)-components of the weight-k space, over GF(p). For trivial chi
/// this is the Gamma_0(N) build; otherwise the ker(chi) build cut down by the minimal polynomial
/// over GF(p) of chi(g) at <g>, for g generating (Z/N)^x modulo ker(chi). `label` names the
/// character in describe(). Throws CharacterOrderDivisibleByP and CharacterParity.
std::shared_ptr<const HeckeModule> orbit_space(std::uint64_t N, unsigned k, const DirichletCharacter& chi, const std::string& label);

/// Throws CharacterOrderDivisibleByP, or std::invalid_argument on a field mismatch.
std::shared_ptr<CharacterComponent> character_component(std::shared_ptr<const HeckeModule> parent,
                                                        const DirichletCharacter& chi);

}  // namespace katz1::modsym

#endif  // KATZ1_MODSYM_MANIN_HPP
