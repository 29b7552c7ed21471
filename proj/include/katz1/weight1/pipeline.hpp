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

#ifndef KATZ1_WEIGHT1_PIPELINE_HPP
#define KATZ1_WEIGHT1_PIPELINE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "katz1/artin/algebra.hpp"
#include "katz1/ff/poly.hpp"
#include "katz1/modsym/manin.hpp"
#include "katz1/weight1/qexp.hpp"

namespace katz1::weight1 {

using artin::LabeledMatrix;
using artin::MatrixAlgebra;

/// Materialized operators of one weight-p cuspidal space. Labels are "T_l" (l prime to Np),
/// "U_l" (l = p or l | N), "diamond_g" for the generators g of (Z/N)^x, and "T_n" with
/// n = l^2 for the operators used by the diamond identity check.
struct OperatorSet {
    std::uint64_t level = 0;
    unsigned weight = 0;
    std::uint32_t p = 0;
    Field field;
    std::size_t dim = 0;
    std::uint64_t index = 0;
    std::string space;       // HeckeModule::describe()
    std::string character;   // character label
    std::uint64_t precision = 0;    // working precision B (at least the Sturm bound)
    std::uint64_t prime_bound = 0;  // operators exist for every prime up to max(B, prime_bound)
    std::vector<std::uint64_t> square_checks;  // primes l with T_(l^2) materialized
    std::vector<LabeledMatrix> ops;

    bool has(const std::string& label) const;
    const Matrix& get(const std::string& label) const;  // MissingOperator
};

struct CollectOptions {
    std::optional<std::uint64_t> precision;  // raise the working precision above the Sturm bound
    std::uint64_t prime_bound = 0;
    unsigned threads = 1;
    unsigned square_checks = 3;
};

/// Computes every operator the pipeline needs from a weight-p space. Throws ConfigError when
/// the precision override is below the Sturm bound.
OperatorSet collect_operators(const modsym::HeckeModule& space, const std::string& character, const CollectOptions& opts);

/// Labels of the generators of T_p' in canonical order: primes first, then diamonds.
std::vector<std::string> tp_prime_labels(const OperatorSet& ops);

/// A named check executed during a run.
struct Assertion {
    std::string name;
    bool passed = false;
    std::string detail;
};

class AssertionLog {
public:
    /// Records the outcome and returns it.
    bool record(std::string name, bool passed, std::string detail = {});
    bool all_passed() const;
    const std::vector<Assertion>& entries() const { return entries_; }
    void append(const AssertionLog& o);

private:
    std::vector<Assertion> entries_;
};

/// T_1 = T_p' / (T_p' cap U_p T_p') with the weight-one T_p adjoined.
struct Weight1Algebra {
    MatrixAlgebra t1;          // labels of T_p' carried through, plus "T_p" for the weight-one T_p
    artin::AlgebraIdeal ideal; // I, in coordinates of T_p'
    artin::Quotient projection;
    artin::UpRelation relation;
    Matrix tp;                 // image of the solved T in t1
    Matrix diamond_p;          // image of <p> in t1
    std::size_t dim_before_tp = 0;
};

/// `tp_prime` must carry diamond labels; `up` must commute with it. The result records
/// dim T_1' before adjoining T_p; throws InvariantError if adjoining it enlarges the algebra
/// or if the reduction of T mod I depends on the chosen solution.
Weight1Algebra weight1_hecke_algebra(const MatrixAlgebra& tp_prime, const Matrix& up, std::uint32_t p, std::uint64_t level);

struct Classification {
    bool comes_from_weight1 = false;
    bool ordinary = false;
    bool p_distinguished = false;  // only meaningful for weight-one ideals
    std::size_t ideals_above = 0;            // local factors of T_p above m'
    std::size_t geometric_ideals_above = 0;  // the same over the algebraic closure
    std::optional<Elt> a_p;        // residue of the solved T (weight-one ideals)
    std::optional<Elt> eps_p;      // residue of <p>
    Field residue;
};

/// Throws InvariantError if a weight-one ideal is not ordinary, or if p-distinguishedness
/// does not match the number of ideals of T_p above m' over the algebraic closure (two
/// conjugate roots of X^2 - a_p X + eps(p) give one rational ideal of twice the degree).
Classification classify_maximal_ideal(const artin::LocalFactor& m_prime, const Matrix& up, std::uint32_t p, std::uint64_t level);

/// Explicit isomorphism T_(p,m')/I ~ T_1 + T_1 of T_p'-modules.
struct DoublingProof {
    std::size_t dim_t1 = 0;
    std::size_t dim_quotient = 0;
    /// Columns: images of (c_j, 0) then (0, c_j) in T_(p,m')/I, where the c_j in T_p' lift a
    /// basis of T_1; phi(x, y) = x + y (U_p - T).
    Matrix phi;
    Matrix t_block;    // T_p on T_1 in the basis c_j
    Matrix d_block;    // <p> on T_1
    Matrix up_block;   // phi^-1 U_p phi
    std::vector<std::pair<std::string, Matrix>> diagonal;  // verified blocks of T_n, p not dividing n
};

/// Throws DoublingFailure naming the first operator whose block form fails.
DoublingProof verify_doubling(const MatrixAlgebra& tp_prime, const Matrix& up, const Weight1Algebra& w, std::uint32_t p,
                              std::uint64_t level, std::uint64_t precision);

/// X^2 - T_l X + <l> with coefficients in T_1 (index i holds the coefficient of X^i).
struct AlgebraPoly {
    std::vector<Matrix> coeffs;
    ff::Poly reduce(const artin::ResidueMap& r) const;
};

/// Throws RamifiedPrime when l | N and MissingOperator when T_l is not materialized.
AlgebraPoly charpoly_frobenius(const Weight1Algebra& w, std::uint64_t l, std::uint32_t p, std::uint64_t level);

struct EigenSystem {
    std::uint64_t level = 0;
    unsigned weight = 0;
    std::string character;
    Field residue;
    std::map<std::uint64_t, Elt> a;    // a_l for primes l, including l = p
    std::map<std::uint64_t, Elt> eps;  // eps(l) for primes l not dividing N
};

struct IdealAnalysis {
    Classification cls;
    bool eisenstein_suspect = false;
    unsigned residue_degree = 0;
    std::vector<Elt> sort_key;
    std::size_t dim_tp_prime = 0, dim_tp = 0, dim_ideal = 0, dim_t1 = 0;
    std::string t1_descriptor;
    std::size_t t1_nilpotency = 0;
    std::string tp_descriptor;
    bool gorenstein = false;
    Elt a_p = 0, eps_p = 0;
    ff::Poly charpoly_at_p;
    std::map<std::uint64_t, ff::Poly> charpolys;  // reduced, per prime l not dividing N
    EigenSystem eigen;
    std::optional<DoublingProof> doubling;
    std::size_t theta_dim = 0;
    std::vector<QExpansion> weight1_qexp;  // dual basis of T_1 at the working precision
    std::vector<Elt> eigenform;            // a_1..a_B of the normalized weight-one eigenform mod m
};

struct AnalyzeOptions {
    bool keep_doubling = true;
};

struct WeightOneResult {
    std::uint64_t level = 0;
    std::uint32_t p = 0;
    std::string character;
    std::string space;
    std::size_t dim_space = 0;
    std::uint64_t precision = 0;
    std::uint64_t prime_bound = 0;
    std::size_t local_factors = 0;
    std::size_t excluded_eisenstein = 0;
    std::vector<IdealAnalysis> ideals;  // weight-one, non-Eisenstein; canonical order
    AssertionLog log;

    std::size_t dim_s1() const;
};

/// Runs the weight-one pipeline on one space: decompose T_p', keep the ideals that come
/// from weight one, then localize T_p and I there. Invariant failures of the structural
/// kind throw; checks with a natural pass/fail outcome go to the log.
WeightOneResult analyze(const OperatorSet& ops, const AnalyzeOptions& opts = {});

}  // namespace katz1::weight1

#endif  // KATZ1_WEIGHT1_PIPELINE_HPP
