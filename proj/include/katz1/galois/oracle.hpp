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

#ifndef KATZ1_GALOIS_ORACLE_HPP
#define KATZ1_GALOIS_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "katz1/errors.hpp"
#include "katz1/ff/field.hpp"
#include "katz1/weight1/pipeline.hpp"

namespace katz1::galois {

using ff::Elt;
using ff::Field;

/// Degrees of the irreducible factors mod l, ascending, one list per polynomial.
using Pattern = std::vector<std::vector<unsigned>>;

struct ClassEntry {
    Pattern pattern;
    Elt trace = 0;
    Elt det = 0;
};

/// Defining polynomials of the fixed field of a residual representation, with the trace and
/// determinant of Frobenius on each factorization pattern.
///
/// File format (JSON):
///   { "field": "GF(2)", "polynomials": [[c0, ..., cd], ...], "discriminant": "229",
///     "class_map": [{"pattern": [1, 2], "trace": "0", "det": "1"}, ...], "ramified": [229] }
/// With several polynomials, "discriminant" is a list and each "pattern" a list of lists.
/// Elements are packed field elements written as decimal strings.
class NumberFieldOracle {
public:
    /// Throws OracleValidation on malformed input, a polynomial that is not monic and
    /// squarefree, a discriminant that differs from the one computed here, or a class map
    /// missing a pattern that occurs for an unramified prime below 1000.
    static NumberFieldOracle load(const std::string& path);
    static NumberFieldOracle parse(const std::string& json_text);

    const Field& field() const { return field_; }
    const std::vector<std::vector<std::int64_t>>& polynomials() const { return polys_; }
    /// Decimal discriminants, one per polynomial, as computed (and checked) on load.
    const std::vector<std::string>& discriminants() const { return discs_; }
    const std::vector<std::uint64_t>& ramified() const { return ramified_; }
    const std::vector<ClassEntry>& class_map() const { return classes_; }

    /// True when l is in the declared set or divides a discriminant.
    bool is_ramified(std::uint64_t l) const;

    /// Throws RamifiedPrime when is_ramified(l), std::invalid_argument when l is not prime.
    Pattern frobenius_pattern(std::uint64_t l) const;
    /// Throws RamifiedPrime, and OracleValidation when the pattern is not in the class map.
    Elt predicted_trace(std::uint64_t l) const;
    Elt predicted_det(std::uint64_t l) const;

private:
    const ClassEntry& lookup(std::uint64_t l) const;

    Field field_;
    std::vector<std::vector<std::int64_t>> polys_;
    std::vector<std::string> discs_;
    std::vector<std::uint64_t> ramified_;
    std::vector<ClassEntry> classes_;
    // Primes dividing some discriminant, up to the validation bound.
    std::vector<std::uint64_t> disc_primes_;
};

/// "{1,2}" for one polynomial, "{1,2};{3}" for several.
std::string pattern_string(const Pattern& p);

/// Exact discriminant of a monic integer polynomial (ascending coefficients), via the
/// resultant of f and f' computed with fraction-free elimination.
std::string discriminant(const std::vector<std::int64_t>& f);

/// Parses "GF(p)" or "GF(p^k)[c0,...,ck]" (FiniteField::descriptor()). Throws std::invalid_argument.
Field parse_field(const std::string& descriptor);

struct CrossCheckRow {
    std::uint64_t l = 0;
    /// "match", "mismatch", "not computed", "ramified in ρ" (l | N) or "oracle-ramified".
    std::string status;
    std::string pattern;
    std::optional<Elt> computed, predicted;
    std::optional<Elt> det_computed, det_predicted;
};

struct CrossCheckReport {
    std::vector<CrossCheckRow> rows;
    /// Image in the eigensystem's residue field of the generator of the oracle's field.
    Elt embedding = 0;
    std::size_t matched = 0, mismatched = 0, skipped = 0;
    bool pass = false;  // every row that is not skipped matches
};

/// Compares a_l and eps(l) with the oracle for primes l <= L. The oracle field is embedded in
/// the residue field in every possible way and the first embedding with no mismatch is
/// reported (otherwise the first one). Throws OracleValidation when no embedding exists.
CrossCheckReport cross_check(const weight1::EigenSystem& eigen, const NumberFieldOracle& oracle, std::uint64_t L);

}  // namespace katz1::galois

#endif  // KATZ1_GALOIS_ORACLE_HPP
