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

#ifndef KATZ1_FF_POLY_HPP
#define KATZ1_FF_POLY_HPP

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "katz1/ff/field.hpp"

namespace katz1::ff {

/// Univariate polynomial over a finite field, coefficients in ascending degree.
/// The coefficient vector is always trimmed, so the zero polynomial is empty.
class Poly {
public:
    Poly() = default;
    explicit Poly(Field f) : f_(std::move(f)) {}
    Poly(Field f, std::vector<Elt> coeffs);

    static Poly x(Field f) { return Poly(std::move(f), {0, 1}); }
    static Poly constant(Field f, Elt c) { return Poly(std::move(f), {c}); }
    static Poly monomial(Field f, Elt c, std::size_t deg);

    const Field& field() const { return f_; }
    /// Degree, or -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    Elt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    Elt lead() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<Elt>& coeffs() const { return c_; }

    Poly monic() const;
    Poly derivative() const;
    Elt eval(Elt x) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(Elt s) const;
    Poly operator/(const Poly& o) const { return divmod(o).first; }
    Poly operator%(const Poly& o) const { return divmod(o).second; }
    std::pair<Poly, Poly> divmod(const Poly& d) const;

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return c_ != o.c_; }
    /// Canonical total order: by degree, then coefficients from the top down.
    bool operator<(const Poly& o) const;

    /// Human-readable form in the variable X, e.g. "X^2 + X + 1"; extension-field
    /// coefficients print as their packed value in brackets.
    std::string to_string(const std::string& var = "X") const;

private:
    void trim();
    Field f_;
    std::vector<Elt> c_;
};

Poly gcd(Poly a, Poly b);
Poly lcm(const Poly& a, const Poly& b);
/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b);
Poly pow_mod(Poly base, std::uint64_t e, const Poly& m);
Poly pow(const Poly& base, unsigned e);

bool is_irreducible(const Poly& f);

/// Factorization into monic irreducibles with multiplicities, sorted canonically.
/// The leading unit of f is dropped. Throws std::invalid_argument on the zero polynomial.
std::vector<std::pair<Poly, int>> factor(const Poly& f);

/// Distinct roots of f in its coefficient field, in increasing packed order.
std::vector<Elt> roots(const Poly& f);

}  // namespace katz1::ff

#endif  // KATZ1_FF_POLY_HPP
