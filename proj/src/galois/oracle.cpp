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

#include "katz1/galois/oracle.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"
#include "katz1/ff/poly.hpp"
#include "katz1/nt.hpp"

namespace katz1::galois {

namespace {

using boost::multiprecision::cpp_int;
using json = nlohmann::json;

constexpr std::uint64_t kValidationBound = 1000;

// Determinant by Bareiss fraction-free elimination; every division is exact.
cpp_int bareiss_det(std::vector<std::vector<cpp_int>> a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    cpp_int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// Resultant of f (degree m) and g (degree n) as the determinant of the Sylvester matrix.
cpp_int resultant(const std::vector<cpp_int>& f, const std::vector<cpp_int>& g) {
    const std::size_t m = f.size() - 1, n = g.size() - 1, s = m + n;
    std::vector<std::vector<cpp_int>> syl(s, std::vector<cpp_int>(s, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= m; ++j) syl[i][i + j] = f[m - j];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= n; ++j) syl[n + i][i + j] = g[n - j];
    return bareiss_det(std::move(syl));
}

cpp_int discriminant_int(const std::vector<std::int64_t>& f) {
    const std::size_t n = f.size() - 1;
    if (n == 1) return 1;
    std::vector<cpp_int> fc(f.begin(), f.end()), df;
    for (std::size_t i = 1; i <= n; ++i) df.push_back(cpp_int(f[i]) * static_cast<long long>(i));
    cpp_int r = resultant(fc, df);
    return (n * (n - 1) / 2) % 2 ? cpp_int(-r) : r;
}

Elt parse_elt(const Field& f, const json& j, const std::string& where) {
    if (!j.is_string()) throw OracleValidation("oracle: " + where + " must be a string-encoded field element");
    const std::string s = j.get<std::string>();
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw OracleValidation("oracle: " + where + " is not a decimal element: " + s);
    unsigned long long v = std::stoull(s);
    if (v >= f->order()) throw OracleValidation("oracle: " + where + " = " + s + " is outside " + f->descriptor());
    return static_cast<Elt>(v);
}

std::vector<unsigned> sorted_degrees(const json& j) {
    std::vector<unsigned> d;
    for (const auto& x : j) {
        if (!x.is_number_unsigned() || x.get<unsigned>() == 0) throw OracleValidation("oracle: pattern degrees must be positive integers");
        d.push_back(x.get<unsigned>());
    }
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace

Field parse_field(const std::string& descriptor) {
    static const std::regex prime(R"(GF\((\d+)\))");
    static const std::regex ext(R"(GF\((\d+)\^(\d+)\)\[([0-9,]+)\])");
    std::smatch m;
    if (std::regex_match(descriptor, m, prime)) return ff::FiniteField::make(static_cast<std::uint32_t>(std::stoul(m[1])));
    if (std::regex_match(descriptor, m, ext)) {
        auto p = static_cast<std::uint32_t>(std::stoul(m[1]));
        std::vector<std::uint32_t> mod;
        std::stringstream ss(m[3]);
        for (std::string t; std::getline(ss, t, ',');) mod.push_back(static_cast<std::uint32_t>(std::stoul(t)));
        if (mod.size() != std::stoul(m[2]) + 1) throw std::invalid_argument("field descriptor: modulus degree mismatch");
        return ff::FiniteField::make(p, mod);
    }
    throw std::invalid_argument("field descriptor not recognized: " + descriptor);
}

std::string discriminant(const std::vector<std::int64_t>& f) {
    if (f.size() < 2 || f.back() != 1) throw std::invalid_argument("discriminant: polynomial must be monic of degree >= 1");
    return discriminant_int(f).str();
}

std::string pattern_string(const Pattern& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ";";
        s += "{";
        for (std::size_t j = 0; j < p[i].size(); ++j) s += (j ? "," : "") + std::to_string(p[i][j]);
        s += "}";
    }
    return s;
}

NumberFieldOracle NumberFieldOracle::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw OracleValidation("oracle: cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

NumberFieldOracle NumberFieldOracle::parse(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw OracleValidation(std::string("oracle: invalid JSON: ") + e.what());
    }
    NumberFieldOracle o;
    try {
        o.field_ = parse_field(doc.at("field").get<std::string>());
    } catch (const json::exception& e) {
        throw OracleValidation(std::string("oracle: missing or bad field: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw OracleValidation(std::string("oracle: ") + e.what());
    }

    if (!doc.contains("polynomials") || !doc["polynomials"].is_array() || doc["polynomials"].empty())
        throw OracleValidation("oracle: polynomials must be a non-empty list");
    for (const auto& p : doc["polynomials"]) {
        std::vector<std::int64_t> c;
        for (const auto& x : p) {
            if (!x.is_number_integer()) throw OracleValidation("oracle: polynomial coefficients must be integers");
            c.push_back(x.get<std::int64_t>());
        }
        if (c.size() < 2 || c.back() != 1) throw OracleValidation("oracle: polynomials must be monic of degree >= 1");
        o.polys_.push_back(std::move(c));
    }

    std::vector<std::string> declared;
    if (!doc.contains("discriminant")) throw OracleValidation("oracle: missing discriminant");
    const json& dj = doc["discriminant"];
    if (dj.is_string()) {
        declared.push_back(dj.get<std::string>());
    } else if (dj.is_array()) {
        for (const auto& x : dj) {
            if (!x.is_string()) throw OracleValidation("oracle: discriminants must be decimal strings");
            declared.push_back(x.get<std::string>());
        }
    } else {
        throw OracleValidation("oracle: discriminant must be a decimal string or a list of them");
    }
    if (declared.size() != o.polys_.size()) throw OracleValidation("oracle: one discriminant per polynomial is required");
    std::set<std::uint64_t> disc_primes;
    for (std::size_t i = 0; i < o.polys_.size(); ++i) {
        cpp_int d = discriminant_int(o.polys_[i]);
        if (d == 0) throw OracleValidation("oracle: polynomial " + std::to_string(i) + " is not squarefree");
        if (d.str() != declared[i])
            throw OracleValidation("oracle: discriminant mismatch for polynomial " + std::to_string(i) + ": declared " + declared[i] +
                                   ", computed " + d.str());
        o.discs_.push_back(d.str());
        for (int l : nt::primes_up_to(static_cast<int>(kValidationBound)))
            if (d % l == 0) disc_primes.insert(static_cast<std::uint64_t>(l));
    }
    o.disc_primes_.assign(disc_primes.begin(), disc_primes.end());

    if (doc.contains("ramified")) {
        for (const auto& x : doc["ramified"]) {
            if (!x.is_number_unsigned()) throw OracleValidation("oracle: ramified primes must be positive integers");
            o.ramified_.push_back(x.get<std::uint64_t>());
        }
        std::sort(o.ramified_.begin(), o.ramified_.end());
    }

    if (!doc.contains("class_map") || !doc["class_map"].is_array()) throw OracleValidation("oracle: class_map must be a list");
    for (const auto& e : doc["class_map"]) {
        ClassEntry c;
        const json& pj = e.at("pattern");
        if (o.polys_.size() == 1 && !pj.empty() && pj.front().is_number()) {
            c.pattern.push_back(sorted_degrees(pj));
        } else {
            for (const auto& q : pj) c.pattern.push_back(sorted_degrees(q));
        }
        if (c.pattern.size() != o.polys_.size()) throw OracleValidation("oracle: pattern " + pattern_string(c.pattern) + " has the wrong shape");
        for (std::size_t i = 0; i < c.pattern.size(); ++i) {
            unsigned sum = 0;
            for (unsigned d : c.pattern[i]) sum += d;
            if (sum != o.polys_[i].size() - 1) throw OracleValidation("oracle: pattern " + pattern_string(c.pattern) + " does not sum to the degree");
        }
        c.trace = parse_elt(o.field_, e.at("trace"), "trace of " + pattern_string(c.pattern));
        c.det = parse_elt(o.field_, e.at("det"), "det of " + pattern_string(c.pattern));
        for (const auto& prev : o.classes_)
            if (prev.pattern == c.pattern) throw OracleValidation("oracle: duplicate pattern " + pattern_string(c.pattern));
        o.classes_.push_back(std::move(c));
    }

    for (int l : nt::primes_up_to(static_cast<int>(kValidationBound))) {
        if (o.is_ramified(static_cast<std::uint64_t>(l))) continue;
        Pattern pat = o.frobenius_pattern(static_cast<std::uint64_t>(l));
        bool found = std::any_of(o.classes_.begin(), o.classes_.end(), [&](const ClassEntry& c) { return c.pattern == pat; });
        if (!found) throw OracleValidation("oracle: class map lacks pattern " + pattern_string(pat) + " (occurs at l = " + std::to_string(l) + ")");
    }
    return o;
}

bool NumberFieldOracle::is_ramified(std::uint64_t l) const {
    if (std::binary_search(ramified_.begin(), ramified_.end(), l)) return true;
    if (l <= kValidationBound) return std::binary_search(disc_primes_.begin(), disc_primes_.end(), l);
    for (const auto& d : discs_)
        if (cpp_int(d) % l == 0) return true;
    return false;
}

Pattern NumberFieldOracle::frobenius_pattern(std::uint64_t l) const {
    if (!nt::is_prime(l)) throw std::invalid_argument("frobenius_pattern: " + std::to_string(l) + " is not prime");
    if (is_ramified(l)) throw RamifiedPrime("frobenius_pattern: " + std::to_string(l) + " is ramified in the oracle");
    Field fl = ff::FiniteField::make(static_cast<std::uint32_t>(l));
    Pattern out;
    for (const auto& c : polys_) {
        std::vector<Elt> r;
        for (auto x : c) r.push_back(fl->from_int(x));
        std::vector<unsigned> degs;
        for (const auto& [g, e] : ff::factor(ff::Poly(fl, r))) {
            if (e != 1) throw RamifiedPrime("frobenius_pattern: polynomial is not squarefree mod " + std::to_string(l));
            degs.push_back(static_cast<unsigned>(g.degree()));
        }
        std::sort(degs.begin(), degs.end());
        out.push_back(std::move(degs));
    }
    return out;
}

const ClassEntry& NumberFieldOracle::lookup(std::uint64_t l) const {
    Pattern pat = frobenius_pattern(l);
    for (const auto& c : classes_)
        if (c.pattern == pat) return c;
    throw OracleValidation("oracle: class map lacks pattern " + pattern_string(pat) + " (occurs at l = " + std::to_string(l) + ")");
}

Elt NumberFieldOracle::predicted_trace(std::uint64_t l) const { return lookup(l).trace; }
Elt NumberFieldOracle::predicted_det(std::uint64_t l) const { return lookup(l).det; }

CrossCheckReport cross_check(const weight1::EigenSystem& eigen, const NumberFieldOracle& oracle, std::uint64_t L) {
    const Field& k = eigen.residue;
    const Field& fo = oracle.field();
    if (k->characteristic() != fo->characteristic() || k->degree() % fo->degree() != 0)
        throw OracleValidation("oracle field " + fo->descriptor() + " does not embed in " + k->descriptor());

    // Images of the generator of the oracle field: the roots of its modulus in k.
    std::vector<Elt> gens;
    if (fo->degree() == 1) {
        gens.push_back(1);
    } else {
        std::vector<Elt> m;
        for (auto c : fo->modulus()) m.push_back(k->from_int(c));
        gens = ff::roots(ff::Poly(k, m));
    }
    if (gens.empty()) throw OracleValidation("oracle field " + fo->descriptor() + " does not embed in " + k->descriptor());

    auto run = [&](Elt r) {
        auto embed = [&](Elt x) {
            Elt acc = 0, pw = 1;
            for (auto c : fo->coeffs(x)) {
                acc = k->add(acc, k->mul(k->from_int(c), pw));
                pw = k->mul(pw, r);
            }
            return acc;
        };
        CrossCheckReport rep;
        rep.embedding = r;
        for (int li : nt::primes_up_to(static_cast<int>(L))) {
            const auto l = static_cast<std::uint64_t>(li);
            CrossCheckRow row;
            row.l = l;
            if (auto it = eigen.a.find(l); it != eigen.a.end()) row.computed = it->second;
            if (auto it = eigen.eps.find(l); it != eigen.eps.end()) row.det_computed = it->second;
            if (eigen.level % l == 0) {
                row.status = "ramified in ρ";
                ++rep.skipped;
            } else if (oracle.is_ramified(l)) {
                row.status = "oracle-ramified";
                ++rep.skipped;
            } else {
                row.pattern = pattern_string(oracle.frobenius_pattern(l));
                row.predicted = embed(oracle.predicted_trace(l));
                row.det_predicted = embed(oracle.predicted_det(l));
                if (!row.computed || !row.det_computed) {
                    row.status = "not computed";
                    ++rep.mismatched;
                } else if (*row.computed == *row.predicted && *row.det_computed == *row.det_predicted) {
                    row.status = "match";
                    ++rep.matched;
                } else {
                    row.status = "mismatch";
                    ++rep.mismatched;
                }
            }
            rep.rows.push_back(std::move(row));
        }
        rep.pass = rep.mismatched == 0;
        return rep;
    };

    CrossCheckReport first = run(gens.front());
    if (first.pass) return first;
    for (std::size_t i = 1; i < gens.size(); ++i) {
        CrossCheckReport r = run(gens[i]);
        if (r.pass) return r;
    }
    return first;
}

}  // namespace katz1::galois
