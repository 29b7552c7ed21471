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

#include "katz1/modsym/character.hpp"

#include <algorithm>
#include <numbers>
#include <set>
#include <numeric>
#include <stdexcept>

#include "katz1/errors.hpp"

namespace katz1::modsym {

DirichletCharacter::DirichletCharacter(std::uint64_t N, Field f, std::vector<Elt> generator_values)
    : n_(N), f_(std::move(f)), group_(std::make_shared<const nt::UnitGroup>(N)), gen_values_(std::move(generator_values)) {
    const auto& gens = group_->generators();
    const auto& ords = group_->generator_orders();
    if (gen_values_.size() != gens.size())
        throw std::invalid_argument("DirichletCharacter: expected one value per generator");
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gen_values_[i] == 0 || f_->pow(gen_values_[i], ords[i]) != Elt{1})
            throw std::invalid_argument("DirichletCharacter: value is not a root of unity of the generator's order");
    }
    table_.assign(N, 0);
    for (std::uint64_t a = 0; a < N; ++a) {
        if (!group_->is_unit(a)) continue;
        auto e = group_->dlog(a);
        Elt v = Elt{1};
        for (std::size_t i = 0; i < e.size(); ++i) v = f_->mul(v, f_->pow(gen_values_[i], static_cast<std::uint64_t>(e[i])));
        table_[a] = v;
    }
}

DirichletCharacter DirichletCharacter::trivial(std::uint64_t N, Field f) {
    nt::UnitGroup g(N);
    std::vector<Elt> v(g.generators().size(), Elt{1});
    return DirichletCharacter(N, std::move(f), std::move(v));
}

DirichletCharacter DirichletCharacter::from_exponents(std::uint64_t N, Field f, const std::vector<std::uint64_t>& exps) {
    nt::UnitGroup g(N);
    const auto& ords = g.generator_orders();
    if (exps.size() != ords.size()) throw std::invalid_argument("from_exponents: expected one exponent per generator");
    std::uint64_t q1 = f->order() - 1;
    std::vector<Elt> v;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        std::uint64_t o = ords[i];
        std::uint64_t e = exps[i] % o;
        // the value has order o / gcd(o, e) and lives in F iff that order divides q - 1
        std::uint64_t ord = o / std::gcd(o, e);
        if (q1 % ord != 0) throw std::invalid_argument("from_exponents: value not in field");
        std::uint64_t g0 = std::gcd(o, e);
        std::uint64_t num = e / g0, den = o / g0;
        v.push_back(f->pow(f->primitive_element(), (q1 / den) * num % q1));
    }
    return DirichletCharacter(N, std::move(f), std::move(v));
}

std::uint64_t DirichletCharacter::order() const {
    std::uint64_t q1 = f_->order() - 1, r = 1;
    for (Elt v : gen_values_) {
        std::uint64_t l = f_->log(v);
        r = std::lcm(r, q1 / std::gcd(q1, l));
    }
    return r;
}

bool DirichletCharacter::is_trivial() const {
    for (Elt v : gen_values_)
        if (v != Elt{1}) return false;
    return true;
}

std::complex<double> DirichletCharacter::teichmuller(std::int64_t a) const {
    Elt v = (*this)(a);
    if (v == 0) return 0.0;
    double t = 2.0 * std::numbers::pi * static_cast<double>(f_->log(v)) / static_cast<double>(f_->order() - 1);
    return {std::cos(t), std::sin(t)};
}

std::string DirichletCharacter::label() const {
    if (is_trivial()) return "trivial";
    std::string s = "[";
    for (std::size_t i = 0; i < gen_values_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(gen_values_[i]);
    }
    return s + "]";
}

std::vector<DirichletCharacter> prime_to_p_characters(std::uint64_t N, std::uint32_t p) {
    nt::UnitGroup g(N);
    const auto& ords = g.generator_orders();
    std::vector<std::uint64_t> pp(ords.size());
    std::uint64_t expo = 1;
    for (std::size_t i = 0; i < ords.size(); ++i) {
        std::uint64_t o = ords[i];
        while (o % p == 0) o /= p;
        pp[i] = o;
        expo = std::lcm(expo, o);
    }
    unsigned m = expo == 1 ? 1 : static_cast<unsigned>(nt::mult_order(p % expo, expo));
    Field f = ff::FiniteField::make(p, m);
    std::vector<DirichletCharacter> out;
    std::vector<std::uint64_t> idx(ords.size(), 0);
    while (true) {
        // exponent idx[i] on the order-pp[i] quotient, i.e. idx[i] * ords[i]/pp[i] on g_i
        std::vector<std::uint64_t> e(ords.size());
        for (std::size_t i = 0; i < ords.size(); ++i) e[i] = idx[i] * (ords[i] / pp[i]);
        out.push_back(DirichletCharacter::from_exponents(N, f, e));
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == pp[i]) idx[i++] = 0;
        if (i == idx.size()) break;
    }
    return out;
}

DirichletCharacter character_from_exponents(std::uint64_t N, std::uint32_t p, const std::vector<std::uint64_t>& exps) {
    nt::UnitGroup g(N);
    const auto& ords = g.generator_orders();
    if (exps.size() != ords.size())
        throw ConfigError("character: expected " + std::to_string(ords.size()) + " exponents for modulus " + std::to_string(N));
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < exps.size(); ++i) order = std::lcm(order, ords[i] / std::gcd(ords[i], exps[i] % ords[i]));
    if (order % p == 0) throw CharacterOrderDivisibleByP("character of order " + std::to_string(order) + " is not prime to " + std::to_string(p));
    unsigned m = order == 1 ? 1 : static_cast<unsigned>(nt::mult_order(p % order, order));
    return DirichletCharacter::from_exponents(N, ff::FiniteField::make(p, m), exps);
}

std::string exponent_label(const std::vector<std::uint64_t>& exps) {
    if (std::all_of(exps.begin(), exps.end(), [](std::uint64_t e) { return e == 0; })) return "trivial";
    std::string s = "exp:";
    for (std::size_t i = 0; i < exps.size(); ++i) s += (i ? "," : "") + std::to_string(exps[i]);
    return s;
}

std::vector<std::vector<std::uint64_t>> prime_to_p_orbit_exponents(std::uint64_t N, std::uint32_t p) {
    nt::UnitGroup g(N);
    const auto& ords = g.generator_orders();
    std::vector<std::uint64_t> step(ords.size()), count(ords.size());
    for (std::size_t i = 0; i < ords.size(); ++i) {
        std::uint64_t o = ords[i];
        while (o % p == 0) o /= p;
        count[i] = o;
        step[i] = ords[i] / o;
    }
    std::set<std::vector<std::uint64_t>> seen;
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> idx(ords.size(), 0);
    while (true) {
        std::vector<std::uint64_t> e(ords.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = idx[i] * step[i];
        if (!seen.count(e)) {
            out.push_back(e);
            for (auto c = e;;) {
                seen.insert(c);
                for (std::size_t i = 0; i < c.size(); ++i) c[i] = c[i] * p % ords[i];
                if (c == e) break;
            }
        }
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == count[i]) idx[i++] = 0;
        if (i == idx.size()) break;
    }
    return out;
}

}  // namespace katz1::modsym
