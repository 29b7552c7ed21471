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

#include "katz1/cli/config.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "katz1/errors.hpp"
#include "katz1/modsym/character.hpp"
#include "katz1/modsym/dimension.hpp"
#include "katz1/nt.hpp"

namespace katz1::cli {

namespace {

std::vector<std::uint64_t> parse_exponents(const std::string& s, std::uint64_t N) {
    std::vector<std::uint64_t> e;
    std::stringstream ss(s.substr(4));
    for (std::string t; std::getline(ss, t, ',');) {
        if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw ConfigError("character: bad exponent list '" + s + "'");
        e.push_back(std::stoull(t));
    }
    nt::UnitGroup g(N);
    if (e.size() != g.generators().size())
        throw ConfigError("character: " + std::to_string(g.generators().size()) + " exponents expected for modulus " + std::to_string(N));
    for (std::size_t i = 0; i < e.size(); ++i) e[i] %= g.generator_orders()[i];
    return e;
}

// chi(-1) = exp(2 pi i t) with t = sum e_i d_i / o_i mod 1, where d = dlog(-1); t is 0 or 1/2.
bool parity_matches(const std::vector<std::uint64_t>& e, std::uint64_t N, std::uint32_t p) {
    nt::UnitGroup g(N);
    const auto& d = g.dlog(N - 1);
    std::uint64_t L = 1;
    for (auto o : g.generator_orders()) L = std::lcm(L, o);
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        std::uint64_t o = g.generator_orders()[i];
        t = (t + e[i] % o * static_cast<std::uint64_t>(d[i]) % o * (L / o)) % L;
    }
    return (t != 0) == (p % 2 == 1);
}

}  // namespace

std::uint64_t sturm_bound(std::uint64_t N, std::uint32_t p) {
    std::uint64_t mu = modsym::gamma0_index(N);
    return (static_cast<std::uint64_t>(p) * mu + 11) / 12;
}

std::uint64_t effective_precision(const RunConfig& c) { return c.precision.value_or(sturm_bound(c.N, c.p)); }

std::uint64_t effective_prime_bound(const RunConfig& c) {
    return c.prime_bound.value_or(std::max<std::uint64_t>(100, effective_precision(c)));
}

std::string effective_out(const RunConfig& c) {
    if (!c.out.empty()) return c.out;
    return "katz1_" + c.command + "_N" + std::to_string(c.N) + "_p" + std::to_string(c.p) + ".json";
}

void validate(const RunConfig& c) {
    if (c.command != "weight1" && c.command != "frobcheck" && c.command != "verify-doubling")
        throw ConfigError("unknown command '" + c.command + "'");
    if (c.N < 5) throw BadLevel("N must be at least 5, got " + std::to_string(c.N));
    if (!nt::is_prime(c.p)) throw ConfigError("p must be prime, got " + std::to_string(c.p));
    if (c.N % c.p == 0) throw BadLevel("p = " + std::to_string(c.p) + " divides N = " + std::to_string(c.N));
    if (c.threads == 0) throw ConfigError("threads must be positive");
    const std::uint64_t sturm = sturm_bound(c.N, c.p);
    if (c.precision && *c.precision < sturm)
        throw ConfigError("precision " + std::to_string(*c.precision) + " is below the weight-" + std::to_string(c.p) +
                          " Sturm bound " + std::to_string(sturm));
    const std::uint64_t B = effective_precision(c);
    const std::uint64_t L = effective_prime_bound(c);
    auto primes = nt::primes_up_to(static_cast<int>(B));
    const std::uint64_t need = primes.empty() ? 0 : static_cast<std::uint64_t>(primes.back());
    if (L < need)
        throw ConfigError("prime bound L = " + std::to_string(L) + " is below " + std::to_string(need) +
                          ", the largest prime needed to generate the Hecke algebra up to the Sturm bound B = " + std::to_string(B));
    if (c.command == "frobcheck" && c.oracle.empty()) throw ConfigError("frobcheck needs --oracle");
    selected_characters(c);
}

std::vector<std::vector<std::uint64_t>> selected_characters(const RunConfig& c) {
    nt::UnitGroup g(c.N);
    if (c.character == "trivial") return {std::vector<std::uint64_t>(g.generators().size(), 0)};
    if (c.character == "all-odd-order") {
        std::vector<std::vector<std::uint64_t>> out;
        for (auto& e : modsym::prime_to_p_orbit_exponents(c.N, c.p))
            if (parity_matches(e, c.N, c.p)) out.push_back(std::move(e));
        return out;
    }
    if (c.character.rfind("exp:", 0) == 0) {
        auto e = parse_exponents(c.character, c.N);
        modsym::character_from_exponents(c.N, c.p, e);  // order check
        if (!parity_matches(e, c.N, c.p)) throw CharacterParity("character parity differs from that of weight " + std::to_string(c.p));
        return {e};
    }
    throw ConfigError("character must be 'trivial', 'all-odd-order' or 'exp:e1,...', got '" + c.character + "'");
}

}  // namespace katz1::cli
