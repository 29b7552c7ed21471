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

#ifndef KATZ1_CLI_CONFIG_HPP
#define KATZ1_CLI_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace katz1::cli {

/// Environment variable that supplies the cache directory when --cache-dir is absent.
inline constexpr const char* kCacheEnv = "KATZ1_CACHE_DIR";

struct RunConfig {
    std::string command;  // "weight1", "frobcheck" or "verify-doubling"
    std::uint64_t N = 0;
    std::uint32_t p = 0;
    /// "trivial", "all-odd-order", or "exp:e_1,...,e_r" (exponents on the generators of (Z/N)^x).
    std::string character = "trivial";
    std::optional<std::uint64_t> precision;
    std::optional<std::uint64_t> prime_bound;  // default max(100, B)
    std::string cache_dir;                     // empty: caching disabled
    std::string oracle;
    std::string out;                           // default katz1_<command>_N<N>_p<p>.json
    unsigned threads = 1;
};

/// Weight-p Sturm bound for Gamma_0(N) (every component is built with a nebentypus).
std::uint64_t sturm_bound(std::uint64_t N, std::uint32_t p);

/// Checks everything that can be checked without computing: p prime, p not dividing N,
/// N >= 5, character syntax, precision at least the Sturm bound, L at least the largest
/// prime <= B, an oracle for frobcheck. Throws ConfigError with an explanatory message.
void validate(const RunConfig& c);

/// Working precision B and prime bound L after defaults.
std::uint64_t effective_precision(const RunConfig& c);
std::uint64_t effective_prime_bound(const RunConfig& c);
std::string effective_out(const RunConfig& c);

/// Exponent vectors selected by the character option; one per Frobenius orbit for
/// "all-odd-order" (characters of order prime to p whose parity matches weight p; for p = 2
/// these are exactly the characters of odd order).
std::vector<std::vector<std::uint64_t>> selected_characters(const RunConfig& c);

}  // namespace katz1::cli

#endif  // KATZ1_CLI_CONFIG_HPP
