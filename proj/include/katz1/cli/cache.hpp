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

#ifndef KATZ1_CLI_CACHE_HPP
#define KATZ1_CLI_CACHE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "katz1/weight1/pipeline.hpp"

namespace katz1::cli {

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes);

/// Canonical description of the parameters that determine an operator set.
struct CacheKey {
    std::uint64_t N = 0;
    unsigned weight = 0;
    std::string character;
    std::string field;  // descriptor
    std::uint64_t precision = 0;
    std::uint64_t prime_bound = 0;
    unsigned square_checks = 0;

    /// "N=..;k=..;chi=..;field=..;B=..;L=..;sq=..;code=<version>".
    std::string canonical() const;
    /// Hex digest of canonical(); the file name stem.
    std::string digest() const;
};

/// Binary payload. serialize(deserialize(b)) == b for every accepted b.
std::string serialize(const weight1::OperatorSet& ops);
/// Throws CacheCorruption on malformed input.
weight1::OperatorSet deserialize(const std::string& bytes);

/// Directory of operator sets, one file per key.
///
/// File layout: magic "KATZ1OPS", u32 format version, then length-prefixed code version and
/// canonical key, u64 payload length, u64 FNV-1a of the payload, payload. Integers are
/// little-endian. Writers go through a temporary file and an atomic rename, so readers never
/// see partial entries and concurrent writers of one key leave one complete copy.
class OperatorCache {
public:
    explicit OperatorCache(std::string dir);

    const std::string& dir() const { return dir_; }
    std::string path(const CacheKey& key) const;

    /// Nothing when the entry is absent, from another code version, or for a different key
    /// with the same digest. Throws CacheCorruption when the file fails its integrity checks.
    std::optional<weight1::OperatorSet> load(const CacheKey& key) const;
    void store(const CacheKey& key, const weight1::OperatorSet& ops) const;

private:
    std::string dir_;
};

}  // namespace katz1::cli

#endif  // KATZ1_CLI_CACHE_HPP
