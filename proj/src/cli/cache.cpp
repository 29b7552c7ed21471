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

#include "katz1/cli/cache.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "katz1/errors.hpp"
#include "katz1/galois/oracle.hpp"
#include "katz1/version.hpp"

namespace katz1::cli {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[8] = {'K', 'A', 'T', 'Z', '1', 'O', 'P', 'S'};
constexpr std::uint32_t kFormatVersion = 1;

class Writer {
public:
    void u32(std::uint32_t v) { raw(v, 4); }
    void u64(std::uint64_t v) { raw(v, 8); }
    void str(const std::string& s) {
        u64(s.size());
        out_ += s;
    }
    std::string take() { return std::move(out_); }

private:
    void raw(std::uint64_t v, int n) {
        for (int i = 0; i < n; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    std::string out_;
};

class Reader {
public:
    explicit Reader(const std::string& s) : s_(s) {}
    std::uint32_t u32() { return static_cast<std::uint32_t>(raw(4)); }
    std::uint64_t u64() { return raw(8); }
    std::string str() {
        std::uint64_t n = u64();
        need(n);
        std::string r = s_.substr(pos_, n);
        pos_ += n;
        return r;
    }
    std::string bytes(std::size_t n) {
        need(n);
        std::string r = s_.substr(pos_, n);
        pos_ += n;
        return r;
    }
    bool done() const { return pos_ == s_.size(); }

private:
    void need(std::uint64_t n) const {
        if (n > s_.size() - pos_) throw CacheCorruption("cache: truncated entry");
    }
    std::uint64_t raw(int n) {
        need(static_cast<std::uint64_t>(n));
        std::uint64_t v = 0;
        for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s_[pos_ + i])) << (8 * i);
        pos_ += static_cast<std::size_t>(n);
        return v;
    }
    const std::string& s_;
    std::size_t pos_ = 0;
};

std::string hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string CacheKey::canonical() const {
    std::ostringstream os;
    os << "N=" << N << ";k=" << weight << ";chi=" << character << ";field=" << field << ";B=" << precision << ";L=" << prime_bound
       << ";sq=" << square_checks << ";code=" << kCodeVersion;
    return os.str();
}

std::string CacheKey::digest() const { return hex(fnv1a(canonical())); }

std::string serialize(const weight1::OperatorSet& ops) {
    Writer w;
    w.u64(ops.level);
    w.u32(ops.weight);
    w.u32(ops.p);
    w.str(ops.field->descriptor());
    w.u64(ops.dim);
    w.u64(ops.index);
    w.str(ops.space);
    w.str(ops.character);
    w.u64(ops.precision);
    w.u64(ops.prime_bound);
    w.u64(ops.square_checks.size());
    for (auto l : ops.square_checks) w.u64(l);
    w.u64(ops.ops.size());
    for (const auto& op : ops.ops) {
        w.str(op.label);
        w.u64(op.m.rows());
        w.u64(op.m.cols());
        for (std::size_t i = 0; i < op.m.rows(); ++i)
            for (std::size_t j = 0; j < op.m.cols(); ++j) w.u32(op.m(i, j));
    }
    return w.take();
}

weight1::OperatorSet deserialize(const std::string& bytes) {
    Reader r(bytes);
    weight1::OperatorSet ops;
    ops.level = r.u64();
    ops.weight = r.u32();
    ops.p = r.u32();
    try {
        ops.field = galois::parse_field(r.str());
    } catch (const std::invalid_argument& e) {
        throw CacheCorruption(std::string("cache: bad field: ") + e.what());
    }
    if (ops.field->characteristic() != ops.p) throw CacheCorruption("cache: field and p disagree");
    ops.dim = r.u64();
    ops.index = r.u64();
    ops.space = r.str();
    ops.character = r.str();
    ops.precision = r.u64();
    ops.prime_bound = r.u64();
    std::uint64_t nsq = r.u64();
    if (nsq > bytes.size()) throw CacheCorruption("cache: bad square-check count");
    for (std::uint64_t i = 0; i < nsq; ++i) ops.square_checks.push_back(r.u64());
    std::uint64_t nops = r.u64();
    if (nops > bytes.size()) throw CacheCorruption("cache: bad operator count");
    for (std::uint64_t k = 0; k < nops; ++k) {
        std::string label = r.str();
        std::uint64_t rows = r.u64(), cols = r.u64();
        if (rows != ops.dim || cols != ops.dim) throw CacheCorruption("cache: operator " + label + " has the wrong shape");
        ff::Matrix m(ops.field, rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                std::uint32_t v = r.u32();
                if (v >= ops.field->order()) throw CacheCorruption("cache: entry outside the field in " + label);
                m(i, j) = v;
            }
        ops.ops.push_back({std::move(label), std::move(m)});
    }
    if (!r.done()) throw CacheCorruption("cache: trailing bytes");
    return ops;
}

OperatorCache::OperatorCache(std::string dir) : dir_(std::move(dir)) {}

std::string OperatorCache::path(const CacheKey& key) const { return (fs::path(dir_) / (key.digest() + ".k1ops")).string(); }

std::optional<weight1::OperatorSet> OperatorCache::load(const CacheKey& key) const {
    const std::string file = path(key);
    std::ifstream in(file, std::ios::binary);
    if (!in) return std::nullopt;
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (data.size() < sizeof kMagic || data.compare(0, sizeof kMagic, kMagic, sizeof kMagic) != 0)
        throw CacheCorruption("cache: bad magic in " + file);
    Reader r(data);
    r.bytes(sizeof kMagic);
    if (r.u32() != kFormatVersion) return std::nullopt;
    if (r.str() != kCodeVersion) return std::nullopt;
    if (r.str() != key.canonical()) return std::nullopt;
    std::uint64_t n = r.u64(), h = r.u64();
    std::string payload = r.bytes(n);
    if (!r.done()) throw CacheCorruption("cache: trailing bytes in " + file);
    if (fnv1a(payload) != h) throw CacheCorruption("cache: payload hash mismatch in " + file);
    return deserialize(payload);
}

void OperatorCache::store(const CacheKey& key, const weight1::OperatorSet& ops) const {
    fs::create_directories(dir_);
    const std::string payload = serialize(ops);
    Writer w;
    std::string head(kMagic, sizeof kMagic);
    w.u32(kFormatVersion);
    w.str(kCodeVersion);
    w.str(key.canonical());
    w.u64(payload.size());
    w.u64(fnv1a(payload));
    const std::string data = head + w.take() + payload;

    static std::atomic<unsigned> counter{0};
    std::random_device rd;
    const std::string tmp = path(key) + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++) + "." + std::to_string(rd());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cache: cannot write " + tmp);
        out.write(data.data(), static_cast<std::streamsize>(data.size()));
        if (!out) throw std::runtime_error("cache: short write to " + tmp);
    }
    fs::rename(tmp, path(key));
}

}  // namespace katz1::cli
