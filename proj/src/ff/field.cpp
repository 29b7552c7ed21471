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

#include "katz1/ff/field.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "katz1/errors.hpp"
#include "katz1/nt.hpp"

namespace katz1::ff {

namespace {

using RawPoly = std::vector<std::uint32_t>;  // ascending, over GF(p)

void trim(RawPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

RawPoly raw_mulmod(const RawPoly& a, const RawPoly& b, const RawPoly& m, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + std::uint64_t(a[i]) * b[j]) % p;
    // m is monic
    std::size_t dm = m.size() - 1;
    for (std::size_t i = prod.size(); i-- > dm;) {
        std::uint64_t c = prod[i];
        if (!c) continue;
        for (std::size_t j = 0; j <= dm; ++j) prod[i - dm + j] = (prod[i - dm + j] + (p - c) * m[j]) % p;
    }
    RawPoly r(prod.begin(), prod.begin() + std::min(prod.size(), dm));
    trim(r);
    return r;
}

RawPoly raw_powmod(RawPoly b, std::uint64_t e, const RawPoly& m, std::uint32_t p) {
    RawPoly r{1};
    while (e) {
        if (e & 1) r = raw_mulmod(r, b, m, p);
        b = raw_mulmod(b, b, m, p);
        e >>= 1;
    }
    return r;
}

RawPoly raw_mod(RawPoly a, const RawPoly& m, std::uint32_t p) {
    trim(a);
    RawPoly mm = m;
    trim(mm);
    std::uint64_t lead_inv = nt::inv_mod(mm.back(), p);
    while (a.size() >= mm.size()) {
        std::uint64_t c = a.back() * lead_inv % p;
        std::size_t shift = a.size() - mm.size();
        for (std::size_t j = 0; j < mm.size(); ++j) a[shift + j] = (a[shift + j] + (p - c) * mm[j]) % p;
        trim(a);
    }
    return a;
}

RawPoly raw_gcd(RawPoly a, RawPoly b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        RawPoly r = raw_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace

bool is_irreducible_over_prime_field(std::uint32_t p, const std::vector<std::uint32_t>& f) {
    RawPoly m = f;
    trim(m);
    if (m.size() < 2 || m.back() != 1) return false;
    unsigned k = static_cast<unsigned>(m.size() - 1);
    if (k == 1) return true;
    RawPoly x{0, 1};
    // x^(p^k) == x mod f
    RawPoly t = x;
    for (unsigned i = 0; i < k; ++i) t = raw_powmod(t, p, m, p);
    if (t != raw_mod(x, m, p)) return false;
    for (auto [r, e] : nt::factorize(k)) {
        (void)e;
        RawPoly s = x;
        for (unsigned i = 0; i < k / r; ++i) s = raw_powmod(s, p, m, p);
        // s - x
        s.resize(std::max<std::size_t>(s.size(), 2), 0);
        s[1] = (s[1] + p - 1) % p;
        trim(s);
        RawPoly g = raw_gcd(m, s, p);
        if (g.size() != 1) return false;
    }
    return true;
}

FiniteField::FiniteField(std::uint32_t p, std::vector<std::uint32_t> modulus)
    : p_(p), k_(static_cast<unsigned>(modulus.size() - 1)), modulus_(std::move(modulus)) {
    if (!nt::is_prime(p)) throw std::invalid_argument("FiniteField: characteristic must be prime");
    if (k_ < 1) throw std::invalid_argument("FiniteField: degree must be >= 1");
    if (!is_irreducible_over_prime_field(p, modulus_))
        throw std::invalid_argument("FiniteField: modulus is not irreducible");
    long double q = std::pow(static_cast<long double>(p), k_);
    if (q > 2147483647.0L) throw FieldTooLarge("FiniteField: field order exceeds 2^31");
    q_ = nt::ipow(p, k_);

    // Primitive element: least g with g^((q-1)/r) != 1 for every prime r | q-1.
    auto prime_divs = nt::factorize(q_ - 1);
    for (Elt g = 1; g < q_; ++g) {
        bool ok = true;
        for (auto [r, e] : prime_divs) {
            (void)e;
            Elt t = 1, b = g;
            std::uint64_t ex = (q_ - 1) / r;
            while (ex) {
                if (ex & 1) t = mul_slow(t, b);
                b = mul_slow(b, b);
                ex >>= 1;
            }
            if (t == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            primitive_ = g;
            break;
        }
    }
    if (q_ <= (1u << 16)) {
        exp_.resize(2 * (q_ - 1));
        log_.assign(q_, 0);
        Elt x = 1;
        for (std::uint64_t i = 0; i < q_ - 1; ++i) {
            exp_[i] = exp_[i + q_ - 1] = x;
            log_[x] = static_cast<std::uint32_t>(i);
            x = mul_slow(x, primitive_);
        }
    }
}

Field FiniteField::make(std::uint32_t p, unsigned k) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, unsigned>, Field> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, k);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    if (!nt::is_prime(p)) throw std::invalid_argument("FiniteField: characteristic must be prime");
    if (k < 1) throw std::invalid_argument("FiniteField: degree must be >= 1");
    if (static_cast<long double>(k) * std::log2(static_cast<long double>(p)) > 31.0L)
        throw FieldTooLarge("FiniteField: GF(" + std::to_string(p) + "^" + std::to_string(k) + ") exceeds 2^31 elements");
    std::uint64_t count = nt::ipow(p, k);
    for (std::uint64_t t = 0; t < count; ++t) {
        std::vector<std::uint32_t> m(k + 1, 0);
        std::uint64_t v = t;
        for (unsigned i = 0; i < k; ++i) {
            m[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        m[k] = 1;
        if (k > 1 && m[0] == 0) continue;
        if (is_irreducible_over_prime_field(p, m)) {
            auto f = std::make_shared<const FiniteField>(p, std::move(m));
            cache.emplace(key, f);
            return f;
        }
    }
    throw std::logic_error("FiniteField: no irreducible polynomial found");
}

Field FiniteField::make(std::uint32_t p, std::vector<std::uint32_t> modulus) {
    Field canonical = make(p, static_cast<unsigned>(modulus.size() - 1));
    if (canonical->modulus() == modulus) return canonical;
    return std::make_shared<const FiniteField>(p, std::move(modulus));
}

Elt FiniteField::add(Elt a, Elt b) const {
    if (k_ == 1) {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    if (p_ == 2) return a ^ b;
    Elt r = 0, place = 1;
    for (unsigned i = 0; i < k_; ++i) {
        std::uint32_t d = (a % p_ + b % p_) % p_;
        r += d * place;
        place *= p_;
        a /= p_;
        b /= p_;
    }
    return r;
}

Elt FiniteField::neg(Elt a) const {
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    if (p_ == 2) return a;
    Elt r = 0, place = 1;
    for (unsigned i = 0; i < k_; ++i) {
        std::uint32_t d = a % p_;
        r += (d == 0 ? 0 : p_ - d) * place;
        place *= p_;
        a /= p_;
    }
    return r;
}

Elt FiniteField::sub(Elt a, Elt b) const { return add(a, neg(b)); }

Elt FiniteField::mul_slow(Elt a, Elt b) const {
    if (k_ == 1) return static_cast<Elt>(std::uint64_t(a) * b % p_);
    auto ca = coeffs(a), cb = coeffs(b);
    RawPoly ra(ca.begin(), ca.end()), rb(cb.begin(), cb.end());
    trim(ra);
    trim(rb);
    RawPoly r = raw_mulmod(ra, rb, modulus_, p_);
    r.resize(k_, 0);
    return from_coeffs(r);
}

Elt FiniteField::mul(Elt a, Elt b) const {
    if (k_ == 1) return static_cast<Elt>(std::uint64_t(a) * b % p_);
    if (a == 0 || b == 0) return 0;
    if (!exp_.empty()) return exp_[log_[a] + log_[b]];
    return mul_slow(a, b);
}

Elt FiniteField::pow(Elt a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (!exp_.empty()) return exp_[(std::uint64_t(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
    Elt r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Elt FiniteField::inv(Elt a) const {
    if (a == 0) throw std::domain_error("FiniteField::inv: zero has no inverse");
    if (k_ == 1) return static_cast<Elt>(nt::inv_mod(a, p_));
    if (!exp_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    return pow(a, q_ - 2);
}

Elt FiniteField::from_int(std::int64_t v) const {
    return static_cast<Elt>(nt::mod(v, static_cast<std::int64_t>(p_)));
}

std::vector<std::uint32_t> FiniteField::coeffs(Elt a) const {
    std::vector<std::uint32_t> c(k_);
    for (unsigned i = 0; i < k_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

Elt FiniteField::from_coeffs(std::span<const std::uint32_t> c) const {
    Elt r = 0, place = 1;
    for (unsigned i = 0; i < k_ && i < c.size(); ++i) {
        r += (c[i] % p_) * place;
        place *= p_;
    }
    return r;
}

Elt FiniteField::root_of_unity(std::uint64_t n) const {
    if (n == 0 || (q_ - 1) % n != 0) throw std::domain_error("root_of_unity: order does not divide q-1");
    return pow(primitive_, (q_ - 1) / n);
}

std::uint64_t FiniteField::log(Elt a) const {
    if (a == 0) throw std::domain_error("FiniteField::log: zero");
    if (!log_.empty()) return log_[a];
    // baby-step giant-step
    std::uint64_t n = q_ - 1;
    auto m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    std::unordered_map<Elt, std::uint64_t> table;
    Elt x = 1;
    for (std::uint64_t j = 0; j < m; ++j) {
        table.emplace(x, j);
        x = mul(x, primitive_);
    }
    Elt factor = inv(pow(primitive_, m));
    Elt y = a;
    for (std::uint64_t i = 0; i <= m; ++i) {
        if (auto it = table.find(y); it != table.end()) return (i * m + it->second) % n;
        y = mul(y, factor);
    }
    throw std::logic_error("FiniteField::log: not found");
}

std::string FiniteField::descriptor() const {
    if (k_ == 1) return "GF(" + std::to_string(p_) + ")";
    std::string s = "GF(" + std::to_string(p_) + "^" + std::to_string(k_) + ")[";
    for (std::size_t i = 0; i < modulus_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(modulus_[i]);
    }
    return s + "]";
}

}  // namespace katz1::ff
