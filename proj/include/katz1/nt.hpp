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

#ifndef KATZ1_NT_HPP
#define KATZ1_NT_HPP

// Elementary integer number theory shared by every module.

#include <cstdint>
#include <numeric>
#include <tuple>
#include <stdexcept>
#include <utility>
#include <vector>

namespace katz1::nt {

inline std::int64_t mod(std::int64_t a, std::int64_t n) {
    std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t n) {
    std::uint64_t r = 1 % n;
    b %= n;
    while (e) {
        if (e & 1) r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * b) % n);
        b = static_cast<std::uint64_t>((static_cast<unsigned __int128>(b) * b) % n);
        e >>= 1;
    }
    return r;
}

/// Returns (g, x, y) with a*x + b*y = g = gcd(a, b).
inline std::tuple<std::int64_t, std::int64_t, std::int64_t> xgcd(std::int64_t a, std::int64_t b) {
    std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        std::int64_t q = a / b;
        std::tie(a, b) = std::make_pair(b, a - q * b);
        std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
        std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
    }
    if (a < 0) return {-a, -x0, -y0};
    return {a, x0, y0};
}

inline std::int64_t inv_mod(std::int64_t a, std::int64_t n) {
    auto [g, x, y] = xgcd(mod(a, n), n);
    (void)y;
    if (g != 1) throw std::domain_error("inv_mod: not a unit");
    return mod(x, n);
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<int> primes_up_to(int bound) {
    std::vector<int> out;
    if (bound < 2) return out;
    std::vector<bool> sieve(static_cast<std::size_t>(bound) + 1, true);
    for (int i = 2; i <= bound; ++i) {
        if (!sieve[i]) continue;
        out.push_back(i);
        for (long long j = static_cast<long long>(i) * i; j <= bound; j += i) sieve[j] = false;
    }
    return out;
}

/// Prime factorization as (prime, exponent) pairs in increasing order.
inline std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

/// Multiplicative order of a modulo n (a must be a unit).
inline std::uint64_t mult_order(std::uint64_t a, std::uint64_t n) {
    if (std::gcd(a, n) != 1) throw std::domain_error("mult_order: not a unit");
    std::uint64_t x = a % n, k = 1;
    while (x != 1 % n) {
        x = (x * a) % n;
        ++k;
    }
    return k;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t r = n;
    for (auto [q, e] : factorize(n)) r = r / q * (q - 1);
    return r;
}

/// The unit group (Z/N)^x with a canonical generator set and a discrete-log table.
///
/// Generators follow the CRT decomposition of N in increasing prime order: for an odd
/// prime power the least primitive root, for 2^a the pair (-1, 5) when a >= 3 and -1
/// when a = 2. Each generator is lifted to be 1 modulo the other prime-power factors.
class UnitGroup {
public:
    explicit UnitGroup(std::uint64_t n) : n_(n), dlog_(n, std::vector<int>{}) {
        if (n < 1) throw std::invalid_argument("UnitGroup: modulus must be positive");
        for (auto [q, e] : factorize(n)) {
            std::uint64_t qe = ipow(q, e);
            std::uint64_t rest = n / qe;
            auto lift = [&](std::uint64_t g) {
                // x = g mod qe, x = 1 mod rest
                if (rest == 1) return g % n;
                std::int64_t t = mod(static_cast<std::int64_t>(g) - 1, static_cast<std::int64_t>(qe));
                t = mod(t * inv_mod(static_cast<std::int64_t>(rest % qe), static_cast<std::int64_t>(qe)),
                        static_cast<std::int64_t>(qe));
                return static_cast<std::uint64_t>((1 + static_cast<std::uint64_t>(t) * rest) % n);
            };
            if (q == 2) {
                if (e == 2) {
                    gens_.push_back(lift(3));
                    orders_.push_back(2);
                } else if (e >= 3) {
                    gens_.push_back(lift(qe - 1));
                    orders_.push_back(2);
                    gens_.push_back(lift(5));
                    orders_.push_back(qe / 4);
                }
            } else {
                std::uint64_t phi = qe / q * (q - 1);
                for (std::uint64_t g = 2; g < qe; ++g) {
                    if (g % q == 0) continue;
                    if (mult_order(g, qe) == phi) {
                        gens_.push_back(lift(g));
                        orders_.push_back(phi);
                        break;
                    }
                }
            }
        }
        // Enumerate the group as products of generator powers.
        std::vector<int> exps(gens_.size(), 0);
        std::uint64_t total = 1;
        for (auto o : orders_) total *= o;
        order_ = total;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::uint64_t x = 1 % n_;
            for (std::size_t i = 0; i < gens_.size(); ++i) x = x * pow_mod(gens_[i], exps[i], n_) % n_;
            dlog_[x] = exps;
            for (std::size_t i = 0; i < gens_.size(); ++i) {
                if (++exps[i] < static_cast<int>(orders_[i])) break;
                exps[i] = 0;
            }
        }
        if (n_ == 1) dlog_[0] = {};
    }

    std::uint64_t modulus() const { return n_; }
    std::uint64_t order() const { return order_; }
    const std::vector<std::uint64_t>& generators() const { return gens_; }
    const std::vector<std::uint64_t>& generator_orders() const { return orders_; }
    bool is_unit(std::uint64_t a) const { return std::gcd(a % n_, n_) == 1 || n_ == 1; }

    /// Exponent vector of a unit with respect to generators().
    const std::vector<int>& dlog(std::uint64_t a) const {
        a %= n_;
        if (!is_unit(a)) throw std::domain_error("UnitGroup::dlog: not a unit");
        return dlog_[a];
    }

    /// Exponent of the group (lcm of generator orders).
    std::uint64_t exponent() const {
        std::uint64_t e = 1;
        for (auto o : orders_) e = std::lcm(e, o);
        return e;
    }

private:
    std::uint64_t n_;
    std::uint64_t order_ = 1;
    std::vector<std::uint64_t> gens_;
    std::vector<std::uint64_t> orders_;
    std::vector<std::vector<int>> dlog_;
};

}  // namespace katz1::nt

#endif  // KATZ1_NT_HPP
