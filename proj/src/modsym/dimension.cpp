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

#include "katz1/modsym/dimension.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "katz1/nt.hpp"

namespace katz1::modsym {

namespace {

bool near(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-9; }

// Exponent of q in the conductor of psi, for q^r || N.
unsigned conductor_exponent(std::uint64_t N, std::uint64_t q, unsigned r, const ComplexCharacter& psi) {
    std::uint64_t qr = nt::ipow(q, r), rest = N / qr;
    for (unsigned s = 0; s < r; ++s) {
        std::uint64_t qs = nt::ipow(q, s);
        bool trivial = true;
        for (std::uint64_t x = 1; x < N && trivial; ++x) {
            if (std::gcd(x, N) != 1) continue;
            if (x % qs != 1 % qs || x % rest != 1 % rest) continue;
            if (!near(psi[x], 1.0)) trivial = false;
        }
        if (trivial) return s;
    }
    return r;
}

double lambda(unsigned r, unsigned s, std::uint64_t q) {
    if (2 * s <= r) {
        if (r % 2 == 0) {
            unsigned h = r / 2;
            return static_cast<double>(nt::ipow(q, h) + (h ? nt::ipow(q, h - 1) : 0));
        }
        return 2.0 * static_cast<double>(nt::ipow(q, (r - 1) / 2));
    }
    return 2.0 * static_cast<double>(nt::ipow(q, r - s));
}

}  // namespace

std::uint64_t gamma0_index(std::uint64_t N) {
    std::uint64_t m = N;
    for (auto [q, e] : nt::factorize(N)) m = m / q * (q + 1);
    return m;
}

std::uint64_t count_sqrt_minus_one(std::uint64_t N) {
    std::uint64_t c = 0;
    for (std::uint64_t x = 0; x < N; ++x)
        if ((x * x + 1) % N == 0) ++c;
    return c;
}

std::uint64_t count_cube_roots(std::uint64_t N) {
    std::uint64_t c = 0;
    for (std::uint64_t x = 0; x < N; ++x)
        if ((x * x + x + 1) % N == 0) ++c;
    return c;
}

std::uint64_t gamma0_cusps(std::uint64_t N) {
    std::uint64_t c = 0;
    for (std::uint64_t d = 1; d <= N; ++d)
        if (N % d == 0) c += nt::euler_phi(std::gcd(d, N / d));
    return c;
}

std::uint64_t genus_x0(std::uint64_t N) {
    // 12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 c
    auto twelve_g = 12 + static_cast<std::int64_t>(gamma0_index(N)) - 3 * static_cast<std::int64_t>(count_sqrt_minus_one(N)) -
                    4 * static_cast<std::int64_t>(count_cube_roots(N)) - 6 * static_cast<std::int64_t>(gamma0_cusps(N));
    if (twelve_g < 0 || twelve_g % 12) throw std::logic_error("genus_x0: non-integral genus");
    return static_cast<std::uint64_t>(twelve_g / 12);
}

std::vector<ComplexCharacter> complex_characters(std::uint64_t N) {
    nt::UnitGroup g(N);
    const auto& ords = g.generator_orders();
    std::vector<ComplexCharacter> out;
    std::vector<std::uint64_t> e(ords.size(), 0);
    while (true) {
        ComplexCharacter psi(N, 0.0);
        for (std::uint64_t x = 0; x < N; ++x) {
            if (!g.is_unit(x)) continue;
            const auto& d = g.dlog(x);
            double t = 0;
            for (std::size_t i = 0; i < d.size(); ++i)
                t += static_cast<double>(e[i] * static_cast<std::uint64_t>(d[i]) % ords[i]) / static_cast<double>(ords[i]);
            t *= 2.0 * std::numbers::pi;
            psi[x] = {std::cos(t), std::sin(t)};
        }
        out.push_back(std::move(psi));
        std::size_t i = 0;
        while (i < e.size() && ++e[i] == ords[i]) e[i++] = 0;
        if (i == e.size()) break;
    }
    return out;
}

std::int64_t cusp_form_dimension(std::uint64_t N, unsigned k, const ComplexCharacter& psi) {
    if (k < 2) throw std::invalid_argument("cusp_form_dimension: weight must be at least 2");
    double sign = (k % 2) ? -1.0 : 1.0;
    if (!near(psi[N - 1 == 0 ? 0 : N - 1], sign)) return 0;

    double d = static_cast<double>(k - 1) / 12.0 * static_cast<double>(gamma0_index(N));
    double prod = 1.0;
    for (auto [q, r] : nt::factorize(N)) prod *= lambda(static_cast<unsigned>(r), conductor_exponent(N, q, static_cast<unsigned>(r), psi), q);
    d -= prod / 2.0;

    double g4 = (k % 2) ? 0.0 : (k % 4 == 2 ? -0.25 : 0.25);
    double g3 = (k % 3 == 1) ? 0.0 : (k % 3 == 2 ? -1.0 / 3.0 : 1.0 / 3.0);
    std::complex<double> s4 = 0.0, s3 = 0.0;
    for (std::uint64_t x = 0; x < N; ++x) {
        if ((x * x + 1) % N == 0) s4 += psi[x];
        if ((x * x + x + 1) % N == 0) s3 += psi[x];
    }
    std::complex<double> total = d + g4 * s4 + g3 * s3;
    bool trivial = true;
    for (std::uint64_t x = 1; x < N; ++x)
        if (std::gcd(x, N) == 1 && !near(psi[x], 1.0)) trivial = false;
    if (k == 2 && trivial) total += 1.0;

    if (std::abs(total.imag()) > 1e-6 || std::abs(total.real() - std::round(total.real())) > 1e-6)
        throw std::logic_error("cusp_form_dimension: non-integral result");
    return static_cast<std::int64_t>(std::llround(total.real()));
}

std::int64_t cusp_form_dimension_sum(std::uint64_t N, unsigned k,
                                     const std::function<std::optional<std::complex<double>>(std::uint64_t)>& restriction) {
    std::int64_t sum = 0;
    for (const auto& psi : complex_characters(N)) {
        bool match = true;
        for (std::uint64_t x = 1; x < N && match; ++x) {
            if (std::gcd(x, N) != 1) continue;
            auto v = restriction(x);
            if (v && !near(*v, psi[x])) match = false;
        }
        if (match) sum += cusp_form_dimension(N, k, psi);
    }
    return sum;
}

std::uint64_t sturm_bound(unsigned k, std::uint64_t index) { return (k * index + 11) / 12; }

}  // namespace katz1::modsym
