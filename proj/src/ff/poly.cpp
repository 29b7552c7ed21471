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

#include "katz1/ff/poly.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <tuple>

namespace katz1::ff {

Poly::Poly(Field f, std::vector<Elt> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(Field f, Elt c, std::size_t deg) {
    std::vector<Elt> v(deg + 1, 0);
    v[deg] = c;
    return Poly(std::move(f), std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    Elt li = f_->inv(lead());
    return *this * li;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly(f_);
    std::vector<Elt> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = f_->mul(c_[i], f_->from_int(static_cast<std::int64_t>(i)));
    return Poly(f_, std::move(d));
}

Elt Poly::eval(Elt x) const {
    Elt r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = f_->add(f_->mul(r, x), c_[i]);
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    const Field& F = f_ ? f_ : o.f_;
    std::vector<Elt> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F->add(coeff(i), o.coeff(i));
    return Poly(F, std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    std::vector<Elt> r(c_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_->neg(c_[i]);
    return Poly(f_, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    const Field& F = f_ ? f_ : o.f_;
    if (is_zero() || o.is_zero()) return Poly(F);
    std::vector<Elt> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = F->add(r[i + j], F->mul(c_[i], o.c_[j]));
    }
    return Poly(F, std::move(r));
}

Poly Poly::operator*(Elt s) const {
    std::vector<Elt> r(c_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_->mul(c_[i], s);
    return Poly(f_, std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("Poly::divmod: division by zero polynomial");
    const Field& F = d.f_;
    if (degree() < d.degree()) return {Poly(F), *this};
    std::vector<Elt> rem = c_;
    std::vector<Elt> quo(c_.size() - d.c_.size() + 1, 0);
    Elt li = F->inv(d.lead());
    const std::size_t last = d.c_.size() - 1;
    for (std::size_t i = rem.size() - 1;; --i) {
        Elt c = F->mul(rem[i], li);
        std::size_t shift = i - last;
        quo[shift] = c;
        if (c)
            for (std::size_t j = 0; j < d.c_.size(); ++j) rem[shift + j] = F->sub(rem[shift + j], F->mul(c, d.c_[j]));
        if (i == last) break;
    }
    rem.resize(d.c_.size() - 1);
    return {Poly(F, std::move(quo)), Poly(F, std::move(rem))};
}

bool Poly::operator<(const Poly& o) const {
    if (degree() != o.degree()) return degree() < o.degree();
    for (std::size_t i = c_.size(); i-- > 0;)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (!c_[i]) continue;
        if (!s.empty()) s += " + ";
        std::string coef = f_->is_prime_field() ? std::to_string(c_[i]) : "[" + std::to_string(c_[i]) + "]";
        if (i == 0) {
            s += coef;
        } else {
            if (c_[i] != 1) s += coef + "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.field() ? a.field() : b.field());
    return (a * b / gcd(a, b)).monic();
}

std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b) {
    const Field& F = a.field() ? a.field() : b.field();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(F, 1), s1(F);
    Poly t0(F), t1 = Poly::constant(F, 1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Elt li = F->inv(r0.lead());
    return {r0 * li, s0 * li, t0 * li};
}

Poly pow_mod(Poly base, std::uint64_t e, const Poly& m) {
    const Field& F = m.field();
    Poly r = Poly::constant(F, 1) % m;
    base = base % m;
    while (e) {
        if (e & 1) r = (r * base) % m;
        base = (base * base) % m;
        e >>= 1;
    }
    return r;
}

Poly pow(const Poly& base, unsigned e) {
    Poly r = Poly::constant(base.field(), 1);
    for (unsigned i = 0; i < e; ++i) r = r * base;
    return r;
}

namespace {

// Inverse Frobenius on coefficients, for a polynomial whose only nonzero terms are at
// multiples of p: returns g with g^p = f.
Poly pth_root(const Poly& f) {
    const Field& F = f.field();
    std::uint32_t p = F->characteristic();
    std::uint64_t root_exp = F->order() / p;  // a -> a^(q/p) inverts a -> a^p
    std::vector<Elt> c;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(F->pow(f.coeff(i), root_exp));
    return Poly(F, std::move(c));
}

std::vector<std::pair<Poly, int>> squarefree(const Poly& f) {
    const Field& F = f.field();
    std::vector<std::pair<Poly, int>> out;
    Poly fm = f.monic();
    if (fm.degree() <= 0) return out;
    Poly d = fm.derivative();
    if (d.is_zero()) {
        for (auto& [g, j] : squarefree(pth_root(fm))) out.emplace_back(g, j * static_cast<int>(F->characteristic()));
        return out;
    }
    Poly c = gcd(fm, d);
    Poly w = fm / c;
    int i = 1;
    while (!w.is_one()) {
        Poly y = gcd(w, c);
        Poly fac = (w / y).monic();
        if (fac.degree() > 0) out.emplace_back(fac, i);
        w = y;
        c = c / y;
        ++i;
    }
    c = c.monic();
    if (c.degree() > 0) {
        for (auto& [g, j] : squarefree(pth_root(c))) out.emplace_back(g, j * static_cast<int>(F->characteristic()));
    }
    return out;
}

std::vector<std::pair<Poly, int>> distinct_degree(const Poly& f) {
    const Field& F = f.field();
    std::vector<std::pair<Poly, int>> out;
    Poly rest = f.monic();
    Poly h = Poly::x(F);
    int i = 1;
    while (rest.degree() >= 2 * i) {
        h = pow_mod(h, F->order(), rest);
        Poly g = gcd(rest, h - Poly::x(F));
        if (!g.is_one()) {
            out.emplace_back(g, i);
            rest = rest / g;
            h = h % rest;
        }
        ++i;
    }
    if (rest.degree() > 0) out.emplace_back(rest.monic(), rest.degree());
    return out;
}

void equal_degree(const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
    const Field& F = f.field();
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    std::uniform_int_distribution<std::uint64_t> coeff(0, F->order() - 1);
    for (;;) {
        std::vector<Elt> a(static_cast<std::size_t>(f.degree()));
        for (auto& x : a) x = static_cast<Elt>(coeff(rng));
        Poly r(F, a);
        if (r.degree() <= 0) continue;
        Poly b;
        if (F->characteristic() == 2) {
            // absolute trace map to GF(2), composed over the degree-d extension
            unsigned m = F->degree() * static_cast<unsigned>(d);
            Poly t = r % f, s = t;
            for (unsigned j = 1; j < m; ++j) {
                t = (t * t) % f;
                s = s + t;
            }
            b = s;
        } else {
            std::uint64_t qd = 1;
            for (int j = 0; j < d; ++j) qd *= F->order();
            b = pow_mod(r, (qd - 1) / 2, f) - Poly::constant(F, 1);
        }
        Poly g = gcd(f, b);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(f / g, d, rng, out);
            return;
        }
    }
}

}  // namespace

bool is_irreducible(const Poly& f) {
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    Poly m = f.monic();
    if (!gcd(m, m.derivative()).is_one()) return false;
    auto ddf = distinct_degree(m);
    return ddf.size() == 1 && ddf[0].second == m.degree();
}

std::vector<std::pair<Poly, int>> factor(const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("factor: zero polynomial");
    std::vector<std::pair<Poly, int>> out;
    // Fixed seed: the splitting is randomized but reproducible run to run.
    std::mt19937_64 rng(0x6b61747a31ULL);
    for (auto& [sf, mult] : squarefree(f)) {
        for (auto& [g, d] : distinct_degree(sf)) {
            std::vector<Poly> parts;
            equal_degree(g, d, rng, parts);
            for (auto& pp : parts) out.emplace_back(pp, mult);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    // merge equal factors (can arise from separate squarefree layers only in theory)
    std::vector<std::pair<Poly, int>> merged;
    for (auto& e : out) {
        if (!merged.empty() && merged.back().first == e.first)
            merged.back().second += e.second;
        else
            merged.push_back(e);
    }
    return merged;
}

std::vector<Elt> roots(const Poly& f) {
    std::vector<Elt> out;
    if (f.degree() <= 0) return out;
    for (auto& [g, m] : factor(f)) {
        (void)m;
        if (g.degree() == 1) out.push_back(g.field()->neg(g.coeff(0)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace katz1::ff
