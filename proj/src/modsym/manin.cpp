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

#include "katz1/modsym/manin.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "katz1/modsym/dimension.hpp"
#include "katz1/nt.hpp"

namespace katz1::modsym {

namespace {

using Mat2 = std::array<std::int64_t, 4>;

bool near(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-9; }

Elt sign_elt(const Field& f, unsigned k) { return (k % 2) ? f->neg(1) : Elt{1}; }

// Restriction of an operator (acting on columns) to the row span of an echelon basis.
Matrix restrict_to(const Matrix& x, const ff::Echelon& b) {
    const Field& f = x.field();
    std::size_t r = b.pivots.size();
    if (r == 0) return Matrix(f, 0, 0);
    Matrix images = b.rref * x.transpose();  // row i = (x b_i)^T
    Matrix c(f, r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) c(i, j) = images(i, b.pivots[j]);
    if (c * b.rref != images) throw InvariantError("operator does not preserve the subspace");
    return c.transpose();
}

// Coefficients mod p of (aX + bY)^i (cX + dY)^(k-2-i): out[i][j] is the coefficient of
// X^j Y^(k-2-j) in the image of X^i Y^(k-2-i).
std::vector<std::vector<std::uint64_t>> poly_action(const Mat2& m, unsigned k, std::uint64_t p) {
    unsigned w = k - 2;
    auto md = [p](std::int64_t v) { return static_cast<std::uint64_t>(nt::mod(v, static_cast<std::int64_t>(p))); };
    // powers of linear forms as coefficient vectors indexed by the X-degree
    auto powers = [&](std::int64_t x, std::int64_t y) {
        std::vector<std::vector<std::uint64_t>> pw{{1}};
        for (unsigned e = 1; e <= w; ++e) {
            const auto& prev = pw.back();
            std::vector<std::uint64_t> next(e + 1, 0);
            for (unsigned j = 0; j < prev.size(); ++j) {
                next[j + 1] = (next[j + 1] + prev[j] * md(x)) % p;
                next[j] = (next[j] + prev[j] * md(y)) % p;
            }
            pw.push_back(std::move(next));
        }
        return pw;
    };
    auto px = powers(m[0], m[1]), py = powers(m[2], m[3]);
    std::vector<std::vector<std::uint64_t>> out(w + 1, std::vector<std::uint64_t>(w + 1, 0));
    for (unsigned i = 0; i <= w; ++i) {
        const auto& u = px[i];
        const auto& v = py[w - i];
        for (unsigned s = 0; s < u.size(); ++s)
            for (unsigned t = 0; t < v.size(); ++t) out[i][s + t] = (out[i][s + t] + u[s] * v[t]) % p;
    }
    return out;
}

// Lift of a primitive pair mod N to (a, b, c, d) in SL_2(Z) with (c, d) = (c0, d0) mod N.
Mat2 lift_to_sl2(std::int64_t c0, std::int64_t d0, std::int64_t N) {
    std::int64_t c = c0 == 0 ? N : c0;
    std::int64_t d = d0;
    while (std::gcd(c, d) != 1) d += N;
    auto [g, x, y] = nt::xgcd(d, c);
    (void)g;
    return {x, -y, c, d};  // x d - (-y) c = 1
}

}  // namespace

std::vector<std::array<std::int64_t, 4>> heilbronn_merel(std::uint64_t n) {
    std::vector<Mat2> out;
    auto N = static_cast<std::int64_t>(n);
    for (std::int64_t a = 1; a <= N; ++a) {
        std::int64_t q = N / a;
        if (a * q == N) {
            for (std::int64_t b = 0; b < a; ++b) out.push_back({a, b, 0, q});
            for (std::int64_t c = 1; c < q; ++c) out.push_back({a, 0, c, q});
        }
        for (std::int64_t d = q + 1; d <= N; ++d) {
            std::int64_t bc = a * d - N;
            for (std::int64_t c = bc / a + 1; c < d; ++c)
                if (bc % c == 0) out.push_back({a, bc / c, c, d});
        }
    }
    return out;
}

std::uint64_t ScalingGroup::index() const {
    return gamma0_index(modulus) * nt::euler_phi(modulus) / elements.size();
}

ScalingGroup gamma0_scaling(const DirichletCharacter& chi, unsigned k) {
    (void)k;
    std::uint64_t N = chi.modulus();
    ScalingGroup s{N, {}, std::vector<Elt>(N, 0), std::vector<std::complex<double>>(N, 0.0), "gamma0"};
    for (std::uint64_t a = 1; a < N; ++a) {
        if (std::gcd(a, N) != 1) continue;
        s.elements.push_back(a);
        s.value[a] = chi(static_cast<std::int64_t>(a));
        s.lift[a] = chi.teichmuller(static_cast<std::int64_t>(a));
    }
    return s;
}

ScalingGroup gamma1_scaling(std::uint64_t N, const Field& f, unsigned k) {
    ScalingGroup s{N, {1, N - 1}, std::vector<Elt>(N, 0), std::vector<std::complex<double>>(N, 0.0), "gamma1"};
    s.value[1] = 1;
    s.lift[1] = 1.0;
    s.value[N - 1] = sign_elt(f, k);
    s.lift[N - 1] = (k % 2) ? -1.0 : 1.0;
    return s;
}

ScalingGroup prime_to_p_scaling(const DirichletCharacter& chi, unsigned k) {
    std::uint64_t N = chi.modulus();
    std::uint64_t p = chi.field()->characteristic();
    const Field& f = chi.field();
    ScalingGroup s{N, {}, std::vector<Elt>(N, 0), std::vector<std::complex<double>>(N, 0.0), "prime_to_p"};
    double sg = (k % 2) ? -1.0 : 1.0;
    for (std::uint64_t g = 1; g < N; ++g) {
        if (std::gcd(g, N) != 1 || nt::mult_order(g, N) % p == 0) continue;
        auto gi = static_cast<std::int64_t>(g);
        s.value[g] = chi(gi);
        s.lift[g] = chi.teichmuller(gi);
        std::uint64_t m = N - g;
        if (nt::mult_order(m, N) % p != 0) continue;  // -g is itself prime-to-p (p odd)
        s.value[m] = f->mul(sign_elt(f, k), chi(gi));
        s.lift[m] = sg * chi.teichmuller(gi);
    }
    for (std::uint64_t a = 1; a < N; ++a)
        if (s.value[a] != 0) s.elements.push_back(a);
    return s;
}

std::uint64_t HeckeModule::sturm_bound() const { return modsym::sturm_bound(weight(), index()); }

struct ManinSymbolSpace::Impl {
    std::uint64_t N = 0;
    unsigned k = 2;
    Field f;
    ScalingGroup s;
    std::uint64_t p = 2;

    // pair table over (c, d) mod N
    std::vector<std::int32_t> cls;
    std::vector<Elt> scal;
    std::vector<std::uint32_t> lam;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> reps;
    std::size_t ngens = 0, killed = 0;

    ff::Echelon relations;
    std::vector<std::size_t> free;
    Matrix expr;  // ngens x dimV
    Matrix boundary;
    ff::Echelon cuspidal;

    mutable std::mutex mu;
    mutable std::map<std::uint64_t, Matrix> hecke_cache;
    mutable std::map<std::int64_t, Matrix> diamond_cache;

    std::size_t w() const { return k - 1; }
    std::size_t dim_v() const { return free.size(); }
    std::size_t pair_index(std::int64_t c, std::int64_t d) const {
        auto n = static_cast<std::int64_t>(N);
        return static_cast<std::size_t>(nt::mod(c, n) * n + nt::mod(d, n));
    }
    Elt fe(std::uint64_t v) const { return f->from_int(static_cast<std::int64_t>(v)); }

    void build_table();
    void build_relations();
    void build_boundary();
    Matrix hecke_direct(std::uint64_t n) const;
};

void ManinSymbolSpace::Impl::build_table() {
    cls.assign(N * N, -1);
    scal.assign(N * N, 0);
    lam.assign(N * N, 0);
    for (std::uint64_t c = 0; c < N; ++c) {
        for (std::uint64_t d = 0; d < N; ++d) {
            if (std::gcd(std::gcd(c, d), N) != 1) continue;
            std::size_t idx = c * N + d;
            if (cls[idx] >= 0) continue;
            auto id = static_cast<std::int32_t>(reps.size());
            reps.emplace_back(c, d);
            for (std::uint64_t l : s.elements) {
                std::size_t j = (l * c % N) * N + l * d % N;
                cls[j] = id;
                scal[j] = s.value[l];
                lam[j] = static_cast<std::uint32_t>(l);
            }
        }
    }
    ngens = reps.size() * w();
}

void ManinSymbolSpace::Impl::build_relations() {
    const Mat2 sigma{0, -1, 1, 0}, tau{0, -1, 1, -1}, tau2{-1, 1, -1, 0};
    auto ps = poly_action(sigma, k, p), pt = poly_action(tau, k, p), pt2 = poly_action(tau2, k, p);
    std::vector<Vec> rows;
    auto apply = [&](Vec& row, std::size_t c_idx, unsigned i, const Mat2& m, const std::vector<std::vector<std::uint64_t>>& pm,
                     std::size_t* target, std::uint32_t* lambda) {
        auto [c, d] = reps[c_idx];
        auto ci = static_cast<std::int64_t>(c), di = static_cast<std::int64_t>(d);
        std::size_t j = pair_index(ci * m[0] + di * m[2], ci * m[1] + di * m[3]);
        auto t = static_cast<std::size_t>(cls[j]);
        *target = t;
        *lambda = lam[j];
        for (unsigned jj = 0; jj < w(); ++jj) {
            if (pm[i][jj] == 0) continue;
            std::size_t g = t * w() + jj;
            row[g] = f->add(row[g], f->mul(scal[j], fe(pm[i][jj])));
        }
    };
    std::vector<bool> kill(ngens, false);
    for (std::size_t c = 0; c < reps.size(); ++c) {
        for (unsigned i = 0; i < w(); ++i) {
            std::size_t g = c * w() + i;
            Vec r2(ngens, 0);
            r2[g] = 1;
            std::size_t t1, t2;
            std::uint32_t l1, l2;
            apply(r2, c, i, sigma, ps, &t1, &l1);
            rows.push_back(std::move(r2));
            if (k == 2 && t1 == c && p == 2) {
                // x + s x with s = lift(l1): 2-torsion over Z unless s = -1
                if (near(s.lift[l1], 1.0)) kill[g] = true;
            }
            Vec r3(ngens, 0);
            r3[g] = 1;
            apply(r3, c, i, tau, pt, &t1, &l1);
            apply(r3, c, i, tau2, pt2, &t2, &l2);
            rows.push_back(std::move(r3));
            if (k == 2 && t1 == c && t2 == c && p == 3) {
                if (near(s.lift[l1], 1.0) && near(s.lift[l2], 1.0)) kill[g] = true;
            }
        }
    }
    for (std::size_t g = 0; g < ngens; ++g) {
        if (!kill[g]) continue;
        Vec r(ngens, 0);
        r[g] = 1;
        rows.push_back(std::move(r));
        ++killed;
    }
    relations = ff::rref(Matrix::from_rows(f, ngens, rows));

    std::vector<bool> is_pivot(ngens, false);
    for (auto pv : relations.pivots) is_pivot[pv] = true;
    for (std::size_t g = 0; g < ngens; ++g)
        if (!is_pivot[g]) free.push_back(g);
    std::vector<std::size_t> free_pos(ngens, 0);
    for (std::size_t t = 0; t < free.size(); ++t) free_pos[free[t]] = t;

    expr = Matrix(f, ngens, free.size());
    for (std::size_t t = 0; t < free.size(); ++t) expr(free[t], t) = 1;
    for (std::size_t r = 0; r < relations.pivots.size(); ++r) {
        std::size_t pv = relations.pivots[r];
        auto row = relations.rref.row(r);
        for (std::size_t g = 0; g < ngens; ++g)
            if (row[g] != 0 && !is_pivot[g]) expr(pv, free_pos[g]) = f->neg(row[g]);
    }
}

void ManinSymbolSpace::Impl::build_boundary() {
    auto n = static_cast<std::int64_t>(N);
    struct CuspClass {
        std::size_t orbit;
        Elt scalar;
    };
    std::unordered_map<std::uint64_t, CuspClass> classes;
    std::vector<bool> orbit_dead;
    auto key_of = [&](std::int64_t x, std::int64_t y) {
        std::int64_t ym = nt::mod(y, n);
        std::int64_t g = std::gcd(ym, n);
        return static_cast<std::uint64_t>(ym * n + nt::mod(x, g));
    };
    auto cusp = [&](std::int64_t x, std::int64_t y) -> CuspClass {
        std::uint64_t key = key_of(x, y);
        auto it = classes.find(key);
        if (it != classes.end()) return it->second;
        std::size_t id = orbit_dead.size();
        orbit_dead.push_back(false);
        for (std::uint64_t l : s.elements) {
            auto li = static_cast<std::int64_t>(l);
            std::uint64_t k2 = key_of(x * nt::inv_mod(li, n), y * li);
            auto [pos, inserted] = classes.emplace(k2, CuspClass{id, s.value[l]});
            if (!inserted && pos->second.scalar != s.value[l]) orbit_dead[id] = true;
        }
        return classes.at(key);
    };

    // boundary of every generator, then check it kills the relations
    std::vector<std::vector<std::pair<std::size_t, Elt>>> delta(ngens);
    for (std::size_t c = 0; c < reps.size(); ++c) {
        auto [c0, d0] = reps[c];
        Mat2 g = lift_to_sl2(static_cast<std::int64_t>(c0), static_cast<std::int64_t>(d0), n);
        for (unsigned i = 0; i < w(); ++i) {
            auto& out = delta[c * w() + i];
            if (i == k - 2) {
                auto cc = cusp(g[0], g[2]);
                out.emplace_back(cc.orbit, cc.scalar);
            }
            if (i == 0) {
                auto cc = cusp(g[1], g[3]);
                out.emplace_back(cc.orbit, f->neg(cc.scalar));
            }
        }
    }
    std::vector<std::size_t> live;
    std::vector<std::size_t> live_pos(orbit_dead.size(), 0);
    for (std::size_t o = 0; o < orbit_dead.size(); ++o)
        if (!orbit_dead[o]) {
            live_pos[o] = live.size();
            live.push_back(o);
        }
    Matrix full(f, live.size(), ngens);
    for (std::size_t g = 0; g < ngens; ++g)
        for (auto [o, v] : delta[g])
            if (!orbit_dead[o]) full(live_pos[o], g) = f->add(full(live_pos[o], g), v);
    if (!(full * relations.rref.transpose()).is_zero())
        throw InvariantError("boundary map does not vanish on the Manin relations");
    boundary = Matrix(f, live.size(), free.size());
    for (std::size_t r = 0; r < live.size(); ++r)
        for (std::size_t t = 0; t < free.size(); ++t) boundary(r, t) = full(r, free[t]);
    cuspidal = ff::rref(ff::kernel(boundary));
}

Matrix ManinSymbolSpace::Impl::hecke_direct(std::uint64_t n) const {
    auto nn = static_cast<std::int64_t>(N);
    auto hs = heilbronn_merel(n);
    std::vector<std::vector<std::vector<std::uint64_t>>> pms;
    if (k > 2)
        for (const auto& m : hs) pms.push_back(poly_action(m, k, p));
    Matrix acc(f, dim_v(), ngens);
    for (std::size_t t = 0; t < free.size(); ++t) {
        std::size_t g = free[t];
        std::size_t c = g / w();
        unsigned i = static_cast<unsigned>(g % w());
        auto ci = static_cast<std::int64_t>(reps[c].first), di = static_cast<std::int64_t>(reps[c].second);
        auto row = acc.row(t);
        for (std::size_t h = 0; h < hs.size(); ++h) {
            const auto& m = hs[h];
            std::int64_t u = nt::mod(ci * m[0] + di * m[2], nn), v = nt::mod(ci * m[1] + di * m[3], nn);
            std::size_t j = static_cast<std::size_t>(u * nn + v);
            if (cls[j] < 0) continue;
            std::size_t base = static_cast<std::size_t>(cls[j]) * w();
            if (k == 2) {
                row[base] = f->add(row[base], scal[j]);
                continue;
            }
            for (unsigned jj = 0; jj < w(); ++jj) {
                std::uint64_t cf = pms[h][i][jj];
                if (cf) row[base + jj] = f->add(row[base + jj], f->mul(scal[j], fe(cf)));
            }
        }
    }
    return (acc * expr).transpose();
}

ManinSymbolSpace ManinSymbolSpace::build(std::uint64_t N, unsigned k, Field f, ScalingGroup s) {
    std::uint64_t p = f->characteristic();
    if (N < 5) throw BadLevel("level must be at least 5, got " + std::to_string(N));
    if (N % p == 0) throw BadLevel("level " + std::to_string(N) + " is divisible by p = " + std::to_string(p));
    if (k < 2) throw ConfigError("weight must be at least 2");
    if ((p == 2 && k != 2) || (p == 3 && k > 3))
        throw ConfigError("weight " + std::to_string(k) + " is not supported in characteristic " + std::to_string(p));
    if (s.modulus != N) throw ConfigError("scaling group modulus differs from the level");
    if (s.value[N - 1] != sign_elt(f, k) || !near(s.lift[N - 1], (k % 2) ? -1.0 : 1.0))
        throw CharacterParity("character value at -1 does not match (-1)^k");

    auto impl = std::make_shared<Impl>();
    impl->N = N;
    impl->k = k;
    impl->f = std::move(f);
    impl->s = std::move(s);
    impl->p = p;
    impl->build_table();
    impl->build_relations();
    impl->build_boundary();
    return ManinSymbolSpace(std::move(impl));
}

std::uint64_t ManinSymbolSpace::level() const { return impl_->N; }
unsigned ManinSymbolSpace::weight() const { return impl_->k; }
const Field& ManinSymbolSpace::field() const { return impl_->f; }
std::size_t ManinSymbolSpace::dim() const { return impl_->cuspidal.pivots.size(); }
std::uint64_t ManinSymbolSpace::index() const { return impl_->s.index(); }
const ScalingGroup& ManinSymbolSpace::scaling() const { return impl_->s; }
std::size_t ManinSymbolSpace::num_generators() const { return impl_->ngens; }
std::size_t ManinSymbolSpace::num_classes() const { return impl_->reps.size(); }
std::pair<std::uint64_t, std::uint64_t> ManinSymbolSpace::class_rep(std::size_t c) const { return impl_->reps.at(c); }
std::size_t ManinSymbolSpace::num_killed() const { return impl_->killed; }
const Matrix& ManinSymbolSpace::relation_matrix() const { return impl_->relations.rref; }
std::size_t ManinSymbolSpace::quotient_dim() const { return impl_->free.size(); }
const std::vector<std::size_t>& ManinSymbolSpace::free_generators() const { return impl_->free; }
const Matrix& ManinSymbolSpace::generator_expressions() const { return impl_->expr; }
const Matrix& ManinSymbolSpace::boundary_matrix() const { return impl_->boundary; }
const ff::Echelon& ManinSymbolSpace::cuspidal_basis() const { return impl_->cuspidal; }

std::string ManinSymbolSpace::describe() const {
    return "modsym(N=" + std::to_string(impl_->N) + ",k=" + std::to_string(impl_->k) + "," + impl_->f->descriptor() + "," +
           impl_->s.label + ")";
}

Matrix ManinSymbolSpace::to_cuspidal(const Matrix& quotient_op) const { return restrict_to(quotient_op, impl_->cuspidal); }

Matrix ManinSymbolSpace::hecke_on_quotient(std::uint64_t n) const {
    if (n == 0) throw std::invalid_argument("hecke: n must be positive");
    return impl_->hecke_direct(n);
}

Matrix ManinSymbolSpace::diamond_on_quotient(std::int64_t a) const {
    const Impl& m = *impl_;
    auto n = static_cast<std::int64_t>(m.N);
    if (std::gcd(nt::mod(a, n), n) != 1) throw BadUnit("diamond: " + std::to_string(a) + " is not a unit mod " + std::to_string(m.N));
    Matrix cols(m.f, m.dim_v(), m.dim_v());
    for (std::size_t t = 0; t < m.free.size(); ++t) {
        std::size_t g = m.free[t], c = g / m.w(), i = g % m.w();
        std::size_t j = m.pair_index(a * static_cast<std::int64_t>(m.reps[c].first), a * static_cast<std::int64_t>(m.reps[c].second));
        auto src = m.expr.row(static_cast<std::size_t>(m.cls[j]) * m.w() + i);
        for (std::size_t u = 0; u < m.dim_v(); ++u) cols(t, u) = m.f->mul(m.scal[j], src[u]);
    }
    return cols.transpose();
}

Matrix ManinSymbolSpace::star_on_quotient() const {
    const Impl& m = *impl_;
    Matrix cols(m.f, m.dim_v(), m.dim_v());
    for (std::size_t t = 0; t < m.free.size(); ++t) {
        std::size_t g = m.free[t], c = g / m.w(), i = g % m.w();
        std::size_t j = m.pair_index(-static_cast<std::int64_t>(m.reps[c].first), static_cast<std::int64_t>(m.reps[c].second));
        Elt sc = (i % 2) ? m.f->neg(m.scal[j]) : m.scal[j];
        auto src = m.expr.row(static_cast<std::size_t>(m.cls[j]) * m.w() + i);
        for (std::size_t u = 0; u < m.dim_v(); ++u) cols(t, u) = m.f->mul(sc, src[u]);
    }
    return cols.transpose();
}

Matrix ManinSymbolSpace::star() const { return to_cuspidal(star_on_quotient()); }

Matrix ManinSymbolSpace::hecke(std::uint64_t n) const {
    {
        std::lock_guard lk(impl_->mu);
        auto it = impl_->hecke_cache.find(n);
        if (it != impl_->hecke_cache.end()) return it->second;
    }
    Matrix r;
    auto fac = nt::factorize(n);
    if (n == 1) {
        r = Matrix::identity(impl_->f, dim());
    } else if (fac.size() > 1) {
        std::uint64_t q = nt::ipow(fac[0].first, static_cast<unsigned>(fac[0].second));
        r = hecke(q) * hecke(n / q);
    } else if (fac[0].second == 1) {
        r = to_cuspidal(impl_->hecke_direct(n));
    } else {
        std::uint64_t l = fac[0].first;
        if (impl_->N % l == 0) {
            r = hecke(l) * hecke(n / l);
        } else {
            Elt lk1 = impl_->f->from_int(static_cast<std::int64_t>(nt::pow_mod(l, impl_->k - 1, impl_->p)));
            r = hecke(l) * hecke(n / l) - diamond(static_cast<std::int64_t>(l)) * hecke(n / (l * l)) * lk1;
        }
    }
    std::lock_guard lk(impl_->mu);
    return impl_->hecke_cache.emplace(n, std::move(r)).first->second;
}

Matrix ManinSymbolSpace::diamond(std::int64_t a) const {
    auto n = static_cast<std::int64_t>(impl_->N);
    std::int64_t am = nt::mod(a, n);
    {
        std::lock_guard lk(impl_->mu);
        auto it = impl_->diamond_cache.find(am);
        if (it != impl_->diamond_cache.end()) return it->second;
    }
    Matrix r = to_cuspidal(diamond_on_quotient(am));
    std::lock_guard lk(impl_->mu);
    return impl_->diamond_cache.emplace(am, std::move(r)).first->second;
}

ManinSymbolSpace build_space(std::uint64_t N, unsigned k, const DirichletCharacter& chi) {
    if (chi.modulus() != N) throw ConfigError("character modulus differs from the level");
    return ManinSymbolSpace::build(N, k, chi.field(), gamma0_scaling(chi, k));
}

ManinSymbolSpace build_gamma1(std::uint64_t N, unsigned k, const Field& f) {
    if (N < 5) throw BadLevel("level must be at least 5, got " + std::to_string(N));
    return ManinSymbolSpace::build(N, k, f, gamma1_scaling(N, f, k));
}

ScalingGroup kernel_scaling(const DirichletCharacter& chi, unsigned k) {
    const std::uint64_t N = chi.modulus();
    const std::uint32_t p = chi.field()->characteristic();
    if (chi.order() % p == 0) throw CharacterOrderDivisibleByP("character order " + std::to_string(chi.order()) + " is divisible by p");
    const bool odd = chi.teichmuller(static_cast<std::int64_t>(N - 1)).real() < 0;
    if (odd != (k % 2 == 1)) throw CharacterParity("chi(-1) differs from (-1)^k");
    Field fp = ff::FiniteField::make(p);
    ScalingGroup s{N, {}, std::vector<Elt>(N, 0), std::vector<std::complex<double>>(N, 0.0), "kernel"};
    const Elt minus_one = chi(static_cast<std::int64_t>(N - 1));
    for (std::uint64_t a = 1; a < N; ++a) {
        if (std::gcd(a, N) != 1) continue;
        Elt v = chi(static_cast<std::int64_t>(a));
        if (v == 1) {
            s.value[a] = 1;
            s.lift[a] = 1.0;
        } else if (v == minus_one && odd) {
            s.value[a] = fp->neg(1);
            s.lift[a] = -1.0;
        } else {
            continue;
        }
        s.elements.push_back(a);
    }
    return s;
}

ManinSymbolSpace build_prime_to_p(std::uint64_t N, unsigned k, const DirichletCharacter& chi) {
    if (chi.modulus() != N) throw ConfigError("character modulus differs from the level");
    if (N < 5) throw BadLevel("level must be at least 5, got " + std::to_string(N));
    if (N % chi.field()->characteristic() == 0) throw BadLevel("level is divisible by p");
    return ManinSymbolSpace::build(N, k, chi.field(), prime_to_p_scaling(chi, k));
}

CharacterComponent::CharacterComponent(std::shared_ptr<const HeckeModule> parent, const DirichletCharacter& chi)
    : parent_(std::move(parent)), label_(chi.label()) {
    const Field& f = parent_->field();
    std::uint64_t p = f->characteristic();
    if (chi.order() % p == 0) throw CharacterOrderDivisibleByP("character order " + std::to_string(chi.order()) + " is divisible by p");
    if (!(*chi.field() == *f)) throw std::invalid_argument("character_component: character and space fields differ");
    if (chi.modulus() != parent_->level()) throw ConfigError("character modulus differs from the level");

    std::size_t n = parent_->dim();
    Matrix e = Matrix::identity(f, n);
    const auto& gens = chi.group().generators();
    const auto& ords = chi.group().generator_orders();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::uint64_t o = ords[i], pp = 1;
        while (o % p == 0) {
            o /= p;
            pp *= p;
        }
        if (o == 1) continue;
        auto h = static_cast<std::int64_t>(nt::pow_mod(gens[i], pp, parent_->level()));
        Matrix dh = parent_->diamond(h);
        Elt inv = f->inv(chi(h));
        Matrix sum(f, n, n), term = Matrix::identity(f, n);
        Elt c = 1;
        for (std::uint64_t j = 0; j < o; ++j) {
            sum = sum + term * c;
            term = term * dh;
            c = f->mul(c, inv);
        }
        e = e * (sum * f->inv(f->from_int(static_cast<std::int64_t>(o))));
    }
    basis_ = ff::rref(e.transpose());
}

Matrix CharacterComponent::hecke(std::uint64_t n) const { return restrict_to(parent_->hecke(n), basis_); }
Matrix CharacterComponent::diamond(std::int64_t a) const { return restrict_to(parent_->diamond(a), basis_); }
std::string CharacterComponent::describe() const { return parent_->describe() + "[chi=" + label_ + "]"; }

DiamondKernel::DiamondKernel(std::shared_ptr<const HeckeModule> parent, std::uint64_t g, const ff::Poly& pi, std::string label)
    : parent_(std::move(parent)), label_(std::move(label)) {
    const Field& f = parent_->field();
    if (!(*pi.field() == *f)) throw std::invalid_argument("DiamondKernel: polynomial and space fields differ");
    Matrix dg = parent_->diamond(static_cast<std::int64_t>(g));
    const std::size_t n = parent_->dim();
    Matrix v(f, n, n);
    for (int i = pi.degree(); i >= 0; --i) v = v * dg + Matrix::identity(f, n) * pi.coeff(static_cast<std::size_t>(i));
    basis_ = ff::rref(ff::kernel(v));
}

std::uint64_t DiamondKernel::index() const { return gamma0_index(parent_->level()); }
Matrix DiamondKernel::hecke(std::uint64_t n) const { return restrict_to(parent_->hecke(n), basis_); }
Matrix DiamondKernel::diamond(std::int64_t a) const { return restrict_to(parent_->diamond(a), basis_); }
std::string DiamondKernel::describe() const { return parent_->describe() + "[orbit=" + label_ + "]"; }

std::shared_ptr<const HeckeModule> orbit_space(std::uint64_t N, unsigned k, const DirichletCharacter& chi, const std::string& label) {
    if (chi.modulus() != N) throw ConfigError("character modulus differs from the level");
    const Field& f = chi.field();
    const std::uint32_t p = f->characteristic();
    if (chi.order() == 1) return std::make_shared<ManinSymbolSpace>(build_space(N, k, DirichletCharacter::trivial(N, ff::FiniteField::make(p))));
    if (N < 5) throw BadLevel("level must be at least 5, got " + std::to_string(N));
    if (N % p == 0) throw BadLevel("level is divisible by p");
    Field fp = ff::FiniteField::make(p);
    auto parent = std::make_shared<ManinSymbolSpace>(ManinSymbolSpace::build(N, k, fp, kernel_scaling(chi, k)));
    // g with chi(g) of full order generates (Z/N)^x modulo ker(chi).
    std::uint64_t g = 0;
    for (std::uint64_t a = 2; a < N && !g; ++a) {
        if (std::gcd(a, N) != 1) continue;
        Elt v = chi(static_cast<std::int64_t>(a));
        if ((f->order() - 1) / std::gcd<std::uint64_t>(f->order() - 1, f->log(v)) == chi.order()) g = a;
    }
    // Minimal polynomial of chi(g) over GF(p): product over its Frobenius conjugates.
    const Elt z = chi(static_cast<std::int64_t>(g));
    ff::Poly pi = ff::Poly::constant(f, 1);
    Elt c = z;
    do {
        pi = pi * ff::Poly(f, {f->neg(c), 1});
        c = f->pow(c, p);
    } while (c != z);
    std::vector<Elt> down;
    for (Elt a : pi.coeffs()) {
        if (a >= p) throw InvariantError("orbit_space: minimal polynomial is not defined over GF(p)");
        down.push_back(a);
    }
    return std::make_shared<DiamondKernel>(parent, g, ff::Poly(fp, down), label);
}

std::shared_ptr<CharacterComponent> character_component(std::shared_ptr<const HeckeModule> parent, const DirichletCharacter& chi) {
    return std::make_shared<CharacterComponent>(std::move(parent), chi);
}

}  // namespace katz1::modsym
