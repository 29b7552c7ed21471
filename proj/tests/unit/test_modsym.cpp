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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include "katz1/artin/algebra.hpp"
#include "katz1/ff/poly.hpp"
#include "katz1/modsym/dimension.hpp"
#include "katz1/modsym/manin.hpp"

using namespace katz1;
using namespace katz1::modsym;
using ff::FiniteField;
using ff::Poly;

namespace {

Field gf(std::uint32_t p, unsigned k = 1) { return FiniteField::make(p, k); }

Matrix scalar(const Field& f, std::size_t n, Elt c) { return Matrix::identity(f, n) * c; }

// Genus of X_0(N) from the permutation action of S and ST on P^1(Z/N) and the cycles of
// T = [[1,1],[0,1]], without any closed-form count.
std::uint64_t genus_by_permutations(std::uint64_t N) {
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> index;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pts;
    auto canon = [&](std::uint64_t c, std::uint64_t d) {
        std::pair<std::uint64_t, std::uint64_t> best{N, N};
        for (std::uint64_t l = 1; l < N; ++l)
            if (std::gcd(l, N) == 1) best = std::min(best, {l * c % N, l * d % N});
        return best;
    };
    for (std::uint64_t c = 0; c < N; ++c)
        for (std::uint64_t d = 0; d < N; ++d) {
            if (std::gcd(std::gcd(c, d), N) != 1) continue;
            auto k = canon(c, d);
            if (!index.count(k)) {
                index[k] = pts.size();
                pts.push_back(k);
            }
        }
    auto act = [&](std::size_t i, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
        auto n = static_cast<std::int64_t>(N);
        auto [u, v] = pts[i];
        auto ui = static_cast<std::int64_t>(u), vi = static_cast<std::int64_t>(v);
        return index.at(canon(static_cast<std::uint64_t>(nt::mod(ui * a + vi * c, n)),
                              static_cast<std::uint64_t>(nt::mod(ui * b + vi * d, n))));
    };
    std::uint64_t mu = pts.size(), nu2 = 0, nu3 = 0, cusps = 0;
    std::vector<bool> seen(mu, false);
    for (std::size_t i = 0; i < mu; ++i) {
        if (act(i, 0, -1, 1, 0) == i) ++nu2;
        if (act(i, 0, -1, 1, -1) == i) ++nu3;
        if (seen[i]) continue;
        ++cusps;
        for (std::size_t j = i; !seen[j]; j = act(j, 1, 1, 0, 1)) seen[j] = true;
    }
    auto twelve_g = 12 + static_cast<std::int64_t>(mu) - 3 * static_cast<std::int64_t>(nu2) - 4 * static_cast<std::int64_t>(nu3) -
                    6 * static_cast<std::int64_t>(cusps);
    return static_cast<std::uint64_t>(twelve_g / 12);
}

// a_l of y^2 + y = x^3 - x^2 - 10x - 20 (conductor 11) by point counting.
std::int64_t a_11a(std::int64_t l) {
    std::int64_t count = 1;
    for (std::int64_t x = 0; x < l; ++x)
        for (std::int64_t y = 0; y < l; ++y)
            if (nt::mod(y * y + y - (x * x * x - x * x - 10 * x - 20), l) == 0) ++count;
    return l + 1 - count;
}

// Irreducible factor of a minimal polynomial that is a prime power.
Poly radical(const Poly& m) {
    auto fs = ff::factor(m);
    EXPECT_EQ(fs.size(), 1u);
    return fs[0].first;
}

// For each local factor of the algebra generated by T_l (l in primes), the irreducible
// polynomials of the T_l on the residue field: the Hecke eigensystem up to conjugacy.
std::set<std::vector<std::string>> eigensystems(const HeckeModule& m, const std::vector<std::uint64_t>& primes) {
    std::vector<artin::LabeledMatrix> gens;
    for (auto l : primes) gens.push_back({"T" + std::to_string(l), m.hecke(l)});
    auto a = artin::MatrixAlgebra::close(m.field(), m.dim(), gens);
    std::set<std::vector<std::string>> out;
    for (const auto& lf : artin::decompose_local(a)) {
        std::vector<std::string> sys;
        for (auto l : primes) sys.push_back(radical(ff::min_poly(lf.project(m.hecke(l)))).to_string());
        out.insert(sys);
    }
    return out;
}

std::vector<std::uint64_t> primes_except(int bound, std::uint64_t N) {
    std::vector<std::uint64_t> out;
    for (int l : nt::primes_up_to(bound))
        if (N % static_cast<std::uint64_t>(l)) out.push_back(static_cast<std::uint64_t>(l));
    return out;
}

}  // namespace

TEST(Heilbronn, MerelCountIsSigmaPlusLowerTerms) {
    // |X_n| = sum over ad = n, a > b >= 0, d > c >= 0 with ad - bc = n; brute force
    for (std::int64_t n = 1; n <= 30; ++n) {
        std::size_t brute = 0;
        for (std::int64_t a = 1; a <= n; ++a)
            for (std::int64_t d = 1; d <= n; ++d)
                for (std::int64_t b = 0; b < a; ++b)
                    for (std::int64_t c = 0; c < d; ++c)
                        if (a * d - b * c == n) ++brute;
        auto hs = heilbronn_merel(static_cast<std::uint64_t>(n));
        EXPECT_EQ(hs.size(), brute) << n;
        std::set<std::array<std::int64_t, 4>> uniq(hs.begin(), hs.end());
        EXPECT_EQ(uniq.size(), hs.size());
        for (const auto& m : hs) EXPECT_EQ(m[0] * m[3] - m[1] * m[2], n);
    }
}

TEST(Dimension, GenusOracleAgreesWithClosedForm) {
    for (std::uint64_t N : {11u, 23u, 37u, 45u, 64u, 100u, 229u}) EXPECT_EQ(genus_x0(N), genus_by_permutations(N)) << N;
    EXPECT_EQ(genus_by_permutations(11), 1u);
    EXPECT_EQ(genus_by_permutations(229), 18u);
}

TEST(Dimension, CohenOesterleKnownValues) {
    auto triv = [](std::uint64_t N) { return complex_characters(N)[0]; };
    EXPECT_EQ(cusp_form_dimension(11, 2, triv(11)), 1);
    EXPECT_EQ(cusp_form_dimension(229, 2, triv(229)), 18);
    EXPECT_EQ(cusp_form_dimension(5, 4, triv(5)), 1);
    EXPECT_EQ(cusp_form_dimension(1, 12, ComplexCharacter{1.0}), 1);
    // weight-2 trivial character equals the genus
    for (std::uint64_t N : {13u, 37u, 60u, 121u}) EXPECT_EQ(cusp_form_dimension(N, 2, triv(N)), static_cast<std::int64_t>(genus_x0(N)));
    // dim S_2(Gamma_1(13)) = genus of X_1(13) = 2
    std::int64_t total = 0;
    for (const auto& psi : complex_characters(13)) total += cusp_form_dimension(13, 2, psi);
    EXPECT_EQ(total, 2);
    EXPECT_EQ(sturm_bound(2, 230), 39u);
    EXPECT_EQ(sturm_bound(2, 460), 77u);
}

TEST(BuildSpace, Level11) {
    for (std::uint32_t p : {2u, 3u, 7u}) {
        Field f = gf(p);
        auto m = build_space(11, 2, DirichletCharacter::trivial(11, f));
        ASSERT_EQ(m.dim(), 2u) << p;
        for (std::int64_t l : {2, 3, 5, 7, 13}) {
            if (l == static_cast<std::int64_t>(p)) continue;
            EXPECT_EQ(m.hecke(static_cast<std::uint64_t>(l)), scalar(f, 2, f->from_int(a_11a(l)))) << p << " " << l;
        }
    }
    EXPECT_EQ(a_11a(2), -2);
    auto m2 = build_space(11, 2, DirichletCharacter::trivial(11, gf(2)));
    EXPECT_EQ(ff::min_poly(m2.hecke(2)), Poly::x(gf(2)));
}

TEST(BuildSpace, GenusZeroAndErrors) {
    EXPECT_EQ(build_space(5, 2, DirichletCharacter::trivial(5, gf(2))).dim(), 0u);
    EXPECT_EQ(build_space(7, 2, DirichletCharacter::trivial(7, gf(3))).dim(), 0u);
    EXPECT_THROW(build_space(4, 2, DirichletCharacter::trivial(4, gf(3))), BadLevel);
    EXPECT_THROW(build_space(22, 2, DirichletCharacter::trivial(22, gf(2))), BadLevel);
    // odd weight with the trivial character over GF(7)
    EXPECT_THROW(build_space(11, 3, DirichletCharacter::trivial(11, gf(7))), CharacterParity);
}

TEST(BuildSpace, Level229Gamma0) {
    auto m = build_space(229, 2, DirichletCharacter::trivial(229, gf(2)));
    EXPECT_EQ(m.num_classes(), 230u);
    EXPECT_EQ(m.dim(), 2 * genus_by_permutations(229));
    EXPECT_EQ(m.dim(), 36u);
    EXPECT_EQ(m.sturm_bound(), 39u);
}

TEST(BuildSpace, Level229PrimeToTwoComponent) {
    Field f = gf(2);
    auto chi = DirichletCharacter::trivial(229, f);
    auto m = build_prime_to_p(229, 2, chi);
    EXPECT_EQ(m.num_classes(), 460u);
    EXPECT_EQ(m.sturm_bound(), 77u);
    const auto& s = m.scaling();
    auto expected = cusp_form_dimension_sum(229, 2, [&](std::uint64_t x) -> std::optional<std::complex<double>> {
        if (!s.contains(x)) return std::nullopt;
        return s.lift[x];
    });
    EXPECT_EQ(static_cast<std::int64_t>(m.dim()), 2 * expected);
}

TEST(BuildSpace, Weight4Level5) {
    Field f = gf(101);
    auto m = build_space(5, 4, DirichletCharacter::trivial(5, f));
    ASSERT_EQ(m.dim(), 2u);
    EXPECT_EQ(m.hecke(2), scalar(f, 2, f->from_int(-4)));
    EXPECT_EQ(m.hecke(3), scalar(f, 2, f->from_int(2)));
}

TEST(BuildSpace, Weight3Level7QuadraticCharacter) {
    Field f = gf(11);
    // the Legendre symbol mod 7: the generator 3 is a non-residue
    DirichletCharacter chi(7, f, {f->from_int(-1)});
    auto m = build_space(7, 3, chi);
    ASSERT_EQ(m.dim(), 2u);
    EXPECT_EQ(m.hecke(2), scalar(f, 2, f->from_int(-3)));
    EXPECT_EQ(m.hecke(3), scalar(f, 2, 0));
    EXPECT_EQ(m.hecke(5), scalar(f, 2, 0));
}

TEST(BuildSpace, Weight3CharacteristicThree) {
    Field f = gf(3);
    DirichletCharacter chi(7, f, {f->from_int(-1)});
    auto m = build_space(7, 3, chi);
    EXPECT_EQ(m.dim(), 2u);
    EXPECT_EQ(m.hecke(2), scalar(f, 2, f->from_int(-3)));
}

TEST(Hecke, IdentityAndMultiplicativity) {
    Field f = gf(7);
    auto m = build_gamma1(13, 2, f);
    ASSERT_EQ(m.dim(), 4u);
    EXPECT_EQ(m.to_cuspidal(m.hecke_on_quotient(1)), Matrix::identity(f, m.dim()));
    for (auto [a, b] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {3, 4}, {4, 5}, {2, 9}}) {
        Matrix direct = m.to_cuspidal(m.hecke_on_quotient(static_cast<std::uint64_t>(a * b)));
        EXPECT_EQ(direct, m.hecke(static_cast<std::uint64_t>(a)) * m.hecke(static_cast<std::uint64_t>(b))) << a << "*" << b;
    }
}

TEST(Hecke, PrimePowerRecursionAndDiamondIdentity) {
    // l^(k-1) <l> = T_l^2 - T_{l^2}, and the three-term recursion, all from direct Heilbronn sums
    struct Case {
        std::uint64_t N;
        unsigned k;
        std::uint32_t p;
    };
    for (auto c : {Case{13, 2, 7}, Case{11, 2, 2}, Case{7, 3, 13}, Case{5, 4, 11}}) {
        Field f = gf(c.p);
        auto m = build_gamma1(c.N, c.k, f);
        auto T = [&](std::uint64_t n) { return m.to_cuspidal(m.hecke_on_quotient(n)); };
        for (std::uint64_t l : {2u, 3u}) {
            if (c.N % l == 0 || l == c.p) continue;
            Elt lk = f->from_int(static_cast<std::int64_t>(nt::ipow(l, c.k - 1) % c.p));
            Matrix dl = m.diamond(static_cast<std::int64_t>(l));
            EXPECT_EQ(T(l) * T(l) - T(l * l), dl * lk) << c.N << " l=" << l;
            EXPECT_EQ(T(l * l * l), T(l) * T(l * l) - dl * T(l) * lk) << c.N << " l=" << l;
            EXPECT_EQ(m.hecke(l * l * l), T(l * l * l));
        }
    }
}

TEST(Hecke, CharacterConventionDiamondActsByChi) {
    // chi of order 6 mod 13 with values in GF(7); <l> must act as chi(l), not its inverse
    Field f = gf(7);
    DirichletCharacter chi(13, f, {3});
    ASSERT_EQ(chi.order(), 6u);
    auto m = build_space(13, 2, chi);
    ASSERT_GT(m.dim(), 0u);
    for (std::int64_t l : {2, 3, 5}) {
        auto ul = static_cast<std::uint64_t>(l);
        Matrix lhs = m.hecke(ul) * m.hecke(ul) - m.to_cuspidal(m.hecke_on_quotient(ul * ul));
        EXPECT_EQ(lhs, scalar(f, m.dim(), f->mul(f->from_int(l), chi(l)))) << l;
        EXPECT_EQ(m.diamond(l), scalar(f, m.dim(), chi(l)));
    }
}

TEST(Hecke, CommuteAndPreserveCuspidalSubspace) {
    Field f = gf(2);
    auto m = build_prime_to_p(229, 2, DirichletCharacter::trivial(229, f));
    std::vector<Matrix> ops;
    for (std::uint64_t l : {2u, 3u, 5u, 7u}) {
        Matrix q = m.hecke_on_quotient(l);
        // boundary of T_l(cuspidal) vanishes
        EXPECT_TRUE((m.boundary_matrix() * q * m.cuspidal_basis().rref.transpose()).is_zero());
        ops.push_back(m.hecke(l));
    }
    ops.push_back(m.diamond(2));
    ops.push_back(m.diamond(6));
    for (std::size_t i = 0; i < ops.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(ops[i] * ops[j], ops[j] * ops[i]);
}

TEST(Hecke, ConcurrentComputationIsDeterministic) {
    Field f = gf(2);
    auto m = build_space(229, 2, DirichletCharacter::trivial(229, f));
    auto fresh = build_space(229, 2, DirichletCharacter::trivial(229, f));
    std::vector<std::uint64_t> ns{2, 3, 5, 7, 11, 13, 4, 6, 9};
    std::vector<std::thread> pool;
    for (auto n : ns) pool.emplace_back([&m, n] { (void)m.hecke(n); });
    for (auto& t : pool) t.join();
    for (auto n : ns) EXPECT_EQ(m.hecke(n), fresh.hecke(n)) << n;
}

TEST(Diamond, Basics) {
    Field f = gf(7);
    auto m = build_gamma1(13, 2, f);
    EXPECT_EQ(m.diamond(1), Matrix::identity(f, m.dim()));
    EXPECT_THROW(m.diamond(13), BadUnit);
    EXPECT_EQ(m.diamond(2) * m.diamond(3), m.diamond(6));
    EXPECT_EQ(m.diamond(-1), Matrix::identity(f, m.dim()));
    auto g0 = build_space(229, 2, DirichletCharacter::trivial(229, gf(2)));
    for (std::int64_t a : {2, 3, 100, 228}) EXPECT_EQ(g0.diamond(a), Matrix::identity(g0.field(), g0.dim()));
}

TEST(Star, InvolutionCommutingWithHecke) {
    for (std::uint32_t p : {2u, 7u}) {
        Field f = gf(p);
        auto m = build_space(229, 2, DirichletCharacter::trivial(229, f));
        Matrix s = m.star();
        EXPECT_EQ(s * s, Matrix::identity(f, m.dim()));
        for (std::uint64_t l : {2u, 3u}) EXPECT_EQ(s * m.hecke(l), m.hecke(l) * s);
    }
}

TEST(CharacterComponent, TrivialOnGamma0IsWhole) {
    Field f = gf(2);
    auto m = std::make_shared<ManinSymbolSpace>(build_space(229, 2, DirichletCharacter::trivial(229, f)));
    auto c = character_component(m, DirichletCharacter::trivial(229, f));
    EXPECT_EQ(c->dim(), m->dim());
}

TEST(CharacterComponent, OddOrderComponentsSumToTotal) {
    for (std::uint64_t N : {13u, 19u}) {
        auto chars = prime_to_p_characters(N, 2);
        Field f = chars[0].field();
        auto m = std::make_shared<ManinSymbolSpace>(build_gamma1(N, 2, f));
        std::size_t total = 0;
        for (const auto& chi : chars) {
            auto c = character_component(m, chi);
            total += c->dim();
            for (std::int64_t a = 2; a < static_cast<std::int64_t>(N); ++a) {
                if (nt::mult_order(static_cast<std::uint64_t>(a), N) % 2) {
                    EXPECT_EQ(c->diamond(a), scalar(f, c->dim(), chi(a)));
                }
            }
        }
        EXPECT_EQ(total, m->dim()) << N;
    }
}

TEST(CharacterComponent, MatchesDirectPrimeToPBuild) {
    for (std::uint64_t N : {13u, 29u}) {
        auto chars = prime_to_p_characters(N, 2);
        Field f = chars[0].field();
        auto g1 = std::make_shared<ManinSymbolSpace>(build_gamma1(N, 2, f));
        for (const auto& chi : chars) {
            auto c = character_component(g1, chi);
            auto direct = build_prime_to_p(N, 2, chi);
            ASSERT_EQ(c->dim(), direct.dim()) << N << " " << chi.label();
            for (std::uint64_t l : {3u, 5u, 7u})
                EXPECT_EQ(ff::char_poly(c->hecke(l)), ff::char_poly(direct.hecke(l))) << N << " " << chi.label() << " T" << l;
        }
    }
}

TEST(CharacterComponent, RejectsMismatchedField) {
    auto m = std::make_shared<ManinSymbolSpace>(build_gamma1(13, 2, gf(2)));
    EXPECT_THROW(character_component(m, DirichletCharacter::trivial(13, gf(2, 2))), std::invalid_argument);
}

TEST(CharacterComponent, Level229EigendataMatchesGamma0) {
    Field f = gf(2);
    auto g0 = build_space(229, 2, DirichletCharacter::trivial(229, f));
    auto gh = build_prime_to_p(229, 2, DirichletCharacter::trivial(229, f));
    auto primes = primes_except(static_cast<int>(g0.sturm_bound()), 229);
    EXPECT_EQ(eigensystems(g0, primes), eigensystems(gh, primes));
}

TEST(Character, Basics) {
    Field f = gf(7);
    DirichletCharacter chi(13, f, {3});
    EXPECT_EQ(chi(0), 0u);
    EXPECT_EQ(chi(13), 0u);
    EXPECT_EQ(chi(1), 1u);
    for (std::int64_t a = 1; a < 13; ++a)
        for (std::int64_t b = 1; b < 13; ++b) EXPECT_EQ(chi(a * b), f->mul(chi(a), chi(b)));
    // 3 has order 6 in GF(7)^x, which does not divide the order 10 of the generator mod 11
    EXPECT_THROW(DirichletCharacter(11, f, {3}), std::invalid_argument);
    auto all = prime_to_p_characters(13, 2);
    EXPECT_EQ(all.size(), 3u);
    EXPECT_EQ(all[0].field()->order(), 4u);
}
