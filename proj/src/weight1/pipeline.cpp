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

#include "katz1/weight1/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <random>
#include <thread>

#include "katz1/nt.hpp"

namespace katz1::weight1 {

using artin::LocalFactor;
using ff::Echelon;
using ff::IncrementalBasis;
using ff::Poly;

bool OperatorSet::has(const std::string& label) const {
    return std::any_of(ops.begin(), ops.end(), [&](const LabeledMatrix& m) { return m.label == label; });
}

const Matrix& OperatorSet::get(const std::string& label) const {
    for (const auto& m : ops)
        if (m.label == label) return m.m;
    throw MissingOperator("operator set has no " + label);
}

namespace {

std::string up_label(std::uint32_t p) { return "U_" + std::to_string(p); }

std::string prime_label(std::uint64_t l, std::uint64_t N, std::uint32_t p) {
    return (l == p || N % l == 0 ? "U_" : "T_") + std::to_string(l);
}

void run_parallel(std::size_t jobs, unsigned threads, const std::function<void(std::size_t)>& body) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(jobs, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < jobs; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < jobs;) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lk(mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

Matrix columns_to_matrix(const Field& f, std::size_t rows, const std::vector<Vec>& cols) {
    Matrix m(f, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
}

Matrix block(const Matrix& m, std::size_t r0, std::size_t c0, std::size_t n) {
    Matrix out(m.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = m(r0 + i, c0 + j);
    return out;
}

MatrixAlgebra with_up(const MatrixAlgebra& tp_prime, const Matrix& up, std::uint32_t p) {
    auto gens = tp_prime.generators();
    gens.push_back({up_label(p), up});
    return MatrixAlgebra::close(tp_prime.field(), tp_prime.ambient_dim(), std::move(gens));
}

// ⟨a⟩ on the full space from the diamond generators.
Matrix global_diamond(const OperatorSet& ops, std::uint64_t a) {
    nt::UnitGroup g(ops.level);
    Matrix out = Matrix::identity(ops.field, ops.dim);
    const auto& d = g.dlog(a % ops.level);
    for (std::size_t i = 0; i < g.generators().size(); ++i)
        if (d[i]) out = out * ff::power(ops.get("diamond_" + std::to_string(g.generators()[i])), static_cast<std::uint64_t>(d[i]));
    return out;
}

}  // namespace

OperatorSet collect_operators(const modsym::HeckeModule& space, const std::string& character, const CollectOptions& opts) {
    OperatorSet out;
    out.level = space.level();
    out.weight = space.weight();
    out.field = space.field();
    out.p = out.field->characteristic();
    out.dim = space.dim();
    out.index = space.index();
    out.space = space.describe();
    out.character = character;
    const std::uint64_t sturm = space.sturm_bound();
    if (opts.precision && *opts.precision < sturm)
        throw ConfigError("precision " + std::to_string(*opts.precision) + " is below the Sturm bound " + std::to_string(sturm));
    out.precision = opts.precision.value_or(sturm);
    out.prime_bound = opts.prime_bound;

    const std::uint64_t N = out.level;
    const std::uint64_t top = std::max({out.precision, out.prime_bound, std::uint64_t{out.p}});
    std::vector<std::pair<std::string, std::function<Matrix()>>> jobs;
    for (int l : nt::primes_up_to(static_cast<int>(top))) {
        auto ul = static_cast<std::uint64_t>(l);
        jobs.push_back({prime_label(ul, N, out.p), [&space, ul] { return space.hecke(ul); }});
    }
    nt::UnitGroup units(N);
    for (auto g : units.generators())
        jobs.push_back({"diamond_" + std::to_string(g), [&space, g] { return space.diamond(static_cast<std::int64_t>(g)); }});

    std::vector<std::uint64_t> cand;
    for (int l : nt::primes_up_to(static_cast<int>(out.precision)))
        if (l > 2 && static_cast<std::uint64_t>(l) != out.p && N % static_cast<std::uint64_t>(l)) cand.push_back(static_cast<std::uint64_t>(l));
    std::mt19937_64 rng(N * 1000003ULL + out.p);
    std::shuffle(cand.begin(), cand.end(), rng);
    cand.resize(std::min<std::size_t>(cand.size(), opts.square_checks));
    std::sort(cand.begin(), cand.end());
    out.square_checks = cand;
    for (auto l : cand) jobs.push_back({"T_" + std::to_string(l * l), [&space, l] { return space.hecke(l * l); }});

    out.ops.resize(jobs.size());
    run_parallel(jobs.size(), opts.threads, [&](std::size_t i) { out.ops[i] = {jobs[i].first, jobs[i].second()}; });
    return out;
}

std::vector<std::string> tp_prime_labels(const OperatorSet& ops) {
    std::vector<std::string> out;
    std::vector<std::string> squares;
    for (auto l : ops.square_checks) squares.push_back("T_" + std::to_string(l * l));
    for (const auto& m : ops.ops) {
        if (m.label == up_label(ops.p)) continue;
        if (std::find(squares.begin(), squares.end(), m.label) != squares.end()) continue;
        out.push_back(m.label);
    }
    return out;
}

bool AssertionLog::record(std::string name, bool passed, std::string detail) {
    entries_.push_back({std::move(name), passed, std::move(detail)});
    return passed;
}

bool AssertionLog::all_passed() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Assertion& a) { return a.passed; });
}

void AssertionLog::append(const AssertionLog& o) { entries_.insert(entries_.end(), o.entries_.begin(), o.entries_.end()); }

Weight1Algebra weight1_hecke_algebra(const MatrixAlgebra& tp_prime, const Matrix& up, std::uint32_t p, std::uint64_t level) {
    Weight1Algebra w;
    w.relation = artin::solve_up_relation(tp_prime, up);
    w.ideal = artin::ideal_from_intersection(tp_prime, up);
    w.projection = artin::quotient(tp_prime, w.ideal);
    w.dim_before_tp = w.projection.algebra.dim();

    // Only T mod I is determined: every homogeneous solution (t, d) of t u = d must vanish mod I.
    const std::size_t d = tp_prime.dim();
    for (std::size_t r = 0; r < w.relation.homogeneous.rows(); ++r) {
        auto row = w.relation.homogeneous.row(r);
        Matrix t = tp_prime.element(row.subspan(0, d));
        Matrix dd = tp_prime.element(row.subspan(d, d));
        if (!w.ideal.contains(tp_prime, t) || !w.ideal.contains(tp_prime, dd))
            throw InvariantError("weight1_hecke_algebra: T mod I depends on the choice of solution");
    }

    HeckeFamily fam(tp_prime, level, p);
    w.tp = w.projection.project(w.relation.T);
    w.diamond_p = w.projection.project(fam.diamond(static_cast<std::int64_t>(p)));
    if (w.dim_before_tp == 0) {
        w.t1 = w.projection.algebra;
        return w;
    }
    auto gens = w.projection.algebra.generators();
    gens.push_back({"T_" + std::to_string(p), w.tp});
    w.t1 = MatrixAlgebra::close(tp_prime.field(), w.projection.algebra.ambient_dim(), std::move(gens));
    if (w.t1.dim() != w.dim_before_tp)
        throw InvariantError("weight1_hecke_algebra: adjoining the weight-one T_p enlarged the algebra");
    return w;
}

Classification classify_maximal_ideal(const LocalFactor& m_prime, const Matrix& up, std::uint32_t p, std::uint64_t level) {
    Classification c;
    const MatrixAlgebra& a = m_prime.algebra;
    c.residue = m_prime.residue_field();
    c.comes_from_weight1 = !a.contains(up);
    c.ordinary = ff::min_poly(up).coeff(0) != 0;
    MatrixAlgebra tp = with_up(a, up, p);
    auto above = artin::decompose_local(tp);
    c.ideals_above = above.size();
    // Ideals over the algebraic closure: a factor with residue degree d over that of m' splits
    // into d of them.
    c.geometric_ideals_above = 0;
    for (const auto& lf : above) c.geometric_ideals_above += lf.residue_degree / m_prime.residue_degree;
    if (!c.comes_from_weight1) {
        if (c.ideals_above != 1) throw InvariantError("classify: T_p = T_p' but T_p is not local");
        return c;
    }
    if (!c.ordinary) throw InvariantError("classify: an ideal coming from weight one is not ordinary");
    auto rel = artin::solve_up_relation(a, up);
    artin::ResidueMap r(m_prime);
    HeckeFamily fam(a, level, p);
    const Field& k = r.field();
    c.residue = k;
    c.a_p = r(rel.T);
    c.eps_p = r(fam.diamond(static_cast<std::int64_t>(p)));
    c.p_distinguished = k->mul(*c.a_p, *c.a_p) != k->mul(k->from_int(4), *c.eps_p);
    if (c.geometric_ideals_above != (c.p_distinguished ? 2u : 1u))
        throw InvariantError("classify: p-distinguished=" + std::to_string(c.p_distinguished) + " but " +
                             std::to_string(c.geometric_ideals_above) + " geometric ideals of T_p lie above m'");
    return c;
}

DoublingProof verify_doubling(const MatrixAlgebra& tp_prime, const Matrix& up, const Weight1Algebra& w, std::uint32_t p,
                              std::uint64_t level, std::uint64_t precision) {
    const Field& f = tp_prime.field();
    MatrixAlgebra tp = with_up(tp_prime, up, p);
    auto ideal = artin::make_ideal(tp, w.ideal.elements(tp_prime));
    auto q = artin::quotient(tp, ideal);

    DoublingProof proof;
    proof.dim_t1 = w.t1.dim();
    proof.dim_quotient = q.algebra.ambient_dim();
    const std::size_t d = proof.dim_t1;
    if (proof.dim_quotient != 2 * d)
        throw DoublingFailure("doubling: dim T_p/I = " + std::to_string(proof.dim_quotient) + " but dim T_1 = " + std::to_string(d), "dimension");

    // Lifts c_j of a basis of T_1 = T_p'/I.
    std::vector<Matrix> lifts;
    IncrementalBasis seen(f, d);
    for (const auto& b : tp_prime.basis()) {
        if (lifts.size() == d) break;
        if (seen.add(w.projection.vector_of(b))) lifts.push_back(b);
    }
    if (lifts.size() != d) throw DoublingFailure("doubling: could not lift a basis of T_1", "basis");

    const Matrix shift = up - w.relation.T;
    std::vector<Vec> cols;
    for (const auto& c : lifts) cols.push_back(q.vector_of(c));
    for (const auto& c : lifts) cols.push_back(q.vector_of(c * shift));
    proof.phi = columns_to_matrix(f, 2 * d, cols);
    auto inv = ff::inverse(proof.phi);
    if (!inv) throw DoublingFailure("doubling: phi is not invertible", "phi");

    auto conj = [&](const Matrix& x) { return *inv * q.project(x) * proof.phi; };
    auto diagonal = [&](const Matrix& m, const std::string& label) {
        Matrix a = block(m, 0, 0, d);
        Matrix zero(f, d, d);
        if (block(m, 0, d, d) != zero || block(m, d, 0, d) != zero || block(m, d, d, d) != a)
            throw DoublingFailure("doubling: " + label + " does not act diagonally", label);
        return a;
    };

    HeckeFamily fam(tp_prime, level, p);
    proof.t_block = diagonal(conj(w.relation.T), "T");
    proof.d_block = diagonal(conj(fam.diamond(static_cast<std::int64_t>(p))), "diamond_" + std::to_string(p));
    proof.up_block = conj(up);
    Matrix expected(f, 2 * d, 2 * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            expected(i, j) = proof.t_block(i, j);
            expected(i, d + j) = f->neg(proof.d_block(i, j));
        }
        expected(d + i, i) = 1;
    }
    if (proof.up_block != expected) throw DoublingFailure("doubling: U_p is not [[T_p, -<p>], [1, 0]]", up_label(p));

    for (std::uint64_t n = 1; n <= precision; ++n) {
        if (n % p == 0) continue;
        std::string label = "T_" + std::to_string(n);
        proof.diagonal.push_back({label, diagonal(conj(fam.T(n)), label)});
    }
    return proof;
}

Poly AlgebraPoly::reduce(const artin::ResidueMap& r) const {
    std::vector<Elt> c;
    for (const auto& m : coeffs) c.push_back(r(m));
    return Poly(r.field(), std::move(c));
}

AlgebraPoly charpoly_frobenius(const Weight1Algebra& w, std::uint64_t l, std::uint32_t p, std::uint64_t level) {
    if (level % l == 0) throw RamifiedPrime("charpoly_frobenius: " + std::to_string(l) + " divides the level");
    const std::string label = "T_" + std::to_string(l);
    if (!w.t1.has(label)) throw MissingOperator("charpoly_frobenius: " + label + " not materialized");
    const Field& f = w.t1.field();
    HeckeFamily fam(w.t1, level, 1);
    (void)p;
    return AlgebraPoly{{fam.diamond(static_cast<std::int64_t>(l)), w.t1.generator(label) * f->neg(1), w.t1.unit()}};
}

std::size_t WeightOneResult::dim_s1() const {
    std::size_t s = 0;
    for (const auto& i : ideals) s += i.dim_t1;
    return s;
}

namespace {

struct LocalPiece {
    LocalFactor lf;
    Matrix up;
    Matrix global_idempotent;
};

// Splits the space along generator idempotents, then decomposes each piece.
std::vector<LocalPiece> localize(const OperatorSet& ops, const std::vector<LabeledMatrix>& gens, const Matrix& up) {
    std::vector<LocalPiece> out;
    if (ops.dim == 0) return out;
    std::vector<Matrix> mats;
    for (const auto& g : gens) mats.push_back(g.m);
    for (const auto& e : artin::generator_idempotents(ops.field, ops.dim, mats)) {
        Echelon sub = ff::rref(e.transpose());
        std::vector<LabeledMatrix> rg;
        for (const auto& g : gens) rg.push_back({g.label, MatrixAlgebra::restrict_matrix(g.m, sub)});
        MatrixAlgebra piece = MatrixAlgebra::close(ops.field, sub.pivots.size(), std::move(rg));
        Matrix up_piece = MatrixAlgebra::restrict_matrix(up, sub);
        // Rows of e at the pivots give the coordinates of e v in the piece.
        Matrix sel(ops.field, sub.pivots.size(), ops.dim);
        for (std::size_t i = 0; i < sub.pivots.size(); ++i)
            for (std::size_t j = 0; j < ops.dim; ++j) sel(i, j) = e(sub.pivots[i], j);
        Matrix embed = sub.rref.transpose();
        for (auto& lf : artin::decompose_local(piece)) {
            Matrix u = lf.project(up_piece);
            Matrix g = embed * lf.idempotent * sel;
            out.push_back({std::move(lf), std::move(u), std::move(g)});
        }
    }
    return out;
}

IdealAnalysis analyze_ideal(const OperatorSet& ops, const LocalPiece& piece, const Classification& cls, const AnalyzeOptions& opts,
                            AssertionLog& log) {
    const MatrixAlgebra& a = piece.lf.algebra;
    const Matrix& up = piece.up;
    const std::uint32_t p = ops.p;
    const std::uint64_t N = ops.level, B = ops.precision;
    const Field& f = ops.field;
    IdealAnalysis out;
    out.cls = cls;
    out.dim_tp_prime = a.dim();

    Weight1Algebra w = weight1_hecke_algebra(a, up, p, N);
    const auto& rel = w.relation;
    log.record("up_relation", (up * up - rel.T * up + rel.D).is_zero(), "U_p^2 - T U_p + D = 0");
    log.record("t1_prime_equals_t1", w.t1.dim() == w.dim_before_tp,
               "dim before/after adjoining T_p: " + std::to_string(w.dim_before_tp) + "/" + std::to_string(w.t1.dim()));

    MatrixAlgebra tp = with_up(a, up, p);
    out.dim_tp = tp.dim();
    IncrementalBasis sum(f, a.ambient_dim() * a.ambient_dim());
    for (const auto& b : a.basis()) {
        sum.add(b.entries());
        sum.add((up * b).entries());
    }
    log.record("tp_equals_tp_prime_plus_up_tp_prime", sum.size() == tp.dim(),
               std::to_string(sum.size()) + " vs " + std::to_string(tp.dim()));
    artin::make_ideal(tp, w.ideal.elements(a));  // throws NotAnIdeal
    log.record("ideal_of_tp", true, "I is stable under U_p and T_p'");
    out.dim_ideal = w.ideal.dim();
    out.dim_t1 = w.t1.dim();
    log.record("doubling_dimension", out.dim_tp == out.dim_ideal + 2 * out.dim_t1,
               "dim T_p = " + std::to_string(out.dim_tp) + ", dim I = " + std::to_string(out.dim_ideal) + ", dim T_1 = " + std::to_string(out.dim_t1));
    log.record("doubling_count", out.dim_tp - out.dim_tp_prime == out.dim_t1, "dim T_p - dim T_p' = dim T_1");
    log.record("ordinary", cls.ordinary, "U_p invertible on the localization");

    LocalFactor l1 = artin::as_local(w.t1);
    out.t1_descriptor = artin::describe_local(l1);
    out.t1_nilpotency = l1.nilpotency;
    out.residue_degree = l1.residue_degree * f->degree();
    log.record("t1_local", true, out.t1_descriptor);

    auto tp_factors = artin::decompose_local(tp);
    out.gorenstein = true;
    for (std::size_t i = 0; i < tp_factors.size(); ++i) {
        out.gorenstein = out.gorenstein && artin::is_gorenstein(tp_factors[i]);
        out.tp_descriptor += (i ? " × " : "") + artin::describe_local(tp_factors[i]);
    }

    artin::ResidueMap r1(l1);
    const Field& k = r1.field();
    HeckeFamily fam1(w.t1, N, 1);
    out.a_p = r1(w.tp);
    out.eps_p = r1(w.diamond_p);
    out.charpoly_at_p = charpoly_frobenius(w, p, p, N).reduce(r1);
    out.eigen = {N, 1, ops.character, k, {}, {}};
    std::string bad_charpoly;
    for (const auto& g : w.t1.generators()) {
        auto us = g.label.find('_');
        if (us == std::string::npos || g.label.rfind("diamond_", 0) == 0) continue;
        std::uint64_t l = std::stoull(g.label.substr(us + 1));
        if (!nt::is_prime(l)) continue;
        out.eigen.a[l] = r1(g.m);
        if (N % l) {
            out.eigen.eps[l] = r1(fam1.diamond(static_cast<std::int64_t>(l)));
            Poly cp = charpoly_frobenius(w, l, p, N).reduce(r1);
            Poly expect(k, {out.eigen.eps[l], k->neg(out.eigen.a[l]), 1});
            if (cp != expect) bad_charpoly += " " + std::to_string(l);
            out.charpolys.emplace(l, std::move(cp));
        }
    }
    log.record("charpoly_reduction", bad_charpoly.empty(),
               bad_charpoly.empty() ? "X^2 - T_l X + <l> reduces to X^2 - a_l X + eps(l) for " + std::to_string(out.charpolys.size()) + " primes"
                                    : "fails at" + bad_charpoly);
    for (int l : nt::primes_up_to(static_cast<int>(B)))
        if (N % static_cast<std::uint64_t>(l)) out.sort_key.push_back(out.eigen.a.at(static_cast<std::uint64_t>(l)));

    if (opts.keep_doubling) {
        try {
            out.doubling = verify_doubling(a, up, w, p, N, B);
            log.record("doubling_isomorphism", true,
                       "U_p block [[T_p, -<p>], [1, 0]]; " + std::to_string(out.doubling->diagonal.size()) + " T_n diagonal");
            log.record("up_block_trace_equals_solved_t", block(out.doubling->up_block, 0, 0, out.dim_t1) == out.doubling->t_block);
        } catch (const DoublingFailure& e) {
            log.record("doubling_isomorphism", false, std::string(e.what()) + " [witness " + e.witness + "]");
        }
    }
    HeckeFamily fam_prime(a, N, p);
    log.record("d_equals_diamond_p", w.ideal.contains(a, rel.D - fam_prime.diamond(static_cast<std::int64_t>(p))), "D = <p> mod I");

    // Weight-p forms at m' and the kernel of theta.
    HeckeFamily famp(tp, N, ops.weight);
    auto forms_p = dual_qexp(tp, B, famp);
    Matrix fp(f, forms_p.size(), B);
    for (std::size_t i = 0; i < forms_p.size(); ++i)
        for (std::size_t n = 0; n < B; ++n) fp(i, n) = forms_p[i].coefficients()[n];
    log.record("sturm_span", ff::rank(fp) == tp.dim(), "T_n, n <= " + std::to_string(B) + ", span T_p at m'");
    Matrix combos = theta_kernel_combinations(forms_p);
    out.theta_dim = theta_kernel(forms_p).size();
    log.record("theta_kernel_dim_equals_dim_t1", out.theta_dim == out.dim_t1,
               std::to_string(out.theta_dim) + " vs " + std::to_string(out.dim_t1));
    Matrix mult_up(f, tp.dim(), tp.dim());
    for (std::size_t j = 0; j < tp.dim(); ++j) {
        Vec c = *tp.coords(up * tp.basis_element(j));
        for (std::size_t i = 0; i < tp.dim(); ++i) mult_up(i, j) = c[i];
    }
    std::size_t up_theta = combos.rows() ? ff::rank(combos * mult_up) : 0;
    log.record("up_theta_kernel_dim", up_theta == out.dim_t1, std::to_string(up_theta) + " vs " + std::to_string(out.dim_t1));

    // Weight-one forms, and their two images A f and F f among the weight-p forms.
    out.weight1_qexp = dual_qexp(w.t1, B, fam1);
    std::vector<std::uint64_t> prime_to_p;
    for (std::uint64_t n = 1; n <= B; ++n)
        if (n % p) prime_to_p.push_back(n);
    Matrix proj(f, out.weight1_qexp.size(), prime_to_p.size());
    for (std::size_t i = 0; i < out.weight1_qexp.size(); ++i)
        for (std::size_t j = 0; j < prime_to_p.size(); ++j) proj(i, j) = out.weight1_qexp[i].coeff(prime_to_p[j]);
    log.record("psi_injective", ff::rank(proj) == out.dim_t1, "a_n, p not dividing n, determine weight-one forms");

    Matrix embedded(f, 0, B);
    for (const auto& g : out.weight1_qexp) {
        QExpansion twist = frobenius_twist(g.truncated(B / p));
        std::vector<Vec> rows{g.coefficients(), Vec(B, 0)};
        for (std::uint64_t n = 1; n <= twist.precision() && n <= B; ++n) rows[1][n - 1] = twist.coeff(n);
        embedded = embedded.stack(Matrix::from_rows(f, B, rows));
    }
    log.record("weight1_forms_embed_twice",
               ff::rank(fp.stack(embedded)) == ff::rank(fp) && ff::rank(embedded) == 2 * out.dim_t1,
               "A f and F f lie in the weight-p forms at m' and span 2 dim T_1");

    // Eigenform mod m.
    bool mult_ok = true;
    out.eigenform.resize(B);
    for (std::uint64_t n = 1; n <= B; ++n) out.eigenform[n - 1] = r1(fam1.T(n));
    auto a_n = [&](std::uint64_t n) { return out.eigenform[n - 1]; };
    for (std::uint64_t m = 2; m <= B; ++m)
        for (std::uint64_t n = 2; m * n <= B; ++n)
            if (std::gcd(m, n) == 1 && a_n(m * n) != k->mul(a_n(m), a_n(n))) mult_ok = false;
    for (int li : nt::primes_up_to(static_cast<int>(B))) {
        auto l = static_cast<std::uint64_t>(li);
        Elt e = N % l ? r1(fam1.diamond(static_cast<std::int64_t>(l))) : 0;
        for (std::uint64_t q = l; q * l <= B; q *= l) {
            Elt prev = q == l ? Elt{1} : a_n(q / l);
            if (a_n(q * l) != k->sub(k->mul(a_n(l), a_n(q)), k->mul(e, prev))) mult_ok = false;
        }
    }
    log.record("eigenform_multiplicativity", mult_ok && a_n(1) == 1, "a_mn = a_m a_n and the weight-one prime-power recursion");
    return out;
}

}  // namespace

WeightOneResult analyze(const OperatorSet& ops, const AnalyzeOptions& opts) {
    WeightOneResult res;
    res.level = ops.level;
    res.p = ops.p;
    res.character = ops.character;
    res.space = ops.space;
    res.dim_space = ops.dim;
    res.precision = ops.precision;
    res.prime_bound = ops.prime_bound;
    AssertionLog& log = res.log;
    const Field& f = ops.field;

    std::size_t pairs = 0;
    std::string bad;
    for (std::size_t i = 0; i < ops.ops.size() && bad.empty(); ++i)
        for (std::size_t j = i + 1; j < ops.ops.size(); ++j, ++pairs)
            if (ops.ops[i].m * ops.ops[j].m != ops.ops[j].m * ops.ops[i].m) {
                bad = ops.ops[i].label + ", " + ops.ops[j].label;
                break;
            }
    log.record("hecke_commutativity", bad.empty(), bad.empty() ? std::to_string(pairs) + " pairs" : "fails for " + bad);

    for (auto l : ops.square_checks) {
        const Matrix& tl = ops.get("T_" + std::to_string(l));
        Matrix lhs = global_diamond(ops, l) * f->from_int(static_cast<std::int64_t>(nt::pow_mod(l, ops.weight - 1, ops.p)));
        log.record("diamond_identity_" + std::to_string(l), lhs == tl * tl - ops.get("T_" + std::to_string(l * l)),
                   "l^(k-1) <l> = T_l^2 - T_(l^2)");
    }

    std::vector<LabeledMatrix> gens;
    for (const auto& label : tp_prime_labels(ops)) gens.push_back({label, ops.get(label)});
    const Matrix& up = ops.get(up_label(ops.p));
    auto pieces = localize(ops, gens, up);
    res.local_factors = pieces.size();

    if (ops.dim) {
        Matrix total(f, ops.dim, ops.dim);
        std::size_t ranks = 0;
        bool idem = true;
        for (const auto& pc : pieces) {
            total = total + pc.global_idempotent;
            ranks += pc.lf.subspace.pivots.size();
            idem = idem && pc.global_idempotent * pc.global_idempotent == pc.global_idempotent;
        }
        log.record("idempotent_axioms", idem && total == Matrix::identity(f, ops.dim) && ranks == ops.dim,
                   std::to_string(pieces.size()) + " orthogonal idempotents summing to 1");
    }

    for (const auto& pc : pieces) {
        Classification cls = classify_maximal_ideal(pc.lf, pc.up, ops.p, ops.level);
        if (!cls.comes_from_weight1) continue;

        // Eisenstein filter on the weight-p eigensystem.
        artin::ResidueMap r(pc.lf);
        const Field& k = r.field();
        HeckeFamily fam(pc.lf.algebra, ops.level, ops.weight);
        bool eis = true;
        for (int li : nt::primes_up_to(static_cast<int>(ops.precision))) {
            auto l = static_cast<std::uint64_t>(li);
            if (l == ops.p || ops.level % l == 0) continue;
            Elt al = r(pc.lf.algebra.generator("T_" + std::to_string(l)));
            Elt el = r(fam.diamond(static_cast<std::int64_t>(l)));
            Elt expect = k->add(1, k->mul(k->from_int(static_cast<std::int64_t>(nt::pow_mod(l, ops.weight - 1, ops.p))), el));
            if (al != expect) {
                eis = false;
                break;
            }
        }
        if (eis) {
            ++res.excluded_eisenstein;
            continue;
        }
        AssertionLog local;
        IdealAnalysis ia = analyze_ideal(ops, pc, cls, opts, local);
        log.append(local);
        res.ideals.push_back(std::move(ia));
    }
    std::sort(res.ideals.begin(), res.ideals.end(), [](const IdealAnalysis& x, const IdealAnalysis& y) {
        return std::tie(x.residue_degree, x.sort_key) < std::tie(y.residue_degree, y.sort_key);
    });
    return res;
}

}  // namespace katz1::weight1
