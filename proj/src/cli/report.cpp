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

#include "katz1/cli/report.hpp"

#include <filesystem>

#include "katz1/version.hpp"

namespace katz1::cli {

std::string elt_string(ff::Elt x) { return std::to_string(x); }

Json qexp_json(const weight1::QExpansion& f) {
    Json c = Json::array();
    for (auto x : f.coefficients()) c.push_back(elt_string(x));
    return Json{{"field", f.field()->descriptor()},
                {"precision", f.precision()},
                {"weight", f.weight()},
                {"level", f.level()},
                {"coefficients", std::move(c)}};
}

Json matrix_json(const ff::Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(elt_string(m(i, j)));
        rows.push_back(std::move(r));
    }
    return Json{{"field", m.field()->descriptor()}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

Json poly_json(const ff::Poly& p) {
    Json c = Json::array();
    for (auto x : p.coeffs()) c.push_back(elt_string(x));
    return Json{{"field", p.field()->descriptor()}, {"coefficients", std::move(c)}, {"text", p.to_string()}};
}

Json assertion_json(const std::string& component, const weight1::Assertion& a) {
    return Json{{"component", component}, {"name", a.name}, {"passed", a.passed}, {"detail", a.detail}};
}

Json report_header(const RunConfig& c, const std::string& schema) {
    Json cfg{{"N", c.N},
             {"p", c.p},
             {"character", c.character},
             {"precision_override", c.precision ? Json(*c.precision) : Json(nullptr)},
             {"prime_bound", effective_prime_bound(c)}};
    const std::uint64_t B = effective_precision(c);
    return Json{{"schema", schema},
                {"schema_version", 1},
                {"code_version", kCodeVersion},
                {"command", c.command},
                {"config", std::move(cfg)},
                {"weight", c.p},
                {"sturm_bound", sturm_bound(c.N, c.p)},
                {"precision", B},
                {"generator_bound", std::max(B, effective_prime_bound(c))},
                {"weight1_precision",
                 Json{{"value", B}, {"source", "inherited from the weight-p Sturm bound through the quotient T_1 = T_p'/I"}}}};
}

Json ideal_json(const weight1::IdealAnalysis& m, std::size_t index) {
    const ff::Field& k = m.eigen.residue;
    Json eig = Json::array();
    for (const auto& [l, a] : m.eigen.a) {
        Json e{{"l", l}, {"a", elt_string(a)}};
        if (auto it = m.eigen.eps.find(l); it != m.eigen.eps.end()) e["eps"] = elt_string(it->second);
        eig.push_back(std::move(e));
    }
    Json dual = Json::array();
    for (const auto& f : m.weight1_qexp) dual.push_back(qexp_json(f));
    Json j{{"index", index},
           {"residue_field", k->descriptor()},
           {"residue_degree", m.residue_degree},
           {"comes_from_weight1", m.cls.comes_from_weight1},
           {"ordinary", m.cls.ordinary},
           {"p_distinguished", m.cls.p_distinguished},
           {"ideals_above", m.cls.ideals_above},
           {"geometric_ideals_above", m.cls.geometric_ideals_above},
           {"dim_tp_prime", m.dim_tp_prime},
           {"dim_tp", m.dim_tp},
           {"dim_ideal", m.dim_ideal},
           {"dim_t1", m.dim_t1},
           {"t1_structure", m.t1_descriptor},
           {"t1_nilpotency", m.t1_nilpotency},
           {"tp_structure", m.tp_descriptor},
           {"gorenstein", m.gorenstein},
           {"a_p", elt_string(m.a_p)},
           {"eps_p", elt_string(m.eps_p)},
           {"charpoly_at_p", poly_json(m.charpoly_at_p)},
           {"theta_kernel_dim", m.theta_dim},
           {"doubling_verified", m.doubling.has_value()},
           {"eigenvalues", std::move(eig)},
           {"eigenform", qexp_json(weight1::QExpansion(k, m.eigenform, 1, m.eigen.level))},
           {"weight1_dual_basis", std::move(dual)}};
    return j;
}

Json component_json(const ComponentRun& r) {
    Json j{{"character", r.label}, {"character_field", r.character_field}, {"status", r.status}};
    if (r.status != "ok") {
        j["reason"] = r.reason;
        return j;
    }
    const auto& w = *r.result;
    Json ideals = Json::array();
    for (std::size_t i = 0; i < w.ideals.size(); ++i) ideals.push_back(ideal_json(w.ideals[i], i));
    j["space"] = w.space;
    j["dim_weight_p"] = w.dim_space;
    j["precision"] = w.precision;
    j["local_factors"] = w.local_factors;
    j["excluded_eisenstein"] = w.excluded_eisenstein;
    j["weight1_ideals"] = w.ideals.size();
    j["dim_s1"] = w.dim_s1();
    j["ideals"] = std::move(ideals);
    return j;
}

Json doubling_json(const weight1::DoublingProof& d, const std::string& component, std::size_t index) {
    Json diag = Json::array();
    for (const auto& [label, b] : d.diagonal) diag.push_back(Json{{"operator", label}, {"block", matrix_json(b)}});
    return Json{{"component", component},
                {"ideal", index},
                {"dim_t1", d.dim_t1},
                {"dim_quotient", d.dim_quotient},
                {"map", "phi(x, y) = x + y (U_p - T), columns: images of (c_j, 0) then (0, c_j)"},
                {"phi", matrix_json(d.phi)},
                {"t_block", matrix_json(d.t_block)},
                {"d_block", matrix_json(d.d_block)},
                {"up_block", matrix_json(d.up_block)},
                {"up_block_identity", "[[T_p, -<p>], [1, 0]]"},
                {"verified", true},
                {"diagonal", std::move(diag)}};
}

Json crosscheck_json(const galois::CrossCheckReport& r) {
    Json rows = Json::array();
    auto opt = [](const std::optional<ff::Elt>& x) { return x ? Json(elt_string(*x)) : Json(nullptr); };
    for (const auto& row : r.rows)
        rows.push_back(Json{{"l", row.l},
                            {"status", row.status},
                            {"pattern", row.pattern.empty() ? Json(nullptr) : Json(row.pattern)},
                            {"computed", opt(row.computed)},
                            {"predicted", opt(row.predicted)},
                            {"det_computed", opt(row.det_computed)},
                            {"det_predicted", opt(row.det_predicted)}});
    return Json{{"embedding", elt_string(r.embedding)},
                {"matched", r.matched},
                {"mismatched", r.mismatched},
                {"skipped", r.skipped},
                {"pass", r.pass},
                {"rows", std::move(rows)}};
}

Json oracle_json(const galois::NumberFieldOracle& o, const std::string& path) {
    return Json{{"file", std::filesystem::path(path).filename().string()},
                {"field", o.field()->descriptor()},
                {"polynomials", o.polynomials()},
                {"discriminants", o.discriminants()},
                {"ramified", o.ramified()}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace katz1::cli
