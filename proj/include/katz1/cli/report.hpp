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

#ifndef KATZ1_CLI_REPORT_HPP
#define KATZ1_CLI_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "katz1/cli/config.hpp"
#include "katz1/galois/oracle.hpp"
#include "katz1/weight1/pipeline.hpp"

namespace katz1::cli {

using Json = nlohmann::ordered_json;

/// Field elements are written as decimal strings of their packed value (see ff::Elt), always
/// next to the descriptor of the field they belong to.
std::string elt_string(ff::Elt x);
Json qexp_json(const weight1::QExpansion& f);
Json matrix_json(const ff::Matrix& m);
Json poly_json(const ff::Poly& p);
Json assertion_json(const std::string& component, const weight1::Assertion& a);

/// Outcome of the pipeline on one character component.
struct ComponentRun {
    std::string label;            // "trivial" or "exp:..."
    std::string character_field;  // descriptor of the field of values of the character
    std::string status;           // "ok" or "skipped"
    std::string reason;           // why a component was skipped
    std::optional<weight1::WeightOneResult> result;
};

/// Fields shared by every report: schema, code version, configuration, precision.
Json report_header(const RunConfig& c, const std::string& schema);
Json ideal_json(const weight1::IdealAnalysis& m, std::size_t index);
Json component_json(const ComponentRun& r);
Json doubling_json(const weight1::DoublingProof& d, const std::string& component, std::size_t index);
Json crosscheck_json(const galois::CrossCheckReport& r);
Json oracle_json(const galois::NumberFieldOracle& o, const std::string& path);

/// Pretty-printed with a trailing newline; key order is fixed by construction.
std::string dump(const Json& j);

}  // namespace katz1::cli

#endif  // KATZ1_CLI_REPORT_HPP
