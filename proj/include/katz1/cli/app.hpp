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

#ifndef KATZ1_CLI_APP_HPP
#define KATZ1_CLI_APP_HPP

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "katz1/cli/config.hpp"
#include "katz1/cli/report.hpp"

namespace katz1::cli {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCache = 3;
inline constexpr int kExitOracle = 4;

/// Line-oriented key=value events on the error stream.
class Logger {
public:
    explicit Logger(std::ostream& err) : err_(err) {}
    void event(const std::string& name, const std::vector<std::pair<std::string, std::string>>& kv = {}) const;

private:
    std::ostream& err_;
};

/// Runs the pipeline on every selected character component, through the cache when a cache
/// directory is configured. Components whose residue fields exceed the element
/// representation are reported as skipped.
std::vector<ComponentRun> run_components(const RunConfig& c, const Logger& log);

/// Each command writes its JSON report to effective_out(c), prints the path on `out`, and
/// returns the exit code. Errors propagate as exceptions; main_entry maps them to codes.
int cmd_weight1(const RunConfig& c, std::ostream& out, const Logger& log);
int cmd_frobcheck(const RunConfig& c, std::ostream& out, const Logger& log);
int cmd_verify_doubling(const RunConfig& c, std::ostream& out, const Logger& log);

/// Parses arguments, applies the cache-directory environment variable, validates, and
/// dispatches.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace katz1::cli

#endif  // KATZ1_CLI_APP_HPP
