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

#include "katz1/cli/app.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "CLI11.hpp"
#include "katz1/cli/cache.hpp"
#include "katz1/errors.hpp"
#include "katz1/modsym/character.hpp"
#include "katz1/modsym/manin.hpp"

namespace katz1::cli {

namespace fs = std::filesystem;

namespace {

constexpr unsigned kSquareChecks = 3;

std::string quote(const std::string& v) {
    if (!v.empty() && v.find_first_of(" \t\"=\n") == std::string::npos) return v;
    std::string s = "\"";
    for (char c : v) {
        if (c == '"' || c == '\\') s += '\\';
        s += c == '\n' ? ' ' : c;
    }
    return s + "\"";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", s);
    return buf;
}

void write_report(const std::string& path, const Json& j) {
    const std::string text = dump(j);
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
        if (!o) throw std::runtime_error("cannot write report " + tmp);
        o << text;
        if (!o) throw std::runtime_error("short write to " + tmp);
    }
    fs::rename(tmp, target);
}

Json assertions_of(const std::vector<ComponentRun>& runs, bool& all) {
    Json a = Json::array();
    all = true;
    for (const auto& r : runs) {
        if (!r.result) continue;
        for (const auto& e : r.result->log.entries()) {
            a.push_back(assertion_json(r.label, e));
            all = all && e.passed;
        }
    }
    return a;
}

int finish(const RunConfig& c, Json report, std::ostream& out, const Logger& log, int code) {
    const std::string path = effective_out(c);
    write_report(path, report);
    log.event("report", {{"path", path}, {"exit", std::to_string(code)}});
    out << path << "\n";
    return code;
}

}  // namespace

void Logger::event(const std::string& name, const std::vector<std::pair<std::string, std::string>>& kv) const {
    std::string line = "event=" + quote(name);
    for (const auto& [k, v] : kv) line += " " + k + "=" + quote(v);
    err_ << line << "\n";
    err_.flush();
}

std::vector<ComponentRun> run_components(const RunConfig& c, const Logger& log) {
    const std::uint64_t B = effective_precision(c);
    const std::uint64_t L = effective_prime_bound(c);
    std::optional<OperatorCache> cache;
    if (!c.cache_dir.empty()) cache.emplace(c.cache_dir);

    std::vector<ComponentRun> runs;
    for (const auto& exps : selected_characters(c)) {
        ComponentRun run;
        run.label = modsym::exponent_label(exps);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            auto chi = modsym::character_from_exponents(c.N, c.p, exps);
            run.character_field = chi.field()->descriptor();
            log.event("component", {{"character", run.label}, {"order", std::to_string(chi.order())}, {"values", run.character_field}});

            CacheKey key{c.N, c.p, run.label, ff::FiniteField::make(c.p)->descriptor(), B, L, kSquareChecks};
            std::optional<weight1::OperatorSet> ops;
            if (cache) {
                ops = cache->load(key);
                log.event("cache", {{"character", run.label}, {"status", ops ? "hit" : "miss"}, {"key", key.digest()}});
            }
            if (!ops) {
                auto space = modsym::orbit_space(c.N, c.p, chi, run.label);
                log.event("space", {{"character", run.label}, {"dim", std::to_string(space->dim())}, {"describe", space->describe()},
                                    {"seconds", fmt_seconds(seconds_since(t0))}});
                weight1::CollectOptions co;
                co.precision = B;
                co.prime_bound = L;
                co.threads = c.threads;
                co.square_checks = kSquareChecks;
                ops = weight1::collect_operators(*space, run.label, co);
                log.event("operators", {{"character", run.label}, {"count", std::to_string(ops->ops.size())},
                                        {"seconds", fmt_seconds(seconds_since(t0))}});
                if (cache) {
                    cache->store(key, *ops);
                    log.event("cache", {{"character", run.label}, {"status", "stored"}, {"path", cache->path(key)}});
                }
            }
            run.result = weight1::analyze(*ops);
            run.status = "ok";
            log.event("analyzed", {{"character", run.label},
                                   {"dim", std::to_string(run.result->dim_space)},
                                   {"local_factors", std::to_string(run.result->local_factors)},
                                   {"weight1_ideals", std::to_string(run.result->ideals.size())},
                                   {"assertions_passed", run.result->log.all_passed() ? "true" : "false"},
                                   {"seconds", fmt_seconds(seconds_since(t0))}});
        } catch (const FieldTooLarge& e) {
            run.status = "skipped";
            run.reason = e.what();
            run.result.reset();
            log.event("component_skipped", {{"character", run.label}, {"reason", e.what()}});
        }
        runs.push_back(std::move(run));
    }
    return runs;
}

int cmd_weight1(const RunConfig& c, std::ostream& out, const Logger& log) {
    auto runs = run_components(c, log);
    Json report = report_header(c, "katz1/weight1-report");
    Json comps = Json::array();
    for (const auto& r : runs) comps.push_back(component_json(r));
    report["components"] = std::move(comps);
    bool all = true;
    report["assertions"] = assertions_of(runs, all);
    report["all_assertions_passed"] = all;
    return finish(c, std::move(report), out, log, all ? kExitOk : kExitInvariant);
}

int cmd_frobcheck(const RunConfig& c, std::ostream& out, const Logger& log) {
    auto oracle = galois::NumberFieldOracle::load(c.oracle);
    log.event("oracle", {{"path", c.oracle}, {"discriminant", oracle.discriminants().front()}});
    auto runs = run_components(c, log);
    const std::uint64_t L = effective_prime_bound(c);

    Json report = report_header(c, "katz1/frobcheck-report");
    report["oracle"] = oracle_json(oracle, c.oracle);
    Json checks = Json::array();
    bool any_pass = false;
    for (const auto& r : runs) {
        if (!r.result) continue;
        for (std::size_t i = 0; i < r.result->ideals.size(); ++i) {
            const auto& m = r.result->ideals[i];
            Json j{{"component", r.label}, {"ideal", i}, {"residue_field", m.eigen.residue->descriptor()}};
            try {
                auto cc = galois::cross_check(m.eigen, oracle, L);
                j["status"] = "compared";
                j["result"] = crosscheck_json(cc);
                any_pass = any_pass || cc.pass;
                log.event("crosscheck", {{"character", r.label}, {"ideal", std::to_string(i)}, {"matched", std::to_string(cc.matched)},
                                         {"mismatched", std::to_string(cc.mismatched)}, {"skipped", std::to_string(cc.skipped)}});
            } catch (const OracleValidation& e) {
                j["status"] = "incompatible field";
                j["reason"] = e.what();
            }
            checks.push_back(std::move(j));
        }
    }
    report["checks"] = std::move(checks);
    report["pass"] = any_pass;
    bool all = true;
    report["assertions"] = assertions_of(runs, all);
    report["all_assertions_passed"] = all;
    return finish(c, std::move(report), out, log, any_pass && all ? kExitOk : kExitInvariant);
}

int cmd_verify_doubling(const RunConfig& c, std::ostream& out, const Logger& log) {
    auto runs = run_components(c, log);
    Json report = report_header(c, "katz1/doubling-report");
    Json proofs = Json::array(), failures = Json::array();
    for (const auto& r : runs) {
        if (!r.result) continue;
        for (std::size_t i = 0; i < r.result->ideals.size(); ++i)
            if (r.result->ideals[i].doubling) proofs.push_back(doubling_json(*r.result->ideals[i].doubling, r.label, i));
        for (const auto& e : r.result->log.entries())
            if (e.name == "doubling_isomorphism" && !e.passed) failures.push_back(assertion_json(r.label, e));
    }
    if (proofs.empty() && failures.empty()) report["notice"] = "no weight-1 ideals";
    report["proofs"] = std::move(proofs);
    report["failures"] = failures;
    bool all = true;
    report["assertions"] = assertions_of(runs, all);
    report["all_assertions_passed"] = all;
    return finish(c, std::move(report), out, log, failures.empty() ? kExitOk : kExitInvariant);
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Logger log(err);
    RunConfig c;
    CLI::App app{"Weight-one mod-p Katz forms via the doubling into weight p", "katz1"};
    app.require_subcommand(1);
    std::optional<std::uint64_t> precision, prime_bound;
    std::string cache_dir;
    for (const char* name : {"weight1", "frobcheck", "verify-doubling"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--N", c.N, "level")->required();
        sub->add_option("--p", c.p, "prime")->required();
        sub->add_option("--character", c.character, "trivial, all-odd-order, or exp:e1,...");
        sub->add_option("--precision", precision, "working precision (at least the Sturm bound)");
        sub->add_option("--prime-bound", prime_bound, "largest prime for Hecke operators and cross-checks");
        sub->add_option("--cache-dir", cache_dir, std::string("operator cache directory (else $") + kCacheEnv + ")");
        sub->add_option("--oracle", c.oracle, "number-field oracle (JSON)");
        sub->add_option("--out", c.out, "report path");
        sub->add_option("--threads", c.threads, "worker threads");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        err << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        log.event("error", {{"kind", "config"}, {"message", e.what()}});
        return kExitConfig;
    }
    c.command = app.get_subcommands().front()->get_name();
    c.precision = precision;
    c.prime_bound = prime_bound;
    c.cache_dir = cache_dir;
    if (c.cache_dir.empty())
        if (const char* env = std::getenv(kCacheEnv)) c.cache_dir = env;

    const auto t0 = std::chrono::steady_clock::now();
    try {
        validate(c);
        log.event("start", {{"command", c.command}, {"N", std::to_string(c.N)}, {"p", std::to_string(c.p)}, {"character", c.character},
                            {"precision", std::to_string(effective_precision(c))}, {"prime_bound", std::to_string(effective_prime_bound(c))},
                            {"cache_dir", c.cache_dir}});
        int code = c.command == "weight1"     ? cmd_weight1(c, out, log)
                   : c.command == "frobcheck" ? cmd_frobcheck(c, out, log)
                                              : cmd_verify_doubling(c, out, log);
        log.event("done", {{"exit", std::to_string(code)}, {"seconds", fmt_seconds(seconds_since(t0))}});
        return code;
    } catch (const ConfigError& e) {
        log.event("error", {{"kind", "config"}, {"message", e.what()}});
        return kExitConfig;
    } catch (const CacheCorruption& e) {
        log.event("error", {{"kind", "cache"}, {"message", e.what()}});
        return kExitCache;
    } catch (const OracleValidation& e) {
        log.event("error", {{"kind", "oracle"}, {"message", e.what()}});
        return kExitOracle;
    } catch (const InvariantError& e) {
        log.event("error", {{"kind", "invariant"}, {"message", e.what()}});
        return kExitInvariant;
    } catch (const std::exception& e) {
        log.event("error", {{"kind", "internal"}, {"message", e.what()}});
        return kExitInvariant;
    }
}

}  // namespace katz1::cli
