// Copyright 2026 The pcl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pcl/pcl.hpp"

namespace pcl::cli {

enum ExitCode : int { kOk = 0, kCounterexample = 1, kUsage = 2, kResource = 3 };

inline int exit_code_for(const Error& e) {
    const std::string_view kind = e.kind();
    return (kind == "resource" || kind == "arithmetic") ? kResource : kUsage;
}

inline Family parse_family(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw PreconditionError("--family expects A,B, got '" + text + "'");
    try {
        std::size_t used_a = 0, used_b = 0;
        const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
        const Family f{std::stoull(a, &used_a), std::stoull(b, &used_b)};
        if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument("trailing characters");
        validate_family(f);
        return f;
    } catch (const std::logic_error&) {
        throw PreconditionError("--family expects A,B, got '" + text + "'");
    }
}

struct CliConfig {
    std::string format = "text";
    std::string sieve_path;
    unsigned jobs = 1;

    u64 sieve_limit = 0;
    std::string sieve_out;

    u64 n = 0;
    std::string method = "formula";
    bool emit_diagrams = false;
    bool unsafe = false;

    std::string statement;
    std::optional<u64> verify_n;
    std::string family_text;
    std::optional<u64> n_max;

    u64 n_limit = kDefaultScanLimit;
    u64 a_max = kDefaultPairModulusMax;
    std::string out_path;
    std::string resume_path;
    std::string checkpoint_path;
    std::string failures_path;
    u64 stop_after_pairs = 0;
};

class Runner {
public:
    Runner(CliConfig cfg, std::ostream& out, std::ostream& err, const std::atomic<bool>* stop)
        : cfg_(std::move(cfg)), out_(out), err_(err), stop_(stop) {}

    SieveTable table_for(u64 required) const {
        required = std::max<u64>(required, 1);
        if (!cfg_.sieve_path.empty()) {
            SieveTable t = load_sieve(cfg_.sieve_path);
            t.require(required, "--sieve");
            return t;
        }
        return build_sieve(required, {.memory_budget = memory_budget_from_env()});
    }

    bool json() const { return cfg_.format == "json"; }

    int sieve() {
        const SieveTable t = table_for(cfg_.sieve_limit);
        if (!cfg_.sieve_out.empty()) save_sieve(t, cfg_.sieve_out);
        if (json()) {
            nlohmann::ordered_json j{{"limit", t.limit()}, {"out", cfg_.sieve_out}};
            out_ << j.dump() << '\n';
        } else {
            out_ << "sieve limit=" << t.limit();
            if (!cfg_.sieve_out.empty()) out_ << " written to " << cfg_.sieve_out;
            out_ << '\n';
        }
        return kOk;
    }

    int nu2() {
        const u64 n = cfg_.n;
        if (n == 0) throw DomainError("nu2: N must be >= 1");
        std::optional<u64> formula, brute;
        if (cfg_.method == "formula" || cfg_.method == "both")
            formula = n < 2 ? 0 : nu2_formula(n, table_for(n));
        if (cfg_.method == "brute" || cfg_.method == "both") brute = nu_k_bruteforce(n, 2);
        if (formula && brute && *formula != *brute)
            throw ArithmeticError("nu2: formula gives " + std::to_string(*formula) + " but enumeration gives " +
                                  std::to_string(*brute) + " for N=" + std::to_string(n));
        const u64 value = formula ? *formula : *brute;
        if (json()) {
            nlohmann::ordered_json j{{"n", n}, {"method", cfg_.method}, {"nu2", value}};
            out_ << j.dump() << '\n';
        } else {
            out_ << value << '\n';
        }
        return kOk;
    }

    int pairs() {
        const u64 n = cfg_.n;
        const auto en = enumerate_multiset_A(n, {.unsafe = cfg_.unsafe});
        const auto& c = en.counts;
        std::optional<MultisetCounts> formula;
        if (!is_sum_of_two_squares(n)) {
            formula = counts_by_formula(n, table_for(n));
            if (*formula != c) throw ArithmeticError("pairs: enumeration and closed-form counts disagree");
        }
        if (json()) {
            nlohmann::ordered_json j;
            j["n"] = n;
            j["canonical_pairs"] = en.canonical_pair_count;
            j["counts"] = {{"A", c.a}, {"B", c.b}, {"C", c.c}, {"D", c.d}, {"E", c.e}};
            j["formula_agrees"] = formula.has_value();
            if (cfg_.emit_diagrams) {
                j["pairs"] = nlohmann::ordered_json::array();
                for (const auto& [g, rec] : en.records)
                    j["pairs"].push_back({{"pair", to_string(g)},
                                          {"mA", rec.mA},
                                          {"mB", rec.mB},
                                          {"mC", rec.mC},
                                          {"mD", rec.mD},
                                          {"mE", rec.mE},
                                          {"diagram", render_diagram(g)}});
            }
            out_ << j.dump() << '\n';
        } else {
            out_ << "N=" << n << " canonical_pairs=" << en.canonical_pair_count << '\n';
            const u64 sum = c.b + c.c + c.d + c.e;
            out_ << "|A| = " << c.a << (sum == c.a ? " = " : " != ") << c.b << " + " << c.c << " + " << c.d << " + "
                 << c.e << '\n';
            if (formula) out_ << "closed form agrees\n";
            else out_ << "closed form skipped: N is a sum of two squares\n";
            if (cfg_.emit_diagrams) {
                for (const auto& [g, rec] : en.records) {
                    out_ << '\n' << to_string(g) << " x" << rec.mA << ' ';
                    for (auto [flag, name] : {std::pair{rec.mB, 'B'}, {rec.mC, 'C'}, {rec.mD, 'D'}, {rec.mE, 'E'}})
                        if (flag) out_ << name;
                    out_ << '\n' << render_diagram(g);
                }
            }
        }
        return kOk;
    }

    int verify() {
        std::string name = cfg_.statement;
        std::replace(name.begin(), name.end(), '-', '_');
        const Statement st = statement_from_string(name);

        std::vector<u64> targets;
        if (cfg_.verify_n) {
            if (!cfg_.family_text.empty() || cfg_.n_max)
                throw PreconditionError("verify: use either --n or --family with --n-max");
            targets.push_back(*cfg_.verify_n);
        } else {
            if (cfg_.family_text.empty() || !cfg_.n_max)
                throw PreconditionError("verify: --n or both --family and --n-max are required");
            const Family f = parse_family(cfg_.family_text);
            for (u64 i = 0; i <= *cfg_.n_max; ++i) targets.push_back(f.member(i));
        }
        if (std::ranges::find(targets, u64{0}) != targets.end()) throw DomainError("verify: N must be >= 1");

        const SieveTable table = table_for(*std::ranges::max_element(targets));
        u64 failures = 0, unmet = 0;
        for (const u64 n : targets) {
            const CongruenceReport r = pcl::verify(st, n, table);
            if (!r.hypotheses_met) ++unmet;
            if (r.is_counterexample()) ++failures;
            out_ << (json() ? to_json(r).dump() : format_text(r)) << '\n';
        }
        if (!json() && targets.size() > 1)
            out_ << "checked=" << targets.size() << " hypotheses_unmet=" << unmet << " failures=" << failures << '\n';
        if (failures) return kCounterexample;
        if (unmet) {
            err_ << "pcl: error[hypothesis]: hypotheses unmet for " << unmet << " of " << targets.size() << " N\n";
            return kUsage;
        }
        return kOk;
    }

    int scan_family_cmd(const Family& f) {
        const auto n_max = max_index_below(f, cfg_.n_limit);
        if (!n_max) throw PreconditionError("scan family: B exceeds --n-limit");
        const SieveTable table = table_for(cfg_.n_limit);
        const FamilyScanResult r = scan_family(f, *n_max, table);
        if (!cfg_.failures_path.empty()) {
            std::ofstream fo(cfg_.failures_path, std::ios::trunc);
            write_failures(fo, f, r.failures);
        }
        if (cfg_.format == "csv") {
            write_csv(out_, r);
        } else if (json()) {
            nlohmann::ordered_json j;
            j["A"] = f.modulus;
            j["B"] = f.residue;
            j["n_limit"] = cfg_.n_limit;
            j["n_max"] = r.n_max;
            j["checked"] = r.checked;
            j["skipped"] = r.skipped;
            j["failures"] = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < std::min(r.failures.size(), kReportedFailureCap); ++i)
                j["failures"].push_back({{"N", r.failures[i].n}, {"S_mod4", r.failures[i].s_mod4}});
            j["failure_count"] = r.failures.size();
            j["all_pass"] = r.all_pass;
            out_ << j.dump() << '\n';
        } else {
            out_ << "# scan family A=" << f.modulus << " B=" << f.residue << " n_limit=" << cfg_.n_limit
                 << " n_max=" << r.n_max << '\n';
            out_ << "checked=" << r.checked << " skipped=" << r.skipped << " failures=" << r.failures.size()
                 << " all_pass=" << (r.all_pass ? "true" : "false") << '\n';
            for (std::size_t i = 0; i < std::min(r.failures.size(), kReportedFailureCap); ++i)
                out_ << "counterexample N=" << r.failures[i].n << " S_mod4=" << r.failures[i].s_mod4 << '\n';
            if (r.all_pass) out_ << "no counterexample with N <= " << cfg_.n_limit << '\n';
        }
        return r.all_pass ? kOk : kCounterexample;
    }

    int scan_pairs_cmd() {
        const SieveTable table = table_for(cfg_.n_limit);
        std::optional<PairScanState> resume;
        if (!cfg_.resume_path.empty()) resume = checkpoint_read(cfg_.resume_path);
        std::string ckpt = cfg_.checkpoint_path;
        if (ckpt.empty()) ckpt = !cfg_.resume_path.empty() ? cfg_.resume_path
                                 : !cfg_.out_path.empty() ? cfg_.out_path + ".ckpt"
                                                          : std::string{};

        PairScanOptions options{.jobs = cfg_.jobs, .stop_after_pairs = cfg_.stop_after_pairs, .external_stop = stop_};
        if (!ckpt.empty()) options.on_checkpoint = [&](const PairScanState& s) { checkpoint_write(s, ckpt); };
        const PairScanState state = scan_all_pairs_state(cfg_.a_max, cfg_.n_limit, table, options, resume);
        if (!ckpt.empty()) checkpoint_write(state, ckpt);
        const PairScanSummary summary = summarize(state);

        if (!summary.complete) {
            err_ << "pcl: error[resource]: pair scan interrupted; partial results are invalid"
                 << (ckpt.empty() ? std::string{} : ", resume with --resume " + ckpt) << '\n';
            return kResource;
        }
        if (!cfg_.out_path.empty()) {
            std::ofstream csv(cfg_.out_path, std::ios::trunc);
            if (!csv) throw PreconditionError("cannot write " + cfg_.out_path);
            write_csv(csv, state);
        }
        if (!cfg_.failures_path.empty()) {
            std::ofstream fo(cfg_.failures_path, std::ios::trunc);
            for (const auto& [fam, rec] : state.records) write_failures(fo, fam, rec.failures);
        }
        if (cfg_.format == "csv") {
            write_csv(out_, state);
        } else if (json()) {
            nlohmann::ordered_json j;
            j["a_max"] = summary.a_max;
            j["n_limit"] = summary.n_limit;
            j["passing_pairs"] = nlohmann::ordered_json::array();
            for (const auto& f : summary.passing_pairs) j["passing_pairs"].push_back({f.modulus, f.residue});
            j["structural_check"] = summary.structural_check;
            out_ << j.dump() << '\n';
        } else {
            out_ << "# scan pairs a_max=" << summary.a_max << " n_limit=" << summary.n_limit << " jobs=" << cfg_.jobs
                 << '\n';
            out_ << "passing_pairs=" << summary.passing_pairs.size() << '\n';
            for (const auto& f : summary.passing_pairs) out_ << f.modulus << ',' << f.residue << '\n';
            out_ << "structural_check=" << (summary.structural_check ? "true" : "false")
                 << " (no counterexample with N <= " << summary.n_limit << ")\n";
        }
        return summary.structural_check ? kOk : kCounterexample;
    }

private:
    CliConfig cfg_;
    std::ostream& out_;
    std::ostream& err_;
    const std::atomic<bool>* stop_;
};

/// Entry point behind the `pcl` binary. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               const std::atomic<bool>* stop = nullptr) {
    CliConfig cfg;
    CLI::App app{"Partition and divisor-function congruence toolkit"};
    app.require_subcommand(1);
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--sieve", cfg.sieve_path, "Load sigma tables from a dump written by `sieve --out`");
    app.add_option("--jobs", cfg.jobs, "Worker threads for pair scans")->check(CLI::Range(1u, 1024u))->capture_default_str();
    app.footer("Defaults: sieve max limit " + std::to_string(kDefaultSieveMaxLimit) + ", memory budget " +
               std::to_string(kDefaultMemoryBudget) + " bytes (PCL_MAX_MEMORY overrides), brute-force bound " +
               std::to_string(kBruteForceBound) + ", enumeration bound " + std::to_string(kEnumerationBound) +
               ", convolution bound " + std::to_string(kConvolutionBound) + ".\nExit codes: 0 ok, 1 counterexample, "
               "2 usage/precondition/unmet hypotheses, 3 resource/arithmetic.");

    auto* sieve = app.add_subcommand("sieve", "Build the sigma0/sigma1 table");
    sieve->add_option("--limit", cfg.sieve_limit)->required()->check(CLI::PositiveNumber);
    sieve->add_option("--out", cfg.sieve_out, "Binary dump path");

    auto* nu2 = app.add_subcommand("nu2", "Partitions of N with exactly two part sizes");
    nu2->add_option("N", cfg.n)->required();
    nu2->add_option("--method", cfg.method)->check(CLI::IsMember({"formula", "brute", "both"}))->capture_default_str();

    auto* pairs = app.add_subcommand("pairs", "Rectangle-pair multiset counts for N");
    pairs->add_option("N", cfg.n)->required();
    pairs->add_flag("--emit-diagrams", cfg.emit_diagrams, "Print every distinct glued pair as a Young diagram");
    pairs->add_flag("--unsafe", cfg.unsafe, "Allow N that is a sum of two squares (raw counts)");

    auto* verify = app.add_subcommand("verify", "Check one statement at N or along a family");
    verify->add_option("statement", cfg.statement)
        ->required()
        ->check(CLI::IsMember({"thm-main", "doublecount", "cor-odd", "cor-mod3", "sigma1-mod8"}));
    verify->add_option("--n", cfg.verify_n);
    verify->add_option("--family", cfg.family_text, "A,B");
    verify->add_option("--n-max", cfg.n_max, "Check n = 0..n_max");

    auto* scan = app.add_subcommand("scan", "Range scans over residue families");
    scan->require_subcommand(1);
    auto* scan_family = scan->add_subcommand("family", "Scan S(An+B) mod 4 up to --n-limit");
    scan_family->add_option("--family", cfg.family_text, "A,B")->required();
    scan_family->add_option("--n-limit", cfg.n_limit)->capture_default_str();
    scan_family->add_option("--failures", cfg.failures_path, "JSON-lines failure detail");
    auto* scan_pairs = scan->add_subcommand("pairs", "Find every (A,B) with no failure up to --n-limit");
    scan_pairs->add_option("--a-max", cfg.a_max)->capture_default_str();
    scan_pairs->add_option("--n-limit", cfg.n_limit)->capture_default_str();
    scan_pairs->add_option("--out", cfg.out_path, "CSV report path");
    scan_pairs->add_option("--resume", cfg.resume_path, "Checkpoint to resume from");
    scan_pairs->add_option("--checkpoint", cfg.checkpoint_path, "Checkpoint path (default: <out>.ckpt)");
    scan_pairs->add_option("--failures", cfg.failures_path, "JSON-lines failure detail");
    scan_pairs->add_option("--stop-after-pairs", cfg.stop_after_pairs)->group("");
    auto* scan_conj = scan->add_subcommand("conjecture-16n6", "Scan N = 16n + 6");
    scan_conj->add_option("--n-limit", cfg.n_limit)->capture_default_str();
    scan_conj->add_option("--failures", cfg.failures_path, "JSON-lines failure detail");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "pcl: error[usage]: " << e.what() << '\n';
        return kUsage;
    }

    Runner runner(cfg, out, err, stop);
    try {
        if (*sieve) return runner.sieve();
        if (*nu2) return runner.nu2();
        if (*pairs) return runner.pairs();
        if (*verify) return runner.verify();
        if (*scan_family) return runner.scan_family_cmd(parse_family(cfg.family_text));
        if (*scan_conj) return runner.scan_family_cmd({16, 6});
        if (*scan_pairs) return runner.scan_pairs_cmd();
    } catch (const Error& e) {
        err << "pcl: error[" << e.kind() << "]: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::bad_alloc&) {
        err << "pcl: error[resource]: out of memory\n";
        return kResource;
    }
    return kUsage;
}

}  // namespace pcl::cli
