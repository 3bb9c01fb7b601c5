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
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "pcl/arith.hpp"
#include "pcl/congruence.hpp"
#include "pcl/error.hpp"
#include "pcl/sieve.hpp"

namespace pcl {

inline constexpr u64 kDefaultScanLimit = 100'000;
inline constexpr u64 kDefaultPairModulusMax = 1000;
inline constexpr std::size_t kReportedFailureCap = 100;
inline constexpr std::string_view kCheckpointVersion = "pcl-ckpt-1";
inline constexpr std::string_view kCsvVersion = "pcl-scan-csv-1";
inline constexpr std::string_view kCsvHeader = "A,B,n_max_reached,checked,failures,all_pass";

struct FailurePoint {
    u64 n;
    u64 s_mod4;
    friend bool operator==(const FailurePoint&, const FailurePoint&) = default;
};

/// S(N) mod 4 for the scans. N < 2 has an empty sum.
inline u64 hooley_sum_mod4(u64 n, const SieveTable& table) { return n < 2 ? 0 : hooley_sum(n, table) % 4; }

/// Result of scanning N = A n + B for n = 0..n_max. N = 0 and N = 1 are
/// counted in `checked` and `skipped` but never tested.
struct FamilyScanResult {
    Family family{1, 0};
    u64 n_max = 0;
    u64 checked = 0;
    u64 skipped = 0;
    std::vector<FailurePoint> failures{};
    bool all_pass = true;
    std::chrono::duration<double> elapsed{};
};

inline void validate_family(const Family& f) {
    if (f.modulus == 0) throw DomainError("family modulus A must be >= 1");
    if (f.residue >= f.modulus) throw DomainError("family residue B must satisfy 0 <= B < A");
}

/// Largest n with A n + B <= limit; empty if B > limit.
inline std::optional<u64> max_index_below(const Family& f, u64 limit) {
    validate_family(f);
    if (f.residue > limit) return std::nullopt;
    return (limit - f.residue) / f.modulus;
}

inline FamilyScanResult scan_family(const Family& f, u64 n_max, const SieveTable& table) {
    validate_family(f);
    table.require(f.member(n_max), "scan_family");
    const auto start = std::chrono::steady_clock::now();
    FamilyScanResult r{.family = f, .n_max = n_max};
    for (u64 i = 0; i <= n_max; ++i) {
        const u64 n = f.member(i);
        ++r.checked;
        if (n < 2) {
            ++r.skipped;
            continue;
        }
        if (const u64 s = hooley_sum_mod4(n, table); s != 0) r.failures.push_back({n, s});
    }
    r.all_pass = r.failures.empty();
    r.elapsed = std::chrono::steady_clock::now() - start;
    return r;
}

/// Progress on one (A,B) pair of a pair scan; next_index is the first n not
/// yet tested.
struct PairRecord {
    Family family{1, 0};
    u64 next_index = 0;
    u64 checked = 0;
    u64 skipped = 0;
    std::vector<FailurePoint> failures{};
    bool complete = false;

    bool passed() const noexcept { return complete && failures.empty(); }
    friend bool operator==(const PairRecord&, const PairRecord&) = default;
};

struct PairScanState {
    u64 a_max = 0;
    u64 n_limit = 0;
    std::map<Family, PairRecord> records{};

    friend bool operator==(const PairScanState&, const PairScanState&) = default;
};

struct PairScanSummary {
    u64 a_max = 0;
    u64 n_limit = 0;
    std::vector<Family> passing_pairs{};
    /// Every passing pair has A = 0 (mod 4) and B = 2 (mod 4).
    bool structural_check = true;
    /// False when the scan was stopped before every pair finished; the
    /// passing list is then not a valid result.
    bool complete = false;
};

struct PairScanOptions {
    unsigned jobs = 1;
    /// Stop once this many pairs have completed in this run (0: no limit).
    u64 stop_after_pairs = 0;
    /// Polled by workers; setting it stops the scan with partial progress kept.
    const std::atomic<bool>* external_stop = nullptr;
    /// Called with the current state after each pair, at most once per interval.
    std::function<void(const PairScanState&)> on_checkpoint{};
    std::chrono::milliseconds checkpoint_interval{1000};
};

namespace detail {

inline void advance_pair(PairRecord& rec, u64 n_limit, const SieveTable& table, std::atomic<bool>& stop,
                         const std::atomic<bool>* external_stop) {
    const Family f = rec.family;
    for (u64 i = rec.next_index;; ++i) {
        if ((i & 255) == 0 && (stop.load(std::memory_order_relaxed) || (external_stop && external_stop->load()))) {
            stop = true;
            rec.next_index = i;
            return;
        }
        const u64 n = f.member(i);
        if (n > n_limit) {
            rec.next_index = i;
            rec.complete = true;
            return;
        }
        ++rec.checked;
        if (n < 2) {
            ++rec.skipped;
            continue;
        }
        if (const u64 s = hooley_sum_mod4(n, table); s != 0) {
            rec.failures.push_back({n, s});
            rec.next_index = i + 1;
            rec.complete = true;
            return;
        }
    }
}

}  // namespace detail

/// Scans every (A,B) with 2 <= A <= a_max, 0 <= B < A, over N = A n + B <= n_limit,
/// stopping each pair at its first failure. Resumes from `resume` when given.
inline PairScanState scan_all_pairs_state(u64 a_max, u64 n_limit, const SieveTable& table,
                                          const PairScanOptions& options = {},
                                          std::optional<PairScanState> resume = std::nullopt) {
    if (a_max < 2) throw DomainError("scan_all_pairs: a_max must be >= 2");
    table.require(n_limit, "scan_all_pairs");
    PairScanState state = resume ? std::move(*resume) : PairScanState{};
    if (resume) {
        if (state.a_max != a_max || state.n_limit != n_limit)
            throw FormatError("checkpoint was written for a_max=" + std::to_string(state.a_max) +
                              " n_limit=" + std::to_string(state.n_limit));
    } else {
        state.a_max = a_max;
        state.n_limit = n_limit;
    }

    std::vector<Family> work;
    for (u64 a = 2; a <= a_max; ++a)
        for (u64 b = 0; b < a; ++b) {
            const auto it = state.records.find({a, b});
            if (it == state.records.end() || !it->second.complete) work.push_back({a, b});
        }

    std::mutex mu;
    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> stop{false};
    u64 completed = 0;
    auto last_checkpoint = std::chrono::steady_clock::now();

    auto worker = [&] {
        while (!stop.load()) {
            if (options.external_stop && options.external_stop->load()) {
                stop = true;
                break;
            }
            const std::size_t idx = cursor.fetch_add(1);
            if (idx >= work.size()) break;
            PairRecord rec;
            {
                std::lock_guard lock(mu);
                auto it = state.records.find(work[idx]);
                rec = it != state.records.end() ? it->second : PairRecord{.family = work[idx]};
            }
            detail::advance_pair(rec, n_limit, table, stop, options.external_stop);
            std::lock_guard lock(mu);
            state.records[rec.family] = rec;
            if (rec.complete && options.stop_after_pairs != 0 && ++completed >= options.stop_after_pairs)
                stop = true;
            const auto now = std::chrono::steady_clock::now();
            if (options.on_checkpoint && now - last_checkpoint >= options.checkpoint_interval) {
                options.on_checkpoint(state);
                last_checkpoint = now;
            }
        }
    };

    const unsigned jobs = std::max(1u, options.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
    return state;
}

inline PairScanSummary summarize(const PairScanState& state) {
    PairScanSummary s{.a_max = state.a_max, .n_limit = state.n_limit};
    u64 complete_pairs = 0;
    for (const auto& [fam, rec] : state.records) {
        if (!rec.complete) continue;
        ++complete_pairs;
        if (rec.failures.empty()) {
            s.passing_pairs.push_back(fam);
            if (fam.modulus % 4 != 0 || fam.residue % 4 != 2) s.structural_check = false;
        }
    }
    const u64 expected = state.a_max >= 2 ? (state.a_max * (state.a_max + 1)) / 2 - 1 : 0;
    s.complete = complete_pairs == expected;
    return s;
}

inline PairScanSummary scan_all_pairs(u64 a_max, u64 n_limit, const SieveTable& table,
                                      const PairScanOptions& options = {}) {
    return summarize(scan_all_pairs_state(a_max, n_limit, table, options));
}

// Checkpoint: JSON lines, a header object followed by one object per touched
// pair in (A,B) order.
inline void checkpoint_write(const PairScanState& state, std::ostream& out) {
    nlohmann::ordered_json header;
    header["format"] = kCheckpointVersion;
    header["a_max"] = state.a_max;
    header["n_limit"] = state.n_limit;
    out << header.dump() << '\n';
    for (const auto& [fam, rec] : state.records) {
        nlohmann::ordered_json j;
        j["A"] = fam.modulus;
        j["B"] = fam.residue;
        j["next_n"] = rec.next_index;
        j["checked"] = rec.checked;
        j["skipped"] = rec.skipped;
        j["complete"] = rec.complete;
        j["failures"] = nlohmann::ordered_json::array();
        for (const auto& f : rec.failures) j["failures"].push_back({f.n, f.s_mod4});
        out << j.dump() << '\n';
    }
}

/// Writes to a sibling temporary file and renames it over `path`.
inline void checkpoint_write(const PairScanState& state, const std::filesystem::path& path) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw PreconditionError("cannot write checkpoint " + tmp.string());
        checkpoint_write(state, out);
        if (!out) throw PreconditionError("checkpoint write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline PairScanState checkpoint_read(std::istream& in) {
    PairScanState state;
    std::string line;
    std::size_t line_no = 0;
    try {
        if (!std::getline(in, line)) throw FormatError("checkpoint is empty");
        ++line_no;
        const auto header = nlohmann::json::parse(line);
        if (header.at("format").get<std::string>() != kCheckpointVersion)
            throw FormatError("checkpoint version " + header.at("format").get<std::string>() + ", expected " +
                              std::string(kCheckpointVersion));
        state.a_max = header.at("a_max").get<u64>();
        state.n_limit = header.at("n_limit").get<u64>();
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            const auto j = nlohmann::json::parse(line);
            PairRecord rec;
            rec.family = {j.at("A").get<u64>(), j.at("B").get<u64>()};
            validate_family(rec.family);
            if (rec.family.modulus > state.a_max) throw FormatError("pair modulus exceeds a_max");
            rec.next_index = j.at("next_n").get<u64>();
            rec.checked = j.at("checked").get<u64>();
            rec.skipped = j.at("skipped").get<u64>();
            rec.complete = j.at("complete").get<bool>();
            for (const auto& f : j.at("failures")) rec.failures.push_back({f.at(0).get<u64>(), f.at(1).get<u64>()});
            if (!state.records.emplace(rec.family, std::move(rec)).second)
                throw FormatError("duplicate pair in checkpoint");
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("checkpoint line " + std::to_string(line_no) + ": " + e.what());
    } catch (const DomainError& e) {
        throw FormatError("checkpoint line " + std::to_string(line_no) + ": " + e.what());
    }
    return state;
}

inline PairScanState checkpoint_read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open checkpoint " + path.string());
    return checkpoint_read(in);
}

namespace detail {

inline void csv_row(std::ostream& out, const Family& f, std::optional<u64> n_max_reached, u64 checked,
                    std::size_t failures, bool all_pass) {
    out << f.modulus << ',' << f.residue << ',';
    if (n_max_reached) out << *n_max_reached;
    out << ',' << checked << ',' << failures << ',' << (all_pass ? "true" : "false") << '\n';
}

}  // namespace detail

inline void write_csv(std::ostream& out, const PairScanState& state) {
    out << "# " << kCsvVersion << " a_max=" << state.a_max << " n_limit=" << state.n_limit << '\n';
    out << kCsvHeader << '\n';
    for (const auto& [fam, rec] : state.records) {
        std::optional<u64> reached;
        if (rec.next_index > 0) reached = rec.next_index - 1;
        detail::csv_row(out, fam, reached, rec.checked, rec.failures.size(), rec.passed());
    }
}

inline void write_csv(std::ostream& out, const FamilyScanResult& r) {
    out << "# " << kCsvVersion << " A=" << r.family.modulus << " B=" << r.family.residue << " n_max=" << r.n_max
        << '\n';
    out << kCsvHeader << '\n';
    detail::csv_row(out, r.family, r.n_max, r.checked, r.failures.size(), r.all_pass);
}

/// One JSON object per failure, at most kReportedFailureCap per pair.
inline void write_failures(std::ostream& out, const Family& f, const std::vector<FailurePoint>& failures) {
    const std::size_t shown = std::min(failures.size(), kReportedFailureCap);
    for (std::size_t i = 0; i < shown; ++i) {
        nlohmann::ordered_json j;
        j["A"] = f.modulus;
        j["B"] = f.residue;
        j["N"] = failures[i].n;
        j["S_mod4"] = failures[i].s_mod4;
        out << j.dump() << '\n';
    }
}

}  // namespace pcl
