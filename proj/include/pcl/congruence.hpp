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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "pcl/arith.hpp"
#include "pcl/error.hpp"
#include "pcl/partition.hpp"
#include "pcl/sieve.hpp"

namespace pcl {

/// Residue family N = modulus * n + residue, n >= 0.
struct Family {
    u64 modulus;
    u64 residue;

    bool contains(u64 n) const noexcept { return n >= residue && n % modulus == residue; }
    u64 member(u64 index) const { return checked_add(checked_mul(modulus, index), residue); }
    friend auto operator<=>(const Family&, const Family&) = default;
};

inline constexpr std::array<Family, 5> kTheoremFamilies{{{16, 14}, {36, 30}, {72, 42}, {196, 70}, {252, 114}}};
inline constexpr std::array<Family, 2> kOddCorollaryFamilies{{{16, 14}, {196, 70}}};
inline constexpr std::array<Family, 3> kMod3CorollaryFamilies{{{36, 30}, {72, 42}, {252, 114}}};

/// Every theorem family containing n; overlaps are all reported.
inline std::vector<Family> family_membership(u64 n) {
    std::vector<Family> out;
    for (const auto& f : kTheoremFamilies)
        if (f.contains(n)) out.push_back(f);
    return out;
}

/// S(N) = sum over 1 <= k < sqrt(N) of sigma0(N - k^2).
inline u64 hooley_sum(u64 n, const SieveTable& table) {
    if (n < 2) throw DomainError("hooley_sum: N must be >= 2");
    table.require(n - 1, "hooley_sum");
    u64 sum = 0;
    for (u64 k = 1; k * k < n; ++k) sum += table.sigma0(n - k * k);
    return sum;
}

/// sigma1(N) mod 8 from the factorization of N.
inline u64 sigma1_mod8(u64 n) { return divisor_sum_mod(factorize(n), 8); }

enum class Statement { thm_main, doublecount, cor_odd, cor_mod3, sigma1_mod8 };

inline constexpr std::array<std::pair<Statement, std::string_view>, 5> kStatementNames{{
    {Statement::thm_main, "thm_main"},
    {Statement::doublecount, "doublecount"},
    {Statement::cor_odd, "cor_odd"},
    {Statement::cor_mod3, "cor_mod3"},
    {Statement::sigma1_mod8, "sigma1_mod8"},
}};

inline std::string_view to_string(Statement s) {
    for (const auto& [st, name] : kStatementNames)
        if (st == s) return name;
    return "unknown";
}

inline Statement statement_from_string(std::string_view text) {
    for (const auto& [st, name] : kStatementNames)
        if (name == text) return st;
    throw FormatError("unknown statement: " + std::string(text));
}

/// Outcome of checking one statement at one N. holds is empty when the
/// hypotheses are not met; a false holds is a counterexample.
struct CongruenceReport {
    u64 n = 0;
    Statement statement = Statement::thm_main;
    bool hypotheses_met = false;
    std::string reason;
    std::vector<std::pair<std::string, u64>> values;
    std::optional<bool> holds;

    std::optional<u64> value(std::string_view name) const {
        for (const auto& [k, v] : values)
            if (k == name) return v;
        return std::nullopt;
    }
    bool is_counterexample() const noexcept { return hypotheses_met && holds == false; }

    friend bool operator==(const CongruenceReport&, const CongruenceReport&) = default;
};

inline CongruenceReport make_report(u64 n, Statement s) {
    CongruenceReport r;
    r.n = n;
    r.statement = s;
    return r;
}

namespace detail {

inline std::string family_list(std::span<const Family> families) {
    std::string s;
    for (const auto& f : families) {
        if (!s.empty()) s += ", ";
        s += "(" + std::to_string(f.modulus) + "," + std::to_string(f.residue) + ")";
    }
    return s;
}

inline bool in_any(u64 n, std::span<const Family> families) {
    for (const auto& f : families)
        if (f.contains(n)) return true;
    return false;
}

}  // namespace detail

inline CongruenceReport verify_thm_main(u64 n, const SieveTable& table) {
    CongruenceReport r = make_report(n, Statement::thm_main);
    const auto fams = family_membership(n);
    r.hypotheses_met = !fams.empty();
    r.reason = r.hypotheses_met ? "N in family " + detail::family_list(fams)
                                : "N is not in any of " + detail::family_list(kTheoremFamilies);
    if (n >= 2) {
        const u64 s = hooley_sum(n, table);
        r.values = {{"S", s}, {"S_mod4", s % 4}};
        if (r.hypotheses_met) r.holds = s % 4 == 0;
    }
    return r;
}

/// nu2(N) + S(N) + sigma1(N)/2 = 0 (mod 4), with the rewritten form
/// (sigma0(N) + conv(N))/2 + S(N) computed alongside; the two must be equal.
inline CongruenceReport verify_doublecount(u64 n, const SieveTable& table) {
    CongruenceReport r = make_report(n, Statement::doublecount);
    if (n % 4 != 2) {
        r.reason = "N is not twice an odd number (N mod 4 = " + std::to_string(n % 4) + ")";
        return r;
    }
    if (is_sum_of_two_squares(n)) {
        r.reason = "N is a sum of two squares";
        return r;
    }
    r.hypotheses_met = true;
    r.reason = "N = 2m with m odd and N is not a sum of two squares";
    table.require(n, "verify_doublecount");
    const u64 nu2 = nu2_formula(n, table);
    const u64 s = hooley_sum(n, table);
    const u64 sigma1 = table.sigma1(n);
    if (sigma1 % 2 != 0) throw ArithmeticError("verify_doublecount: sigma1(N) is odd for N=" + std::to_string(n));
    const u64 total = checked_add(checked_add(nu2, s), sigma1 / 2);
    const u64 bracket = checked_add(table.sigma0(n), divisor_convolution(n, table));
    if (bracket % 2 != 0)
        throw ArithmeticError("verify_doublecount: sigma0(N) + conv(N) is odd for N=" + std::to_string(n));
    const u64 rewritten = checked_add(bracket / 2, s);
    if (rewritten != total)
        throw ArithmeticError("verify_doublecount: rewritten form disagrees for N=" + std::to_string(n));
    r.values = {{"nu2", nu2},         {"S", s},
                {"sigma1", sigma1},   {"half_sigma1", sigma1 / 2},
                {"total", total},     {"total_mod4", total % 4},
                {"rewritten", rewritten}, {"rewritten_mod4", rewritten % 4}};
    r.holds = total % 4 == 0;
    return r;
}

/// Parity of #{odd k : k^2 < N, sigma0(N - k^2) = 2 (mod 4)}. Records how many
/// even j break sigma0(N - j^2) = 0 (mod 4) as supporting_failures.
inline CongruenceReport verify_cor_odd(u64 n, const SieveTable& table) {
    CongruenceReport r = make_report(n, Statement::cor_odd);
    r.hypotheses_met = detail::in_any(n, kOddCorollaryFamilies);
    if (!r.hypotheses_met) {
        r.reason = "N is not 14 mod 16 or 70 mod 196";
        return r;
    }
    r.reason = "N in family " + detail::family_list(family_membership(n));
    table.require(n - 1, "verify_cor_odd");
    u64 odd_count = 0, supporting_failures = 0, even_terms = 0;
    for (u64 k = 1; k * k < n; ++k) {
        const u64 tau = table.sigma0(n - k * k);
        if (k % 2 == 1) {
            if (tau % 4 == 2) ++odd_count;
        } else {
            ++even_terms;
            if (tau % 4 != 0) ++supporting_failures;
        }
    }
    r.values = {{"odd_k_2mod4", odd_count},
                {"even_terms", even_terms},
                {"supporting_failures", supporting_failures}};
    r.holds = odd_count % 2 == 0;
    return r;
}

/// Sum of sigma0(N - k^2) over k not divisible by 3, mod 4. Records how many
/// k = 3a break sigma0(N - 9a^2) = 0 (mod 4) as supporting_failures.
inline CongruenceReport verify_cor_mod3(u64 n, const SieveTable& table) {
    CongruenceReport r = make_report(n, Statement::cor_mod3);
    r.hypotheses_met = detail::in_any(n, kMod3CorollaryFamilies);
    if (!r.hypotheses_met) {
        r.reason = "N is not in " + detail::family_list(kMod3CorollaryFamilies);
        return r;
    }
    r.reason = "N in family " + detail::family_list(family_membership(n));
    table.require(n - 1, "verify_cor_mod3");
    u64 restricted = 0, supporting_failures = 0, multiples = 0;
    for (u64 k = 1; k * k < n; ++k) {
        const u64 tau = table.sigma0(n - k * k);
        if (k % 3 != 0) {
            restricted += tau;
        } else {
            ++multiples;
            if (tau % 4 != 0) ++supporting_failures;
        }
    }
    r.values = {{"restricted_sum", restricted},
                {"restricted_mod4", restricted % 4},
                {"multiple_of_3_terms", multiples},
                {"supporting_failures", supporting_failures}};
    r.holds = restricted % 4 == 0;
    return r;
}

inline CongruenceReport verify_sigma1_mod8(u64 n) {
    CongruenceReport r = make_report(n, Statement::sigma1_mod8);
    if (n == 0) throw DomainError("verify_sigma1_mod8: N must be >= 1");
    const auto fams = family_membership(n);
    r.hypotheses_met = !fams.empty();
    r.reason = r.hypotheses_met ? "N in family " + detail::family_list(fams)
                                : "N is not in any of " + detail::family_list(kTheoremFamilies);
    const u64 residue = sigma1_mod8(n);
    r.values = {{"sigma1_mod8", residue}};
    if (r.hypotheses_met) r.holds = residue == 0;
    return r;
}

inline CongruenceReport verify(Statement s, u64 n, const SieveTable& table) {
    switch (s) {
        case Statement::thm_main: return verify_thm_main(n, table);
        case Statement::doublecount: return verify_doublecount(n, table);
        case Statement::cor_odd: return verify_cor_odd(n, table);
        case Statement::cor_mod3: return verify_cor_mod3(n, table);
        case Statement::sigma1_mod8: return verify_sigma1_mod8(n);
    }
    throw DomainError("unknown statement");
}

// One object per line: n, statement, hypotheses_met, reason, values, holds.
inline nlohmann::ordered_json to_json(const CongruenceReport& r) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["statement"] = to_string(r.statement);
    j["hypotheses_met"] = r.hypotheses_met;
    j["reason"] = r.reason;
    j["values"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.values) j["values"][k] = v;
    j["holds"] = r.holds ? nlohmann::ordered_json(*r.holds) : nlohmann::ordered_json(nullptr);
    return j;
}

inline CongruenceReport report_from_json(const nlohmann::ordered_json& j) {
    try {
        CongruenceReport r;
        r.n = j.at("n").get<u64>();
        r.statement = statement_from_string(j.at("statement").get<std::string>());
        r.hypotheses_met = j.at("hypotheses_met").get<bool>();
        r.reason = j.value("reason", std::string{});
        for (const auto& [k, v] : j.at("values").items()) r.values.emplace_back(k, v.get<u64>());
        if (!j.at("holds").is_null()) r.holds = j.at("holds").get<bool>();
        if (r.holds && !r.hypotheses_met) throw FormatError("report has a verdict without hypotheses");
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed report: ") + e.what());
    }
}

inline std::string format_text(const CongruenceReport& r) {
    std::string s = std::string(to_string(r.statement)) + " N=" + std::to_string(r.n) + ": ";
    if (!r.hypotheses_met)
        s += "hypotheses unmet (" + r.reason + ")";
    else
        s += *r.holds ? "holds" : "FAILS";
    if (!r.values.empty()) {
        s += " [";
        bool first = true;
        for (const auto& [k, v] : r.values) {
            if (!first) s += ", ";
            first = false;
            s += k + "=" + std::to_string(v);
        }
        s += "]";
    }
    return s;
}

}  // namespace pcl
