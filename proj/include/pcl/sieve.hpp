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

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcl/arith.hpp"
#include "pcl/error.hpp"

namespace pcl {

inline constexpr u64 kDefaultSieveMaxLimit = 100'000'000;
inline constexpr u64 kDefaultMemoryBudget = u64{2} << 30;

/// Parses a byte count with an optional K/M/G suffix (binary multiples).
inline std::optional<u64> parse_byte_count(const std::string& text) {
    if (text.empty()) return std::nullopt;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(text.c_str(), &end, 10);
    if (end == text.c_str()) return std::nullopt;
    u64 scale = 1;
    const std::string suffix(end);
    if (suffix == "K" || suffix == "k") scale = u64{1} << 10;
    else if (suffix == "M" || suffix == "m") scale = u64{1} << 20;
    else if (suffix == "G" || suffix == "g") scale = u64{1} << 30;
    else if (!suffix.empty()) return std::nullopt;
    u64 out;
    if (__builtin_mul_overflow(static_cast<u64>(value), scale, &out)) return std::nullopt;
    return out;
}

/// Memory budget for sieve construction; PCL_MAX_MEMORY overrides the default.
inline u64 memory_budget_from_env() {
    if (const char* env = std::getenv("PCL_MAX_MEMORY")) {
        if (auto v = parse_byte_count(env)) return *v;
        throw PreconditionError(std::string("PCL_MAX_MEMORY is not a byte count: ") + env);
    }
    return kDefaultMemoryBudget;
}

struct SieveOptions {
    u64 max_limit = kDefaultSieveMaxLimit;
    u64 memory_budget = kDefaultMemoryBudget;
};

/// sigma_0 and sigma_1 on [1, limit]. Immutable once built; index 0 is unused.
class SieveTable {
public:
    SieveTable() = default;

    u64 limit() const noexcept { return limit_; }

    std::uint32_t sigma0(u64 n) const noexcept { return sigma0_[n]; }
    u64 sigma1(u64 n) const noexcept { return sigma1_[n]; }

    std::span<const std::uint32_t> sigma0_values() const noexcept { return sigma0_; }
    std::span<const u64> sigma1_values() const noexcept { return sigma1_; }

    /// Throws PreconditionError unless n <= limit().
    void require(u64 n, const char* who) const {
        if (n > limit_)
            throw PreconditionError(std::string(who) + ": sieve limit " + std::to_string(limit_) +
                                    " < required " + std::to_string(n));
    }

    static u64 estimated_bytes(u64 limit) {
        // sigma0 + sigma1 + smallest-prime-power + exponent scratch, plus primes.
        return (limit + 1) * (4 + 8 + 4 + 1) + (limit / 8 + 64) * 4;
    }

    friend SieveTable build_sieve(u64 limit, const SieveOptions& options);
    friend SieveTable load_sieve(const std::filesystem::path& path);

private:
    u64 limit_ = 0;
    std::vector<std::uint32_t> sigma0_;
    std::vector<u64> sigma1_;
};

/// Linear sieve: each composite i*p is visited once, with p its smallest prime.
/// Tracks p^e (the smallest-prime-power part) to split off the coprime cofactor.
inline SieveTable build_sieve(u64 limit, const SieveOptions& options = {}) {
    if (limit == 0) throw DomainError("build_sieve: limit must be >= 1");
    if (limit > options.max_limit)
        throw ResourceError("build_sieve: limit " + std::to_string(limit) + " exceeds configured maximum " +
                            std::to_string(options.max_limit));
    if (limit >= (u64{1} << 32))
        throw ResourceError("build_sieve: limit must fit in 32 bits");
    if (SieveTable::estimated_bytes(limit) > options.memory_budget)
        throw ResourceError("build_sieve: limit " + std::to_string(limit) + " needs ~" +
                            std::to_string(SieveTable::estimated_bytes(limit)) + " bytes, budget is " +
                            std::to_string(options.memory_budget));

    SieveTable t;
    t.limit_ = limit;
    t.sigma0_.assign(limit + 1, 0);
    t.sigma1_.assign(limit + 1, 0);
    std::vector<std::uint32_t> prime_power(limit + 1, 0);
    std::vector<std::uint8_t> exponent(limit + 1, 0);
    std::vector<std::uint32_t> primes;

    t.sigma0_[1] = 1;
    t.sigma1_[1] = 1;
    prime_power[1] = 1;
    for (u64 i = 2; i <= limit; ++i) {
        if (t.sigma0_[i] == 0) {
            primes.push_back(static_cast<std::uint32_t>(i));
            t.sigma0_[i] = 2;
            t.sigma1_[i] = i + 1;
            prime_power[i] = static_cast<std::uint32_t>(i);
            exponent[i] = 1;
        }
        for (const std::uint32_t p : primes) {
            const u64 ip = i * p;
            if (ip > limit) break;
            if (i % p == 0) {
                const u64 pe = prime_power[i];
                const u64 rest = i / pe;
                const u64 pe_next = pe * p;
                prime_power[ip] = static_cast<std::uint32_t>(pe_next);
                exponent[ip] = static_cast<std::uint8_t>(exponent[i] + 1);
                t.sigma0_[ip] = t.sigma0_[rest] * (exponent[ip] + 1u);
                t.sigma1_[ip] = t.sigma1_[rest] * ((pe_next * p - 1) / (p - 1));
                break;
            }
            prime_power[ip] = p;
            exponent[ip] = 1;
            t.sigma0_[ip] = t.sigma0_[i] * 2;
            t.sigma1_[ip] = t.sigma1_[i] * (p + 1u);
        }
    }
    return t;
}

// Binary dump: magic, u64 limit, u32 sigma0[1..limit], u64 sigma1[1..limit],
// all little-endian.
inline constexpr char kSieveMagic[8] = {'P', 'C', 'L', 'S', 'V', 'T', '0', '1'};

inline void save_sieve(const SieveTable& table, const std::filesystem::path& path) {
    static_assert(std::endian::native == std::endian::little);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw PreconditionError("cannot open " + path.string() + " for writing");
    const u64 limit = table.limit();
    out.write(kSieveMagic, sizeof kSieveMagic);
    out.write(reinterpret_cast<const char*>(&limit), sizeof limit);
    out.write(reinterpret_cast<const char*>(table.sigma0_values().data() + 1),
              static_cast<std::streamsize>(limit * sizeof(std::uint32_t)));
    out.write(reinterpret_cast<const char*>(table.sigma1_values().data() + 1),
              static_cast<std::streamsize>(limit * sizeof(u64)));
    if (!out) throw PreconditionError("write failed: " + path.string());
}

inline SieveTable load_sieve(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PreconditionError("cannot open " + path.string());
    char magic[sizeof kSieveMagic];
    u64 limit = 0;
    in.read(magic, sizeof magic);
    in.read(reinterpret_cast<char*>(&limit), sizeof limit);
    if (!in || std::memcmp(magic, kSieveMagic, sizeof magic) != 0)
        throw FormatError("not a sieve dump (bad magic): " + path.string());
    const auto expected = sizeof magic + sizeof limit + limit * (sizeof(std::uint32_t) + sizeof(u64));
    std::error_code ec;
    if (limit == 0 || std::filesystem::file_size(path, ec) != expected || ec)
        throw FormatError("sieve dump size does not match its header: " + path.string());

    SieveTable t;
    t.limit_ = limit;
    t.sigma0_.assign(limit + 1, 0);
    t.sigma1_.assign(limit + 1, 0);
    in.read(reinterpret_cast<char*>(t.sigma0_.data() + 1), static_cast<std::streamsize>(limit * 4));
    in.read(reinterpret_cast<char*>(t.sigma1_.data() + 1), static_cast<std::streamsize>(limit * 8));
    if (!in || t.sigma0_[1] != 1 || t.sigma1_[1] != 1) throw FormatError("corrupt sieve dump: " + path.string());
    return t;
}

}  // namespace pcl
