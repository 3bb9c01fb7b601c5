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

#include <cstdint>
#include <string>
#include <vector>

#include "pcl/arith.hpp"
#include "pcl/error.hpp"
#include "pcl/sieve.hpp"

namespace pcl {

inline constexpr u64 kBruteForceBound = 5000;
inline constexpr u64 kConvolutionBound = 1'000'000;

/// count_larger copies of larger followed by count_smaller copies of smaller.
struct PartitionTwoSizes {
    u64 larger;
    u64 smaller;
    u64 count_larger;
    u64 count_smaller;

    u64 total() const noexcept { return larger * count_larger + smaller * count_smaller; }
    friend auto operator<=>(const PartitionTwoSizes&, const PartitionTwoSizes&) = default;
};

namespace detail {

inline void require_brute_force_bound(u64 n, u64 bound, const char* who) {
    if (n == 0) throw DomainError(std::string(who) + ": N must be >= 1");
    if (n > bound)
        throw ResourceError(std::string(who) + ": N=" + std::to_string(n) + " exceeds brute-force bound " +
                            std::to_string(bound));
}

// Partitions of `remaining` using exactly `sizes` distinct part values, all
// below `below`, each used with multiplicity >= 1.
inline u64 count_with_sizes(u64 remaining, u64 below, unsigned sizes) {
    if (sizes == 0) return remaining == 0 ? 1 : 0;
    if (sizes == 1) {
        u64 count = 0;
        for (u64 v = 1; v < below && v <= remaining; ++v)
            if (remaining % v == 0) ++count;
        return count;
    }
    // The other sizes-1 values are distinct and smaller than v, so they
    // consume at least 1 + 2 + ... + (sizes-1) cells.
    const u64 reserve = u64{sizes - 1} * sizes / 2;
    if (remaining < reserve) return 0;
    u64 count = 0;
    for (u64 v = std::min(below - 1, remaining - reserve); v >= sizes; --v) {
        for (u64 used = v; used + reserve <= remaining; used += v)
            count += count_with_sizes(remaining - used, v, sizes - 1);
    }
    return count;
}

}  // namespace detail

/// All partitions of n with exactly two part sizes, ordered by
/// (larger, smaller, count_larger).
inline std::vector<PartitionTwoSizes> enumerate_two_size_partitions(u64 n, u64 bound = kBruteForceBound) {
    detail::require_brute_force_bound(n, bound, "enumerate_two_size_partitions");
    std::vector<PartitionTwoSizes> out;
    for (u64 larger = 2; larger <= n; ++larger) {
        for (u64 smaller = 1; smaller < larger; ++smaller) {
            for (u64 k1 = 1; k1 * larger < n; ++k1) {
                const u64 rest = n - k1 * larger;
                if (rest % smaller == 0) out.push_back({larger, smaller, k1, rest / smaller});
            }
        }
    }
    return out;
}

/// Number of partitions of n whose set of distinct parts has exactly k elements.
inline u64 nu_k_bruteforce(u64 n, unsigned k, u64 bound = kBruteForceBound) {
    detail::require_brute_force_bound(n, bound, "nu_k_bruteforce");
    if (k == 0) throw DomainError("nu_k_bruteforce: k must be >= 1");
    return detail::count_with_sizes(n, n + 1, k);
}

/// sum_{k=1}^{n-1} sigma0(k) sigma0(n-k), summed over k <= n/2 and doubled.
inline u64 divisor_convolution(u64 n, const SieveTable& table) {
    if (n < 2) throw DomainError("divisor_convolution: N must be >= 2");
    if (n > kConvolutionBound)
        throw ResourceError("divisor_convolution: N=" + std::to_string(n) + " exceeds convolution bound " +
                            std::to_string(kConvolutionBound));
    table.require(n - 1, "divisor_convolution");
    const auto s0 = table.sigma0_values();
    u64 half = 0;
    for (u64 k = 1; 2 * k < n; ++k) half = checked_add(half, checked_mul(s0[k], s0[n - k]));
    u64 total = checked_mul(half, 2);
    if (n % 2 == 0) total = checked_add(total, checked_mul(s0[n / 2], s0[n / 2]));
    return total;
}

/// nu_2 via the divisor-convolution identity. The bracketed quantity must be
/// even; an odd value means the table is wrong.
inline u64 nu2_formula(u64 n, const SieveTable& table) {
    if (n < 2) throw DomainError("nu2_formula: N must be >= 2");
    table.require(n, "nu2_formula");
    const u64 bracket = checked_sub(checked_add(divisor_convolution(n, table), table.sigma0(n)), table.sigma1(n));
    if (bracket % 2 != 0)
        throw ArithmeticError("nu2_formula: bracket is odd for N=" + std::to_string(n));
    return bracket / 2;
}

}  // namespace pcl
