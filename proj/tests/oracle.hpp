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

// Test-only reference computations. Nothing here calls into the library.

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace pcl::oracle {

inline std::uint64_t trial_sigma0(std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t d = 1; d <= n; ++d)
        if (n % d == 0) ++c;
    return c;
}

inline std::uint64_t trial_sigma1(std::uint64_t n) {
    std::uint64_t s = 0;
    for (std::uint64_t d = 1; d <= n; ++d)
        if (n % d == 0) s += d;
    return s;
}

/// Divisor counts for 0..limit by the harmonic double loop.
inline std::vector<std::uint64_t> harmonic_sigma0(std::uint64_t limit) {
    std::vector<std::uint64_t> out(limit + 1, 0);
    for (std::uint64_t d = 1; d <= limit; ++d)
        for (std::uint64_t m = d; m <= limit; m += d) ++out[m];
    return out;
}

inline bool two_squares_double_loop(std::uint64_t n) {
    for (std::uint64_t a = 0; a * a <= n; ++a)
        for (std::uint64_t b = a; a * a + b * b <= n; ++b)
            if (a * a + b * b == n) return true;
    return false;
}

/// p(0..limit) from Euler's pentagonal-number recurrence.
inline std::vector<std::int64_t> pentagonal_partition_counts(int limit) {
    std::vector<std::int64_t> p(limit + 1, 0);
    p[0] = 1;
    for (int n = 1; n <= limit; ++n) {
        std::int64_t total = 0;
        for (int k = 1;; ++k) {
            const int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
            if (g1 > n) break;
            const int sign = (k % 2 == 1) ? 1 : -1;
            total += sign * p[n - g1];
            if (g2 <= n) total += sign * p[n - g2];
        }
        p[n] = total;
    }
    return p;
}

namespace detail {
inline void each_partition(int remaining, int max_part, std::vector<int>& parts, std::map<int, std::int64_t>& by_sizes) {
    if (remaining == 0) {
        by_sizes[static_cast<int>(std::set<int>(parts.begin(), parts.end()).size())]++;
        return;
    }
    for (int v = std::min(remaining, max_part); v >= 1; --v) {
        parts.push_back(v);
        each_partition(remaining - v, v, parts, by_sizes);
        parts.pop_back();
    }
}
}  // namespace detail

/// Generates every partition of n and tallies them by number of distinct parts.
inline std::map<int, std::int64_t> partitions_by_distinct_sizes(int n) {
    std::map<int, std::int64_t> out;
    std::vector<int> parts;
    detail::each_partition(n, n, parts, out);
    return out;
}

inline std::uint64_t hooley_sum_trial(std::uint64_t n) {
    std::uint64_t s = 0;
    for (std::uint64_t k = 1; k * k < n; ++k) s += trial_sigma0(n - k * k);
    return s;
}

}  // namespace pcl::oracle
