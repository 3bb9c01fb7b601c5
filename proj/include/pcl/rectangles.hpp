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
#include <array>
#include <compare>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pcl/arith.hpp"
#include "pcl/error.hpp"
#include "pcl/partition.hpp"
#include "pcl/sieve.hpp"

namespace pcl {

inline constexpr u64 kEnumerationBound = 5000;

/// rows x cols grid of cells.
struct Rectangle {
    u64 rows = 1;
    u64 cols = 1;

    constexpr u64 cells() const noexcept { return rows * cols; }
    constexpr Rectangle transpose() const noexcept { return {cols, rows}; }
    constexpr bool is_square() const noexcept { return rows == cols; }

    friend constexpr auto operator<=>(const Rectangle&, const Rectangle&) = default;
};

inline std::string to_string(const Rectangle& r) {
    return std::to_string(r.rows) + "x" + std::to_string(r.cols);
}

/// Unordered pair of rectangles, each with rows <= cols. Stored so that
/// first precedes second by (cells, rows, cols).
class CanonicalPair {
public:
    CanonicalPair(Rectangle a, Rectangle b) {
        if (a.rows == 0 || a.cols == 0 || b.rows == 0 || b.cols == 0)
            throw DomainError("rectangles need at least one row and column");
        if (a.rows > a.cols || b.rows > b.cols)
            throw DomainError("canonical pair rectangles must have rows <= cols");
        if (key(b) < key(a)) std::swap(a, b);
        first_ = a;
        second_ = b;
    }

    const Rectangle& first() const noexcept { return first_; }
    const Rectangle& second() const noexcept { return second_; }
    u64 cells() const noexcept { return first_.cells() + second_.cells(); }

    friend bool operator==(const CanonicalPair&, const CanonicalPair&) = default;
    friend auto operator<=>(const CanonicalPair& l, const CanonicalPair& r) {
        return std::tuple(key(l.first_), key(l.second_)) <=> std::tuple(key(r.first_), key(r.second_));
    }

private:
    static std::tuple<u64, u64, u64> key(const Rectangle& r) { return {r.cells(), r.rows, r.cols}; }

    Rectangle first_;
    Rectangle second_;
};

/// Unordered pair of oriented rectangles: {X,Y} == {Y,X}, but orientation
/// is kept, so {X,Y} != {X,Y^T} unless Y is square.
class GluedPair {
public:
    GluedPair(Rectangle a, Rectangle b) : x_(std::min(a, b)), y_(std::max(a, b)) {}

    const Rectangle& x() const noexcept { return x_; }
    const Rectangle& y() const noexcept { return y_; }
    u64 cells() const noexcept { return x_.cells() + y_.cells(); }

    bool same_columns() const noexcept { return x_.cols == y_.cols; }
    bool has_square() const noexcept { return x_.is_square() || y_.is_square(); }
    bool is_transpose_pair() const noexcept { return x_ == y_.transpose(); }

    friend auto operator<=>(const GluedPair&, const GluedPair&) = default;

private:
    Rectangle x_;
    Rectangle y_;
};

inline std::string to_string(const GluedPair& p) {
    return "{" + to_string(p.x()) + "," + to_string(p.y()) + "}";
}

struct MultiplicityRecord {
    u64 mA = 0, mB = 0, mC = 0, mD = 0, mE = 0;
    friend bool operator==(const MultiplicityRecord&, const MultiplicityRecord&) = default;
};

struct MultisetCounts {
    u64 a = 0, b = 0, c = 0, d = 0, e = 0;
    friend bool operator==(const MultisetCounts&, const MultisetCounts&) = default;
};

/// Rectangles with the given cell count and rows <= cols, by increasing rows.
inline std::vector<Rectangle> upright_rectangles(u64 cells) {
    std::vector<Rectangle> out;
    for (u64 r = 1; r * r <= cells; ++r)
        if (cells % r == 0) out.push_back({r, cells / r});
    return out;
}

/// Every canonical pair for n, each exactly once, in increasing order.
inline std::vector<CanonicalPair> canonical_pairs(u64 n, u64 bound = kEnumerationBound) {
    if (n < 2) throw DomainError("canonical_pairs: N must be >= 2");
    if (n > bound)
        throw ResourceError("canonical_pairs: N=" + std::to_string(n) + " exceeds enumeration bound " +
                            std::to_string(bound));
    std::vector<CanonicalPair> out;
    for (u64 small = 1; 2 * small <= n; ++small) {
        const auto lower = upright_rectangles(small);
        const auto upper = upright_rectangles(n - small);
        for (std::size_t i = 0; i < lower.size(); ++i) {
            // Equal cell counts: take each unordered pair once.
            const std::size_t j0 = (2 * small == n) ? i : 0;
            for (std::size_t j = j0; j < upper.size(); ++j) out.emplace_back(lower[i], upper[j]);
        }
    }
    return out;
}

/// X * Y: the four orientation variants, repeats kept.
inline std::array<GluedPair, 4> glue(const Rectangle& x, const Rectangle& y) {
    const Rectangle xt = x.transpose(), yt = y.transpose();
    return {GluedPair(x, y), GluedPair(x, yt), GluedPair(xt, y), GluedPair(xt, yt)};
}

/// Multiplicities of p in A, B, C, D, E by the case analysis over column
/// equality, squares and transpose pairing. Valid only when N is not a sum of
/// two squares; configurations that would contradict that throw.
inline MultiplicityRecord classify(const GluedPair& p, u64 n) {
    if (p.cells() != n)
        throw PreconditionError("classify: pair " + to_string(p) + " does not have " + std::to_string(n) + " cells");
    if (p.x().is_square() && p.y().is_square())
        throw HypothesisError("classify: both rectangles of " + to_string(p) + " are squares, so N=" +
                              std::to_string(n) + " is a sum of two squares");
    if (!p.same_columns()) {
        if (p.is_transpose_pair()) return {2, 1, 0, 0, 1};
        if (p.has_square()) return {2, 1, 1, 0, 0};
        return {1, 1, 0, 0, 0};
    }
    if (p.is_transpose_pair())
        throw HypothesisError("classify: " + to_string(p) + " is a square transpose pair, so N=" + std::to_string(n) +
                              " is twice a square");
    if (p.has_square()) return {2, 0, 1, 1, 0};
    return {1, 0, 0, 1, 0};
}

struct MultisetEnumeration {
    MultisetCounts counts;
    u64 canonical_pair_count = 0;
    /// mA is the observed multiplicity in A; mB..mE are set memberships.
    std::map<GluedPair, MultiplicityRecord> records;
};

struct EnumerationOptions {
    u64 bound = kEnumerationBound;
    /// Allow N that is a sum of two squares; counts are returned raw and the
    /// Table-1 cross-check is skipped.
    bool unsafe = false;
};

/// Builds the multiset A by gluing every canonical pair, then takes the
/// distinct elements and their membership in B, C, D, E straight from the
/// set definitions.
inline MultisetEnumeration enumerate_multiset_A(u64 n, const EnumerationOptions& options = {}) {
    if (n < 2) throw DomainError("enumerate_multiset_A: N must be >= 2");
    if (!options.unsafe && is_sum_of_two_squares(n))
        throw HypothesisError("enumerate_multiset_A: N=" + std::to_string(n) + " is a sum of two squares");
    const auto pairs = canonical_pairs(n, options.bound);

    MultisetEnumeration out;
    out.canonical_pair_count = pairs.size();
    for (const auto& cp : pairs)
        for (const auto& g : glue(cp.first(), cp.second())) ++out.records[g].mA;

    for (auto& [g, rec] : out.records) {
        rec.mB = g.same_columns() ? 0 : 1;
        rec.mC = g.has_square() ? 1 : 0;
        rec.mD = g.same_columns() ? 1 : 0;
        rec.mE = g.is_transpose_pair() ? 1 : 0;
        out.counts.a += rec.mA;
        out.counts.b += rec.mB;
        out.counts.c += rec.mC;
        out.counts.d += rec.mD;
        out.counts.e += rec.mE;
        if (!options.unsafe && classify(g, n) != rec)
            throw ArithmeticError("enumerate_multiset_A: observed multiplicities of " + to_string(g) +
                                  " disagree with the case table");
    }
    return out;
}

/// Closed-form counts. |A| is 4 times the number of canonical pairs, counted
/// as sum over cell splits of r(c) r(N-c) with r(c) = ceil(sigma0(c)/2).
inline MultisetCounts counts_by_formula(u64 n, const SieveTable& table) {
    if (n < 2) throw DomainError("counts_by_formula: N must be >= 2");
    table.require(n, "counts_by_formula");
    if (is_sum_of_two_squares(n))
        throw HypothesisError("counts_by_formula: N=" + std::to_string(n) + " is a sum of two squares");

    auto upright = [&](u64 c) -> u64 { return (table.sigma0(c) + 1) / 2; };
    u64 pairs = 0;
    for (u64 c = 1; 2 * c <= n; ++c) {
        const u64 rc = upright(c);
        pairs = checked_add(pairs, 2 * c == n ? rc * (rc + 1) / 2 : checked_mul(rc, upright(n - c)));
    }

    MultisetCounts counts;
    counts.a = checked_mul(4, pairs);
    counts.b = nu2_formula(n, table);
    for (u64 k = 1; k * k < n; ++k) counts.c += table.sigma0(n - k * k);
    for (u64 d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        counts.d += d / 2;
        if (d * d != n) counts.d += (n / d) / 2;
    }
    if (n % 2 == 0) {
        const u64 tau = table.sigma0(n / 2);
        if (tau % 2 != 0)
            throw HypothesisError("counts_by_formula: N/2=" + std::to_string(n / 2) + " is a perfect square");
        counts.e = tau / 2;
    }

    if (n % 4 == 2) {
        const u64 s1 = table.sigma1(n);
        const u64 s0_half = table.sigma0(n / 2);
        if (s1 % 2 != 0 || s0_half % 2 != 0)
            throw ArithmeticError("counts_by_formula: odd sigma1(N) or sigma0(N/2) for N=" + std::to_string(n));
        const u64 d_simplified = s1 / 2 - s0_half / 2;
        if (d_simplified != counts.d)
            throw ArithmeticError("counts_by_formula: simplified |D| disagrees with divisor sum for N=" +
                                  std::to_string(n));
    }
    return counts;
}

/// Text Young diagram for a glued pair: rows of '#', wider rectangle on top.
inline std::string render_diagram(const GluedPair& p) {
    const Rectangle& top = p.x().cols >= p.y().cols ? p.x() : p.y();
    const Rectangle& bottom = &top == &p.x() ? p.y() : p.x();
    std::string out;
    for (const Rectangle* r : {&top, &bottom})
        for (u64 i = 0; i < r->rows; ++i) out += std::string(r->cols, '#') + '\n';
    return out;
}

}  // namespace pcl
