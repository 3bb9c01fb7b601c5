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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "pcl/congruence.hpp"
#include "pcl/partition.hpp"
#include "pcl/rectangles.hpp"

using namespace pcl;

namespace {

constexpr Rectangle R(u64 r, u64 c) { return {r, c}; }

const SieveTable& table() {
    static const SieveTable t = build_sieve(5000);
    return t;
}

std::map<GluedPair, int> multiset(const std::array<GluedPair, 4>& a) {
    std::map<GluedPair, int> m;
    for (const auto& g : a) ++m[g];
    return m;
}

TEST(Rectangle, Basics) {
    const Rectangle x = R(2, 3);
    EXPECT_EQ(x.cells(), 6u);
    EXPECT_EQ(x.transpose(), R(3, 2));
    EXPECT_EQ(x.transpose().transpose(), x);
    EXPECT_FALSE(x.is_square());
    EXPECT_TRUE(R(4, 4).is_square());
}

TEST(GluedPair, UnorderedButOrientationSensitive) {
    EXPECT_EQ(GluedPair(R(1, 5), R(1, 1)), GluedPair(R(1, 1), R(1, 5)));
    EXPECT_NE(GluedPair(R(1, 4), R(1, 2)), GluedPair(R(1, 4), R(2, 1)));
    EXPECT_EQ(GluedPair(R(1, 5), R(1, 1)), GluedPair(R(1, 5), R(1, 1).transpose()));
}

TEST(CanonicalPairs, Six) {
    const auto pairs = canonical_pairs(6);
    ASSERT_EQ(pairs.size(), 4u);
    const std::vector<CanonicalPair> expected{
        {R(1, 1), R(1, 5)}, {R(1, 2), R(1, 4)}, {R(1, 2), R(2, 2)}, {R(1, 3), R(1, 3)}};
    EXPECT_EQ(pairs, expected);
}

TEST(CanonicalPairs, TwoAndErrors) {
    const auto pairs = canonical_pairs(2);
    ASSERT_EQ(pairs.size(), 1u);
    EXPECT_EQ(pairs[0], CanonicalPair(R(1, 1), R(1, 1)));
    EXPECT_THROW(canonical_pairs(1), DomainError);
    EXPECT_THROW(canonical_pairs(kEnumerationBound + 1), ResourceError);
    EXPECT_THROW(CanonicalPair(R(2, 1), R(1, 1)), DomainError);
}

TEST(CanonicalPairs, CompleteAndDuplicateFree) {
    for (u64 n = 2; n <= 150; ++n) {
        const auto pairs = canonical_pairs(n);
        ASSERT_TRUE(std::is_sorted(pairs.begin(), pairs.end()));
        ASSERT_EQ(std::adjacent_find(pairs.begin(), pairs.end()), pairs.end());
        // Brute force over every pair of upright rectangles.
        std::size_t count = 0;
        for (u64 r1 = 1; r1 <= n; ++r1)
            for (u64 c1 = r1; r1 * c1 < n; ++c1)
                for (u64 r2 = 1; r2 <= n; ++r2)
                    for (u64 c2 = r2; r2 * c2 <= n - r1 * c1; ++c2)
                        if (r1 * c1 + r2 * c2 == n && CanonicalPair(R(r1, c1), R(r2, c2)).first() == R(r1, c1))
                            ++count;
        ASSERT_EQ(pairs.size(), count) << n;
    }
    EXPECT_EQ(canonical_pairs(14).size() * 4, enumerate_multiset_A(14).counts.a);
}

TEST(Glue, FigureRows) {
    const auto row4 = multiset(glue(R(1, 3), R(1, 3)));
    EXPECT_EQ(row4.size(), 3u);
    EXPECT_EQ(row4.at(GluedPair(R(1, 3), R(1, 3))), 1);
    EXPECT_EQ(row4.at(GluedPair(R(1, 3), R(3, 1))), 2);
    EXPECT_EQ(row4.at(GluedPair(R(3, 1), R(3, 1))), 1);

    const auto row1 = multiset(glue(R(1, 5), R(1, 1)));
    EXPECT_EQ(row1.size(), 2u);
    EXPECT_EQ(row1.at(GluedPair(R(1, 5), R(1, 1))), 2);
    EXPECT_EQ(row1.at(GluedPair(R(5, 1), R(1, 1))), 2);

    const auto row2 = multiset(glue(R(1, 4), R(1, 2)));
    EXPECT_EQ(row2.size(), 4u);

    const auto row3 = multiset(glue(R(2, 2), R(1, 2)));
    EXPECT_EQ(row3.at(GluedPair(R(2, 2), R(1, 2))), 2);
    EXPECT_EQ(row3.at(GluedPair(R(2, 2), R(2, 1))), 2);

    const auto unit = multiset(glue(R(1, 1), R(1, 1)));
    ASSERT_EQ(unit.size(), 1u);
    EXPECT_EQ(unit.begin()->second, 4);
}

TEST(Glue, InvariantUnderTransposeAndSwap) {
    std::mt19937 rng(3);
    for (int i = 0; i < 500; ++i) {
        const Rectangle x = R(rng() % 6 + 1, rng() % 6 + 1), y = R(rng() % 6 + 1, rng() % 6 + 1);
        const auto base = multiset(glue(x, y));
        ASSERT_EQ(base, multiset(glue(y, x)));
        ASSERT_EQ(base, multiset(glue(x.transpose(), y)));
        ASSERT_EQ(base, multiset(glue(x, y.transpose())));
        int total = 0;
        for (const auto& [g, m] : base) total += m;
        ASSERT_EQ(total, 4);
    }
}

TEST(Classify, FigureLabelsAtSix) {
    EXPECT_EQ(classify(GluedPair(R(1, 5), R(1, 1)), 6), (MultiplicityRecord{2, 1, 1, 0, 0}));
    EXPECT_EQ(classify(GluedPair(R(1, 3), R(3, 1)), 6), (MultiplicityRecord{2, 1, 0, 0, 1}));
    EXPECT_EQ(classify(GluedPair(R(2, 2), R(1, 2)), 6), (MultiplicityRecord{2, 0, 1, 1, 0}));
}

TEST(Classify, AllFiveTableRows) {
    // different columns, X != Y^T, no squares
    EXPECT_EQ(classify(GluedPair(R(1, 4), R(1, 2)), 6), (MultiplicityRecord{1, 1, 0, 0, 0}));
    // different columns, a square
    EXPECT_EQ(classify(GluedPair(R(2, 2), R(2, 1)), 6), (MultiplicityRecord{2, 1, 1, 0, 0}));
    // different columns, X = Y^T
    EXPECT_EQ(classify(GluedPair(R(3, 1), R(1, 3)), 6), (MultiplicityRecord{2, 1, 0, 0, 1}));
    // same columns, no squares
    EXPECT_EQ(classify(GluedPair(R(4, 1), R(2, 1)), 6), (MultiplicityRecord{1, 0, 0, 1, 0}));
    // same columns, a square
    EXPECT_EQ(classify(GluedPair(R(5, 1), R(1, 1)), 6), (MultiplicityRecord{2, 0, 1, 1, 0}));
}

TEST(Classify, HypothesisAndPreconditionErrors) {
    EXPECT_THROW(classify(GluedPair(R(1, 1), R(2, 2)), 5), HypothesisError);
    EXPECT_THROW(classify(GluedPair(R(1, 1), R(1, 1)), 2), HypothesisError);
    EXPECT_THROW(classify(GluedPair(R(1, 5), R(1, 1)), 7), PreconditionError);
}

TEST(Classify, SwapInvariant) {
    for (u64 n : {6u, 14u, 21u, 30u}) {
        for (const auto& [g, rec] : enumerate_multiset_A(n).records)
            ASSERT_EQ(classify(GluedPair(g.y(), g.x()), n), classify(g, n));
    }
}

TEST(EnumerateMultisetA, Six) {
    const auto en = enumerate_multiset_A(6);
    EXPECT_EQ(en.counts, (MultisetCounts{16, 6, 4, 5, 1}));
    EXPECT_EQ(en.canonical_pair_count, 4u);
    EXPECT_EQ(en.records.size(), 11u);
}

TEST(EnumerateMultisetA, TwoNeedsUnsafe) {
    EXPECT_THROW(enumerate_multiset_A(2), HypothesisError);
    const auto en = enumerate_multiset_A(2, {.unsafe = true});
    EXPECT_EQ(en.counts.a, 4u);
    EXPECT_EQ(en.canonical_pair_count, 1u);
    EXPECT_EQ(en.records.begin()->second.mA, 4u);
}

TEST(EnumerateMultisetA, Fourteen) {
    const auto c = enumerate_multiset_A(14).counts;
    EXPECT_EQ(c.a % 4, 0u);
    EXPECT_EQ(c.a, c.b + c.c + c.d + c.e);
    EXPECT_EQ(c.b, 44u);
    EXPECT_EQ(c.c, 8u);
    EXPECT_EQ(c.d, 11u);
    EXPECT_EQ(c.e, 1u);
}

TEST(EnumerateMultisetA, ConsistencyAcrossRange) {
    for (u64 n = 2; n <= 400; ++n) {
        const bool in_hypothesis = !is_sum_of_two_squares(n);
        const auto en = enumerate_multiset_A(n, {.unsafe = !in_hypothesis});
        const auto& c = en.counts;
        u64 mA_total = 0;
        for (const auto& [g, rec] : en.records) {
            mA_total += rec.mA;
            if (in_hypothesis) {
                ASSERT_EQ(classify(g, n).mA, rec.mA) << n << " " << to_string(g);
            }
        }
        ASSERT_EQ(mA_total, c.a);
        ASSERT_EQ(c.a, 4 * canonical_pairs(n).size());
        ASSERT_EQ(c.b, nu2_formula(n, table())) << n;
        if (in_hypothesis) {
            ASSERT_EQ(c.a, c.b + c.c + c.d + c.e) << n;
            ASSERT_EQ(c, counts_by_formula(n, table())) << n;
        }
    }
}

TEST(CountsByFormula, Examples) {
    EXPECT_EQ(counts_by_formula(6, table()), (MultisetCounts{16, 6, 4, 5, 1}));
    const auto c14 = counts_by_formula(14, table());
    EXPECT_EQ(c14.d, 11u);
    EXPECT_EQ(c14.d, table().sigma1(14) / 2 - table().sigma0(7) / 2);
    EXPECT_EQ(c14.e, 1u);
    EXPECT_EQ(counts_by_formula(21, table()).e, 0u);
    EXPECT_THROW(counts_by_formula(5, table()), HypothesisError);
    EXPECT_THROW(counts_by_formula(8, table()), HypothesisError);
    EXPECT_THROW(counts_by_formula(5001, table()), PreconditionError);
}

TEST(RenderDiagram, WiderBaseOnTop) {
    EXPECT_EQ(render_diagram(GluedPair(R(1, 1), R(1, 5))), "#####\n#\n");
    EXPECT_EQ(render_diagram(GluedPair(R(1, 3), R(3, 1))), "###\n#\n#\n#\n");
    EXPECT_EQ(render_diagram(GluedPair(R(2, 2), R(1, 2))), "##\n##\n##\n");
}

}  // namespace
