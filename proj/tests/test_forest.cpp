#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "trinary/forest.hpp"

using namespace trinary;

namespace {

std::vector<std::pair<CoprimePair, BezoutPair>> slice(const std::vector<TreeNode>& nodes, std::size_t level) {
    std::vector<std::pair<CoprimePair, BezoutPair>> out;
    for (const auto& n : nodes) {
        if (n.level == level) out.emplace_back(n.pair, n.bezout);
    }
    return out;
}

}  // namespace

TEST(Enumerate, LevelOneOfThreeOne) {
    const auto nodes = enumerate(kOddRoot, kStandardSeed, 1, false);
    ASSERT_EQ(nodes.size(), 3u);
    EXPECT_EQ(nodes[0].pair, (CoprimePair{5, 3}));
    EXPECT_EQ(nodes[0].bezout, (BezoutPair{-1, 2}));
    EXPECT_EQ(nodes[1].pair, (CoprimePair{7, 3}));
    EXPECT_EQ(nodes[1].bezout, (BezoutPair{1, -2}));
    EXPECT_EQ(nodes[2].pair, (CoprimePair{5, 1}));
    EXPECT_EQ(nodes[2].bezout, (BezoutPair{0, 1}));
    EXPECT_EQ(nodes[2].path.steps_string(), "C");
}

TEST(Enumerate, RootOnly) {
    const auto nodes = enumerate(kOddRoot, kStandardSeed, 0, true);
    ASSERT_EQ(nodes.size(), 1u);
    EXPECT_EQ(nodes[0].pair, kOddRoot);
    EXPECT_EQ(nodes[0].bezout, kStandardSeed);
    EXPECT_EQ(nodes[0].level, 0u);
    EXPECT_TRUE(nodes[0].path.steps.empty());
    EXPECT_TRUE(enumerate(kOddRoot, kStandardSeed, 0, false).empty());
}

TEST(Enumerate, LevelTwoOfThreeOne) {
    const auto level2 = slice(enumerate(kOddRoot, kStandardSeed, 2, false), 2);
    const std::vector<std::pair<CoprimePair, BezoutPair>> expected{
        {{7, 5}, {-2, 3}},  {{13, 5}, {2, -5}}, {{11, 3}, {-1, 4}}, {{11, 7}, {2, -3}}, {{17, 7}, {-2, 5}},
        {{13, 3}, {1, -4}}, {{9, 5}, {-1, 2}},  {{11, 5}, {1, -2}}, {{7, 1}, {0, 1}},
    };
    EXPECT_EQ(level2, expected);
}

TEST(Enumerate, RejectsBadSeedAndRoot) {
    EXPECT_THROW(LevelOrderEnumerator(kOddRoot, {1, 1}, 3, false), PreconditionError);
    EXPECT_THROW(LevelOrderEnumerator({4, 2}, {0, 1}, 3, false), PreconditionError);
}

TEST(Enumerate, OverflowIdentifiesPath) {
    // Along all-B paths m roughly multiplies by 1 + sqrt(2); 60 levels exceed 2^63.
    try {
        for_each_node(kMixedRoot, kStandardSeed, 60, false, [](const NodeView&) {});
        FAIL() << "expected overflow";
    } catch (const OverflowError& e) {
        EXPECT_NE(std::string(e.what()).find("(2,1):"), std::string::npos) << e.what();
    }
}

TEST(Enumerate, MatchesNaiveLevelLists) {
    for (const CoprimePair root : kStandardRoots) {
        const auto levels = oracle::naive_levels(root.m, root.n, 0, 1, 7);
        std::vector<oracle::Node> flat;
        for (const auto& l : levels) flat.insert(flat.end(), l.begin(), l.end());
        std::size_t i = 0;
        for_each_node(root, kStandardSeed, 7, true, [&](const NodeView& node) {
            ASSERT_LT(i, flat.size());
            const auto& ref = flat[i++];
            ASSERT_EQ(node.pair, (CoprimePair{ref.m, ref.n}));
            ASSERT_EQ(node.bezout, (BezoutPair{ref.u, ref.v}));
            ASSERT_EQ(node.materialize().path.steps_string(), ref.path);
            ASSERT_EQ(node.level, ref.path.size());
        });
        EXPECT_EQ(i, flat.size());
    }
}

TEST(Enumerate, StreamAndVisitorAgree) {
    LevelOrderEnumerator it(kMixedRoot, kStandardSeed, 4, true);
    const auto all = enumerate(kMixedRoot, kStandardSeed, 4, true);
    std::size_t i = 0;
    while (auto node = it.next()) ASSERT_EQ(*node, all[i++]);
    EXPECT_EQ(i, all.size());
    EXPECT_FALSE(it.next().has_value());
}

TEST(Enumerate, OverrideRederivesSubtree) {
    const std::vector<BezoutOverride> patch{{{Branch::A}, {1, -1}}};
    std::vector<TreeNode> nodes;
    for_each_node(
        kMixedRoot, kStandardSeed, 2, false, [&](const NodeView& n) { nodes.push_back(n.materialize()); }, patch);
    ASSERT_EQ(nodes.size(), 12u);
    EXPECT_EQ(nodes[0].bezout, (BezoutPair{1, -1}));
    EXPECT_EQ(nodes[3].bezout, g_child({1, -1}, Branch::A));
    EXPECT_EQ(nodes[5].bezout, g_child({1, -1}, Branch::C));
    for (const auto& n : nodes) EXPECT_TRUE(verify_bezout(n.pair, n.bezout)) << n.path;
}

TEST(NodeCount, Examples) {
    EXPECT_EQ(node_count(13, false, 2), 4782966);
    EXPECT_EQ(node_count(0, true, 1), 1);
    EXPECT_EQ(node_count(2, false, 1), 12);
    EXPECT_THROW((void)node_count(200, false, 1), OverflowError);
    EXPECT_THROW((void)node_count(-1, false, 1), PreconditionError);
}

TEST(NodeCount, AgreesWithEnumeration) {
    for (std::size_t d = 0; d <= 6; ++d) {
        for (bool root : {false, true}) {
            EXPECT_EQ(static_cast<std::int64_t>(enumerate(kOddRoot, kStandardSeed, d, root).size()),
                      node_count(static_cast<std::int64_t>(d), root, 1));
        }
    }
}

TEST(SubtreeCount, SmallCases) {
    EXPECT_EQ(subtree_count(1, 1, 2), 4);    // node + 3 children
    EXPECT_EQ(subtree_count(0, 1, 2), 12);   // root excluded
    EXPECT_EQ(subtree_count(1, 1, 8), 3280);
}

TEST(FindPath, Examples) {
    EXPECT_EQ(find_path({7, 5}), (TreePath{kOddRoot, {Branch::A, Branch::A}}));
    EXPECT_EQ(find_path({3, 1}), (TreePath{kOddRoot, {}}));
    EXPECT_EQ(find_path({17, 7}), (TreePath{kOddRoot, {Branch::B, Branch::B}}));
    EXPECT_EQ(find_path({2, 1}), (TreePath{kMixedRoot, {}}));
    EXPECT_EQ(find_path({3, 2}), (TreePath{kMixedRoot, {Branch::A}}));
}

TEST(FindPath, RejectsInvalidInput) {
    EXPECT_THROW((void)find_path({1, 1}), PreconditionError);
    EXPECT_THROW((void)find_path({1, 0}), PreconditionError);
    EXPECT_THROW((void)find_path({4, 2}), PreconditionError);
    EXPECT_THROW((void)find_path({6, 3}), PreconditionError);
    EXPECT_THROW((void)find_path({9, 6}), PreconditionError);
    EXPECT_THROW((void)find_path({100, 45}), PreconditionError);
}

// Every coprime pair with m <= 500 reaches the root of its parity class and the
// path folds back to the pair.
TEST(FindPath, CoverageRoundTrip) {
    std::size_t count = 0;
    for (std::int64_t m = 2; m <= 500; ++m) {
        for (std::int64_t n = 1; n < m; ++n) {
            if (oracle::brute_gcd(m, n) != 1) continue;
            ++count;
            const auto path = find_path({m, n});
            const bool odd = (m % 2 == 1) && (n % 2 == 1);
            ASSERT_EQ(path.root, odd ? kOddRoot : kMixedRoot) << m << "," << n;
            ASSERT_EQ(follow(path, kStandardSeed).first, (CoprimePair{m, n}));
        }
    }
    EXPECT_EQ(count, 76115u);  // sum of phi(m), m = 2..500
}

TEST(Properties, ParentRuleInvertsEveryEdge) {
    for (const CoprimePair root : kStandardRoots) {
        for_each_node(root, kStandardSeed, 7, false, [&](const NodeView& node) {
            const auto up = parent_of(node.pair);
            ASSERT_TRUE(up.has_value());
            ASSERT_EQ(up->second, node.steps.back());
            const auto parent_path = TreePath{root, {node.steps.begin(), node.steps.end() - 1}};
            ASSERT_EQ(up->first, follow(parent_path, kStandardSeed).first);
        });
    }
}

TEST(Properties, TreesPartitionByParityAndAreDisjoint) {
    std::set<CoprimePair> mixed, odd;
    for_each_node(kMixedRoot, kStandardSeed, 7, true, [&](const NodeView& n) {
        EXPECT_FALSE(n.pair.both_odd()) << n.pair;
        EXPECT_TRUE(mixed.insert(n.pair).second) << "duplicate " << n.pair;
    });
    for_each_node(kOddRoot, kStandardSeed, 7, true, [&](const NodeView& n) {
        EXPECT_TRUE(n.pair.both_odd()) << n.pair;
        EXPECT_TRUE(odd.insert(n.pair).second) << "duplicate " << n.pair;
    });
    for (const auto& p : odd) EXPECT_EQ(mixed.count(p), 0u);
}

TEST(Properties, EveryEnumeratedBezoutNodeIsValid) {
    for (const CoprimePair root : kStandardRoots) {
        for_each_node(root, kStandardSeed, 9, true,
                      [](const NodeView& n) { ASSERT_TRUE(verify_bezout(n.pair, n.bezout)); });
    }
}

TEST(Properties, FindPathOfEnumeratedNodeIsItsAddress) {
    for_each_node(kMixedRoot, kStandardSeed, 6, true, [](const NodeView& n) {
        ASSERT_EQ(find_path(n.pair), n.materialize().path);
    });
}
