#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "trinary/euclid.hpp"
#include "trinary/forest.hpp"

namespace trinary {

/// Exact non-negative rational kept in lowest terms.
struct Fraction {
    std::int64_t numerator = 0;
    std::int64_t denominator = 1;

    static Fraction reduced(std::int64_t num, std::int64_t den) {
        if (den <= 0) throw PreconditionError("Fraction: denominator must be positive");
        const auto g = std::gcd(num, den);
        return g == 0 ? Fraction{0, 1} : Fraction{num / g, den / g};
    }

    [[nodiscard]] std::string to_string() const {
        return std::to_string(numerator) + "/" + std::to_string(denominator);
    }

    friend bool operator==(const Fraction&, const Fraction&) = default;
};

enum class DifferingShape { Empty, Subtree, Scattered };

inline const char* to_string(DifferingShape s) {
    switch (s) {
        case DifferingShape::Empty: return "empty";
        case DifferingShape::Subtree: return "subtree";
        case DifferingShape::Scattered: return "scattered";
    }
    return "?";
}

inline constexpr std::size_t kMaxDifferingSamples = 100;

struct DifferingSummary {
    DifferingShape shape = DifferingShape::Empty;
    std::optional<TreePath> subtree_root;  // set iff shape == Subtree
    std::vector<std::string> samples;      // lexicographically smallest addresses, at most 100

    [[nodiscard]] std::string describe() const {
        switch (shape) {
            case DifferingShape::Empty: return "empty";
            case DifferingShape::Subtree: return "exactly the subtree rooted at " + subtree_root->to_string();
            case DifferingShape::Scattered: return "scattered";
        }
        return {};
    }
};

struct TreeTally {
    CoprimePair root;
    std::int64_t total = 0;
    std::int64_t differed = 0;
};

/// Outcome of comparing the Bezout trees against extended_gcd.
///
/// matched/differed/differed_fraction/differing_paths describe the configuration
/// selected by `patched`. patched_matched/patched_differed always describe the
/// patched forest so an unpatched run still reports what the patch achieves.
struct ComparisonReport {
    std::int64_t depth = 0;
    std::int64_t total_nodes = 0;
    std::int64_t matched = 0;
    std::int64_t differed = 0;
    Fraction differed_fraction;
    DifferingSummary differing_paths;
    bool patched = false;
    std::int64_t patched_matched = 0;
    std::int64_t patched_differed = 0;
    std::vector<TreeTally> per_tree;

    /// Whether the observed pattern is the conjectured one at this depth: with the
    /// patch nothing differs; without it the (3,1) tree agrees everywhere and the
    /// disagreements are exactly the branch-A subtree of (2,1).
    [[nodiscard]] bool conjecture_holds() const {
        if (patched) return differed == 0;
        for (const auto& t : per_tree) {
            if (t.root == kOddRoot && t.differed != 0) return false;
        }
        const TreePath expected{kMixedRoot, {Branch::A}};
        return differing_paths.shape == DifferingShape::Subtree && differing_paths.subtree_root == expected &&
               differed_fraction == Fraction{1, 6};
    }
};

/// The single documented patch: the level-1 branch-A node of the (2,1) Bezout
/// tree, (-1,2), becomes the extended_gcd value (1,-1).
inline std::vector<BezoutOverride> conjecture_patch() { return {{{Branch::A}, BezoutPair{1, -1}}}; }

struct ForestTally {
    std::int64_t total = 0;
    std::int64_t differed = 0;
    std::vector<TreeTally> per_tree;
    DifferingSummary summary;
};

/// Compares both standard trees (seed (0,1), levels 1..depth) against
/// extended_gcd with arbitrary Bezout overrides in each tree, and classifies
/// where the disagreements sit.
inline ForestTally tally_forest(std::size_t depth, const std::vector<BezoutOverride>& mixed_overrides,
                                const std::vector<BezoutOverride>& odd_overrides) {
    ForestTally out;
    std::optional<TreePath> common;  // longest common prefix of all differing addresses
    bool disjoint_roots = false;
    std::set<std::string> samples;

    for (const CoprimePair root : kStandardRoots) {
        TreeTally tree{root, 0, 0};
        auto overrides = root == kMixedRoot ? mixed_overrides : odd_overrides;
        for_each_node(
            root, kStandardSeed, depth, false,
            [&](const NodeView& node) {
                ++tree.total;
                if (extended_gcd(node.pair.m, node.pair.n).coeffs == node.bezout) return;
                ++tree.differed;
                if (!common) {
                    common = TreePath{root, {node.steps.begin(), node.steps.end()}};
                } else if (common->root != root) {
                    disjoint_roots = true;
                } else {
                    const auto n = std::min(common->steps.size(), node.steps.size());
                    const auto diverge = std::mismatch(common->steps.begin(),
                                                       common->steps.begin() + static_cast<std::ptrdiff_t>(n),
                                                       node.steps.begin());
                    common->steps.erase(diverge.first, common->steps.end());
                }
                std::string address = trinary::to_string(root) + ":";
                for (Branch b : node.steps) address.push_back(to_char(b));
                if (samples.size() < kMaxDifferingSamples || address < *samples.rbegin()) {
                    samples.insert(std::move(address));
                    if (samples.size() > kMaxDifferingSamples) samples.erase(std::prev(samples.end()));
                }
            },
            std::move(overrides));
        out.total += tree.total;
        out.differed += tree.differed;
        out.per_tree.push_back(tree);
    }

    out.summary.samples.assign(samples.begin(), samples.end());
    if (out.differed == 0) {
        out.summary.shape = DifferingShape::Empty;
    } else if (!disjoint_roots &&
               out.differed == subtree_count(common->steps.size(), 1, depth)) {
        // Every differing node lies under `common` and the counts agree, so the
        // differing set is that whole subtree.
        out.summary.shape = DifferingShape::Subtree;
        out.summary.subtree_root = common;
    } else {
        out.summary.shape = DifferingShape::Scattered;
    }
    return out;
}

/// Compares both standard Bezout trees (seed (0,1)) at levels 1..depth against
/// extended_gcd, with or without the single-node patch.
inline ComparisonReport compare_forest(std::int64_t depth, bool patch) {
    if (depth < 1) throw PreconditionError("compare_forest: depth must be >= 1");
    const auto d = static_cast<std::size_t>(depth);

    ComparisonReport report;
    report.depth = depth;
    report.patched = patch;

    const std::vector<BezoutOverride> none;
    const auto patch_list = conjecture_patch();
    auto selected = tally_forest(d, patch ? patch_list : none, none);
    report.total_nodes = selected.total;
    report.differed = selected.differed;
    report.matched = selected.total - selected.differed;
    report.differed_fraction = Fraction::reduced(selected.differed, selected.total);
    report.differing_paths = std::move(selected.summary);
    report.per_tree = std::move(selected.per_tree);

    if (patch) {
        report.patched_matched = report.matched;
        report.patched_differed = report.differed;
    } else {
        const auto patched = tally_forest(d, patch_list, none);
        report.patched_matched = patched.total - patched.differed;
        report.patched_differed = patched.differed;
    }
    return report;
}

inline nlohmann::ordered_json to_json(const ComparisonReport& r) {
    nlohmann::ordered_json summary;
    summary["kind"] = to_string(r.differing_paths.shape);
    summary["description"] = r.differing_paths.describe();
    summary["subtree_root"] =
        r.differing_paths.subtree_root ? nlohmann::ordered_json(r.differing_paths.subtree_root->to_string())
                                       : nlohmann::ordered_json(nullptr);
    summary["samples"] = r.differing_paths.samples;

    nlohmann::ordered_json trees = nlohmann::ordered_json::array();
    for (const auto& t : r.per_tree) {
        trees.push_back({{"root", trinary::to_string(t.root)}, {"total", t.total}, {"differed", t.differed}});
    }

    nlohmann::ordered_json j;
    j["depth"] = r.depth;
    j["total_nodes"] = r.total_nodes;
    j["matched"] = r.matched;
    j["differed"] = r.differed;
    j["differed_fraction"] = {{"numerator", r.differed_fraction.numerator},
                              {"denominator", r.differed_fraction.denominator},
                              {"text", r.differed_fraction.to_string()}};
    j["differing_paths_summary"] = summary;
    j["patched"] = r.patched;
    j["patched_matched"] = r.patched_matched;
    j["patched_differed"] = r.patched_differed;
    j["per_tree"] = trees;
    j["conjecture_holds"] = r.conjecture_holds();
    return j;
}

}  // namespace trinary
