#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trinary/checked.hpp"
#include "trinary/pair_core.hpp"

namespace trinary {

/// Root of the tree holding every coprime pair of opposite parity.
inline constexpr CoprimePair kMixedRoot{2, 1};
/// Root of the tree holding every coprime pair of odd integers.
inline constexpr CoprimePair kOddRoot{3, 1};
/// Bezout seed used for both standard roots (2*0 + 1*1 = 3*0 + 1*1 = 1).
inline constexpr BezoutPair kStandardSeed{0, 1};

inline constexpr std::array<CoprimePair, 2> kStandardRoots{kMixedRoot, kOddRoot};

/// Canonical node address: a root plus the branch labels leading down from it.
/// The root itself sits at level 0 with no steps.
struct TreePath {
    CoprimePair root;
    std::vector<Branch> steps;

    [[nodiscard]] std::size_t level() const noexcept { return steps.size(); }

    /// Steps as a string over {A,B,C}; empty for the root.
    [[nodiscard]] std::string steps_string() const {
        std::string s;
        s.reserve(steps.size());
        for (Branch b : steps) s.push_back(to_char(b));
        return s;
    }

    /// "(2,1):AB" style address. The root alone renders as "(2,1):".
    [[nodiscard]] std::string to_string() const { return trinary::to_string(root) + ":" + steps_string(); }

    [[nodiscard]] bool starts_with(const TreePath& prefix) const {
        return root == prefix.root && prefix.steps.size() <= steps.size() &&
               std::equal(prefix.steps.begin(), prefix.steps.end(), steps.begin());
    }

    friend bool operator==(const TreePath&, const TreePath&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const TreePath& p) { return os << p.to_string(); }

/// Parses "ABC" into branch labels; nullopt on any other character.
inline std::optional<std::vector<Branch>> parse_steps(std::string_view text) {
    std::vector<Branch> steps;
    steps.reserve(text.size());
    for (char c : text) {
        auto b = branch_from_char(c);
        if (!b) return std::nullopt;
        steps.push_back(*b);
    }
    return steps;
}

struct TreeNode {
    CoprimePair pair;
    BezoutPair bezout;
    std::size_t level = 0;
    TreePath path;

    friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// Non-owning view of the enumerator's current node; valid until the next advance().
struct NodeView {
    CoprimePair root;
    CoprimePair pair;
    BezoutPair bezout;
    std::size_t level;
    std::span<const Branch> steps;

    [[nodiscard]] TreeNode materialize() const {
        return {pair, bezout, level, TreePath{root, {steps.begin(), steps.end()}}};
    }
};

/// Replaces the Bezout value at one node; descendants are then derived from the
/// replaced value by the ordinary recursion.
struct BezoutOverride {
    std::vector<Branch> steps;
    BezoutPair value;
};

/// Streams the trinary tree of `root` and the Bezout tree seeded by `seed` in
/// level order, each level in lexicographic path order (A < B < C).
///
/// Each level is walked as an odometer over its paths, so memory is O(max_level)
/// regardless of how many nodes are emitted. Upper levels are recomputed once per
/// level, which costs about 1.5x the node count in total.
///
/// Pair overflow is detected in the constructor. Bezout overflow off the uniform
/// paths is still reported lazily, with the path, when the node is reached.
class LevelOrderEnumerator {
public:
    LevelOrderEnumerator(CoprimePair root, BezoutPair seed, std::size_t max_level, bool include_root,
                         std::vector<BezoutOverride> overrides = {})
        : root_(root), max_level_(max_level), overrides_(std::move(overrides)) {
        if (!root.is_valid()) {
            throw PreconditionError("enumerate: root " + trinary::to_string(root) + " is not a coprime pair");
        }
        if (!verify_bezout(root, seed)) {
            throw PreconditionError("enumerate: seed " + trinary::to_string(seed) + " is not a Bezout pair of " +
                                    trinary::to_string(root));
        }
        for (const auto& o : overrides_) {
            if (o.steps.empty()) seed = o.value;
        }
        pairs_.assign(max_level + 1, root);
        bezouts_.assign(max_level + 1, seed);
        digits_.reserve(max_level);
        probe_uniform_paths();
        level_ = include_root ? 0 : 1;
        fresh_ = true;
    }

    /// Moves to the next node. Returns false once every level is exhausted.
    bool advance() {
        if (fresh_) {
            fresh_ = false;
            return start_level();
        }
        if (done_) return false;
        // Odometer increment: rightmost digit that is not yet C.
        std::size_t k = digits_.size();
        while (k > 0 && digits_[k - 1] == Branch::C) --k;
        if (k == 0) {
            ++level_;
            return start_level();
        }
        digits_[k - 1] = static_cast<Branch>(static_cast<int>(digits_[k - 1]) + 1);
        std::fill(digits_.begin() + static_cast<std::ptrdiff_t>(k), digits_.end(), Branch::A);
        rebuild_from(k - 1);
        return true;
    }

    [[nodiscard]] NodeView current() const {
        const auto lvl = digits_.size();
        return {root_, pairs_[lvl], bezouts_[lvl], lvl, std::span<const Branch>(digits_)};
    }

    /// Stream interface; materializes the path of each node.
    std::optional<TreeNode> next() {
        if (!advance()) return std::nullopt;
        return current().materialize();
    }

private:
    // The all-B path carries the largest pair at every level (the child
    // (2m + n, m) is monotone in both components), so walking it, and the
    // all-A and all-C paths for the Bezout side, surfaces overflow before any
    // node is emitted instead of after 3^L earlier nodes.
    void probe_uniform_paths() {
        for (Branch b : kBranches) {
            digits_.assign(max_level_, b);
            rebuild_from(0);
        }
        digits_.clear();
    }

    bool start_level() {
        if (level_ > max_level_) {
            done_ = true;
            return false;
        }
        digits_.assign(level_, Branch::A);
        if (level_ > 0) rebuild_from(0);
        return true;
    }

    // Recomputes stack entries below position `from` (entry from+1 onward).
    void rebuild_from(std::size_t from) {
        for (std::size_t i = from; i < digits_.size(); ++i) {
            const Branch b = digits_[i];
            try {
                pairs_[i + 1] = f_child(pairs_[i], b);
                bezouts_[i + 1] = g_child(bezouts_[i], b);
            } catch (const OverflowError& e) {
                TreePath at{root_, {digits_.begin(), digits_.begin() + static_cast<std::ptrdiff_t>(i + 1)}};
                throw OverflowError(std::string(e.what()) + " (while generating " + at.to_string() + ")");
            }
            apply_overrides(i + 1);
        }
    }

    void apply_overrides(std::size_t depth) {
        for (const auto& o : overrides_) {
            if (o.steps.size() == depth && std::equal(o.steps.begin(), o.steps.end(), digits_.begin())) {
                bezouts_[depth] = o.value;
            }
        }
    }

    CoprimePair root_;
    std::size_t max_level_;
    std::vector<BezoutOverride> overrides_;
    std::vector<CoprimePair> pairs_;
    std::vector<BezoutPair> bezouts_;
    std::vector<Branch> digits_;
    std::size_t level_ = 0;
    bool fresh_ = true;
    bool done_ = false;
};

/// Calls `visit(const NodeView&)` for every node in canonical order.
template <class Visitor>
void for_each_node(CoprimePair root, BezoutPair seed, std::size_t max_level, bool include_root, Visitor&& visit,
                   std::vector<BezoutOverride> overrides = {}) {
    LevelOrderEnumerator it(root, seed, max_level, include_root, std::move(overrides));
    while (it.advance()) visit(it.current());
}

/// Materialized enumeration. Prefer for_each_node for large depths.
inline std::vector<TreeNode> enumerate(CoprimePair root, BezoutPair seed, std::size_t max_level, bool include_root) {
    std::vector<TreeNode> out;
    for_each_node(root, seed, max_level, include_root, [&](const NodeView& v) { out.push_back(v.materialize()); });
    return out;
}

/// tree_count * (3 + 9 + ... + 3^max_level + [include_root]).
inline std::int64_t node_count(std::int64_t max_level, bool include_root, std::int64_t tree_count) {
    if (max_level < 0 || tree_count < 1) {
        throw PreconditionError("node_count: requires max_level >= 0 and tree_count >= 1");
    }
    std::int64_t per_tree = include_root ? 1 : 0;
    std::int64_t power = 1;
    for (std::int64_t i = 1; i <= max_level; ++i) {
        power = checked::mul(power, 3, "node_count");
        per_tree = checked::add(per_tree, power, "node_count");
    }
    return checked::mul(per_tree, tree_count, "node_count");
}

/// Number of nodes at levels [first_level, last_level] in the subtree hanging off a
/// node at level `node_level` (the node itself counts when first_level <= node_level).
inline std::int64_t subtree_count(std::size_t node_level, std::size_t first_level, std::size_t last_level) {
    std::int64_t total = 0;
    std::int64_t width = 1;
    for (std::size_t l = node_level; l <= last_level; ++l) {
        if (l >= first_level) total = checked::add(total, width, "subtree_count");
        if (l < last_level) width = checked::mul(width, 3, "subtree_count");
    }
    return total;
}

/// Inverts one step of the pair recursion for a non-root node (p, q):
///   q < p < 2q   came from (q, 2q - p) via A
///   2q < p < 3q  came from (q, p - 2q) via B
///   p > 3q       came from (p - 2q, q) via C
/// Returns nullopt when no rule applies (p <= q, p == 2q, p == 3q).
inline std::optional<std::pair<CoprimePair, Branch>> parent_of(const CoprimePair& node) {
    const auto p = node.m;
    const auto q = node.n;
    if (q < 1 || p <= q) return std::nullopt;
    // p > q >= 1 and both fit, so 2q and 3q are compared through p - q and p - 2q.
    const auto over = p - q;  // > 0
    if (over < q) return std::pair{CoprimePair{q, q - over}, Branch::A};
    if (over == q) return std::nullopt;
    const auto over2 = over - q;  // p - 2q > 0
    if (over2 < q) return std::pair{CoprimePair{q, over2}, Branch::B};
    if (over2 == q) return std::nullopt;
    return std::pair{CoprimePair{p - 2 * q, q}, Branch::C};
}

/// Address of a coprime pair in the standard forest. Folding f_child over the
/// returned steps from the returned root reproduces `target`.
inline TreePath find_path(const CoprimePair& target) {
    if (!(target.m > target.n && target.n >= 1)) {
        throw PreconditionError("find_path: " + trinary::to_string(target) + " violates m > n >= 1");
    }
    std::vector<Branch> reversed;
    CoprimePair node = target;
    while (node != kMixedRoot && node != kOddRoot) {
        auto up = parent_of(node);
        if (!up) {
            // p == 2q or p == 3q with q > 1: q divides p.
            throw PreconditionError("find_path: " + trinary::to_string(target) +
                                    " is not coprime (no root reached, stuck at " + trinary::to_string(node) + ")");
        }
        reversed.push_back(up->second);
        node = up->first;
    }
    return {node, {reversed.rbegin(), reversed.rend()}};
}

/// Folds f_child and g_child along a path.
inline std::pair<CoprimePair, BezoutPair> follow(const TreePath& path, BezoutPair seed) {
    CoprimePair p = path.root;
    for (Branch b : path.steps) {
        p = f_child(p, b);
        seed = g_child(seed, b);
    }
    return {p, seed};
}

}  // namespace trinary
