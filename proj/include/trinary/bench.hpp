#pragma once

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <ostream>

#include "trinary/euclid.hpp"
#include "trinary/forest.hpp"

namespace trinary {

struct BenchTiming {
    double seconds = 0.0;
    double ns_per_pair = 0.0;
    std::uint64_t checksum = 0;  // folded coefficients; keeps the work observable
};

struct BenchReport {
    std::int64_t depth = 0;
    std::int64_t pairs = 0;
    BenchTiming tree;    // Bezout coefficients from the g recursion
    BenchTiming oracle;  // same enumeration, coefficients from extended_gcd
    [[nodiscard]] double ratio() const { return tree.seconds > 0 ? oracle.seconds / tree.seconds : 0.0; }
};

namespace detail {

template <class PerNode>
BenchTiming time_forest(std::size_t depth, std::int64_t pairs, PerNode&& per_node) {
    using clock = std::chrono::steady_clock;
    std::uint64_t checksum = 0;
    const auto start = clock::now();
    for (const CoprimePair root : kStandardRoots) {
        for_each_node(root, kStandardSeed, depth, false, [&](const NodeView& node) { checksum += per_node(node); });
    }
    const std::chrono::duration<double> elapsed = clock::now() - start;
    return {elapsed.count(), pairs > 0 ? elapsed.count() * 1e9 / static_cast<double>(pairs) : 0.0, checksum};
}

inline std::uint64_t fold(const BezoutPair& q) {
    return static_cast<std::uint64_t>(q.u) * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint64_t>(q.v);
}

}  // namespace detail

/// Times tree-derived Bezout coefficients against extended_gcd per pair over
/// both standard trees, levels 1..depth. Reports only; no threshold.
inline BenchReport bench_generation(std::int64_t depth) {
    if (depth < 1) throw PreconditionError("bench_generation: depth must be >= 1");
    const auto d = static_cast<std::size_t>(depth);
    BenchReport r;
    r.depth = depth;
    r.pairs = node_count(depth, false, 2);
    r.tree = detail::time_forest(d, r.pairs, [](const NodeView& n) { return detail::fold(n.bezout); });
    r.oracle = detail::time_forest(
        d, r.pairs, [](const NodeView& n) { return detail::fold(extended_gcd(n.pair.m, n.pair.n).coeffs); });
    return r;
}

inline void print_bench(std::ostream& os, const BenchReport& r) {
    const auto flags = os.flags();
    os << "depth " << r.depth << ", " << r.pairs << " coprime pairs (both trees, levels 1.." << r.depth << ")\n";
    os << std::left << std::setw(28) << "method" << std::right << std::setw(14) << "wall_s" << std::setw(14)
       << "ns/pair" << "\n";
    auto line = [&](const char* name, const BenchTiming& t) {
        os << std::left << std::setw(28) << name << std::right << std::fixed << std::setprecision(6) << std::setw(14)
           << t.seconds << std::setprecision(2) << std::setw(14) << t.ns_per_pair << "\n";
    };
    line("tree (g recursion)", r.tree);
    line("tree + extended_gcd", r.oracle);
    os << "ratio (oracle / tree): " << std::fixed << std::setprecision(3) << r.ratio() << "\n";
    os.flags(flags);
}

}  // namespace trinary
