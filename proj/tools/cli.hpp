#pragma once

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trinary/bench.hpp"
#include "trinary/conjecture.hpp"
#include "trinary/dump.hpp"
#include "trinary/render.hpp"

namespace trinary::cli {

enum ExitCode : int {
    kOk = 0,
    kConjectureViolated = 1,
    kUsage = 2,
    kRuntime = 3,
};

namespace detail {

// "a,b,c" -> numbers; nullopt when any field is malformed.
template <class T>
std::optional<std::vector<T>> split_numbers(const std::string& text, char sep) {
    std::vector<T> out;
    std::size_t start = 0;
    for (;;) {
        const auto end = text.find(sep, start);
        const std::string field = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
        T value{};
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) return std::nullopt;
        out.push_back(value);
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return out;
}

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline CoprimePair parse_root(const std::string& text) {
    if (text == "2,1") return kMixedRoot;
    if (text == "3,1") return kOddRoot;
    throw UsageError("--root must be 2,1 or 3,1 (got '" + text + "')");
}

inline Window parse_window(const std::string& text) {
    const auto v = split_numbers<double>(text, ',');
    if (!v || v->size() != 4) throw UsageError("--window expects x0,x1,y0,y1");
    return {(*v)[0], (*v)[1], (*v)[2], (*v)[3]};
}

inline std::pair<std::size_t, std::size_t> parse_size(const std::string& text) {
    const auto v = split_numbers<std::size_t>(text, 'x');
    if (!v || v->size() != 2) throw UsageError("--size expects WxH");
    return {(*v)[0], (*v)[1]};
}

// Writes to --out when given, otherwise to `out`.
template <class Writer>
void with_output(const std::string& path, std::ostream& out, Writer&& write) {
    if (path.empty()) {
        write(out);
        out.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file " + path);
    write(file);
    file.flush();
    if (!file) throw std::runtime_error("write failed for " + path);
}

}  // namespace detail

/// Entry point shared by the executable and the tests. `args` excludes argv[0].
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Trinary trees of coprime pairs and their Bezout coefficient trees", "trinary"};
    app.require_subcommand(1);

    // tree
    auto* tree = app.add_subcommand("tree", "Dump one trinary tree with its Bezout tree (seed 0,1)");
    std::string tree_root;
    std::size_t tree_depth = 0;
    bool include_root = false;
    std::string tree_format = "csv";
    std::string tree_out;
    tree->add_option("--root", tree_root, "Root pair: 2,1 or 3,1")->required();
    tree->add_option("--depth", tree_depth, "Deepest level (root is level 0)")->required();
    tree->add_flag("--include-root", include_root, "Emit the level-0 root row");
    tree->add_option("--format", tree_format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
    tree->add_option("--out", tree_out, "Output file (default: stdout)");

    // check
    auto* check = app.add_subcommand("check", "Compare Bezout trees against extended_gcd; exit 0 iff the pattern holds");
    std::int64_t check_depth = 0;
    bool patched = false;
    std::string check_out;
    check->add_option("--depth", check_depth, "Deepest compared level")->required()->check(CLI::PositiveNumber);
    check->add_flag("--patched", patched, "Replace the (2,1):A Bezout node with (1,-1)");
    check->add_option("--out", check_out, "Report JSON file (default: stdout)");

    // bench
    auto* bench = app.add_subcommand("bench", "Time tree coefficients against per-pair extended_gcd");
    std::int64_t bench_depth = 0;
    bench->add_option("--depth", bench_depth, "Deepest level")->required()->check(CLI::PositiveNumber);

    // triple
    auto* trip = app.add_subcommand("triple", "Print the Pythagorean triple of a coprime pair");
    std::int64_t trip_m = 0, trip_n = 0;
    trip->add_option("M", trip_m)->required();
    trip->add_option("N", trip_n)->required();

    // render
    auto* rend = app.add_subcommand("render", "Render a wallpaper PPM from the Mobius term sum");
    std::string window_text = "-1,1,0.05,2.05";
    std::string size_text = "256x256";
    std::size_t term_depth = 5;
    std::string motif_text = "exp";
    std::string colormap_text = "builtin";
    bool base_terms = false, swapped = false;
    std::string render_out;
    rend->add_option("--window", window_text, "x0,x1,y0,y1 with 0 < y0 < y1");
    rend->add_option("--size", size_text, "WxH in pixels");
    rend->add_option("--term-depth", term_depth, "Tree depth used for the term set");
    rend->add_option("--motif", motif_text, "exp or identity")->check(CLI::IsMember({"exp", "identity"}));
    rend->add_option("--colormap", colormap_text, "builtin or a P6/P3 PPM path");
    rend->add_flag("--base-terms", base_terms, "Add the (0,1), (1,0), (1,1) terms");
    rend->add_flag("--swapped", swapped, "Add the (n,m) term for each node");
    rend->add_option("--out", render_out, "Output .ppm path")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        if (const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front()) {
            err << sub->help();
        }
        return kUsage;
    }

    try {
        if (tree->parsed()) {
            const CoprimePair root = detail::parse_root(tree_root);
            const auto format = tree_format == "jsonl" ? DumpFormat::Jsonl : DumpFormat::Csv;
            detail::with_output(tree_out, out, [&](std::ostream& os) {
                write_tree(os, root, kStandardSeed, tree_depth, include_root, format);
            });
            return kOk;
        }
        if (check->parsed()) {
            const auto report = compare_forest(check_depth, patched);
            detail::with_output(check_out, out, [&](std::ostream& os) { os << to_json(report).dump(2) << "\n"; });
            if (!report.conjecture_holds()) {
                err << "conjecture pattern violated at depth " << check_depth << ": "
                    << report.differing_paths.describe() << ", differed " << report.differed << "\n";
                return kConjectureViolated;
            }
            return kOk;
        }
        if (bench->parsed()) {
            print_bench(out, bench_generation(bench_depth));
            return kOk;
        }
        if (trip->parsed()) {
            const auto t = triple(CoprimePair::checked(trip_m, trip_n));
            out << t.x << " " << t.y << " " << t.z << "\n";
            return kOk;
        }
        if (rend->parsed()) {
            RenderConfig cfg;
            cfg.window = detail::parse_window(window_text);
            std::tie(cfg.width, cfg.height) = detail::parse_size(size_text);
            cfg.term_depth = term_depth;
            cfg.motif = motif_text == "identity" ? Motif::Identity : Motif::Exp;
            if (colormap_text != "builtin") cfg.colormap_path = colormap_text;
            cfg.include_base_terms = base_terms;
            cfg.include_swapped = swapped;
            cfg.output = render_out;
            cfg.validate();
            const auto img = render_to_file(cfg);
            err << "wrote " << img.width << "x" << img.height << " image to " << render_out << "\n";
            return kOk;
        }
    } catch (const detail::UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kRuntime;
    }
    return kUsage;
}

}  // namespace trinary::cli
