#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "trinary/forest.hpp"

namespace trinary {

enum class DumpFormat { Csv, Jsonl };

inline constexpr std::string_view kCsvHeader = "level,path,m,n,u,v";

/// One serialized tree node: `level,path,m,n,u,v`.
struct DumpRow {
    std::int64_t level = 0;
    std::string path;  // over {A,B,C}; empty for the root
    std::int64_t m = 0, n = 0, u = 0, v = 0;

    friend bool operator==(const DumpRow&, const DumpRow&) = default;

    static DumpRow from(const NodeView& node) {
        DumpRow r{static_cast<std::int64_t>(node.level), {}, node.pair.m, node.pair.n, node.bezout.u, node.bezout.v};
        r.path.reserve(node.steps.size());
        for (Branch b : node.steps) r.path.push_back(to_char(b));
        return r;
    }
};

class DumpParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void write_row(std::ostream& os, const DumpRow& r, DumpFormat format) {
    if (format == DumpFormat::Csv) {
        os << r.level << ',' << r.path << ',' << r.m << ',' << r.n << ',' << r.u << ',' << r.v << '\n';
    } else {
        os << "{\"level\":" << r.level << ",\"path\":\"" << r.path << "\",\"m\":" << r.m << ",\"n\":" << r.n
           << ",\"u\":" << r.u << ",\"v\":" << r.v << "}\n";
    }
}

inline void write_header(std::ostream& os, DumpFormat format) {
    if (format == DumpFormat::Csv) os << kCsvHeader << '\n';
}

/// Streams one tree in canonical order. Returns the number of rows written.
inline std::int64_t write_tree(std::ostream& os, CoprimePair root, BezoutPair seed, std::size_t depth,
                               bool include_root, DumpFormat format) {
    write_header(os, format);
    std::int64_t rows = 0;
    for_each_node(root, seed, depth, include_root, [&](const NodeView& node) {
        write_row(os, DumpRow::from(node), format);
        ++rows;
    });
    return rows;
}

namespace detail {

inline std::int64_t parse_int(std::string_view field, std::size_t line_no) {
    std::int64_t value = 0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw DumpParseError("line " + std::to_string(line_no) + ": bad integer '" + std::string(field) + "'");
    }
    return value;
}

inline void check_path(const std::string& path, std::size_t line_no) {
    if (!parse_steps(path)) throw DumpParseError("line " + std::to_string(line_no) + ": bad path '" + path + "'");
}

}  // namespace detail

inline std::vector<DumpRow> read_dump(std::istream& is, DumpFormat format) {
    std::vector<DumpRow> rows;
    std::string line;
    std::size_t line_no = 0;
    if (format == DumpFormat::Csv) {
        if (!std::getline(is, line) || line != kCsvHeader) throw DumpParseError("missing CSV header");
        ++line_no;
    }
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        DumpRow r;
        if (format == DumpFormat::Csv) {
            std::vector<std::string_view> fields;
            std::string_view rest = line;
            for (;;) {
                const auto comma = rest.find(',');
                fields.push_back(rest.substr(0, comma));
                if (comma == std::string_view::npos) break;
                rest.remove_prefix(comma + 1);
            }
            if (fields.size() != 6) throw DumpParseError("line " + std::to_string(line_no) + ": expected 6 fields");
            r.level = detail::parse_int(fields[0], line_no);
            r.path = std::string(fields[1]);
            r.m = detail::parse_int(fields[2], line_no);
            r.n = detail::parse_int(fields[3], line_no);
            r.u = detail::parse_int(fields[4], line_no);
            r.v = detail::parse_int(fields[5], line_no);
        } else {
            try {
                const auto j = nlohmann::json::parse(line);
                r.level = j.at("level").get<std::int64_t>();
                r.path = j.at("path").get<std::string>();
                r.m = j.at("m").get<std::int64_t>();
                r.n = j.at("n").get<std::int64_t>();
                r.u = j.at("u").get<std::int64_t>();
                r.v = j.at("v").get<std::int64_t>();
            } catch (const nlohmann::json::exception& e) {
                throw DumpParseError("line " + std::to_string(line_no) + ": " + e.what());
            }
        }
        detail::check_path(r.path, line_no);
        rows.push_back(std::move(r));
    }
    return rows;
}

inline void write_dump(std::ostream& os, const std::vector<DumpRow>& rows, DumpFormat format) {
    write_header(os, format);
    for (const auto& r : rows) write_row(os, r, format);
}

}  // namespace trinary
