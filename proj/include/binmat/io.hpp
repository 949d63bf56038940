// Matroid files (.bmx) and census reports.
//
// .bmx layout: optional '#' comment lines, a header line "r n", r lines of n
// characters from {0,1}, then an optional label line "labels id_1 ... id_n".
#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "matroid.hpp"
#include "splitter.hpp"

namespace binmat {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline BinaryMatroid parse_matroid_file(std::istream& in, const std::string& name = {}) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        lines.push_back(line);
    }
    if (lines.empty()) throw ParseError("matroid file: missing header");
    std::size_t r = 0;
    std::size_t n = 0;
    {
        std::istringstream hs(lines[0]);
        std::string extra;
        if (!(hs >> r >> n) || (hs >> extra)) throw ParseError("matroid file: header must be \"r n\"");
    }
    if (n > kMaxElements) throw ParseError("matroid file: more than 64 elements");
    if (lines.size() < r + 1) throw ParseError("matroid file: expected " + std::to_string(r) + " matrix rows");
    std::vector<std::uint64_t> cols(n, 0);
    for (std::size_t i = 0; i < r; ++i) {
        const auto& row = lines[1 + i];
        if (row.size() != n) throw ParseError("matroid file: row " + std::to_string(i + 1) + " has wrong length");
        for (std::size_t j = 0; j < n; ++j) {
            if (row[j] == '1') {
                cols[j] |= std::uint64_t{1} << i;
            } else if (row[j] != '0') {
                throw ParseError("matroid file: matrix entries must be 0 or 1");
            }
        }
    }
    std::vector<ElementId> ids(n);
    for (std::size_t j = 0; j < n; ++j) ids[j] = static_cast<ElementId>(j + 1);
    std::size_t next = r + 1;
    if (next < lines.size()) {
        std::istringstream ls(lines[next]);
        std::string tag;
        ls >> tag;
        if (tag != "labels") throw ParseError("matroid file: unexpected line \"" + lines[next] + "\"");
        for (std::size_t j = 0; j < n; ++j) {
            long long v = 0;
            if (!(ls >> v) || v < 0) throw ParseError("matroid file: bad label line");
            ids[j] = static_cast<ElementId>(v);
        }
        std::string extra;
        if (ls >> extra) throw ParseError("matroid file: too many labels");
        ++next;
    }
    if (next != lines.size()) throw ParseError("matroid file: trailing content");
    BinaryMatroid m;
    try {
        m = BinaryMatroid::from_columns(cols, ids, name);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("matroid file: ") + e.what());
    }
    if (m.rank() != r) throw ParseError("matroid file: rows are not linearly independent");
    return m;
}

inline BinaryMatroid read_matroid_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::string stem = path;
    if (auto p = stem.find_last_of('/'); p != std::string::npos) stem = stem.substr(p + 1);
    if (auto p = stem.rfind('.'); p != std::string::npos) stem = stem.substr(0, p);
    return parse_matroid_file(in, stem);
}

inline std::string serialize_matroid(const BinaryMatroid& m) {
    std::ostringstream out;
    if (!m.name().empty()) out << "# " << m.name() << "\n";
    out << m.rank() << " " << m.size() << "\n";
    for (std::size_t i = 0; i < m.rank(); ++i) {
        for (auto c : m.columns()) out << (((c >> i) & 1u) ? '1' : '0');
        out << "\n";
    }
    out << "labels";
    for (auto id : m.ids()) out << " " << id;
    out << "\n";
    return out.str();
}

inline std::vector<std::string> matrix_rows(const BinaryMatroid& m) {
    std::vector<std::string> rows(m.rank());
    for (std::size_t i = 0; i < m.rank(); ++i) {
        for (auto c : m.columns()) rows[i].push_back(((c >> i) & 1u) ? '1' : '0');
    }
    return rows;
}

inline nlohmann::ordered_json census_json(const CensusReport& rep) {
    nlohmann::ordered_json j;
    j["rank"] = rep.rank;
    std::vector<std::string> ex;
    for (auto t : rep.excluded) ex.emplace_back(target_name(t));
    j["excluded"] = ex;
    j["nonregular"] = rep.nonregular_only;
    j["assumption"] = "chain roots F7 and F7* are neither wheels nor whirls";
    j["max_size"] = rep.max_size;
    std::vector<std::string> ext;
    for (const auto& k : rep.extremal) ext.push_back(k.hex());
    j["extremal"] = ext;
    j["class_count"] = rep.classes.size();
    auto classes = nlohmann::ordered_json::array();
    for (const auto& c : rep.classes) {
        nlohmann::ordered_json e;
        e["size"] = c.size();
        e["key"] = c.key.hex();
        e["matrix"] = matrix_rows(c.representative);
        classes.push_back(std::move(e));
    }
    j["classes"] = std::move(classes);
    return j;
}

}  // namespace binmat
