// Named matroids, the spike, alpha and omega families, projective geometries
// and complete-graph cycle matroids.
#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "canonical.hpp"
#include "connectivity.hpp"
#include "matroid.hpp"
#include "minor.hpp"

namespace binmat {

struct LabeledMatroid {
    BinaryMatroid matroid;
    FamilyLabeling labels;

    [[nodiscard]] ElementId id(const std::string& label) const {
        auto it = labels.find(label);
        if (it == labels.end()) throw std::invalid_argument("unknown label " + label);
        return it->second;
    }
};

/// Thrown when a family construction fails one of its built-in assertions.
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::uint64_t unit(std::size_t i) { return std::uint64_t{1} << i; }

// Column from 1-based row positions.
inline std::uint64_t rows_mask(std::initializer_list<std::size_t> rows) {
    std::uint64_t v = 0;
    for (auto r : rows) v |= unit(r - 1);
    return v;
}

}  // namespace detail

/// Binary spike: [I_r | D], D having r+1 columns, zeros on the diagonal and ones elsewhere.
/// Labels b_1..b_r, a_1..a_r, c_r.
inline LabeledMatroid z_spike(std::size_t r) {
    if (r < 4 || r > 30) throw std::out_of_range("z_spike: rank must be in 4..30");
    std::vector<std::uint64_t> cols;
    LabeledMatroid out;
    const std::uint64_t ones = detail::low_bits(r);
    for (std::size_t i = 0; i < r; ++i) cols.push_back(detail::unit(i));
    for (std::size_t i = 0; i < r; ++i) cols.push_back(ones & ~detail::unit(i));
    cols.push_back(ones);
    out.matroid = BinaryMatroid::from_columns(cols, "Z" + std::to_string(r));
    for (std::size_t i = 1; i <= r; ++i) {
        out.labels["b_" + std::to_string(i)] = static_cast<ElementId>(i);
        out.labels["a_" + std::to_string(i)] = static_cast<ElementId>(r + i);
    }
    out.labels["c_" + std::to_string(r)] = static_cast<ElementId>(2 * r + 1);
    return out;
}

/// All nonzero vectors of GF(2)^r: the unit vectors first, then the rest in increasing order.
inline BinaryMatroid projective_geometry(std::size_t r) {
    if (r < 2 || r > 6) throw std::out_of_range("projective_geometry: rank must be in 2..6");
    std::vector<std::uint64_t> cols;
    for (std::size_t i = 0; i < r; ++i) cols.push_back(detail::unit(i));
    for (std::uint64_t v = 1; v < (std::uint64_t{1} << r); ++v) {
        if (std::popcount(v) > 1) cols.push_back(v);
    }
    return BinaryMatroid::from_columns(cols, "PG(" + std::to_string(r - 1) + ",2)");
}

/// Cycle matroid of K_{r+1}: vertex-edge incidence with vertex r's row removed.
/// Edges to vertex r come first (the identity), then edges {i,j} in lexicographic order.
inline BinaryMatroid complete_graph_cycle_matroid(std::size_t r) {
    if (r < 1 || r > 10) throw std::out_of_range("complete_graph_cycle_matroid: rank must be in 1..10");
    std::vector<std::uint64_t> cols;
    for (std::size_t i = 0; i < r; ++i) cols.push_back(detail::unit(i));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i + 1; j < r; ++j) cols.push_back(detail::unit(i) | detail::unit(j));
    }
    return BinaryMatroid::from_columns(cols, "M(K" + std::to_string(r + 1) + ")");
}

namespace detail {

struct NamedEntry {
    std::function<BinaryMatroid()> build;
};

inline BinaryMatroid std_rows(const std::vector<std::string>& d_rows, const std::string& name) {
    return BinaryMatroid::from_standard_rows(d_rows, name);
}

inline BinaryMatroid with_columns(const BinaryMatroid& base, const std::vector<std::string>& cols,
                                  const std::string& name) {
    BinaryMatroid m = base;
    for (const auto& c : cols) m = m.extend(parse_column(c));
    return m.renamed(name);
}

// Coextension by a row written over the non-pivot columns.
inline BinaryMatroid with_row(const BinaryMatroid& base, const std::string& row, const std::string& name) {
    return base.coextend(base.row_over_nonpivots(parse_column(row))).renamed(name);
}

inline BinaryMatroid p9star_display() {
    return std_rows({"0111", "1011", "1101", "1111", "1100"}, "P9dual");
}

// P_9 written as [I_4 | D] with D the transpose of the P_9* block.
inline BinaryMatroid p9_standard() { return std_rows({"01111", "10111", "11010", "11110"}, "P9"); }

inline BinaryMatroid alpha5_display() {
    return std_rows({"01111", "10111", "11010", "11110", "00011"}, "E7");
}

inline const std::map<std::string, NamedEntry>& named_table() {
    static const std::map<std::string, NamedEntry> table = [] {
        std::map<std::string, NamedEntry> t;
        auto add = [&t](const std::string& name, std::function<BinaryMatroid()> fn) {
            t[name] = {[name, fn] { return fn().renamed(name); }};
        };
        add("F7", [] { return std_rows({"0111", "1011", "1101"}, "F7"); });
        add("F7dual", [] { return std_rows({"0111", "1011", "1101"}, "F7").dual().relabeled(); });
        add("PG22", [] { return projective_geometry(3); });
        add("PG32", [] { return projective_geometry(4); });
        add("AG32", [] { return std_rows({"0111", "1011", "1101", "1110"}, "AG32"); });
        add("S8", [] {
            auto z = z_spike(4);
            return z.matroid.delete_elements({z.id("a_4")}).relabeled();
        });
        add("P9dual", [] { return p9star_display(); });
        add("P9", [] { return p9_standard(); });
        add("R16", [] {
            return std_rows({"10011001111", "11001110011", "11100011101", "01110100111", "00111111001"}, "R16");
        });
        add("E7", [] { return alpha5_display(); });
        add("alpha5", [] { return alpha5_display(); });

        // single- and double-element extensions of P_9 (first column of each class)
        add("D1", [] { return std_rows({"011111", "101111", "110101", "111100"}, "D1"); });
        add("D2", [] { return std_rows({"011111", "101110", "110100", "111101"}, "D2"); });
        add("D3", [] { return std_rows({"011110", "101110", "110101", "111101"}, "D3"); });
        add("X1", [] { return with_columns(p9_standard(), {"1110", "0101"}, "X1"); });
        add("X2", [] { return with_columns(p9_standard(), {"1110", "0011"}, "X2"); });
        add("X3", [] { return with_columns(p9_standard(), {"1001", "0011"}, "X3"); });
        add("Xprime1", [] {
            return std_rows({"0111111", "1011100", "1101001", "1111010", "0000011"}, "Xprime1");
        });
        add("Xprime2", [] {
            return std_rows({"0111110", "1011110", "1101011", "1111001", "0000011"}, "Xprime2");
        });
        add("Xprime3", [] {
            return std_rows({"0111110", "1011100", "1101001", "1111011", "0000011"}, "Xprime3");
        });

        // cosimple coextensions of P_9, one row per class
        const std::vector<std::pair<std::string, std::string>> e_rows = {
            {"E1", "11000"}, {"E2", "11011"}, {"E3", "11001"}, {"E4", "01001"},
            {"E5", "01011"}, {"E6", "00101"}, {"E6star", "00111"}};
        for (const auto& [name, row] : e_rows) {
            add(name, [row = row, name = name] { return with_row(p9_standard(), row, name); });
        }

        // first listed column of each extension class; the coextension rows of the
        // selected-coextension table are written over these representations
        add("alpha5_1", [] { return with_columns(alpha5_display(), {"00110"}, "alpha5_1"); });
        add("alpha5_2", [] { return with_columns(alpha5_display(), {"00111"}, "alpha5_2"); });
        add("alpha5_3", [] { return with_columns(alpha5_display(), {"01011"}, "alpha5_3"); });
        add("alpha5_1_1", [] {
            return std_rows({"0111110", "1011110", "1101001", "1111001", "0001100"}, "alpha5_1_1");
        });
        add("alpha5_1_2", [] {
            return std_rows({"0111111", "1011111", "1101001", "1111000", "0001100"}, "alpha5_1_2");
        });
        add("alpha5_2_2", [] { return with_columns(alpha5_display(), {"11100", "00111"}, "alpha5_2_2"); });
        add("alpha5_3_1", [] {
            return std_rows({"0111100", "1011111", "1101001", "1111010", "0001111"}, "alpha5_3_1");
        });
        add("alpha5_3_1p", [] {
            return std_rows({"0111100", "1011111", "1101001", "1111010", "0001111", "0000011"}, "alpha5_3_1p");
        });
        add("alpha5_1_2p", [] {
            return std_rows({"0111111", "1011111", "1101001", "1111000", "0001100", "0000011"}, "alpha5_1_2p");
        });
        // display damaged; rebuilt as alpha5_2_2 with row [0000011] on the two added columns
        add("alpha5_2_2p", [] {
            return std_rows({"0111110", "1011110", "1101011", "1111001", "0001101", "0000011"}, "alpha5_2_2p");
        });

        // reduction matrices from the spike argument
        add("Zprime", [] { return std_rows({"01111", "10111", "11011", "11101", "00011"}, "Zprime"); });
        add("Z5dual_b4", [] { return std_rows({"01110", "10110", "11010", "11101", "11111"}, "Z5dual_b4"); });

        // rank-7 check matrices
        const std::vector<std::string> m_head = {"01111101", "10111101", "11010010", "11110010", "00011000",
                                                 "00000110"};
        auto m_matrix = [m_head](std::string row3, std::string last, std::string name) {
            auto rows = m_head;
            rows[2] = std::move(row3);
            rows.push_back(std::move(last));
            return std_rows(rows, name);
        };
        add("M1", [m_matrix] { return m_matrix("11010010", "00000011", "M1"); });
        add("M2", [m_matrix] { return m_matrix("11010010", "00000111", "M2"); });
        add("M3", [m_matrix] { return m_matrix("11010010", "00000101", "M3"); });
        add("M4", [m_matrix] { return m_matrix("11010011", "00000011", "M4"); });

        // alpha_6 + v and alpha_7 + v check matrices
        const std::vector<std::pair<std::string, std::vector<std::string>>> checks = {
            {"alpha6_e6", {"01111101", "10111101", "11010011", "11110010", "00011000", "00000111"}},
            {"alpha6_f6", {"01111100", "10111100", "11010011", "11110011", "00011001", "00000111"}},
            {"alpha6_b1", {"01111101", "10111100", "11010010", "11110010", "00011000", "00000111"}},
            {"alpha6_b2", {"01111100", "10111101", "11010010", "11110010", "00011000", "00000111"}},
            {"alpha6_b3", {"01111100", "10111100", "11010011", "11110010", "00011000", "00000111"}},
            {"alpha6_b4", {"01111100", "10111100", "11010010", "11110011", "00011000", "00000111"}},
            {"alpha6_b5", {"01111100", "10111100", "11010010", "11110010", "00011001", "00000111"}},
            {"alpha6_a1", {"01111100", "10111101", "11010011", "11110011", "00011000", "00000111"}},
            {"alpha6_a2", {"01111101", "10111100", "11010011", "11110011", "00011000", "00000111"}},
            {"alpha6_a3", {"01111101", "10111101", "11010010", "11110011", "00011000", "00000111"}},
            {"alpha6_a4", {"01111101", "10111101", "11010011", "11110011", "00011001", "00000111"}},
            {"alpha7_g61",
             {"0111110101", "1011110101", "1101001011", "1111001011", "0001100000", "0000011001", "0000000111"}},
            {"alpha7_b6",
             {"0111110100", "1011110100", "1101001010", "1111001010", "0001100000", "0000011001", "0000000111"}},
            {"alpha7_c5",
             {"0111110101", "1011110101", "1101001010", "1111001010", "0001100000", "0000011001", "0000000111"}},
            {"alpha7_d5",
             {"0111110100", "1011110100", "1101001011", "1111001011", "0001100000", "0000011001", "0000000111"}},
        };
        for (const auto& [name, rows] : checks) {
            add(name, [rows = rows, name = name] { return std_rows(rows, name); });
        }
        return t;
    }();
    return table;
}

}  // namespace detail

inline std::vector<std::string> named_list() {
    std::vector<std::string> out;
    for (const auto& [name, entry] : detail::named_table()) out.push_back(name);
    return out;
}

/// Named matroid built from its displayed matrix (ids 1..n, identity first).
inline BinaryMatroid named(const std::string& name) {
    const auto& t = detail::named_table();
    auto it = t.find(name);
    if (it == t.end()) throw std::invalid_argument("unknown matroid name: " + name);
    return it->second.build();
}

/// alpha_r. Built from alpha_{r-1} by adding c = [1100..0] and d = [0011..0] and
/// then a row with ones on exactly those two columns; the result is reordered
/// to b_1..b_r, a_1..a_5, c_5, d_5, ..., c_{r-1}, d_{r-1}.
inline LabeledMatroid alpha(std::size_t r) {
    if (r < 5 || r > 20) throw std::out_of_range("alpha: rank must be in 5..20");
    BinaryMatroid m = detail::alpha5_display();
    for (std::size_t k = 6; k <= r; ++k) {
        const std::size_t prev = k - 1;
        const auto grown = m.extend(detail::rows_mask({1, 2})).extend(detail::rows_mask({3, 4}));
        const std::uint64_t row = (std::uint64_t{1} << (grown.size() - 1)) | (std::uint64_t{1} << (grown.size() - 2));
        const auto co = grown.coextend(row);
        // the coextension element is last; move it to position prev (0-based) among the identity block
        std::vector<std::uint64_t> cols;
        const auto& cc = co.columns();
        for (std::size_t j = 0; j < prev; ++j) cols.push_back(cc[j]);
        cols.push_back(cc.back());
        for (std::size_t j = prev; j + 1 < cc.size(); ++j) cols.push_back(cc[j]);
        m = BinaryMatroid::from_columns(cols);
    }
    LabeledMatroid out;
    out.matroid = m.renamed("alpha" + std::to_string(r));
    for (std::size_t i = 1; i <= r; ++i) out.labels["b_" + std::to_string(i)] = static_cast<ElementId>(i);
    for (std::size_t i = 1; i <= 5; ++i) out.labels["a_" + std::to_string(i)] = static_cast<ElementId>(r + i);
    for (std::size_t k = 5; k < r; ++k) {
        const auto base = static_cast<ElementId>(r + 5 + 2 * (k - 5));
        out.labels["c_" + std::to_string(k)] = base + 1;
        out.labels["d_" + std::to_string(k)] = base + 2;
    }
    if (out.matroid.size() != 3 * r - 5) throw ConstructionError("alpha: unexpected size");
    return out;
}

/// Excluded-minor targets understood by the CLI and the search code.
enum class Target { p9, p9star, f7, f7star, e7 };

inline const char* target_name(Target t) {
    switch (t) {
        case Target::p9: return "p9";
        case Target::p9star: return "p9star";
        case Target::f7: return "f7";
        case Target::f7star: return "f7star";
        case Target::e7: return "e7";
    }
    return "?";
}

inline Target parse_target(const std::string& s) {
    if (s == "p9") return Target::p9;
    if (s == "p9star") return Target::p9star;
    if (s == "f7") return Target::f7;
    if (s == "f7star") return Target::f7star;
    if (s == "e7") return Target::e7;
    throw std::invalid_argument("unknown target " + s);
}

inline BinaryMatroid target_matroid(Target t) {
    switch (t) {
        case Target::p9: return named("P9");
        case Target::p9star: return named("P9dual");
        case Target::f7: return named("F7");
        case Target::f7star: return named("F7dual");
        case Target::e7: return named("E7");
    }
    throw std::invalid_argument("bad target");
}

/// Shared oracle per target. Rank-5 targets (P_9*, E_7) use orbit tables cached
/// under orbit_cache_dir().
inline const MinorOracle& oracle(Target t) {
    static std::mutex mutex;
    static std::map<Target, std::unique_ptr<MinorOracle>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[t];
    if (!slot) {
        auto m = target_matroid(t);
        std::shared_ptr<const OrbitTable> orbit;
        if (m.rank() == OrbitTable::kRank && m.is_simple()) {
            orbit = std::make_shared<OrbitTable>(OrbitTable::load_or_build(m, orbit_cache_dir()));
        }
        slot = std::make_unique<MinorOracle>(m.renamed(target_name(t)), orbit);
    }
    return *slot;
}

/// Omega_r: alpha_r plus every column v with alpha_r + v free of P_9* minors.
/// Asserts r such columns, size 4r - 5, 3-connectivity, P_9*-freeness and
/// Omega_r / b_r \ {c_r, d_r, g_{r,r-4}} ~ Omega_{r-1}.
inline LabeledMatroid omega(std::size_t r) {
    if (r < 5 || r > 9) throw std::out_of_range("omega: rank must be in 5..9");
    static std::mutex mutex;
    static std::map<std::size_t, LabeledMatroid> memo;
    {
        std::lock_guard<std::mutex> lock(mutex);
        if (auto it = memo.find(r); it != memo.end()) return it->second;
    }
    const auto a = alpha(r);
    const auto& p9s = oracle(Target::p9star);
    std::vector<std::uint64_t> added;
    const auto& existing = a.matroid.columns();
    for (std::uint64_t v = 1; v < (std::uint64_t{1} << r); ++v) {
        if (std::find(existing.begin(), existing.end(), v) != existing.end()) continue;
        if (!p9s.has(a.matroid.extend(v))) added.push_back(v);
    }
    if (r == 5) {
        // at rank 5 the alpha_{5,3} columns are class-preserving too; they lead to
        // R_16 rather than Omega_5, so keep only the alpha_{5,1} / alpha_{5,2} classes
        const auto a51 = canonical_key(named("alpha5_1"));
        const auto a52 = canonical_key(named("alpha5_2"));
        std::erase_if(added, [&](std::uint64_t v) {
            const auto k = canonical_key(a.matroid.extend(v));
            return k != a51 && k != a52;
        });
    }
    if (added.size() != r) {
        throw ConstructionError("omega: expected " + std::to_string(r) + " class-preserving columns, found " +
                                std::to_string(added.size()));
    }

    // label by row pattern; f_r is the one column matching no other pattern
    const std::string rs = std::to_string(r);
    std::vector<std::pair<std::string, std::uint64_t>> labeled;
    auto take = [&](const std::string& label, std::uint64_t pattern) {
        auto it = std::find(added.begin(), added.end(), pattern);
        if (it == added.end()) throw ConstructionError("omega: missing column for " + label);
        labeled.emplace_back(label, pattern);
        added.erase(it);
    };
    take("c_" + rs, detail::rows_mask({1, 2}));
    take("d_" + rs, detail::rows_mask({3, 4}));
    take("e_" + rs, detail::rows_mask({1, 2, 3}));
    const std::size_t f_slot = labeled.size();
    take("g_" + rs + ",1", detail::rows_mask({1, 2, 3, 4}));
    for (std::size_t k = 2; k <= r - 4; ++k) {
        take("g_" + rs + "," + std::to_string(k), detail::rows_mask({1, 2, 3, 4}) | detail::unit(k + 3));
    }
    if (added.size() != 1) throw ConstructionError("omega: could not isolate f_r");
    labeled.insert(labeled.begin() + static_cast<std::ptrdiff_t>(f_slot), {"f_" + rs, added.front()});

    LabeledMatroid out;
    out.labels = a.labels;
    BinaryMatroid m = a.matroid;
    for (const auto& [label, col] : labeled) {
        m = m.extend(col);
        out.labels[label] = m.max_id();
    }
    out.matroid = m.renamed("Omega" + rs);

    if (out.matroid.size() != 4 * r - 5) throw ConstructionError("omega: unexpected size");
    if (!is_3connected(out.matroid)) throw ConstructionError("omega: not 3-connected");
    if (p9s.has(out.matroid)) throw ConstructionError("omega: has a P9* minor");
    if (r >= 6) {
        const auto prev = omega(r - 1);
        const auto prev_key = canonical_key(prev.matroid);
        auto recursion_holds = [&](ElementId g) {
            const auto minor = out.matroid.minor({out.id("b_" + rs)}, {out.id("c_" + rs), out.id("d_" + rs), g});
            return canonical_key(minor) == prev_key;
        };
        const std::string glast = "g_" + rs + "," + std::to_string(r - 4);
        if (!recursion_holds(out.id(glast))) {
            // relabel: g_{r,r-4} is whichever g column satisfies the recursion
            bool fixed = false;
            for (std::size_t k = 1; k < r - 4 && !fixed; ++k) {
                const std::string other = "g_" + rs + "," + std::to_string(k);
                if (recursion_holds(out.id(other))) {
                    std::swap(out.labels[other], out.labels[glast]);
                    fixed = true;
                }
            }
            if (!fixed) throw ConstructionError("omega: recursion identity fails for every g column");
        }
    }
    std::lock_guard<std::mutex> lock(mutex);
    memo.emplace(r, out);
    return out;
}

}  // namespace binmat
