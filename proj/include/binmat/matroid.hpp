// Binary matroids as labeled GF(2) column sets in standard form.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gf2.hpp"

namespace binmat {

/// Element label. Ids survive deletion and contraction unchanged.
using ElementId = std::uint32_t;
using ElementSet = std::set<ElementId>;

/// Symbolic family names (b_1, a_3, g_{6,2}, ...) mapped to element ids.
using FamilyLabeling = std::map<std::string, ElementId>;

inline constexpr std::size_t kMaxElements = 64;
inline constexpr std::size_t kMaxRank = 63;

namespace detail {

inline std::uint64_t low_bits(std::size_t k) {
    return k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
}

// Echelon basis that also tracks each basis vector as a combination of the
// inserted vectors, so coordinates relative to the inserted order can be read off.
class TrackedBasis {
public:
    bool insert(std::uint64_t v) {
        std::uint64_t combo = std::uint64_t{1} << count_;
        reduce(v, combo);
        if (v == 0) return false;
        const int top = 63 - std::countl_zero(v);
        vec_[top] = v;
        combo_[top] = combo;
        present_ |= std::uint64_t{1} << top;
        ++count_;
        return true;
    }

    // Coordinates of v in terms of the inserted (independent) vectors.
    // Returns nullopt when v is outside the span.
    [[nodiscard]] std::optional<std::uint64_t> coords(std::uint64_t v) const {
        std::uint64_t combo = 0;
        reduce(v, combo);
        if (v != 0) return std::nullopt;
        return combo;
    }

    [[nodiscard]] std::size_t rank() const { return count_; }

private:
    void reduce(std::uint64_t& v, std::uint64_t& combo) const {
        for (std::uint64_t hit = v & present_; hit != 0; hit = v & present_) {
            const int top = 63 - std::countl_zero(hit);
            v ^= vec_[top];
            combo ^= combo_[top];
        }
    }

    std::uint64_t vec_[64] = {};
    std::uint64_t combo_[64] = {};
    std::uint64_t present_ = 0;
    std::size_t count_ = 0;
};

struct Standardized {
    std::size_t rank = 0;
    std::vector<std::uint64_t> cols;
    std::vector<std::size_t> pivots;
};

// Rewrites columns in coordinates of the greedy left-to-right basis: the
// unique reduced row-echelon form of the column set.
inline Standardized standardize(const std::vector<std::uint64_t>& cols) {
    TrackedBasis basis;
    Standardized out;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (basis.insert(cols[j])) out.pivots.push_back(j);
    }
    out.rank = basis.rank();
    out.cols.reserve(cols.size());
    for (auto v : cols) out.cols.push_back(*basis.coords(v));
    return out;
}

}  // namespace detail

class BinaryMatroid {
public:
    BinaryMatroid() = default;

    /// Columns given as packed vectors (bit i = row i) with explicit ids.
    /// The representation is reduced to full row rank and standard form.
    static BinaryMatroid from_columns(const std::vector<std::uint64_t>& cols, std::vector<ElementId> ids,
                                      std::string name = {}) {
        if (cols.size() != ids.size()) throw std::invalid_argument("column/id count mismatch");
        if (cols.size() > kMaxElements) throw std::invalid_argument("too many elements (limit 64)");
        {
            auto sorted = ids;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
                throw std::invalid_argument("duplicate element id");
            }
        }
        auto st = detail::standardize(cols);
        BinaryMatroid m;
        m.rank_ = st.rank;
        m.cols_ = std::move(st.cols);
        m.pivots_ = std::move(st.pivots);
        m.ids_ = std::move(ids);
        m.name_ = std::move(name);
        return m;
    }

    static BinaryMatroid from_columns(const std::vector<std::uint64_t>& cols, std::string name = {}) {
        std::vector<ElementId> ids(cols.size());
        for (std::size_t j = 0; j < ids.size(); ++j) ids[j] = static_cast<ElementId>(j + 1);
        return from_columns(cols, std::move(ids), std::move(name));
    }

    /// Column matroid of `m`; ids 1..n left to right.
    static BinaryMatroid from_matrix(const Gf2Matrix& m, std::string name = {}) {
        if (m.rows() > 64) throw std::invalid_argument("more than 64 rows");
        if (m.cols() == 0) throw std::invalid_argument("empty ground set");
        std::vector<std::uint64_t> cols(m.cols(), 0);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (m.at(i, j)) cols[j] |= std::uint64_t{1} << i;
            }
        }
        return from_columns(cols, std::move(name));
    }

    /// [I_r | D] where `d_rows` holds the r rows of D as 0/1 strings.
    static BinaryMatroid from_standard_rows(const std::vector<std::string>& d_rows, std::string name = {}) {
        const std::size_t r = d_rows.size();
        std::vector<std::string> full;
        full.reserve(r);
        for (std::size_t i = 0; i < r; ++i) {
            std::string row(r, '0');
            row[i] = '1';
            full.push_back(row + Gf2Vector::from_string(d_rows[i]).to_string());
        }
        return from_matrix(Gf2Matrix::from_rows(full), std::move(name));
    }

    [[nodiscard]] std::size_t rank() const { return rank_; }
    [[nodiscard]] std::size_t size() const { return cols_.size(); }
    [[nodiscard]] std::size_t corank() const { return size() - rank_; }
    [[nodiscard]] const std::vector<std::uint64_t>& columns() const { return cols_; }
    [[nodiscard]] const std::vector<ElementId>& ids() const { return ids_; }
    [[nodiscard]] const std::vector<std::size_t>& pivots() const { return pivots_; }
    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] std::uint64_t all_mask() const { return detail::low_bits(size()); }

    [[nodiscard]] BinaryMatroid renamed(std::string name) const {
        BinaryMatroid m = *this;
        m.name_ = std::move(name);
        return m;
    }

    [[nodiscard]] ElementSet ground_set() const { return {ids_.begin(), ids_.end()}; }
    [[nodiscard]] ElementId max_id() const {
        return ids_.empty() ? 0 : *std::max_element(ids_.begin(), ids_.end());
    }

    [[nodiscard]] std::size_t index_of(ElementId id) const {
        for (std::size_t j = 0; j < ids_.size(); ++j) {
            if (ids_[j] == id) return j;
        }
        throw std::invalid_argument("unknown element id " + std::to_string(id));
    }

    [[nodiscard]] bool contains(ElementId id) const {
        return std::find(ids_.begin(), ids_.end(), id) != ids_.end();
    }

    [[nodiscard]] std::uint64_t column_of(ElementId id) const { return cols_[index_of(id)]; }

    /// Column-index mask for a set of ids.
    [[nodiscard]] std::uint64_t mask_of(const ElementSet& s) const {
        std::uint64_t mask = 0;
        for (auto id : s) mask |= std::uint64_t{1} << index_of(id);
        return mask;
    }

    [[nodiscard]] ElementSet ids_of(std::uint64_t mask) const {
        ElementSet s;
        for (std::size_t j = 0; j < size(); ++j) {
            if ((mask >> j) & 1u) s.insert(ids_[j]);
        }
        return s;
    }

    /// r x n matrix in standard form (pivot columns are unit vectors).
    [[nodiscard]] Gf2Matrix matrix() const {
        Gf2Matrix m(rank_, size());
        for (std::size_t j = 0; j < size(); ++j) {
            for (std::size_t i = 0; i < rank_; ++i) {
                if ((cols_[j] >> i) & 1u) m.set(i, j, true);
            }
        }
        return m;
    }

    [[nodiscard]] std::size_t rank_of_mask(std::uint64_t mask) const {
        WordBasis basis;
        for (; mask != 0; mask &= mask - 1) basis.insert(cols_[std::countr_zero(mask)]);
        return basis.rank();
    }

    [[nodiscard]] std::size_t rank_of(const ElementSet& s) const { return rank_of_mask(mask_of(s)); }

    /// Dual with every element keeping its id and position.
    [[nodiscard]] BinaryMatroid dual() const {
        const std::size_t n = size();
        std::vector<std::size_t> nonpivots;
        std::vector<bool> is_pivot(n, false);
        for (auto p : pivots_) is_pivot[p] = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (!is_pivot[j]) nonpivots.push_back(j);
        }
        std::vector<std::uint64_t> dcols(n, 0);
        for (std::size_t k = 0; k < nonpivots.size(); ++k) dcols[nonpivots[k]] = std::uint64_t{1} << k;
        for (std::size_t i = 0; i < pivots_.size(); ++i) {
            std::uint64_t v = 0;
            for (std::size_t k = 0; k < nonpivots.size(); ++k) {
                if ((cols_[nonpivots[k]] >> i) & 1u) v |= std::uint64_t{1} << k;
            }
            dcols[pivots_[i]] = v;
        }
        return from_columns(dcols, ids_, name_.empty() ? std::string{} : name_ + "*");
    }

    [[nodiscard]] BinaryMatroid delete_mask(std::uint64_t mask) const {
        std::vector<std::uint64_t> cols;
        std::vector<ElementId> ids;
        for (std::size_t j = 0; j < size(); ++j) {
            if (!((mask >> j) & 1u)) {
                cols.push_back(cols_[j]);
                ids.push_back(ids_[j]);
            }
        }
        return from_columns(cols, std::move(ids));
    }

    [[nodiscard]] BinaryMatroid contract_mask(std::uint64_t mask) const {
        WordBasis basis;
        for (std::uint64_t m = mask; m != 0; m &= m - 1) basis.insert(cols_[std::countr_zero(m)]);
        std::vector<std::uint64_t> cols;
        std::vector<ElementId> ids;
        for (std::size_t j = 0; j < size(); ++j) {
            if (!((mask >> j) & 1u)) {
                cols.push_back(basis.reduce(cols_[j]));
                ids.push_back(ids_[j]);
            }
        }
        return from_columns(cols, std::move(ids));
    }

    [[nodiscard]] BinaryMatroid delete_elements(const ElementSet& s) const { return delete_mask(mask_of(s)); }
    [[nodiscard]] BinaryMatroid contract(const ElementSet& s) const { return contract_mask(mask_of(s)); }

    /// M / contract \ del.
    [[nodiscard]] BinaryMatroid minor(const ElementSet& contract_set, const ElementSet& delete_set) const {
        for (auto id : contract_set) {
            if (delete_set.count(id)) throw std::invalid_argument("contract and delete sets overlap");
        }
        return contract(contract_set).delete_elements(delete_set);
    }

    /// Appends a column (bit i = row i of the standard form) with the given id,
    /// or max id + 1 by default.
    [[nodiscard]] BinaryMatroid extend(std::uint64_t column, std::optional<ElementId> id = std::nullopt) const {
        if (rank_ < 64 && (column >> rank_) != 0) throw std::invalid_argument("extension column wider than rank");
        auto cols = cols_;
        auto ids = ids_;
        cols.push_back(column);
        ids.push_back(id.value_or(max_id() + 1));
        return from_columns(cols, std::move(ids));
    }

    /// Adds a new row and a new element whose column is the new unit vector.
    /// `row_mask` gives the new row over the existing columns (bit j = column j).
    [[nodiscard]] BinaryMatroid coextend(std::uint64_t row_mask, std::optional<ElementId> id = std::nullopt) const {
        if (rank_ >= kMaxRank) throw std::invalid_argument("rank limit");
        if ((row_mask & ~all_mask()) != 0) throw std::invalid_argument("coextension row wider than ground set");
        auto cols = cols_;
        auto ids = ids_;
        const std::uint64_t bit = std::uint64_t{1} << rank_;
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if ((row_mask >> j) & 1u) cols[j] |= bit;
        }
        cols.push_back(bit);
        ids.push_back(id.value_or(max_id() + 1));
        return from_columns(cols, std::move(ids));
    }

    /// Indices of the non-pivot columns, left to right. A coextension row
    /// written as a 0/1 string over D is laid over these.
    [[nodiscard]] std::vector<std::size_t> nonpivots() const {
        std::vector<std::size_t> out;
        std::size_t p = 0;
        for (std::size_t j = 0; j < size(); ++j) {
            if (p < pivots_.size() && pivots_[p] == j) {
                ++p;
            } else {
                out.push_back(j);
            }
        }
        return out;
    }

    /// Spreads a mask over the non-pivot columns to a mask over all columns.
    [[nodiscard]] std::uint64_t row_over_nonpivots(std::uint64_t d_mask) const {
        const auto np = nonpivots();
        std::uint64_t row = 0;
        for (std::size_t k = 0; k < np.size(); ++k) {
            if ((d_mask >> k) & 1u) row |= std::uint64_t{1} << np[k];
        }
        return row;
    }

    [[nodiscard]] bool is_simple() const {
        std::vector<std::uint64_t> seen;
        seen.reserve(size());
        for (auto c : cols_) {
            if (c == 0) return false;
            seen.push_back(c);
        }
        std::sort(seen.begin(), seen.end());
        return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
    }

    [[nodiscard]] bool is_cosimple() const { return dual().is_simple(); }

    /// Minimal dependent sets of size <= k, each as a column-index mask.
    [[nodiscard]] std::vector<std::uint64_t> small_circuit_masks(std::size_t k) const {
        std::vector<std::uint64_t> out;
        const std::size_t n = size();
        std::vector<std::size_t> idx;
        // depth-first over increasing index tuples; a tuple is kept when it sums
        // to zero and no proper subset is dependent
        auto rec = [&](auto&& self, std::size_t start, std::uint64_t sum, std::uint64_t mask) -> void {
            if (!idx.empty() && sum == 0) {
                if (rank_of_mask(mask) == idx.size() - 1) out.push_back(mask);
                return;
            }
            if (idx.size() == k) return;
            for (std::size_t j = start; j < n; ++j) {
                idx.push_back(j);
                self(self, j + 1, sum ^ cols_[j], mask | (std::uint64_t{1} << j));
                idx.pop_back();
            }
        };
        rec(rec, 0, 0, 0);
        std::sort(out.begin(), out.end());
        return out;
    }

    [[nodiscard]] std::vector<ElementSet> small_circuits(std::size_t k) const {
        std::vector<ElementSet> out;
        for (auto m : small_circuit_masks(k)) out.push_back(ids_of(m));
        return out;
    }

    /// True iff every circuit has even size, i.e. the all-ones vector is in the row space.
    [[nodiscard]] bool all_circuits_even() const {
        // pivot columns are unit vectors, so the only candidate combination is all rows
        const std::uint64_t y = detail::low_bits(rank_);
        return std::all_of(cols_.begin(), cols_.end(),
                           [y](std::uint64_t c) { return (std::popcount(c & y) & 1) == 1; });
    }

    /// Removes loops and all but the first element of every parallel class.
    [[nodiscard]] BinaryMatroid simplify() const {
        std::uint64_t drop = 0;
        std::unordered_map<std::uint64_t, std::size_t> first;
        for (std::size_t j = 0; j < size(); ++j) {
            if (cols_[j] == 0 || !first.emplace(cols_[j], j).second) drop |= std::uint64_t{1} << j;
        }
        return delete_mask(drop);
    }

    /// Same columns relabeled 1..n in the current order.
    [[nodiscard]] BinaryMatroid relabeled() const { return from_columns(cols_, name_); }

    friend bool operator==(const BinaryMatroid& a, const BinaryMatroid& b) {
        return a.rank_ == b.rank_ && a.cols_ == b.cols_ && a.ids_ == b.ids_;
    }

private:
    std::size_t rank_ = 0;
    std::vector<std::uint64_t> cols_;
    std::vector<ElementId> ids_;
    std::vector<std::size_t> pivots_;
    std::string name_;
};

/// Column as a 0/1 string of length r, row 1 first.
inline std::string column_string(std::uint64_t col, std::size_t r) {
    std::string s(r, '0');
    for (std::size_t i = 0; i < r; ++i) {
        if ((col >> i) & 1u) s[i] = '1';
    }
    return s;
}

/// Parses "[01011]" style column strings, row 1 first.
inline std::uint64_t parse_column(const std::string& text) {
    const auto v = Gf2Vector::from_string(text);
    return v.to_bits();
}

}  // namespace binmat
