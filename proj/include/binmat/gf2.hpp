// Bit-packed vectors and matrices over GF(2).
#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace binmat {

/// A GF(2) vector of fixed width, packed 64 coordinates per word.
/// Coordinates beyond `width()` are always zero.
class Gf2Vector {
public:
    Gf2Vector() = default;
    explicit Gf2Vector(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}

    /// Parses a string of '0'/'1' characters, coordinate 0 first. Brackets,
    /// spaces and commas are ignored so "[0011]" and "0 0 1 1" both parse.
    static Gf2Vector from_string(std::string_view text) {
        std::string bits;
        for (char ch : text) {
            if (ch == '0' || ch == '1') {
                bits.push_back(ch);
            } else if (ch != '[' && ch != ']' && ch != ' ' && ch != ',' && ch != '\t') {
                throw std::invalid_argument("invalid character in GF(2) vector: " + std::string(text));
            }
        }
        Gf2Vector v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1') v.set(i, true);
        }
        return v;
    }

    /// Low `width` bits of `bits`, coordinate i taken from bit i.
    static Gf2Vector from_bits(std::uint64_t bits, std::size_t width) {
        if (width > 64) throw std::invalid_argument("from_bits: width > 64");
        Gf2Vector v(width);
        if (width > 0) v.words_[0] = width == 64 ? bits : (bits & ((std::uint64_t{1} << width) - 1));
        return v;
    }

    [[nodiscard]] std::size_t width() const { return width_; }

    [[nodiscard]] bool get(std::size_t i) const {
        check(i);
        return (words_[i / 64] >> (i % 64)) & 1u;
    }

    void set(std::size_t i, bool value) {
        check(i);
        const std::uint64_t bit = std::uint64_t{1} << (i % 64);
        if (value) {
            words_[i / 64] |= bit;
        } else {
            words_[i / 64] &= ~bit;
        }
    }

    void flip(std::size_t i) {
        check(i);
        words_[i / 64] ^= std::uint64_t{1} << (i % 64);
    }

    Gf2Vector& operator^=(const Gf2Vector& other) {
        if (other.width_ != width_) throw std::invalid_argument("Gf2Vector width mismatch");
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
        return *this;
    }

    friend Gf2Vector operator^(Gf2Vector lhs, const Gf2Vector& rhs) {
        lhs ^= rhs;
        return lhs;
    }

    [[nodiscard]] bool dot(const Gf2Vector& other) const {
        if (other.width_ != width_) throw std::invalid_argument("Gf2Vector width mismatch");
        unsigned acc = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) acc ^= std::popcount(words_[w] & other.words_[w]) & 1u;
        return acc != 0;
    }

    [[nodiscard]] std::size_t weight() const {
        std::size_t total = 0;
        for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
        return total;
    }

    [[nodiscard]] bool is_zero() const {
        return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
    }

    /// Index of the first set coordinate, or width() if none.
    [[nodiscard]] std::size_t first_set() const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
        }
        return width_;
    }

    /// Coordinates 0..63 packed into one word. Throws if wider than 64.
    [[nodiscard]] std::uint64_t to_bits() const {
        if (width_ > 64) throw std::out_of_range("Gf2Vector wider than 64 coordinates");
        return words_.empty() ? 0 : words_[0];
    }

    [[nodiscard]] std::string to_string() const {
        std::string s(width_, '0');
        for (std::size_t i = 0; i < width_; ++i) {
            if (get(i)) s[i] = '1';
        }
        return s;
    }

    [[nodiscard]] const std::vector<std::uint64_t>& words() const { return words_; }

    friend bool operator==(const Gf2Vector&, const Gf2Vector&) = default;

    /// Orders by width, then by the 0/1 string read from coordinate 0.
    friend std::strong_ordering operator<=>(const Gf2Vector& a, const Gf2Vector& b) {
        if (auto c = a.width_ <=> b.width_; c != 0) return c;
        return a.to_string() <=> b.to_string();
    }

private:
    void check(std::size_t i) const {
        if (i >= width_) throw std::out_of_range("Gf2Vector coordinate out of range");
    }

    std::size_t width_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Row-major GF(2) matrix. Values are immutable in spirit: the free functions
/// below return new matrices.
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, Gf2Vector(cols)) {}

    static Gf2Matrix identity(std::size_t n) {
        Gf2Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    /// One string per row; every row must have the same number of 0/1 digits.
    static Gf2Matrix from_rows(const std::vector<std::string>& rows) {
        Gf2Matrix m;
        for (const auto& text : rows) {
            auto v = Gf2Vector::from_string(text);
            if (m.rows_.empty()) {
                m.cols_ = v.width();
            } else if (v.width() != m.cols_) {
                throw std::invalid_argument("ragged matrix rows");
            }
            m.rows_.push_back(std::move(v));
        }
        return m;
    }

    static Gf2Matrix from_row_vectors(std::vector<Gf2Vector> rows, std::size_t cols) {
        for (const auto& r : rows) {
            if (r.width() != cols) throw std::invalid_argument("row width mismatch");
        }
        Gf2Matrix m;
        m.cols_ = cols;
        m.rows_ = std::move(rows);
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_.size(); }
    [[nodiscard]] std::size_t cols() const { return cols_; }

    [[nodiscard]] bool at(std::size_t i, std::size_t j) const { return rows_.at(i).get(j); }
    void set(std::size_t i, std::size_t j, bool value) { rows_.at(i).set(j, value); }

    [[nodiscard]] const Gf2Vector& row(std::size_t i) const { return rows_.at(i); }

    [[nodiscard]] Gf2Vector column(std::size_t j) const {
        if (j >= cols_) throw std::out_of_range("column index");
        Gf2Vector v(rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (rows_[i].get(j)) v.set(i, true);
        }
        return v;
    }

    [[nodiscard]] Gf2Matrix transpose() const {
        Gf2Matrix t(cols_, rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                if (rows_[i].get(j)) t.set(j, i, true);
            }
        }
        return t;
    }

    [[nodiscard]] std::vector<std::string> to_strings() const {
        std::vector<std::string> out;
        out.reserve(rows_.size());
        for (const auto& r : rows_) out.push_back(r.to_string());
        return out;
    }

    friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

private:
    std::size_t cols_ = 0;
    std::vector<Gf2Vector> rows_;
};

struct RrefResult {
    Gf2Matrix matrix;                 // same shape as the input; zero rows at the bottom
    std::vector<std::size_t> pivots;  // strictly increasing pivot columns
};

/// Reduced row-echelon form over GF(2).
inline RrefResult rref(const Gf2Matrix& m) {
    std::vector<Gf2Vector> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));

    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < m.cols() && lead < rows.size(); ++col) {
        std::size_t sel = lead;
        while (sel < rows.size() && !rows[sel].get(col)) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[lead], rows[sel]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != lead && rows[i].get(col)) rows[i] ^= rows[lead];
        }
        pivots.push_back(col);
        ++lead;
    }
    return {Gf2Matrix::from_row_vectors(std::move(rows), m.cols()), std::move(pivots)};
}

inline std::size_t rank(const Gf2Matrix& m) { return rref(m).pivots.size(); }

/// True iff `v` is a GF(2) combination of the rows of `m`.
inline bool in_row_space(const Gf2Matrix& m, const Gf2Vector& v) {
    if (v.width() != m.cols()) throw std::invalid_argument("in_row_space: width mismatch");
    const auto reduced = rref(m);
    Gf2Vector rest = v;
    for (std::size_t i = 0; i < reduced.pivots.size(); ++i) {
        if (rest.get(reduced.pivots[i])) rest ^= reduced.matrix.row(i);
    }
    return rest.is_zero();
}

/// Incremental echelon basis for vectors packed into one 64-bit word.
/// Reduction keeps the pivot (highest) bit of every basis vector unique.
class WordBasis {
public:
    /// Returns true if `v` was independent of the current basis and was added.
    bool insert(std::uint64_t v) {
        v = reduce(v);
        if (v == 0) return false;
        const int top = 63 - std::countl_zero(v);
        slot_[top] = v;
        present_ |= std::uint64_t{1} << top;
        ++rank_;
        return true;
    }

    [[nodiscard]] std::uint64_t reduce(std::uint64_t v) const {
        for (std::uint64_t hit = v & present_; hit != 0; hit = v & present_) {
            v ^= slot_[63 - std::countl_zero(hit)];
        }
        return v;
    }

    [[nodiscard]] bool contains(std::uint64_t v) const { return reduce(v) == 0; }
    [[nodiscard]] std::size_t rank() const { return rank_; }
    [[nodiscard]] std::uint64_t pivot_mask() const { return present_; }

private:
    std::uint64_t slot_[64] = {};
    std::uint64_t present_ = 0;
    std::size_t rank_ = 0;
};

/// Rank of a set of packed column vectors.
template <typename Range>
std::size_t word_rank(const Range& vectors) {
    WordBasis basis;
    for (std::uint64_t v : vectors) basis.insert(v);
    return basis.rank();
}

}  // namespace binmat
