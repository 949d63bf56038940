// Canonical keys for binary matroids up to row operations and column permutation.
//
// The key is built on whichever of M, M* has the smaller rank k. A search tree
// of ordered functional bases is explored depth first: each node refines an
// ordered column partition by one functional, only functionals with the
// lexicographically least per-cell ones-count tuple are followed, and the key
// is the least tuple sequence over all leaves. Leaves with equal sequences
// yield automorphisms, which prune equivalent siblings. The sequence
// determines the multiset of coordinate vectors in the chosen basis, so equal
// keys mean isomorphic matroids.
#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "matroid.hpp"

namespace binmat {

struct BoundExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CanonicalKey {
    std::string bytes;

    [[nodiscard]] std::string hex() const {
        static constexpr char digits[] = "0123456789abcdef";
        std::string out;
        out.reserve(bytes.size() * 2);
        for (unsigned char c : bytes) {
            out.push_back(digits[c >> 4]);
            out.push_back(digits[c & 15]);
        }
        return out;
    }

    static CanonicalKey from_hex(const std::string& h) {
        if (h.size() % 2 != 0) throw std::invalid_argument("odd-length key hex");
        auto nib = [](char c) -> int {
            if (c >= '0' && c <= '9') return c - '0';
            if (c >= 'a' && c <= 'f') return c - 'a' + 10;
            throw std::invalid_argument("bad key hex");
        };
        CanonicalKey k;
        for (std::size_t i = 0; i < h.size(); i += 2) k.bytes.push_back(static_cast<char>(nib(h[i]) * 16 + nib(h[i + 1])));
        return k;
    }

    friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
    friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

struct CanonicalKeyHash {
    std::size_t operator()(const CanonicalKey& k) const { return std::hash<std::string>{}(k.bytes); }
};

inline std::size_t canonical_beam_limit = 1u << 18;

namespace detail {

inline void put_u32(std::string& out, std::uint32_t v) {
    for (int s = 0; s < 4; ++s) out.push_back(static_cast<char>((v >> (8 * s)) & 0xff));
}

// Per-element invariant of the side matroid: loop flag, size of the parallel
// class, number of triangles through the element.
inline std::vector<std::uint32_t> element_invariants(const std::vector<std::uint64_t>& cols) {
    const std::size_t n = cols.size();
    std::unordered_map<std::uint64_t, std::uint32_t> mult;
    for (auto c : cols) ++mult[c];
    std::vector<std::uint32_t> tri(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (cols[i] == 0) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (cols[j] == 0 || cols[j] == cols[i]) continue;
            const std::uint64_t s = cols[i] ^ cols[j];
            auto it = mult.find(s);
            if (it == mult.end()) continue;
            for (std::size_t l = j + 1; l < n; ++l) {
                if (cols[l] == s) {
                    ++tri[i];
                    ++tri[j];
                    ++tri[l];
                }
            }
        }
    }
    std::vector<std::uint32_t> inv(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::uint32_t loop = cols[j] == 0 ? 1u : 0u;
        inv[j] = (loop << 31) | (std::min<std::uint32_t>(mult[cols[j]], 255) << 20) | std::min<std::uint32_t>(tri[j], (1u << 20) - 1);
    }
    return inv;
}

struct BeamState {
    std::vector<std::uint64_t> span_basis;  // fully reduced basis of chosen functionals
    std::vector<std::uint64_t> cells;       // ordered column partition

    friend bool operator<(const BeamState& a, const BeamState& b) {
        return std::tie(a.span_basis, a.cells) < std::tie(b.span_basis, b.cells);
    }
    friend bool operator==(const BeamState&, const BeamState&) = default;
};

inline std::vector<std::uint64_t> add_to_span(std::vector<std::uint64_t> basis, std::uint64_t a) {
    for (auto b : basis) a = std::min(a, a ^ b);
    // keep fully reduced: clear the new vector's top bit from the others
    const std::uint64_t top = std::uint64_t{1} << (63 - std::countl_zero(a));
    for (auto& b : basis) {
        if (b & top) b ^= a;
    }
    basis.push_back(a);
    std::sort(basis.begin(), basis.end());
    return basis;
}

inline bool in_span(const std::vector<std::uint64_t>& basis, std::uint64_t a) {
    for (auto it = basis.rbegin(); it != basis.rend(); ++it) a = std::min(a, a ^ *it);
    return a == 0;
}

class KeySearch {
public:
    KeySearch(const std::vector<std::uint64_t>& code, const std::vector<std::uint64_t>& cols, std::size_t k)
        : code_(code), k_(k), n_(cols.size()) {
        // the side is in standard form, so a functional is read off its
        // values on the unit columns
        pivot_col_.assign(k_, 0);
        for (std::size_t j = 0; j < n_; ++j) {
            if (std::popcount(cols[j]) == 1) pivot_col_[static_cast<std::size_t>(std::countr_zero(cols[j]))] = j;
        }
    }

    void run(const std::vector<std::uint64_t>& cells) {
        BeamState root{{}, cells};
        path_.clear();
        seq_.clear();
        dfs(root);
    }

    [[nodiscard]] const std::vector<std::vector<std::uint32_t>>& best_sequence() const { return best_; }

private:
    using Perm = std::vector<std::uint8_t>;

    std::uint64_t apply(const Perm& g, std::uint64_t set) const {
        std::uint64_t out = 0;
        for (; set; set &= set - 1) out |= std::uint64_t{1} << g[static_cast<std::size_t>(std::countr_zero(set))];
        return out;
    }

    std::uint64_t functional_of(std::uint64_t codeword) const {
        std::uint64_t a = 0;
        for (std::size_t i = 0; i < k_; ++i) {
            if ((codeword >> pivot_col_[i]) & 1u) a |= std::uint64_t{1} << i;
        }
        return a;
    }

    bool fixes(const Perm& g, const BeamState& s) const {
        for (auto c : s.cells) {
            if (apply(g, c) != c) return false;
        }
        for (auto a : path_) {
            if (apply(g, code_[a]) != code_[a]) return false;
        }
        return true;
    }

    static BeamState child_of(const BeamState& s, std::uint64_t a, std::uint64_t c) {
        BeamState ns;
        ns.span_basis = add_to_span(s.span_basis, a);
        for (auto cell : s.cells) {
            const std::uint64_t zero = cell & ~c;
            const std::uint64_t one = cell & c;
            if (zero) ns.cells.push_back(zero);
            if (one) ns.cells.push_back(one);
        }
        return ns;
    }

    // -1, 0, 1: current prefix plus `t` against the best sequence
    int compare_with_best(const std::vector<std::uint32_t>& t) const {
        if (best_.empty()) return -1;
        const std::size_t d = seq_.size();
        if (t < best_[d]) return -1;
        if (best_[d] < t) return 1;
        return 0;
    }

    void leaf(const BeamState& s) {
        if (!have_best_ || seq_ < best_) {
            best_ = seq_;
            best_leaf_ = s.cells;
            have_best_ = true;
            return;
        }
        if (seq_ != best_) return;
        Perm g(n_);
        bool identity = true;
        for (std::size_t p = 0; p < s.cells.size(); ++p) {
            std::uint64_t from = best_leaf_[p];
            std::uint64_t to = s.cells[p];
            for (; from; from &= from - 1, to &= to - 1) {
                const auto f = static_cast<std::size_t>(std::countr_zero(from));
                const auto t = static_cast<std::uint8_t>(std::countr_zero(to));
                g[f] = t;
                if (f != t) identity = false;
            }
        }
        if (!identity && autos_.size() < 256) autos_.push_back(std::move(g));
    }

    void dfs(const BeamState& s) {
        if (++nodes_ > canonical_beam_limit * 16) throw BoundExceeded("canonical key: search limit exceeded");
        if (seq_.size() == k_) {
            leaf(s);
            return;
        }
        const std::size_t total = std::size_t{1} << k_;
        std::vector<std::uint32_t> local;
        std::vector<std::uint32_t> tuple;
        std::vector<std::uint64_t> choices;
        for (std::size_t a = 1; a < total; ++a) {
            if (in_span(s.span_basis, a)) continue;
            const std::uint64_t c = code_[a];
            tuple.clear();
            for (auto cell : s.cells) tuple.push_back(static_cast<std::uint32_t>(std::popcount(c & cell)));
            if (choices.empty() || tuple < local) {
                local = tuple;
                choices.clear();
            } else if (local < tuple) {
                continue;
            }
            choices.push_back(a);
        }
        const bool on_best = have_best_ && std::equal(seq_.begin(), seq_.end(), best_.begin());
        if (on_best && compare_with_best(local) > 0) return;

        std::map<BeamState, std::size_t> index;
        std::vector<BeamState> kids;
        std::vector<std::uint64_t> kid_func;
        for (auto a : choices) {
            auto ns = child_of(s, a, code_[a]);
            if (index.emplace(ns, kids.size()).second) {
                kids.push_back(std::move(ns));
                kid_func.push_back(a);
            }
        }
        std::vector<char> done(kids.size(), 0);
        std::size_t autos_seen = 0;
        std::vector<std::size_t> parent(kids.size());
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;

        seq_.push_back(local);
        for (std::size_t i = 0; i < kids.size(); ++i) {
            // merge orbits under automorphisms found so far that fix this node
            for (; autos_seen < autos_.size(); ++autos_seen) {
                const auto& g = autos_[autos_seen];
                if (!fixes(g, s)) continue;
                for (std::size_t j = 0; j < kids.size(); ++j) {
                    const std::uint64_t a2 = functional_of(apply(g, code_[kid_func[j]]));
                    auto img = child_of(s, a2, code_[a2]);
                    auto it = index.find(img);
                    if (it == index.end()) continue;
                    const auto x = find(j);
                    const auto y = find(it->second);
                    if (x == y) continue;
                    parent[std::max(x, y)] = std::min(x, y);
                    if (done[std::max(x, y)]) done[std::min(x, y)] = 1;
                }
            }
            const auto root = find(i);
            if (done[root]) continue;
            done[root] = 1;
            path_.push_back(kid_func[i]);
            dfs(kids[i]);
            path_.pop_back();
        }
        seq_.pop_back();
    }

    const std::vector<std::uint64_t>& code_;
    std::size_t k_;
    std::size_t n_;
    std::vector<std::size_t> pivot_col_;
    std::vector<std::uint64_t> path_;
    std::vector<std::vector<std::uint32_t>> seq_;
    std::vector<std::vector<std::uint32_t>> best_;
    std::vector<std::uint64_t> best_leaf_;
    bool have_best_ = false;
    std::vector<Perm> autos_;
    std::size_t nodes_ = 0;
};

}  // namespace detail

/// Canonical key of M with the columns in `marked_mask` (column-index mask)
/// distinguished from the rest. Isomorphisms must then map marked to marked.
inline CanonicalKey canonical_key_mask(const BinaryMatroid& m, std::uint64_t marked_mask) {
    const bool use_dual = m.rank() > m.corank();
    const BinaryMatroid side = use_dual ? m.dual() : m;
    const std::size_t k = side.rank();
    const std::size_t n = side.size();
    if (k > 24) throw BoundExceeded("canonical key: side rank too large");
    const auto& cols = side.columns();

    // codewords: code[a] = set of columns j with <a, col_j> = 1
    std::vector<std::uint64_t> rowmask(k, 0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < k; ++i) {
            if ((cols[j] >> i) & 1u) rowmask[i] |= std::uint64_t{1} << j;
        }
    }
    const std::size_t total = std::size_t{1} << k;
    std::vector<std::uint64_t> code(total, 0);
    for (std::size_t a = 1; a < total; ++a) {
        const int low = std::countr_zero(a);
        code[a] = code[a & (a - 1)] ^ rowmask[low];
    }

    // initial cells ordered by (unmarked, invariant)
    const auto inv = detail::element_invariants(cols);
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> groups;
    for (std::size_t j = 0; j < n; ++j) {
        const std::uint32_t unmarked = ((marked_mask >> j) & 1u) ? 0u : 1u;
        groups[{unmarked, inv[j]}] |= std::uint64_t{1} << j;
    }

    std::string key;
    detail::put_u32(key, static_cast<std::uint32_t>(k));
    detail::put_u32(key, static_cast<std::uint32_t>(n));
    detail::put_u32(key, use_dual ? 1u : 0u);
    detail::put_u32(key, static_cast<std::uint32_t>(std::popcount(marked_mask & m.all_mask())));
    detail::put_u32(key, static_cast<std::uint32_t>(groups.size()));
    std::vector<std::uint64_t> cells;
    for (const auto& [g, mask] : groups) {
        detail::put_u32(key, g.first);
        detail::put_u32(key, g.second);
        detail::put_u32(key, static_cast<std::uint32_t>(std::popcount(mask)));
        cells.push_back(mask);
    }

    detail::KeySearch search(code, cols, k);
    search.run(cells);
    for (const auto& t : search.best_sequence()) {
        detail::put_u32(key, static_cast<std::uint32_t>(t.size()));
        for (auto v : t) detail::put_u32(key, v);
    }
    return {key};
}

inline CanonicalKey canonical_key(const BinaryMatroid& m) { return canonical_key_mask(m, 0); }

inline CanonicalKey canonical_key_marked(const BinaryMatroid& m, const ElementSet& marked) {
    return canonical_key_mask(m, m.mask_of(marked));
}

inline bool are_isomorphic(const BinaryMatroid& a, const BinaryMatroid& b) {
    if (a.rank() != b.rank() || a.size() != b.size()) return false;
    return canonical_key(a) == canonical_key(b);
}

inline bool is_self_dual(const BinaryMatroid& m) {
    if (m.size() != 2 * m.rank()) return false;
    return are_isomorphic(m, m.dual());
}

}  // namespace binmat
