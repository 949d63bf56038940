// Independent brute-force oracles used only by the tests: dense elimination
// over int matrices, rank tables over all subsets, backtracking isomorphism
// and exhaustive minor enumeration. None of these call into the library's
// algorithms; matroids enter only as lists of columns.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <binmat/matroid.hpp>

namespace brute {

using Column = std::vector<int>;

inline std::vector<Column> dense_columns(const binmat::BinaryMatroid& m) {
    std::vector<Column> out;
    for (auto c : m.columns()) {
        Column col(m.rank());
        for (std::size_t i = 0; i < m.rank(); ++i) col[i] = static_cast<int>((c >> i) & 1u);
        out.push_back(col);
    }
    return out;
}

/// Rank over GF(2) of a list of equal-length 0/1 vectors, by plain elimination.
inline int dense_rank(std::vector<Column> vs) {
    if (vs.empty()) return 0;
    const std::size_t len = vs[0].size();
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t coord = 0; coord < len && row < vs.size(); ++coord) {
        std::size_t piv = row;
        while (piv < vs.size() && vs[piv][coord] == 0) ++piv;
        if (piv == vs.size()) continue;
        std::swap(vs[piv], vs[row]);
        for (std::size_t k = 0; k < vs.size(); ++k) {
            if (k != row && vs[k][coord]) {
                for (std::size_t t = 0; t < len; ++t) vs[k][t] ^= vs[row][t];
            }
        }
        ++row;
        ++rank;
    }
    return rank;
}

/// Rank function over all subsets of a ground set of at most 16 elements.
struct RankTable {
    int n = 0;
    std::vector<int> rk;

    static RankTable of(const std::vector<Column>& cols) {
        RankTable t;
        t.n = static_cast<int>(cols.size());
        t.rk.assign(std::size_t{1} << t.n, 0);
        for (std::uint32_t s = 1; s < t.rk.size(); ++s) {
            std::vector<Column> pick;
            for (int j = 0; j < t.n; ++j) {
                if ((s >> j) & 1u) pick.push_back(cols[j]);
            }
            t.rk[s] = dense_rank(pick);
        }
        return t;
    }
    static RankTable of(const binmat::BinaryMatroid& m) { return of(dense_columns(m)); }

    [[nodiscard]] int rank() const { return rk.back(); }
};

using RankFn = std::function<int(std::uint32_t)>;

/// Backtracking search for a bijection preserving the rank of every subset.
inline bool isomorphic(int n, const RankFn& ra, int nb, const RankFn& rb) {
    if (n != nb) return false;
    const std::uint32_t full = n == 32 ? ~0u : ((1u << n) - 1);
    if (ra(full) != rb(full)) return false;
    std::vector<int> phi(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(int)> go = [&](int k) -> bool {
        if (k == n) return true;
        for (int img = 0; img < n; ++img) {
            if (used[img]) continue;
            phi[k] = img;
            bool ok = true;
            // every subset of {0..k} containing k
            for (std::uint32_t s = 0; s < (1u << k) && ok; ++s) {
                std::uint32_t a = s | (1u << k);
                std::uint32_t b = 0;
                for (int j = 0; j <= k; ++j) {
                    if ((a >> j) & 1u) b |= 1u << phi[j];
                }
                if (ra(a) != rb(b)) ok = false;
            }
            if (!ok) continue;
            used[img] = true;
            if (go(k + 1)) return true;
            used[img] = false;
        }
        phi[k] = -1;
        return false;
    };
    return go(0);
}

inline bool isomorphic(const RankTable& a, const RankTable& b) {
    return isomorphic(
        a.n, [&](std::uint32_t s) { return a.rk[s]; }, b.n, [&](std::uint32_t s) { return b.rk[s]; });
}

/// Exhaustive minor test: some independent C of size r(M) - r(N) and some K
/// disjoint from C with |K| = |E(N)| give (M / C) | K isomorphic to N.
inline bool has_minor(const RankTable& m, const RankTable& n) {
    const int d = m.rank() - n.rank();
    if (d < 0 || m.n - d < n.n) return false;
    const std::uint32_t all = (1u << m.n) - 1;
    for (std::uint32_t c = 0; c <= all; ++c) {
        if (__builtin_popcount(c) != d || m.rk[c] != d) continue;
        const std::uint32_t rest = all & ~c;
        for (std::uint32_t k = rest;; k = (k - 1) & rest) {
            if (__builtin_popcount(k) == n.n && m.rk[k | c] - d == n.rank()) {
                std::vector<int> elems;
                for (int j = 0; j < m.n; ++j) {
                    if ((k >> j) & 1u) elems.push_back(j);
                }
                auto rf = [&](std::uint32_t s) {
                    std::uint32_t mask = c;
                    for (std::size_t t = 0; t < elems.size(); ++t) {
                        if ((s >> t) & 1u) mask |= 1u << elems[t];
                    }
                    return m.rk[mask] - d;
                };
                if (isomorphic(n.n, rf, n.n, [&](std::uint32_t s) { return n.rk[s]; })) return true;
            }
            if (k == 0) break;
        }
    }
    return false;
}

/// Brute-force: no set X with r(X) + r(E-X) - r(E) <= k - 1 and both sides >= k, for k = 1, 2.
inline bool three_connected(const RankTable& t) {
    const std::uint32_t all = (1u << t.n) - 1;
    for (std::uint32_t x = 1; x < all; ++x) {
        const int sx = __builtin_popcount(x);
        const int sy = t.n - sx;
        const int lam = t.rk[x] + t.rk[all & ~x] - t.rank();
        if (lam == 0) return false;
        if (lam <= 1 && sx >= 2 && sy >= 2) return false;
    }
    return true;
}

/// Random binary matroid: n random columns in GF(2)^r (rank may drop).
/// Simple matroids are capped at the 2^r - 1 nonzero vectors.
inline binmat::BinaryMatroid random_matroid(std::mt19937_64& rng, std::size_t r, std::size_t n, bool simple = false) {
    if (simple) n = std::min<std::size_t>(n, (std::size_t{1} << r) - 1);
    std::vector<std::uint64_t> cols;
    std::uniform_int_distribution<std::uint64_t> dist(simple ? 1 : 0, (std::uint64_t{1} << r) - 1);
    while (cols.size() < n) {
        const auto v = dist(rng);
        if (simple && std::find(cols.begin(), cols.end(), v) != cols.end()) continue;
        cols.push_back(v);
    }
    return binmat::BinaryMatroid::from_columns(cols);
}

/// Random invertible r x r matrix applied to every column, then a random column permutation.
inline binmat::BinaryMatroid scramble(std::mt19937_64& rng, const binmat::BinaryMatroid& m) {
    const std::size_t r = m.rank();
    std::vector<std::uint64_t> rows;  // rows of the map, bit j = entry (i, j)
    std::uniform_int_distribution<std::uint64_t> dist(0, r == 0 ? 0 : (std::uint64_t{1} << r) - 1);
    for (;;) {
        rows.clear();
        for (std::size_t i = 0; i < r; ++i) rows.push_back(dist(rng));
        std::vector<Column> dense;
        for (auto w : rows) {
            Column c(r);
            for (std::size_t j = 0; j < r; ++j) c[j] = static_cast<int>((w >> j) & 1u);
            dense.push_back(c);
        }
        if (dense_rank(dense) == static_cast<int>(r)) break;
    }
    std::vector<std::uint64_t> cols;
    for (auto c : m.columns()) {
        std::uint64_t img = 0;
        for (std::size_t i = 0; i < r; ++i) {
            if (__builtin_parityll(rows[i] & c)) img |= std::uint64_t{1} << i;
        }
        cols.push_back(img);
    }
    std::vector<std::size_t> perm(cols.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::uint64_t> out;
    for (auto p : perm) out.push_back(cols[p]);
    return binmat::BinaryMatroid::from_columns(out);
}

}  // namespace brute
