// Connectivity function, low-order separations, 3- and internal 4-connectivity.
#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "matroid.hpp"

namespace binmat {

struct SeparationCertificate {
    ElementSet side;
    std::size_t lambda = 0;
    [[nodiscard]] std::size_t order() const { return lambda + 1; }
};

enum class ConnectivityMode { exhaustive, optimized };

inline std::size_t lambda_mask(const BinaryMatroid& m, std::uint64_t x) {
    x &= m.all_mask();
    return m.rank_of_mask(x) + m.rank_of_mask(m.all_mask() & ~x) - m.rank();
}

/// r(X) + r(E - X) - r(M).
inline std::size_t lambda(const BinaryMatroid& m, const ElementSet& x) { return lambda_mask(m, m.mask_of(x)); }

inline constexpr std::size_t kExhaustiveLimit = 24;

namespace detail {

// Finds X with lambda(X) <= max_lambda and min(|X|, |E-X|) >= min_side.
// Exhaustive: every bipartition with element 0 on the X side.
inline std::optional<std::uint64_t> separation_exhaustive(const BinaryMatroid& m, std::size_t max_lambda,
                                                          std::size_t min_side) {
    const std::size_t n = m.size();
    if (n < 2 * min_side) return std::nullopt;
    if (n > kExhaustiveLimit) throw std::invalid_argument("unsupported size for exhaustive separation scan");
    const std::uint64_t rest_count = std::uint64_t{1} << (n - 1);
    for (std::uint64_t s = 0; s < rest_count; ++s) {
        const std::uint64_t x = 1u | (s << 1);
        const auto sx = static_cast<std::size_t>(std::popcount(x));
        if (sx < min_side || n - sx < min_side) continue;
        if (lambda_mask(m, x) <= max_lambda) return x;
    }
    return std::nullopt;
}

// Branch and bound over assignments of elements to X / Y with element 0 in X.
// Partial sides only grow, so r(Xp) + r(Yp) - r(M) is a lower bound on lambda.
class SeparationSearch {
public:
    SeparationSearch(const BinaryMatroid& m, std::size_t max_lambda, std::size_t min_side)
        : m_(m), n_(m.size()), max_lambda_(max_lambda), min_side_(min_side) {}

    std::optional<std::uint64_t> run() {
        if (n_ < 2 * min_side_) return std::nullopt;
        WordBasis x;
        WordBasis y;
        x.insert(m_.columns()[0]);
        if (dfs(1, 1u, 1, 0, x, y)) return found_;
        return std::nullopt;
    }

private:
    bool dfs(std::size_t j, std::uint64_t xmask, std::size_t nx, std::size_t ny, const WordBasis& x,
             const WordBasis& y) {
        if (x.rank() + y.rank() > m_.rank() + max_lambda_) return false;
        const std::size_t left = n_ - j;
        if (nx + left < min_side_ || ny + left < min_side_) return false;
        if (j == n_) {
            found_ = xmask;
            return true;
        }
        const std::uint64_t c = m_.columns()[j];
        {
            WordBasis nxb = x;
            nxb.insert(c);
            if (dfs(j + 1, xmask | (std::uint64_t{1} << j), nx + 1, ny, nxb, y)) return true;
        }
        WordBasis nyb = y;
        nyb.insert(c);
        return dfs(j + 1, xmask, nx, ny + 1, x, nyb);
    }

    const BinaryMatroid& m_;
    std::size_t n_;
    std::size_t max_lambda_;
    std::size_t min_side_;
    std::uint64_t found_ = 0;
};

inline std::optional<std::uint64_t> find_separation(const BinaryMatroid& m, std::size_t max_lambda,
                                                    std::size_t min_side, ConnectivityMode mode) {
    if (m.size() == 0) return std::nullopt;
    if (mode == ConnectivityMode::exhaustive) return separation_exhaustive(m, max_lambda, min_side);
    return SeparationSearch(m, max_lambda, min_side).run();
}

}  // namespace detail

/// X with lambda(X) <= 1 and both sides of size >= 2, if any.
inline std::optional<SeparationCertificate> find_2separation(const BinaryMatroid& m,
                                                             ConnectivityMode mode = ConnectivityMode::optimized) {
    auto x = detail::find_separation(m, 1, 2, mode);
    if (!x) return std::nullopt;
    return SeparationCertificate{m.ids_of(*x), lambda_mask(m, *x)};
}

inline bool is_connected(const BinaryMatroid& m, ConnectivityMode mode = ConnectivityMode::optimized) {
    return !detail::find_separation(m, 0, 1, mode).has_value();
}

/// Ground sets of size <= 3 are 3-connected iff connected.
inline bool is_3connected(const BinaryMatroid& m, ConnectivityMode mode = ConnectivityMode::optimized) {
    if (m.size() <= 3) return is_connected(m, mode);
    if (!m.is_simple() || !m.is_cosimple()) return false;
    return !detail::find_separation(m, 1, 2, mode).has_value();
}

/// 3-connected with no X having lambda(X) <= 2 and both sides of size >= 4.
inline bool is_internally_4connected(const BinaryMatroid& m, ConnectivityMode mode = ConnectivityMode::optimized) {
    if (m.size() > kExhaustiveLimit) throw std::invalid_argument("unsupported size for internal 4-connectivity");
    if (!is_3connected(m, mode)) return false;
    return !detail::find_separation(m, 2, 4, mode).has_value();
}

}  // namespace binmat
