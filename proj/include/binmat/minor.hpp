// Minor containment: a generic flat-by-flat embedding search and a
// PG(4,2) orbit table for rank-5 targets.
#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "canonical.hpp"
#include "matroid.hpp"

namespace binmat {

struct MinorWitness {
    ElementSet contract;
    ElementSet del;
    std::string target;
};

struct MinorOptions {
    std::size_t max_flats = 4'000'000;
};

/// True iff M / w.contract \ w.del is isomorphic to N.
inline bool verify_witness(const BinaryMatroid& m, const MinorWitness& w, const BinaryMatroid& n) {
    for (auto id : w.contract) {
        if (w.del.count(id)) throw std::invalid_argument("witness sets overlap");
        if (!m.contains(id)) return false;
    }
    for (auto id : w.del) {
        if (!m.contains(id)) return false;
    }
    return are_isomorphic(m.minor(w.contract, w.del), n);
}

namespace detail {

struct Flat {
    std::uint64_t elements = 0;  // column-index mask of the closure
    std::uint64_t basis = 0;     // independent subset spanning it
};

inline std::uint64_t closure_mask(const BinaryMatroid& m, const WordBasis& span) {
    std::uint64_t out = 0;
    const auto& cols = m.columns();
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (span.contains(cols[j])) out |= std::uint64_t{1} << j;
    }
    return out;
}

// Rank-d flats of M, each with a basis, in discovery order.
inline std::vector<Flat> flats_of_rank(const BinaryMatroid& m, std::size_t d, std::size_t max_flats) {
    std::vector<Flat> level{{closure_mask(m, WordBasis{}), 0}};
    const auto& cols = m.columns();
    for (std::size_t r = 0; r < d; ++r) {
        std::vector<Flat> next;
        std::unordered_set<std::uint64_t> seen;
        for (const auto& f : level) {
            WordBasis span;
            for (std::uint64_t b = f.basis; b != 0; b &= b - 1) span.insert(cols[std::countr_zero(b)]);
            for (std::size_t j = 0; j < cols.size(); ++j) {
                if ((f.elements >> j) & 1u) continue;
                WordBasis grown = span;
                grown.insert(cols[j]);
                const std::uint64_t cl = closure_mask(m, grown);
                if (seen.insert(cl).second) {
                    next.push_back({cl, f.basis | (std::uint64_t{1} << j)});
                    if (seen.size() > max_flats) throw BoundExceeded("minor search: flat limit exceeded");
                }
            }
        }
        level = std::move(next);
    }
    return level;
}

// Image of every column of M after contracting the flat's basis, as a coset
// representative in the ambient row space (0 for elements of the flat).
inline std::vector<std::uint64_t> quotient_points(const BinaryMatroid& m, const Flat& f) {
    WordBasis span;
    const auto& cols = m.columns();
    for (std::uint64_t b = f.basis; b != 0; b &= b - 1) span.insert(cols[std::countr_zero(b)]);
    std::vector<std::uint64_t> out(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) out[j] = ((f.elements >> j) & 1u) ? 0 : span.reduce(cols[j]);
    return out;
}

// Linear embedding of a target (standard form) into a multiset of host points.
class Embedder {
public:
    explicit Embedder(const BinaryMatroid& target) : rank_(target.rank()) {
        std::unordered_map<std::uint64_t, std::size_t> demand;
        for (auto c : target.columns()) {
            if (c == 0) {
                ++loops_;
            } else {
                ++demand[c];
            }
        }
        for (const auto& [v, k] : demand) values_.push_back({v, k});
        std::sort(values_.begin(), values_.end());

        // order basis coordinates so each step forces as many target points as possible
        std::uint64_t chosen = 0;
        std::vector<bool> placed(values_.size(), false);
        for (std::size_t step = 0; step < rank_; ++step) {
            std::size_t best_i = rank_;
            std::size_t best_count = 0;
            for (std::size_t i = 0; i < rank_; ++i) {
                if ((chosen >> i) & 1u) continue;
                const std::uint64_t trial = chosen | (std::uint64_t{1} << i);
                std::size_t count = 0;
                for (std::size_t v = 0; v < values_.size(); ++v) {
                    if (!placed[v] && (values_[v].first & ~trial) == 0) ++count;
                }
                if (best_i == rank_ || count > best_count) {
                    best_i = i;
                    best_count = count;
                }
            }
            chosen |= std::uint64_t{1} << best_i;
            order_.push_back(best_i);
            std::vector<std::size_t> now;
            for (std::size_t v = 0; v < values_.size(); ++v) {
                if (!placed[v] && (values_[v].first & ~chosen) == 0) {
                    placed[v] = true;
                    now.push_back(v);
                }
            }
            forced_.push_back(std::move(now));
        }
    }

    [[nodiscard]] std::size_t rank() const { return rank_; }
    [[nodiscard]] std::size_t loops() const { return loops_; }
    [[nodiscard]] std::size_t point_count() const {
        std::size_t total = 0;
        for (const auto& v : values_) total += v.second;
        return total;
    }

    // Host points: distinct nonzero values with multiplicities. On success,
    // `image` maps each target value to its host value.
    bool embed(const std::vector<std::pair<std::uint64_t, std::size_t>>& host,
               std::vector<std::pair<std::uint64_t, std::uint64_t>>* image) const {
        std::unordered_map<std::uint64_t, std::size_t> mult;
        mult.reserve(host.size() * 2);
        for (const auto& [v, k] : host) mult[v] = k;
        std::vector<std::uint64_t> basis_image(rank_, 0);
        if (!search(0, host, mult, basis_image, WordBasis{})) return false;
        if (image) {
            image->clear();
            for (const auto& [v, k] : values_) image->push_back({v, apply(v, basis_image)});
        }
        return true;
    }

private:
    static std::uint64_t apply(std::uint64_t v, const std::vector<std::uint64_t>& basis_image) {
        std::uint64_t out = 0;
        for (; v != 0; v &= v - 1) out ^= basis_image[std::countr_zero(v)];
        return out;
    }

    bool search(std::size_t step, const std::vector<std::pair<std::uint64_t, std::size_t>>& host,
                const std::unordered_map<std::uint64_t, std::size_t>& mult, std::vector<std::uint64_t>& basis_image,
                const WordBasis& span) const {
        if (step == rank_) return true;
        const std::size_t coord = order_[step];
        for (const auto& [p, k] : host) {
            if (span.contains(p)) continue;
            basis_image[coord] = p;
            bool ok = true;
            for (auto vi : forced_[step]) {
                const auto it = mult.find(apply(values_[vi].first, basis_image));
                if (it == mult.end() || it->second < values_[vi].second) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            WordBasis grown = span;
            grown.insert(p);
            if (search(step + 1, host, mult, basis_image, grown)) return true;
        }
        basis_image[coord] = 0;
        return false;
    }

    std::size_t rank_;
    std::size_t loops_ = 0;
    std::vector<std::pair<std::uint64_t, std::size_t>> values_;  // distinct nonzero target columns, demand
    std::vector<std::size_t> order_;
    std::vector<std::vector<std::size_t>> forced_;
};

inline std::string orbit_cache_name(const CanonicalKey& key) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : key.bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static constexpr char digits[] = "0123456789abcdef";
    std::string name = "orbit_";
    for (int s = 60; s >= 0; s -= 4) name.push_back(digits[(h >> s) & 15]);
    return name + ".orb";
}

}  // namespace detail

/// All images of a simple rank-5 point set in PG(4,2) under GL(5,2).
/// Point v (a nonzero 5-bit vector) is bit v-1 of a 31-bit mask.
class OrbitTable {
public:
    static constexpr std::size_t kRank = 5;
    static constexpr std::size_t kPoints = 31;

    static OrbitTable build(const BinaryMatroid& target) {
        if (target.rank() != kRank) throw std::invalid_argument("orbit table requires a rank-5 target");
        if (!target.is_simple()) throw std::invalid_argument("orbit table requires a simple target");
        OrbitTable t;
        t.key_ = canonical_key(target);
        t.point_count_ = target.size();
        std::uint32_t start = 0;
        for (auto c : target.columns()) start |= std::uint32_t{1} << (c - 1);

        // transvections row_i += row_j generate GL(5,2)
        std::vector<std::array<std::uint8_t, kPoints>> gens;
        for (std::size_t i = 0; i < kRank; ++i) {
            for (std::size_t j = 0; j < kRank; ++j) {
                if (i == j) continue;
                std::array<std::uint8_t, kPoints> perm{};
                for (std::uint32_t v = 1; v <= kPoints; ++v) {
                    const std::uint32_t w = ((v >> j) & 1u) ? v ^ (1u << i) : v;
                    perm[v - 1] = static_cast<std::uint8_t>(w - 1);
                }
                gens.push_back(perm);
            }
        }
        std::unordered_set<std::uint32_t> seen{start};
        std::vector<std::uint32_t> frontier{start};
        while (!frontier.empty()) {
            std::vector<std::uint32_t> next;
            for (auto m : frontier) {
                for (const auto& g : gens) {
                    std::uint32_t img = 0;
                    for (std::uint32_t b = m; b != 0; b &= b - 1) img |= std::uint32_t{1} << g[std::countr_zero(b)];
                    if (seen.insert(img).second) next.push_back(img);
                }
            }
            frontier = std::move(next);
        }
        t.masks_.assign(seen.begin(), seen.end());
        std::sort(t.masks_.begin(), t.masks_.end());
        t.index();
        return t;
    }

    /// Loads from `dir` when a cache file for this target exists and matches;
    /// otherwise builds and writes it (best effort).
    static OrbitTable load_or_build(const BinaryMatroid& target, const std::filesystem::path& dir) {
        const auto key = canonical_key(target);
        const auto path = dir / detail::orbit_cache_name(key);
        if (auto loaded = read(path); loaded && loaded->key_ == key) return std::move(*loaded);
        auto t = build(target);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (!ec) t.write(path);
        return t;
    }

    static std::optional<OrbitTable> read(const std::filesystem::path& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) return std::nullopt;
        char magic[8];
        in.read(magic, 8);
        if (!in || std::memcmp(magic, kMagic, 8) != 0) return std::nullopt;
        OrbitTable t;
        const auto keylen = read_u32(in);
        if (!in || keylen > 4096) return std::nullopt;
        t.key_.bytes.resize(keylen);
        in.read(t.key_.bytes.data(), keylen);
        const auto rank = read_u32(in);
        t.point_count_ = read_u32(in);
        const auto count = read_u32(in);
        if (!in || rank != kRank) return std::nullopt;
        t.masks_.resize(count);
        for (auto& m : t.masks_) m = read_u32(in);
        if (!in) return std::nullopt;
        if (!std::is_sorted(t.masks_.begin(), t.masks_.end())) return std::nullopt;
        t.index();
        return t;
    }

    void write(const std::filesystem::path& path) const {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) return;
        out.write(kMagic, 8);
        write_u32(out, static_cast<std::uint32_t>(key_.bytes.size()));
        out.write(key_.bytes.data(), static_cast<std::streamsize>(key_.bytes.size()));
        write_u32(out, kRank);
        write_u32(out, static_cast<std::uint32_t>(point_count_));
        write_u32(out, static_cast<std::uint32_t>(masks_.size()));
        for (auto m : masks_) write_u32(out, m);
    }

    [[nodiscard]] const CanonicalKey& target_key() const { return key_; }
    [[nodiscard]] std::size_t point_count() const { return point_count_; }
    [[nodiscard]] const std::vector<std::uint32_t>& masks() const { return masks_; }
    [[nodiscard]] bool contains_mask(std::uint32_t m) const {
        return std::binary_search(masks_.begin(), masks_.end(), m);
    }

    /// Some orbit mask contained in `s`, if any.
    [[nodiscard]] std::optional<std::uint32_t> find_subset(std::uint32_t s) const {
        if (static_cast<std::size_t>(std::popcount(s)) < point_count_) return std::nullopt;
        std::array<int, kPoints> bits{};
        int nb = 0;
        for (std::uint32_t b = s; b != 0; b &= b - 1) bits[nb++] = std::countr_zero(b);
        for (int a = 0; a < nb; ++a) {
            for (int b = a + 1; b < nb; ++b) {
                for (int c = b + 1; c < nb; ++c) {
                    const std::size_t bucket = bucket_of(bits[a], bits[b], bits[c]);
                    for (auto i = offsets_[bucket]; i < offsets_[bucket + 1]; ++i) {
                        if ((bucketed_[i] & ~s) == 0) return bucketed_[i];
                    }
                }
            }
        }
        return std::nullopt;
    }

private:
    static constexpr char kMagic[8] = {'B', 'M', 'O', 'R', 'B', '0', '0', '1'};

    static std::size_t bucket_of(int a, int b, int c) {
        return (static_cast<std::size_t>(a) * kPoints + static_cast<std::size_t>(b)) * kPoints + static_cast<std::size_t>(c);
    }

    void index() {
        const std::size_t buckets = kPoints * kPoints * kPoints;
        offsets_.assign(buckets + 1, 0);
        std::vector<std::size_t> which(masks_.size());
        for (std::size_t i = 0; i < masks_.size(); ++i) {
            std::uint32_t m = masks_[i];
            const int a = std::countr_zero(m);
            m &= m - 1;
            const int b = std::countr_zero(m);
            m &= m - 1;
            const int c = std::countr_zero(m);
            which[i] = bucket_of(a, b, c);
            ++offsets_[which[i] + 1];
        }
        for (std::size_t i = 0; i < buckets; ++i) offsets_[i + 1] += offsets_[i];
        bucketed_.assign(masks_.size(), 0);
        auto fill = offsets_;
        for (std::size_t i = 0; i < masks_.size(); ++i) bucketed_[fill[which[i]]++] = masks_[i];
    }

    static std::uint32_t read_u32(std::istream& in) {
        unsigned char b[4] = {};
        in.read(reinterpret_cast<char*>(b), 4);
        return std::uint32_t{b[0]} | (std::uint32_t{b[1]} << 8) | (std::uint32_t{b[2]} << 16) | (std::uint32_t{b[3]} << 24);
    }
    static void write_u32(std::ostream& out, std::uint32_t v) {
        const char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                           static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
        out.write(b, 4);
    }

    CanonicalKey key_;
    std::size_t point_count_ = 0;
    std::vector<std::uint32_t> masks_;
    std::vector<std::size_t> offsets_;
    std::vector<std::uint32_t> bucketed_;
};

/// Orbit cache directory from ORBIT_CACHE_DIR, or `fallback`.
inline std::filesystem::path orbit_cache_dir(const std::filesystem::path& fallback = "data/orbit") {
    if (const char* env = std::getenv("ORBIT_CACHE_DIR"); env && *env) return env;
    return fallback;
}

/// Minor tests against one fixed target. Rank-5 simple targets may use an
/// orbit table; everything else goes through the generic embedding search.
class MinorOracle {
public:
    explicit MinorOracle(BinaryMatroid target, std::shared_ptr<const OrbitTable> orbit = nullptr,
                         MinorOptions opts = {})
        : target_(std::move(target)), embedder_(target_), orbit_(std::move(orbit)), opts_(opts) {
        if (orbit_ && orbit_->target_key() != canonical_key(target_)) {
            throw std::invalid_argument("orbit table does not match target");
        }
    }

    [[nodiscard]] const BinaryMatroid& target() const { return target_; }
    [[nodiscard]] bool uses_orbit() const { return orbit_ != nullptr; }

    [[nodiscard]] std::optional<MinorWitness> find(const BinaryMatroid& host) const {
        if (host.size() < target_.size() || host.rank() < target_.rank() || host.corank() < target_.corank()) {
            return std::nullopt;
        }
        const std::size_t d = host.rank() - target_.rank();
        const auto flats = detail::flats_of_rank(host, d, opts_.max_flats);
        return orbit_ ? find_orbit(host, flats) : find_generic(host, flats);
    }

    [[nodiscard]] bool has(const BinaryMatroid& host) const { return find(host).has_value(); }

    /// Same question answered by the generic engine even when an orbit table is attached.
    [[nodiscard]] std::optional<MinorWitness> find_generic_only(const BinaryMatroid& host) const {
        if (host.size() < target_.size() || host.rank() < target_.rank() || host.corank() < target_.corank()) {
            return std::nullopt;
        }
        const auto flats = detail::flats_of_rank(host, host.rank() - target_.rank(), opts_.max_flats);
        return find_generic(host, flats);
    }

private:
    MinorWitness make_witness(const BinaryMatroid& host, std::uint64_t contract, std::uint64_t keep) const {
        MinorWitness w;
        w.contract = host.ids_of(contract);
        w.del = host.ids_of(host.all_mask() & ~contract & ~keep);
        w.target = target_.name();
        return w;
    }

    std::optional<MinorWitness> find_generic(const BinaryMatroid& host, const std::vector<detail::Flat>& flats) const {
        std::set<std::vector<std::pair<std::uint64_t, std::size_t>>> failed;
        for (const auto& f : flats) {
            const auto pts = detail::quotient_points(host, f);
            const std::size_t loops = static_cast<std::size_t>(std::popcount(f.elements & ~f.basis));
            if (loops < embedder_.loops()) continue;
            std::map<std::uint64_t, std::size_t> count;
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (pts[j] != 0) ++count[pts[j]];
            }
            std::vector<std::pair<std::uint64_t, std::size_t>> host_pts(count.begin(), count.end());
            if (failed.count(host_pts)) continue;
            std::vector<std::pair<std::uint64_t, std::uint64_t>> image;
            if (!embedder_.embed(host_pts, &image)) {
                failed.insert(std::move(host_pts));
                continue;
            }
            // pick concrete elements: demand copies of each image point, plus target loops
            std::unordered_map<std::uint64_t, std::size_t> need;
            for (auto c : target_.columns()) {
                if (c == 0) continue;
                for (const auto& [v, img] : image) {
                    if (v == c) ++need[img];
                }
            }
            std::uint64_t keep = 0;
            std::size_t loops_needed = embedder_.loops();
            for (std::size_t j = 0; j < pts.size(); ++j) {
                const std::uint64_t bit = std::uint64_t{1} << j;
                if (f.basis & bit) continue;
                if (pts[j] == 0) {
                    if (loops_needed > 0) {
                        keep |= bit;
                        --loops_needed;
                    }
                    continue;
                }
                auto it = need.find(pts[j]);
                if (it != need.end() && it->second > 0) {
                    keep |= bit;
                    --it->second;
                }
            }
            return make_witness(host, f.basis, keep);
        }
        return std::nullopt;
    }

    std::optional<MinorWitness> find_orbit(const BinaryMatroid& host, const std::vector<detail::Flat>& flats) const {
        std::unordered_set<std::uint32_t> failed;
        for (const auto& f : flats) {
            const auto pts = detail::quotient_points(host, f);
            detail::TrackedBasis frame;
            for (auto p : pts) {
                if (p != 0) frame.insert(p);
            }
            std::vector<std::uint32_t> coord(pts.size(), 0);
            std::uint32_t s = 0;
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (pts[j] == 0) continue;
                coord[j] = static_cast<std::uint32_t>(*frame.coords(pts[j]));
                s |= std::uint32_t{1} << (coord[j] - 1);
            }
            if (failed.count(s)) continue;
            const auto hit = orbit_->find_subset(s);
            if (!hit) {
                failed.insert(s);
                continue;
            }
            std::uint32_t todo = *hit;
            std::uint64_t keep = 0;
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (coord[j] == 0) continue;
                const std::uint32_t bit = std::uint32_t{1} << (coord[j] - 1);
                if (todo & bit) {
                    keep |= std::uint64_t{1} << j;
                    todo &= ~bit;
                }
            }
            return make_witness(host, f.basis, keep);
        }
        return std::nullopt;
    }

    BinaryMatroid target_;
    detail::Embedder embedder_;
    std::shared_ptr<const OrbitTable> orbit_;
    MinorOptions opts_;
};

/// Generic search for an N-minor of M.
inline std::optional<MinorWitness> has_minor(const BinaryMatroid& m, const BinaryMatroid& n, MinorOptions opts = {}) {
    return MinorOracle(n, nullptr, opts).find(m);
}

}  // namespace binmat
