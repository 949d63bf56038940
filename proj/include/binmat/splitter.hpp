// Extension / coextension enumeration up to isomorphism, class-filtered moves,
// the splitter chain search and rank censuses.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "canonical.hpp"
#include "connectivity.hpp"
#include "families.hpp"
#include "matroid.hpp"
#include "minor.hpp"
#include "parallel.hpp"

namespace binmat {

enum class MoveKind { extension, coextension };

inline const char* move_name(MoveKind k) { return k == MoveKind::extension ? "ext" : "coext"; }

struct ClassFlags {
    bool simple = false;
    bool cosimple = false;
    bool three_connected = false;
    bool has_p9 = false;
    bool has_p9star = false;
    bool in_class = true;
};

/// True iff m has none of the excluded minors.
inline bool in_class(const BinaryMatroid& m, const std::vector<Target>& excluded) {
    return std::none_of(excluded.begin(), excluded.end(), [&](Target t) { return oracle(t).has(m); });
}

inline ClassFlags compute_flags(const BinaryMatroid& m, const std::vector<Target>& excluded) {
    ClassFlags f;
    f.simple = m.is_simple();
    f.cosimple = m.is_cosimple();
    f.three_connected = is_3connected(m);
    f.has_p9 = oracle(Target::p9).has(m);
    f.has_p9star = oracle(Target::p9star).has(m);
    f.in_class = true;
    for (auto t : excluded) {
        const bool hit = t == Target::p9 ? f.has_p9 : t == Target::p9star ? f.has_p9star : oracle(t).has(m);
        if (hit) f.in_class = false;
    }
    return f;
}

/// Packed vector whose string form (coordinate 0 first) is the t-th string of
/// width w in lexicographic order, t = 0 .. 2^w - 1.
inline std::uint64_t lex_vector(std::uint64_t t, std::size_t w) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < w; ++i) {
        if ((t >> (w - 1 - i)) & 1u) v |= std::uint64_t{1} << i;
    }
    return v;
}

struct MoveClass {
    BinaryMatroid representative;  // built from the first generating vector
    CanonicalKey key;
    std::vector<std::string> vectors;
    ClassFlags flags;
};

struct ExtensionGroup {
    CanonicalKey parent_key;
    MoveKind kind = MoveKind::extension;
    std::size_t candidates = 0;
    std::vector<MoveClass> classes;  // in order of first generating vector

    [[nodiscard]] std::vector<std::size_t> multiplicities() const {
        std::vector<std::size_t> out;
        for (const auto& c : classes) out.push_back(c.vectors.size());
        return out;
    }
};

struct Candidate {
    std::string vector;
    BinaryMatroid matroid;
};

/// Extension candidates: nonzero columns not already present, in lexicographic order.
inline std::vector<Candidate> extension_candidates(const BinaryMatroid& m) {
    const std::size_t r = m.rank();
    if (r > 20) throw std::invalid_argument("extension enumeration: rank too large");
    std::set<std::uint64_t> present(m.columns().begin(), m.columns().end());
    std::vector<Candidate> out;
    for (std::uint64_t t = 1; t < (std::uint64_t{1} << r); ++t) {
        const auto v = lex_vector(t, r);
        if (present.count(v)) continue;
        out.push_back({column_string(v, r), m.extend(v)});
    }
    return out;
}

/// Rows over the non-pivot columns whose coextension is cosimple (M cosimple):
/// everything except zero, unit rows and the rows of the D block.
inline std::vector<Candidate> coextension_candidates(const BinaryMatroid& m) {
    const std::size_t w = m.corank();
    if (w > 24) throw std::invalid_argument("coextension enumeration: corank too large");
    const auto np = m.nonpivots();
    std::set<std::uint64_t> banned{0};
    for (std::size_t k = 0; k < w; ++k) banned.insert(std::uint64_t{1} << k);
    for (std::size_t i = 0; i < m.rank(); ++i) {
        std::uint64_t row = 0;
        for (std::size_t k = 0; k < w; ++k) {
            if ((m.columns()[np[k]] >> i) & 1u) row |= std::uint64_t{1} << k;
        }
        banned.insert(row);
    }
    const bool cosimple = m.is_cosimple();
    std::vector<Candidate> out;
    for (std::uint64_t t = 1; t < (std::uint64_t{1} << w); ++t) {
        const auto x = lex_vector(t, w);
        if (cosimple && banned.count(x)) continue;
        auto co = m.coextend(m.row_over_nonpivots(x));
        if (!cosimple && !co.is_cosimple()) continue;
        out.push_back({column_string(x, w), std::move(co)});
    }
    return out;
}

inline ExtensionGroup group_moves(const BinaryMatroid& parent, MoveKind kind, const std::vector<Target>& excluded,
                                  std::size_t jobs = 1) {
    auto cands = kind == MoveKind::extension ? extension_candidates(parent) : coextension_candidates(parent);
    std::vector<CanonicalKey> keys(cands.size());
    parallel_for(cands.size(), jobs, [&](std::size_t i) { keys[i] = canonical_key(cands[i].matroid); });
    ExtensionGroup g;
    g.parent_key = canonical_key(parent);
    g.kind = kind;
    g.candidates = cands.size();
    std::map<CanonicalKey, std::size_t> where;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        auto [it, fresh] = where.emplace(keys[i], g.classes.size());
        if (fresh) g.classes.push_back({cands[i].matroid, keys[i], {}, {}});
        g.classes[it->second].vectors.push_back(cands[i].vector);
    }
    parallel_for(g.classes.size(), jobs,
                 [&](std::size_t i) { g.classes[i].flags = compute_flags(g.classes[i].representative, excluded); });
    return g;
}

/// Simple single-element extensions grouped by isomorphism class.
inline ExtensionGroup simple_extensions(const BinaryMatroid& m, const std::vector<Target>& excluded = {},
                                        std::size_t jobs = 1) {
    if (!m.is_simple()) throw std::invalid_argument("simple_extensions: matroid is not simple");
    return group_moves(m, MoveKind::extension, excluded, jobs);
}

/// Cosimple single-element coextensions grouped by isomorphism class.
inline ExtensionGroup cosimple_coextensions(const BinaryMatroid& m, const std::vector<Target>& excluded = {},
                                            std::size_t jobs = 1) {
    if (!m.is_cosimple()) throw std::invalid_argument("cosimple_coextensions: matroid is not cosimple");
    return group_moves(m, MoveKind::coextension, excluded, jobs);
}

/// The groups of `g` whose class avoids every excluded minor.
inline ExtensionGroup class_filtered(ExtensionGroup g) {
    std::erase_if(g.classes, [](const MoveClass& c) { return !c.flags.in_class; });
    return g;
}

inline ExtensionGroup class_filtered_moves(const BinaryMatroid& m, MoveKind kind, const std::vector<Target>& excluded,
                                           std::size_t jobs = 1) {
    return class_filtered(kind == MoveKind::extension ? simple_extensions(m, excluded, jobs)
                                                      : cosimple_coextensions(m, excluded, jobs));
}

// ---------------------------------------------------------------------------
// chain search

struct IsoClassRecord {
    CanonicalKey key;
    BinaryMatroid representative;
    std::optional<std::size_t> parent;  // catalog index of the matroid this one was reached from
    MoveKind move = MoveKind::extension;
    std::string vector;  // column (extension) or row over the parent's non-pivots (coextension)
    bool three_connected = false;

    [[nodiscard]] std::size_t rank() const { return representative.rank(); }
    [[nodiscard]] std::size_t size() const { return representative.size(); }
};

struct ChainMove {
    MoveKind kind;
    std::string vector;
    CanonicalKey result;
};

struct SplitterChain {
    std::string root;
    std::vector<ChainMove> moves;
};

struct ChainOptions {
    bool schedule = true;        // strong splitter schedule; false = coextend every catalog member
    std::size_t jobs = 1;
    std::size_t max_size = 64;   // classes larger than this are not explored
    bool check_3connected = true;
};

struct Catalog {
    std::string root;
    std::vector<Target> excluded;
    std::vector<IsoClassRecord> classes;  // discovery order; index is stable

    [[nodiscard]] std::vector<std::size_t> at_rank(std::size_t r) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < classes.size(); ++i) {
            if (classes[i].rank() == r) out.push_back(i);
        }
        std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
            const auto& x = classes[a];
            const auto& y = classes[b];
            if (x.size() != y.size()) return x.size() < y.size();
            return x.key < y.key;
        });
        return out;
    }

    [[nodiscard]] std::optional<std::size_t> find(const CanonicalKey& k) const {
        for (std::size_t i = 0; i < classes.size(); ++i) {
            if (classes[i].key == k) return i;
        }
        return std::nullopt;
    }

    /// Moves from the root to class i.
    [[nodiscard]] SplitterChain chain_to(std::size_t i) const {
        SplitterChain c;
        c.root = root;
        std::vector<ChainMove> rev;
        std::optional<std::size_t> cur = i;
        while (cur && classes[*cur].parent) {
            const auto& rec = classes[*cur];
            rev.push_back({rec.move, rec.vector, rec.key});
            cur = rec.parent;
        }
        c.moves.assign(rev.rbegin(), rev.rend());
        return c;
    }
};

namespace detail {

// Open state of the schedule: a matroid plus the extension elements added since
// the last coextension (at most two).
struct OpenState {
    BinaryMatroid matroid;
    ElementSet marked;
    std::size_t record = 0;
};

struct Produced {
    std::size_t parent_slot;
    MoveKind kind;
    std::string vector;
    BinaryMatroid matroid;
    CanonicalKey key;         // unmarked
    CanonicalKey marked_key;  // with the new extension marks (extension moves only)
};

}  // namespace detail

/// Breadth-first closure of class-filtered moves from `root`, rank by rank, up
/// to `max_rank`. With the schedule on, each rank step is at most two
/// extensions followed by a coextension (triad row after two extensions); the
/// members of every rank are then closed under extensions without limit.
inline Catalog chain_search(const BinaryMatroid& root, const std::vector<Target>& excluded, std::size_t max_rank,
                            const ChainOptions& opt = {}) {
    if (!is_3connected(root)) throw ConstructionError("chain_search: root is not 3-connected");
    if (!in_class(root, excluded)) throw ConstructionError("chain_search: root has an excluded minor");
    Catalog cat;
    cat.root = root.name();
    cat.excluded = excluded;
    std::unordered_map<CanonicalKey, std::size_t, CanonicalKeyHash> index;

    auto add_record = [&](const detail::Produced& p, std::optional<std::size_t> parent) -> std::pair<std::size_t, bool> {
        auto [it, fresh] = index.emplace(p.key, cat.classes.size());
        if (!fresh) return {it->second, false};
        IsoClassRecord rec;
        rec.key = p.key;
        rec.representative = p.matroid;
        rec.parent = parent;
        rec.move = p.kind;
        rec.vector = p.vector;
        cat.classes.push_back(std::move(rec));
        return {it->second, true};
    };

    // keys and class membership for candidate lists, computed in parallel and
    // merged in (parent, candidate) order
    auto produce = [&](const std::vector<std::pair<std::size_t, std::vector<Candidate>>>& work, MoveKind kind,
                       const std::vector<ElementSet>* marks) {
        std::vector<std::vector<detail::Produced>> per(work.size());
        parallel_for(work.size(), opt.jobs, [&](std::size_t w) {
            for (const auto& c : work[w].second) {
                if (c.matroid.size() > opt.max_size) continue;
                detail::Produced p{work[w].first, kind, c.vector, c.matroid, canonical_key(c.matroid), {}};
                if (marks) {
                    ElementSet mk = (*marks)[w];
                    mk.insert(c.matroid.max_id());
                    p.marked_key = canonical_key_marked(c.matroid, mk);
                }
                per[w].push_back(std::move(p));
            }
        });
        std::vector<detail::Produced> flat;
        for (auto& v : per) {
            for (auto& p : v) flat.push_back(std::move(p));
        }
        // class test once per new key
        std::vector<std::size_t> firsts;
        std::unordered_map<CanonicalKey, std::size_t, CanonicalKeyHash> first_of;
        for (std::size_t i = 0; i < flat.size(); ++i) {
            if (index.count(flat[i].key)) continue;
            if (first_of.emplace(flat[i].key, i).second) firsts.push_back(i);
        }
        std::vector<char> ok(firsts.size(), 0);
        parallel_for(firsts.size(), opt.jobs, [&](std::size_t i) {
            const auto& m = flat[firsts[i]].matroid;
            bool good = in_class(m, excluded);
            if (good && opt.check_3connected && !is_3connected(m)) {
                throw std::logic_error("move produced a matroid that is not 3-connected");
            }
            ok[i] = good ? 1 : 0;
        });
        std::unordered_set<CanonicalKey, CanonicalKeyHash> rejected;
        for (std::size_t i = 0; i < firsts.size(); ++i) {
            if (!ok[i]) rejected.insert(flat[firsts[i]].key);
        }
        std::erase_if(flat, [&](const detail::Produced& p) { return rejected.count(p.key) > 0; });
        return flat;
    };

    index.emplace(canonical_key(root), 0);
    {
        IsoClassRecord rec;
        rec.key = canonical_key(root);
        rec.representative = root;
        rec.three_connected = true;
        cat.classes.push_back(std::move(rec));
    }
    std::vector<detail::OpenState> c0{{root, {}, 0}};

    for (std::size_t rank = root.rank(); rank <= max_rank && !c0.empty(); ++rank) {
        // schedule states with one and two pending extensions
        std::vector<detail::OpenState> open = c0;
        if (opt.schedule) {
            std::vector<detail::OpenState> layer = c0;
            for (int step = 0; step < 2; ++step) {
                std::vector<std::pair<std::size_t, std::vector<Candidate>>> work;
                std::vector<ElementSet> marks;
                for (std::size_t s = 0; s < layer.size(); ++s) {
                    work.emplace_back(s, extension_candidates(layer[s].matroid));
                    marks.push_back(layer[s].marked);
                }
                auto produced = produce(work, MoveKind::extension, &marks);
                std::vector<detail::OpenState> next;
                std::unordered_set<CanonicalKey, CanonicalKeyHash> seen;
                for (auto& p : produced) {
                    auto [rec, fresh] = add_record(p, layer[p.parent_slot].record);
                    (void)fresh;
                    if (!seen.insert(p.marked_key).second) continue;
                    ElementSet mk = layer[p.parent_slot].marked;
                    mk.insert(p.matroid.max_id());
                    next.push_back({p.matroid, mk, rec});
                }
                open.insert(open.end(), next.begin(), next.end());
                layer = std::move(next);
            }
        }

        // unlimited extension closure of this rank
        {
            std::vector<std::size_t> frontier;
            for (std::size_t i = 0; i < cat.classes.size(); ++i) {
                if (cat.classes[i].rank() == rank) frontier.push_back(i);
            }
            while (!frontier.empty()) {
                std::vector<std::pair<std::size_t, std::vector<Candidate>>> work;
                for (auto i : frontier) work.emplace_back(i, extension_candidates(cat.classes[i].representative));
                auto produced = produce(work, MoveKind::extension, nullptr);
                std::vector<std::size_t> next;
                for (auto& p : produced) {
                    auto [rec, fresh] = add_record(p, p.parent_slot);
                    if (fresh) next.push_back(rec);
                }
                frontier = std::move(next);
            }
        }
        for (auto& rec : cat.classes) {
            if (rec.rank() == rank) rec.three_connected = true;
        }
        if (rank == max_rank) break;

        // coextensions into the next rank
        std::vector<detail::OpenState> sources;
        if (opt.schedule) {
            sources = open;
        } else {
            for (std::size_t i = 0; i < cat.classes.size(); ++i) {
                if (cat.classes[i].rank() == rank) sources.push_back({cat.classes[i].representative, {}, i});
            }
        }
        std::vector<std::pair<std::size_t, std::vector<Candidate>>> work;
        for (std::size_t s = 0; s < sources.size(); ++s) {
            const auto& st = sources[s];
            if (st.marked.size() == 2) {
                // the new element must form a triad with the two pending extension elements
                std::uint64_t row = 0;
                for (auto id : st.marked) row |= std::uint64_t{1} << st.matroid.index_of(id);
                auto co = st.matroid.coextend(row);
                if (!co.is_cosimple()) continue;
                std::string label;
                const auto np = st.matroid.nonpivots();
                for (auto j : np) label.push_back(((row >> j) & 1u) ? '1' : '0');
                work.emplace_back(st.record, std::vector<Candidate>{{label, std::move(co)}});
            } else {
                work.emplace_back(st.record, coextension_candidates(st.matroid));
            }
        }
        auto produced = produce(work, MoveKind::coextension, nullptr);
        std::vector<detail::OpenState> next;
        std::unordered_set<CanonicalKey, CanonicalKeyHash> seen;
        for (auto& p : produced) {
            auto [rec, fresh] = add_record(p, p.parent_slot);
            (void)fresh;
            if (!seen.insert(p.key).second) continue;
            next.push_back({p.matroid, {}, rec});
        }
        c0 = std::move(next);
    }
    return cat;
}

struct CensusReport {
    std::size_t rank = 0;
    std::vector<Target> excluded;
    bool nonregular_only = true;
    std::vector<IsoClassRecord> classes;  // sorted by (size, key)
    std::size_t max_size = 0;
    std::vector<CanonicalKey> extremal;
};

/// All 3-connected non-regular binary matroids of the given rank avoiding the
/// excluded minors, found by chain search from F_7* (F_7 alone at rank 3).
inline CensusReport census(std::size_t rank, const std::vector<Target>& excluded, bool nonregular_only,
                           std::size_t jobs = 1, bool schedule = true) {
    if (!nonregular_only) throw std::invalid_argument("census: only the non-regular census is supported");
    if (rank < 3) throw std::out_of_range("census: rank must be at least 3");
    CensusReport rep;
    rep.rank = rank;
    rep.excluded = excluded;
    rep.nonregular_only = nonregular_only;
    if (rank == 3) {
        auto f7 = named("F7");
        if (in_class(f7, excluded)) rep.classes.push_back({canonical_key(f7), f7, std::nullopt, MoveKind::extension, "", true});
    } else {
        ChainOptions opt;
        opt.jobs = jobs;
        opt.schedule = schedule;
        const auto cat = chain_search(named("F7dual"), excluded, rank, opt);
        for (auto i : cat.at_rank(rank)) rep.classes.push_back(cat.classes[i]);
    }
    for (const auto& c : rep.classes) rep.max_size = std::max(rep.max_size, c.size());
    for (const auto& c : rep.classes) {
        if (c.size() == rep.max_size) rep.extremal.push_back(c.key);
    }
    return rep;
}

}  // namespace binmat
