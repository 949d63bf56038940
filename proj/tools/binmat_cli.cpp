// binmat: command-line front end for the binary matroid catalog.
// Exit codes: 0 success, 1 negative answer or failed verification,
// 2 usage error, 3 range, parse, bound or missing-data error.

#include <CLI11.hpp>

#include <binmat/canonical.hpp>
#include <binmat/connectivity.hpp>
#include <binmat/families.hpp>
#include <binmat/io.hpp>
#include <binmat/minor.hpp>
#include <binmat/splitter.hpp>
#include <binmat/tables.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace binmat;

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

LabeledMatroid family(const std::string& name, std::size_t r) {
    if (name == "z") return z_spike(r);
    if (name == "alpha") return alpha(r);
    if (name == "omega") return omega(r);
    if (name == "pg") return {projective_geometry(r), {}};
    if (name == "kcomplete") return {complete_graph_cycle_matroid(r), {}};
    throw std::invalid_argument("unknown family " + name);
}

// A file path, a catalog name, or "family:rank".
BinaryMatroid load(const std::string& spec) {
    if (std::filesystem::exists(spec) || spec.ends_with(".bmx")) return read_matroid_file(spec);
    if (auto colon = spec.find(':'); colon != std::string::npos) {
        std::size_t r = 0;
        try {
            r = std::stoul(spec.substr(colon + 1));
        } catch (const std::exception&) {
            throw ParseError("bad rank in " + spec);
        }
        return family(spec.substr(0, colon), r).matroid;
    }
    try {
        return named(spec);
    } catch (const std::invalid_argument&) {
        throw ParseError("not a file, catalog name or family:rank: " + spec);
    }
}

void write_or_print(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw DataError("cannot write " + out);
    f << text;
}

std::string set_text(const ElementSet& s) {
    std::string out = "{";
    for (auto id : s) out += (out.size() > 1 ? "," : "") + std::to_string(id);
    return out + "}";
}

std::vector<Target> targets(const std::vector<std::string>& names) {
    std::vector<Target> out;
    for (const auto& n : names) out.push_back(parse_target(n));
    return out;
}

std::string group_tsv(const std::string& parent, const ExtensionGroup& g) {
    std::ostringstream out;
    out << "parent\tmove\tvector\tclass\tp9\tp9star\tin_class\tkey\n";
    for (std::size_t c = 0; c < g.classes.size(); ++c) {
        const auto& cl = g.classes[c];
        for (const auto& v : cl.vectors) {
            out << parent << '\t' << move_name(g.kind) << '\t' << v << "\tC" << c + 1 << '\t'
                << (cl.flags.has_p9 ? "Yes" : "No") << '\t' << (cl.flags.has_p9star ? "Yes" : "No") << '\t'
                << (cl.flags.in_class ? "Yes" : "No") << '\t' << cl.key.hex() << '\n';
        }
    }
    return out.str();
}

int run(int argc, char** argv) {
    CLI::App app{"Binary matroid catalog: minors, isomorphism, extensions, census"};
    app.require_subcommand(1);
    std::size_t jobs = 1;
    std::string out;

    std::string fam;
    std::size_t rank = 0;
    auto* gen = app.add_subcommand("gen", "build a family member or catalog matroid");
    gen->add_option("--family", fam, "z, alpha, omega, pg, kcomplete or a catalog name")->required();
    gen->add_option("--rank", rank, "rank");

    std::string m1;
    std::string m2;
    auto* dual = app.add_subcommand("dual", "dual matroid");
    dual->add_option("matroid", m1)->required();

    bool witness = false;
    std::string expect;
    auto* minor = app.add_subcommand("minor", "minor containment (exit 1 when absent)");
    minor->add_option("host", m1)->required();
    minor->add_option("target", m2, "p9, p9star, f7, f7star, e7, a catalog name or a file")->required();
    minor->add_flag("--witness", witness, "print contract/delete sets");
    minor->add_option("--expect", expect, "yes or no; exit 1 on mismatch");

    auto* iso = app.add_subcommand("iso", "isomorphism test (exit 1 when not isomorphic)");
    iso->add_option("a", m1)->required();
    iso->add_option("b", m2)->required();

    std::vector<std::string> excluded;
    auto* ext = app.add_subcommand("ext", "simple single-element extensions grouped by class");
    ext->add_option("matroid", m1)->required();
    ext->add_option("--exclude", excluded, "excluded minors (repeatable)");
    auto* coext = app.add_subcommand("coext", "cosimple single-element coextensions grouped by class");
    coext->add_option("matroid", m1)->required();
    coext->add_option("--exclude", excluded, "excluded minors (repeatable)");

    bool nonregular = false;
    bool long_run = false;
    auto* census_cmd = app.add_subcommand("census", "3-connected matroids of one rank avoiding the excluded minors");
    census_cmd->add_option("--rank", rank, "rank")->required();
    census_cmd->add_option("--exclude", excluded, "excluded minors (repeatable)");
    census_cmd->add_flag("--nonregular", nonregular, "non-regular matroids only (required)");
    census_cmd->add_flag("--long", long_run, "allow rank 7");
    census_cmd->add_option("--expect", expect, "expected max size; exit 1 on mismatch");

    auto* chain = app.add_subcommand("chain", "class-filtered chain search from a root");
    chain->add_option("root", m1)->required();
    chain->add_option("--rank", rank, "maximum rank")->required();
    chain->add_option("--exclude", excluded, "excluded minors (repeatable)");

    std::string what;
    auto* verify = app.add_subcommand("verify", "check a table, p9star-or-e7 or sizes (exit 1 on any diff)");
    verify->add_option("what", what, "1a, 1b, 2a, 2b, 3, 4, p9star-or-e7, sizes or all")->required();

    auto* show = app.add_subcommand("show", "matrix, key and basic properties");
    show->add_option("matroid", m1)->required();

    for (auto* sub : app.get_subcommands({})) {
        sub->add_option("--out", out, "output file");
        sub->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    if (*gen) {
        BinaryMatroid m;
        const auto names = named_list();
        if (std::find(names.begin(), names.end(), fam) != names.end()) {
            m = named(fam);
        } else {
            if (rank == 0) throw std::invalid_argument("gen: --rank is required for families");
            m = family(fam, rank).matroid;
        }
        write_or_print(out, serialize_matroid(m));
        std::cerr << "rank " << m.rank() << " size " << m.size() << " key " << canonical_key(m).hex() << "\n";
        return 0;
    }
    if (*dual) {
        write_or_print(out, serialize_matroid(load(m1).dual()));
        return 0;
    }
    if (*minor) {
        const auto host = load(m1);
        std::optional<MinorWitness> w;
        BinaryMatroid target;
        std::optional<Target> t;
        try {
            t = parse_target(m2);
        } catch (const std::invalid_argument&) {
        }
        if (t) {
            target = target_matroid(*t);
            w = oracle(*t).find(host);
        } else {
            target = load(m2);
            w = has_minor(host, target);
        }
        if (w && !verify_witness(host, *w, target)) throw std::logic_error("witness failed verification");
        if (w) {
            std::cout << "yes";
            if (witness) std::cout << "\tcontract " << set_text(w->contract) << " delete " << set_text(w->del);
            std::cout << "\n";
        } else {
            std::cout << "no\n";
        }
        if (!expect.empty()) return (expect == "yes") == w.has_value() ? 0 : 1;
        return w ? 0 : 1;
    }
    if (*iso) {
        const bool same = are_isomorphic(load(m1), load(m2));
        std::cout << (same ? "isomorphic" : "not isomorphic") << "\n";
        return same ? 0 : 1;
    }
    if (*ext || *coext) {
        const auto m = load(m1);
        const auto ex = targets(excluded);
        const auto g = *ext ? simple_extensions(m, ex, jobs) : cosimple_coextensions(m, ex, jobs);
        write_or_print(out, group_tsv(m.name().empty() ? m1 : m.name(), g));
        std::cerr << g.candidates << " candidates, " << g.classes.size() << " classes\n";
        return 0;
    }
    if (*census_cmd) {
        if (!nonregular) throw std::invalid_argument("census: only --nonregular censuses are supported");
        const std::size_t bound = long_run ? 7 : 6;
        if (rank > bound) throw std::out_of_range("census: rank above the configured bound " + std::to_string(bound));
        const auto rep = census(rank, targets(excluded), true, jobs);
        write_or_print(out, census_json(rep).dump(2) + "\n");
        std::cerr << "rank " << rank << ": " << rep.classes.size() << " classes, max size " << rep.max_size << "\n";
        if (!expect.empty()) return std::to_string(rep.max_size) == expect ? 0 : 1;
        return 0;
    }
    if (*chain) {
        ChainOptions opt;
        opt.jobs = jobs;
        const auto cat = chain_search(load(m1), targets(excluded), rank, opt);
        std::ostringstream text;
        text << "rank\tsize\tkey\tchain\n";
        for (std::size_t r = 0; r <= rank; ++r) {
            for (auto i : cat.at_rank(r)) {
                const auto& c = cat.classes[i];
                text << c.rank() << '\t' << c.size() << '\t' << c.key.hex() << '\t' << cat.root;
                for (const auto& mv : cat.chain_to(i).moves) text << " " << move_name(mv.kind) << "[" << mv.vector << "]";
                text << '\n';
            }
        }
        write_or_print(out, text.str());
        return 0;
    }
    if (*verify) {
        bool ok = true;
        std::vector<std::string> ids;
        if (what == "all") {
            ids = table_ids();
            ids.emplace_back("p9star-or-e7");
            ids.emplace_back("sizes");
        } else {
            ids.push_back(what);
        }
        for (const auto& id : ids) {
            if (id == "p9star-or-e7") {
                const auto rep = verify_p9star_or_e7(jobs);
                for (const auto& r : rep.rows) {
                    if (!r.ok()) std::cout << "p9star-or-e7: " << r.parent << " + [" << r.row << "] has neither minor\n";
                }
                for (const auto& n : rep.notes) std::cout << "p9star-or-e7 note: " << n << "\n";
                std::cout << "p9star-or-e7: " << rep.rows.size() << " coextensions, " << (rep.ok ? "ok" : "FAILED") << "\n";
                ok = ok && rep.ok;
            } else if (id == "sizes") {
                bool all = true;
                for (const auto& c : verify_sizes()) {
                    if (!c.ok()) {
                        all = false;
                        std::cout << "sizes: " << c.family << " rank " << c.rank << " expected " << c.expected << " got "
                                  << c.actual << "\n";
                    }
                }
                std::cout << "sizes: " << (all ? "ok" : "FAILED") << "\n";
                ok = ok && all;
            } else if (std::find(table_ids().begin(), table_ids().end(), id) != table_ids().end()) {
                TableReport rep;
                try {
                    rep = reproduce_table(id, golden_dir(), jobs);
                } catch (const GoldenMissing& e) {
                    throw DataError(e.what());
                }
                for (const auto& d : rep.diffs) std::cout << "table " << id << ": " << d << "\n";
                for (const auto& n : rep.notes) std::cout << "table " << id << " note: " << n << "\n";
                std::cout << "table " << id << ": " << (rep.ok ? "ok" : "FAILED") << "\n";
                if (!out.empty() && ids.size() == 1) write_or_print(out, rep.tsv);
                ok = ok && rep.ok;
            } else {
                throw std::invalid_argument("verify: unknown item " + id);
            }
        }
        return ok ? 0 : 1;
    }
    if (*show) {
        const auto m = load(m1);
        std::cout << serialize_matroid(m);
        std::cout << "key " << canonical_key(m).hex() << "\n";
        std::cout << "simple " << m.is_simple() << " cosimple " << m.is_cosimple() << " 3-connected " << is_3connected(m)
                  << "\n";
        std::cout << "p9 " << oracle(Target::p9).has(m) << " p9star " << oracle(Target::p9star).has(m) << "\n";
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const BoundExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
