#include "umod/cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "umod/apps.hpp"
#include "umod/core.hpp"
#include "umod/gen.hpp"
#include "umod/io.hpp"
#include "umod/laminar.hpp"
#include "umod/oracle.hpp"
#include "umod/partition.hpp"
#include "umod/seidel.hpp"
#include "umod/udecomp.hpp"

namespace umod {

namespace {

using nlohmann::json;

std::vector<int> parse_id_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        int value = 0;
        const char* first = tok.data();
        const char* last = first + tok.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last || value < 0) {
            throw ParseError(0, 0, "bad element id in --set: '" + tok + "'");
        }
        out.push_back(value);
    }
    if (out.empty()) throw ParseError(0, 0, "--set must list at least one element id");
    return out;
}

std::string join_ints(const std::vector<int>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(xs[i]);
    }
    return s;
}

void reject_dot(const std::string& format, const std::string& what) {
    if (format == "dot") {
        throw ParseError(0, 0, "dot output is not available for " + what);
    }
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---- emitters ----------------------------------------------------------

json partition_json(const Partition& p) {
    json parts = json::array();
    for (const auto& part : p.parts) parts.push_back(part);
    return json{{"n", p.n}, {"parts", parts}};
}

json relation_json(const HomogeneousRelation& h) {
    int n = h.size();
    json rows = json::array();
    for (int x = 0; x < n; ++x) {
        json row = json::array();
        for (int y = 0; y < n; ++y) {
            if (x == y) {
                row.push_back(nullptr);
            } else {
                row.push_back(h.at(x, y));
            }
        }
        rows.push_back(std::move(row));
    }
    return json{{"classes", rows}, {"n", n}};
}

json laminar_json(const LaminarTree& t) {
    json nodes = json::array();
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const auto& node = t.nodes[i];
        nodes.push_back(json{{"children", node.children},
                             {"elements", node.elements},
                             {"id", i},
                             {"parent", node.parent < 0 ? json(nullptr) : json(node.parent)}});
    }
    return json{{"n", t.n}, {"nodes", nodes}};
}

std::string laminar_dot(const LaminarTree& t) {
    std::ostringstream os;
    os << "digraph strong_umodules {\n  node [shape=box];\n";
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        os << "  n" << i << " [label=\"{" << join_ints(t.nodes[i].elements) << "}\"];\n";
    }
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        for (int c : t.nodes[i].children) {
            os << "  n" << i << " -> n" << c << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

void laminar_text(const LaminarTree& t, int idx, int depth, std::ostream& out) {
    out << std::string(2 * static_cast<std::size_t>(depth), ' ') << "{"
        << join_ints(t.nodes[idx].elements) << "}\n";
    for (int c : t.nodes[idx].children) laminar_text(t, c, depth + 1, out);
}

std::string unode_kind(UNodeType t) {
    switch (t) {
        case UNodeType::leaf: return "leaf";
        case UNodeType::prime: return "prime";
        case UNodeType::complete: return "complete";
        case UNodeType::circular: return "circular";
    }
    return "?";
}

std::string udecomp_text(const UDecompTree& t) {
    std::ostringstream os;
    os << "n " << t.n << "\n";
    os << "umodules " << count_umodules(t).to_string() << "\n";
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const auto& node = t.nodes[i];
        os << i << ": " << unode_kind(node.type);
        if (node.type == UNodeType::leaf) os << " element " << node.element;
        os << " [" << join_ints(node.neighbors) << "]\n";
    }
    return os.str();
}

void emit(std::ostream& out, const std::string& text) {
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

// ---- subcommand bodies -------------------------------------------------

int run_mu(const HomogeneousRelation& h, const std::string& set_text, bool naive,
           const std::string& format, std::ostream& out) {
    reject_dot(format, "mu");
    std::vector<int> s = parse_id_list(set_text);
    Partition p = mu(h, s, naive ? MuAlgorithm::naive : MuAlgorithm::hopcroft);
    p.canonicalize();
    if (format == "json") {
        emit(out, partition_json(p).dump(2));
    } else {
        for (const auto& part : p.parts) out << join_ints(part) << "\n";
    }
    return 0;
}

int run_strong_tree(const HomogeneousRelation& h, int threads, const std::string& format,
                    std::ostream& out) {
    LaminarTree t = strong_umodules(h, threads);
    if (format == "json") {
        emit(out, laminar_json(t).dump(2));
    } else if (format == "dot") {
        emit(out, laminar_dot(t));
    } else {
        laminar_text(t, t.root(), 0, out);
    }
    return 0;
}

int run_umod_tree(const HomogeneousRelation& h, bool fast, bool generic,
                  const std::string& format, std::ostream& out) {
    UDecompTree t;
    if (fast) {
        t = fast_umodular_tree(h);
    } else if (generic) {
        t = build_umodular_tree(h);
    } else if (local_congruence(h) <= 2) {
        // Prefer the quadratic path; fall back when the relation is not
        // self-complemented (or cannot be certified as such).
        try {
            t = fast_umodular_tree(h);
        } catch (const PreconditionError&) {
            t = build_umodular_tree(h);
        }
    } else {
        t = build_umodular_tree(h);
    }
    if (format == "json") {
        emit(out, tree_to_json(t));
    } else if (format == "dot") {
        emit(out, tree_to_dot(t));
    } else {
        emit(out, udecomp_text(t));
    }
    return 0;
}

int run_seidel(const HomogeneousRelation& h, int pivot, const std::string& format,
               std::ostream& out) {
    reject_dot(format, "seidel");
    SwitchedRelation sw = seidel_switch(h, pivot);
    if (format == "json") {
        json j{{"original_ids", sw.original_ids},
               {"pivot", sw.pivot},
               {"relation", relation_json(sw.relation)}};
        emit(out, j.dump(2));
    } else {
        out << "pivot " << sw.pivot << "\n";
        out << "original_ids " << join_ints(sw.original_ids) << "\n";
        int n = sw.relation.size();
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y) {
                if (y) out << ' ';
                if (x == y) {
                    out << '-';
                } else {
                    out << sw.relation.at(x, y);
                }
            }
            out << "\n";
        }
    }
    return 0;
}

int run_check(const HomogeneousRelation& h, const std::string& format, std::ostream& out) {
    reject_dot(format, "check");
    int lc = local_congruence(h);
    FourElementsReport fe = check_four_elements(h);
    bool prime = is_umodular_prime(h);
    bool at_oracle_scale = h.size() <= oracle_bound();
    json j{{"four_elements", fe.holds},
           {"local_congruence", lc},
           {"n", h.size()},
           {"umodular_prime", prime}};
    j["four_elements_witness"] =
        fe.witness ? json(std::vector<int>(fe.witness->begin(), fe.witness->end()))
                   : json(nullptr);
    if (at_oracle_scale) {
        auto family = brute_force_umodules(h);
        j["umodule_count"] = family.size();
        j["crossing_family"] = check_crossing_family(family, h.size());
    } else {
        j["umodule_count"] = nullptr;
        j["crossing_family"] = nullptr;
    }
    if (format == "json") {
        emit(out, j.dump(2));
    } else {
        out << "n " << h.size() << "\n";
        out << "local_congruence " << lc << "\n";
        out << "four_elements " << yes_no(fe.holds);
        if (fe.witness) {
            out << " (violated by "
                << join_ints(std::vector<int>(fe.witness->begin(), fe.witness->end())) << ")";
        }
        out << "\n";
        out << "umodular_prime " << yes_no(prime) << "\n";
        if (at_oracle_scale) {
            out << "umodule_count " << j["umodule_count"].get<std::size_t>() << "\n";
            out << "crossing_family " << yes_no(j["crossing_family"].get<bool>()) << "\n";
        }
    }
    return 0;
}

int run_recognize(const Tournament& t, const std::string& format, std::ostream& out) {
    DiamondReport diamond = find_diamond(t);
    bool local = is_locally_transitive(t);
    UDecompTree tree = fast_umodular_tree(build_standard_relation(t));
    bool no_prime = true;
    for (const auto& node : tree.nodes) {
        if (node.type == UNodeType::prime) no_prime = false;
    }
    bool total = is_totally_decomposable(t);
    json j{{"diamond_free", diamond.diamond_free},
           {"locally_transitive", local},
           {"n", t.n},
           {"no_prime_node", no_prime},
           {"totally_decomposable", total}};
    j["diamond_witness"] =
        diamond.witness ? json(std::vector<int>(diamond.witness->begin(), diamond.witness->end()))
                        : json(nullptr);
    if (format == "json") {
        emit(out, j.dump(2));
    } else {
        out << "diamond_free " << yes_no(diamond.diamond_free);
        if (diamond.witness) {
            out << " (witness "
                << join_ints(std::vector<int>(diamond.witness->begin(), diamond.witness->end()))
                << ")";
        }
        out << "\n";
        out << "locally_transitive " << yes_no(local) << "\n";
        out << "no_prime_node " << yes_no(no_prime) << "\n";
        out << "totally_decomposable " << yes_no(total) << "\n";
    }
    return 0;
}

int run_bench(const std::string& op, int n, std::uint64_t seed, int reps, int threads,
              std::ostream& out) {
    using clock = std::chrono::steady_clock;
    out << "op,n,seed,millis\n";
    std::size_t sink = 0;
    for (int rep = 0; rep < reps; ++rep) {
        std::uint64_t rep_seed = seed + static_cast<std::uint64_t>(rep);
        HomogeneousRelation h;
        if (op == "umod-tree" || op == "fast-tree") {
            h = build_standard_relation(random_tournament(n, rep_seed));
        } else {
            h = build_standard_relation(random_graph(n, rep_seed));
        }
        auto start = clock::now();
        if (op == "mu" || op == "mu-naive") {
            Partition p = mu(h, std::vector<int>{0, 1},
                             op == "mu" ? MuAlgorithm::hopcroft : MuAlgorithm::naive);
            sink += p.parts.size();
        } else if (op == "strong-tree") {
            sink += strong_umodules(h, threads).nodes.size();
        } else if (op == "umod-tree") {
            sink += build_umodular_tree(h).nodes.size();
        } else {
            sink += fast_umodular_tree(h).nodes.size();
        }
        auto stop = clock::now();
        double ms = std::chrono::duration<double, std::milli>(stop - start).count();
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.3f", ms);
        out << op << ',' << n << ',' << rep_seed << ',' << buf << "\n";
    }
    if (sink == static_cast<std::size_t>(-1)) out << "#\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"umodular decomposition of homogeneous relations"};
    app.require_subcommand(1);

    std::string input_path = "-";
    std::string format = "json";
    int threads = 1;
    app.add_option("--input,-i", input_path, "input file, '-' for stdin")
        ->capture_default_str();
    app.add_option("--format,-f", format, "output format: json, dot, or text")
        ->check(CLI::IsMember({"json", "dot", "text"}))
        ->capture_default_str();
    app.add_option("--threads,-t", threads, "worker threads where supported")
        ->check(CLI::Range(1, 256))
        ->capture_default_str();

    auto* mu_cmd = app.add_subcommand("mu", "coarsest umodule-compatible partition MU(S)");
    std::string set_text;
    bool mu_naive = false;
    mu_cmd->add_option("--set", set_text, "comma-separated element ids of S")->required();
    mu_cmd->add_flag("--naive", mu_naive, "use the simple quadratic refinement loop");

    auto* strong_cmd = app.add_subcommand("strong-tree", "laminar tree of the strong umodules");

    auto* tree_cmd = app.add_subcommand("umod-tree", "umodular decomposition tree");
    bool opt_fast = false;
    bool opt_generic = false;
    auto* fast_flag =
        tree_cmd->add_flag("--fast", opt_fast, "switch-based quadratic path (local congruence 2)");
    auto* generic_flag =
        tree_cmd->add_flag("--generic", opt_generic, "partition-refinement path");
    fast_flag->excludes(generic_flag);

    auto* seidel_cmd = app.add_subcommand("seidel", "Seidel switch of the relation at a pivot");
    int pivot = 0;
    seidel_cmd->add_option("--pivot", pivot, "pivot element")->required();

    auto* check_cmd = app.add_subcommand("check", "diagnostic report on the input relation");

    auto* tour_cmd = app.add_subcommand("tournament", "tournament decomposition applications");
    tour_cmd->require_subcommand(1);
    auto* rec_cmd = tour_cmd->add_subcommand(
        "recognize", "diamond-free / locally transitive / prime-free report");
    auto* order_cmd =
        tour_cmd->add_subcommand("order", "circular vertex order, starting at vertex 0");
    auto* iso_cmd =
        tour_cmd->add_subcommand("iso", "isomorphism test for totally decomposable tournaments");
    std::string other_path;
    iso_cmd->add_option("--other", other_path, "second tournament input file")->required();
    auto* fvs_cmd =
        tour_cmd->add_subcommand("fvs", "minimum feedback vertex set, locally transitive input");
    auto* ext_cmd = tour_cmd->add_subcommand("extend", "twin/antitwin extension sequence");

    auto* bench_cmd = app.add_subcommand("bench", "CSV timing rows for generated instances");
    std::string bench_op;
    int bench_n = 100;
    std::uint64_t bench_seed = 1;
    int bench_reps = 1;
    bench_cmd->add_option("--op", bench_op, "one of mu, mu-naive, strong-tree, umod-tree, fast-tree")
        ->required()
        ->check(CLI::IsMember({"mu", "mu-naive", "strong-tree", "umod-tree", "fast-tree"}));
    bench_cmd->add_option("--n", bench_n, "instance size")->check(CLI::Range(2, 20000));
    bench_cmd->add_option("--seed", bench_seed, "base seed");
    bench_cmd->add_option("--reps", bench_reps, "repetitions, seeds seed..seed+reps-1")
        ->check(CLI::Range(1, 1000));

    // Let --input/--format/--threads appear after the subcommand name too.
    for (CLI::App* sc : {mu_cmd, strong_cmd, tree_cmd, seidel_cmd, check_cmd, tour_cmd, rec_cmd,
                         order_cmd, iso_cmd, fvs_cmd, ext_cmd, bench_cmd}) {
        sc->fallthrough();
    }

    try {
        std::vector<const char*> argv;
        argv.reserve(args.size() + 1);
        argv.push_back("umod");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    }

    try {
        if (*bench_cmd) return run_bench(bench_op, bench_n, bench_seed, bench_reps, threads, out);

        InputDocument doc =
            input_path == "-" ? parse_input(in, "<stdin>") : parse_input_file(input_path);
        HomogeneousRelation h = doc.to_relation();

        if (*mu_cmd) return run_mu(h, set_text, mu_naive, format, out);
        if (*strong_cmd) return run_strong_tree(h, threads, format, out);
        if (*tree_cmd) return run_umod_tree(h, opt_fast, opt_generic, format, out);
        if (*seidel_cmd) return run_seidel(h, pivot, format, out);
        if (*check_cmd) return run_check(h, format, out);

        if (*tour_cmd) {
            if (doc.kind != InputKind::tournament) {
                throw PreconditionError("tournament subcommands require tournament input");
            }
            const Tournament& t = doc.tournament;
            if (*rec_cmd) return run_recognize(t, format, out);
            if (*order_cmd) {
                reject_dot(format, "tournament order");
                std::vector<int> order = circular_order(t);
                if (format == "json") {
                    emit(out, json(order).dump());
                } else {
                    out << join_ints(order) << "\n";
                }
                return 0;
            }
            if (*iso_cmd) {
                reject_dot(format, "tournament iso");
                InputDocument other = parse_input_file(other_path);
                if (other.kind != InputKind::tournament) {
                    throw PreconditionError("--other input must be a tournament");
                }
                bool same = isomorphic_decomposable(t, other.tournament);
                if (format == "json") {
                    emit(out, json{{"isomorphic", same}}.dump());
                } else {
                    out << yes_no(same) << "\n";
                }
                return 0;
            }
            if (*fvs_cmd) {
                reject_dot(format, "tournament fvs");
                std::vector<int> removed = feedback_vertex_set(t);
                if (format == "json") {
                    emit(out, json(removed).dump());
                } else {
                    out << join_ints(removed) << "\n";
                }
                return 0;
            }
            if (*ext_cmd) {
                reject_dot(format, "tournament extend");
                auto seq = extension_sequence(t);
                json j{{"decomposable", seq.has_value()}, {"n", t.n}};
                if (seq) {
                    j["start"] = seq->start;
                    json steps = json::array();
                    for (const auto& step : seq->steps) {
                        steps.push_back(
                            json{{"added", step.added},
                                 {"added_beats_anchor", step.added_beats_anchor},
                                 {"anchor", step.anchor},
                                 {"kind", step.kind == ExtensionStep::Kind::twin ? "twin"
                                                                                 : "antitwin"}});
                    }
                    j["steps"] = std::move(steps);
                }
                if (format == "json") {
                    emit(out, j.dump(2));
                } else if (!seq) {
                    out << "not decomposable\n";
                } else {
                    out << "start " << seq->start << "\n";
                    for (const auto& step : seq->steps) {
                        out << (step.kind == ExtensionStep::Kind::twin ? "twin " : "antitwin ")
                            << step.added << " of " << step.anchor << " arc "
                            << (step.added_beats_anchor ? "out" : "in") << "\n";
                    }
                }
                return 0;
            }
        }
        throw Error("no subcommand dispatched");
    } catch (const ParseError& e) {
        err << json{{"col", e.col}, {"error", "parse"}, {"line", e.line}, {"message", e.what()}}
                   .dump()
            << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        err << json{{"error", "precondition"}, {"message", e.what()}}.dump() << "\n";
        return 3;
    } catch (const Error& e) {
        err << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
}

}  // namespace umod
