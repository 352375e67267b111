// Acceptance gate: one line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "umod/apps.hpp"
#include "umod/core.hpp"
#include "umod/gen.hpp"
#include "umod/laminar.hpp"
#include "umod/oracle.hpp"
#include "umod/partition.hpp"
#include "umod/seidel.hpp"
#include "umod/udecomp.hpp"

using namespace umod;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

void report(int index, const Outcome& o, int& failures) {
    std::cout << "criterion " << index << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail
              << ")" << std::endl;
    if (!o.pass) ++failures;
}

std::string fmt(double v, int digits = 1) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

// mixed corpus entry: graphs, tournaments, and low-congruence relations
HomogeneousRelation mixed_relation(int n, std::uint64_t seed) {
    switch (seed % 3) {
        case 0: return build_standard_relation(random_graph(n, seed));
        case 1: return build_standard_relation(random_tournament(n, seed));
        default: return random_relation(n, 2 + static_cast<int>(seed % 3), seed);
    }
}

bool overlaps(const std::vector<int>& a, const std::vector<int>& b) {
    bool inter = false;
    bool a_minus_b = false;
    bool b_minus_a = false;
    for (int x : a) {
        if (std::find(b.begin(), b.end(), x) != b.end()) {
            inter = true;
        } else {
            a_minus_b = true;
        }
    }
    for (int x : b) {
        if (std::find(a.begin(), a.end(), x) == a.end()) b_minus_a = true;
    }
    return inter && a_minus_b && b_minus_a;
}

// non-trivial oracle members overlapping no other non-trivial member
std::vector<std::vector<int>> brute_strong(const HomogeneousRelation& h) {
    int n = h.size();
    auto family = brute_force_umodules(h);
    std::vector<std::vector<int>> nontrivial;
    for (const auto& u : family) {
        if (!is_trivial_subset(n, static_cast<int>(u.size()))) nontrivial.push_back(u);
    }
    std::vector<std::vector<int>> strong;
    for (const auto& u : nontrivial) {
        bool ok = true;
        for (const auto& v : nontrivial) {
            if (&u != &v && overlaps(u, v)) {
                ok = false;
                break;
            }
        }
        if (ok) strong.push_back(u);
    }
    std::sort(strong.begin(), strong.end());
    return strong;
}

std::vector<std::vector<int>> tree_internals(const LaminarTree& t) {
    std::vector<std::vector<int>> out;
    for (const auto& node : t.nodes) {
        if (!is_trivial_subset(t.n, static_cast<int>(node.elements.size()))) {
            out.push_back(node.elements);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Outcome criterion_1() {
    auto start = clock_type::now();
    int cases = 0;
    for (std::uint64_t seed = 0; seed < 250; ++seed) {
        int n = 4 + static_cast<int>(seed % 6);
        auto h = mixed_relation(n, seed);
        if (tree_internals(strong_umodules(h)) != brute_strong(h)) {
            return {false, "strong umodules differ from the oracle at seed " +
                               std::to_string(seed)};
        }
        ++cases;
    }
    double elapsed = seconds_since(start);
    return {cases >= 200 && elapsed < 60.0,
            std::to_string(cases) + " relations matched the oracle in " + fmt(elapsed) + " s"};
}

// ---- criterion 2 helpers -------------------------------------------------

void all_partitions_rec(const std::vector<int>& elems, std::size_t idx,
                        std::vector<std::vector<int>>& cur,
                        std::vector<std::vector<std::vector<int>>>& out) {
    if (idx == elems.size()) {
        out.push_back(cur);
        return;
    }
    std::size_t blocks = cur.size();
    for (std::size_t b = 0; b < blocks; ++b) {
        cur[b].push_back(elems[idx]);
        all_partitions_rec(elems, idx + 1, cur, out);
        cur[b].pop_back();
    }
    cur.push_back({elems[idx]});
    all_partitions_rec(elems, idx + 1, cur, out);
    cur.pop_back();
}

std::vector<std::vector<std::vector<int>>> all_partitions(const std::vector<int>& elems) {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> cur;
    all_partitions_rec(elems, 0, cur, out);
    return out;
}

bool refines(const std::vector<std::vector<int>>& fine, const std::vector<std::vector<int>>& coarse,
             int n) {
    std::vector<int> owner(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        for (int e : coarse[i]) owner[static_cast<std::size_t>(e)] = static_cast<int>(i);
    }
    for (const auto& block : fine) {
        for (int e : block) {
            if (owner[static_cast<std::size_t>(e)] != owner[static_cast<std::size_t>(block[0])]) {
                return false;
            }
        }
    }
    return true;
}

std::vector<std::vector<int>> parts_of(Partition p) {
    p.canonicalize();
    return p.parts;
}

Outcome criterion_2() {
    int pairs = 0;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        int n = 4 + static_cast<int>(seed % 6);
        auto h = mixed_relation(n, seed * 31 + 7);
        std::vector<int> s;
        std::vector<int> rest;
        std::uint64_t mask = (seed * 2654435761ull) % ((1ull << n) - 2) + 1;
        for (int i = 0; i < n; ++i) {
            if ((mask >> i) & 1) {
                s.push_back(i);
            } else {
                rest.push_back(i);
            }
        }
        auto got = parts_of(mu(h, s));
        for (const auto& part : got) {
            if (!is_umodule(h, part)) {
                return {false, "mu produced a non-umodule part at seed " + std::to_string(seed)};
            }
        }
        if (!refines(got, {s, rest}, n)) {
            return {false, "mu does not refine the seed split at seed " + std::to_string(seed)};
        }
        // every umodule partition refining the split must refine mu, which
        // makes mu the coarsest such partition
        for (const auto& ps : all_partitions(s)) {
            for (const auto& pr : all_partitions(rest)) {
                auto combined = ps;
                combined.insert(combined.end(), pr.begin(), pr.end());
                bool all_umod = true;
                for (const auto& part : combined) {
                    if (!is_umodule(h, part)) {
                        all_umod = false;
                        break;
                    }
                }
                if (all_umod && !refines(combined, got, n)) {
                    return {false, "a coarser umodule partition exists at seed " +
                                       std::to_string(seed)};
                }
            }
        }
        ++pairs;
    }
    int agree = 0;
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        int n = 3 + static_cast<int>(seed % 38);
        auto h = mixed_relation(n, seed * 97 + 1);
        std::vector<int> s{0, 1 + static_cast<int>(seed) % (n - 1)};
        if (s[1] == 0) s.pop_back();
        if (parts_of(mu(h, s, MuAlgorithm::naive)) != parts_of(mu(h, s, MuAlgorithm::hopcroft))) {
            return {false, "naive and hopcroft outputs differ at seed " + std::to_string(seed)};
        }
        ++agree;
    }
    return {pairs >= 500, std::to_string(pairs) + " seed splits coarsest-checked, " +
                              std::to_string(agree) + " naive/hopcroft agreements up to n=40"};
}

// ---- criterion 3 ---------------------------------------------------------

// bipartition key: the side of the split containing element 0
std::set<std::vector<int>> bipartition_keys(const std::vector<std::vector<int>>& family, int n) {
    std::set<std::vector<int>> keys;
    for (const auto& u : family) {
        if (u.empty() || static_cast<int>(u.size()) == n) continue;
        if (std::find(u.begin(), u.end(), 0) != u.end()) {
            keys.insert(u);
        } else {
            std::vector<int> other;
            Bitset inside = Bitset::from(u, n);
            for (int x = 0; x < n; ++x) {
                if (!inside.test(x)) other.push_back(x);
            }
            keys.insert(other);
        }
    }
    return keys;
}

Outcome criterion_3() {
    int cases = 0;
    int general = 0;
    std::uint64_t seed = 0;
    while (cases < 120 && seed < 200000) {
        std::uint64_t s = seed++;
        HomogeneousRelation h;
        switch (s % 4) {
            case 0: h = build_standard_relation(random_graph(4 + static_cast<int>(s % 6), s)); break;
            case 1:
                h = build_standard_relation(random_tournament(4 + static_cast<int>(s % 6), s));
                break;
            case 2: h = random_relation(4, 3, s); break;
            default: h = random_relation(5, 2, s); break;
        }
        if (!check_four_elements(h).holds) continue;
        auto tree = build_umodular_tree(h);
        auto got = bipartition_keys(enumerate_umodules(tree), h.size());
        auto want = bipartition_keys(brute_force_umodules(h), h.size());
        if (got != want) {
            return {false, "tree family differs from the oracle at seed " + std::to_string(s)};
        }
        if (s % 4 >= 2) ++general;
        ++cases;
    }
    return {cases >= 100, std::to_string(cases) + " four-elements relations matched, " +
                              std::to_string(general) + " beyond graphs and tournaments"};
}

Outcome criterion_4() {
    int cases = 0;
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        int n = 4 + static_cast<int>(seed % 6);
        auto h = seed % 2 == 0 ? build_standard_relation(random_graph(n, seed))
                               : build_standard_relation(random_tournament(n, seed));
        for (int s = 0; s < n; ++s) {
            if (!verify_switch_correspondence(h, s)) {
                return {false, "switch correspondence failed at seed " + std::to_string(seed) +
                                   " pivot " + std::to_string(s)};
            }
        }
        ++cases;
    }
    return {cases >= 100,
            std::to_string(cases) + " relations, every pivot, umodule/module match exhaustive"};
}

Outcome criterion_5() {
    int equal = 0;
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        int n = 4 + static_cast<int>(seed % 6);
        auto h = seed % 2 == 0 ? build_standard_relation(random_graph(n, seed))
                               : build_standard_relation(random_tournament(n, seed));
        if (!(fast_umodular_tree(h) == build_umodular_tree(h))) {
            return {false, "fast and generic trees differ at seed " + std::to_string(seed)};
        }
        ++equal;
    }
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        int n = 10 + static_cast<int>(seed) * 2;
        auto h = seed % 2 == 0 ? build_standard_relation(random_graph(n, seed + 1000))
                               : build_standard_relation(random_tournament(n, seed + 1000));
        if (!(fast_umodular_tree(h) == build_umodular_tree(h))) {
            return {false, "fast and generic trees differ at n=" + std::to_string(n)};
        }
        ++equal;
    }

    auto slope = [](const std::vector<int>& sizes, const std::vector<double>& millis) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int k = static_cast<int>(sizes.size());
        for (int i = 0; i < k; ++i) {
            double x = std::log(static_cast<double>(sizes[i]));
            double y = std::log(millis[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        return (k * sxy - sx * sy) / (k * sxx - sx * sx);
    };
    auto best_time = [](const HomogeneousRelation& h, bool fast) {
        double best = 1e18;
        for (int rep = 0; rep < 3; ++rep) {
            auto t0 = clock_type::now();
            auto tree = fast ? fast_umodular_tree(h) : build_umodular_tree(h);
            double ms = std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
            if (tree.n != h.size()) return -1.0;
            best = std::min(best, ms);
        }
        return best;
    };

    std::vector<int> fast_sizes{200, 400, 800};
    std::vector<double> fast_ms;
    for (int n : fast_sizes) {
        fast_ms.push_back(best_time(build_standard_relation(random_tournament(n, 42)), true));
    }
    std::vector<int> gen_sizes{40, 80, 160};
    std::vector<double> gen_ms;
    for (int n : gen_sizes) {
        gen_ms.push_back(best_time(build_standard_relation(random_tournament(n, 42)), false));
    }
    double fast_exp = slope(fast_sizes, fast_ms);
    double gen_exp = slope(gen_sizes, gen_ms);
    bool ok = fast_exp <= 2.4 && gen_exp <= 4.4;
    return {ok, std::to_string(equal) + " tree equalities; fast exponent " + fmt(fast_exp, 2) +
                    " <= 2.4, generic exponent " + fmt(gen_exp, 2) + " <= 4.4"};
}

Outcome criterion_6() {
    auto h = build_standard_relation(random_graph(2000, 11));
    auto t0 = clock_type::now();
    Partition p = mu(h, std::vector<int>{0, 1}, MuAlgorithm::hopcroft);
    double mu_s = seconds_since(t0);
    if (!p.valid()) return {false, "mu returned an invalid partition"};

    auto h2 = build_standard_relation(random_graph(120, 12));
    auto t1 = clock_type::now();
    LaminarTree tree = strong_umodules(h2);
    double strong_s = seconds_since(t1);
    if (tree.n != 120) return {false, "strong umodule tree has the wrong ground set"};

    bool ok = mu_s < 10.0 && strong_s < 120.0;
    return {ok, "mu n=2000 in " + fmt(mu_s, 2) + " s < 10 s; strong umodules n=120 in " +
                    fmt(strong_s, 2) + " s < 120 s"};
}

// ---- criterion 7 ---------------------------------------------------------

Tournament tournament_from_mask(int n, std::uint64_t mask) {
    Tournament t(n);
    int bit = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++bit) {
            if ((mask >> bit) & 1) {
                t.set_arc(i, j);
            } else {
                t.set_arc(j, i);
            }
        }
    }
    return t;
}

bool tree_has_prime(const UDecompTree& t) {
    for (const auto& node : t.nodes) {
        if (node.type == UNodeType::prime) return true;
    }
    return false;
}

std::optional<std::string> check_equivalence(const Tournament& t) {
    bool diamond_free = find_diamond(t).diamond_free;
    bool local = is_locally_transitive(t);
    bool no_prime = !tree_has_prime(fast_umodular_tree(build_standard_relation(t)));
    auto seq = extension_sequence(t);
    if (diamond_free != local || local != no_prime || no_prime != seq.has_value()) {
        return "diamond_free=" + std::to_string(diamond_free) +
               " locally_transitive=" + std::to_string(local) +
               " no_prime=" + std::to_string(no_prime) +
               " extension=" + std::to_string(seq.has_value());
    }
    if (seq && replay_extension_sequence(t.n, *seq).beats != t.beats) return "replay mismatch";
    return std::nullopt;
}

Outcome criterion_7() {
    std::uint64_t exhaustive = 0;
    for (int n = 1; n <= 6; ++n) {
        int bits = n * (n - 1) / 2;
        for (std::uint64_t mask = 0; mask < (1ull << bits); ++mask) {
            Tournament t = tournament_from_mask(n, mask);
            if (auto bad = check_equivalence(t)) {
                return {false, "n=" + std::to_string(n) + " mask=" + std::to_string(mask) + ": " +
                                   *bad};
            }
            ++exhaustive;
        }
    }
    std::uint64_t sampled = 0;
    for (std::uint64_t seed = 0; seed < 70000; ++seed) {
        if (auto bad = check_equivalence(random_tournament(7, seed))) {
            return {false, "sampled n=7 seed=" + std::to_string(seed) + ": " + *bad};
        }
        ++sampled;
    }
    for (std::uint64_t seed = 0; seed < 30000; ++seed) {
        if (auto bad = check_equivalence(random_locally_transitive_tournament(7, seed))) {
            return {false, "lt n=7 seed=" + std::to_string(seed) + ": " + *bad};
        }
        ++sampled;
    }
    return {sampled >= 100000, std::to_string(exhaustive) + " tournaments exhaustive to n=6, " +
                                   std::to_string(sampled) + " sampled at n=7, zero discrepancies"};
}

Outcome criterion_8() {
    int cases = 0;
    for (std::uint64_t seed = 0; seed < 240; ++seed) {
        int n = 4 + static_cast<int>(seed % 7);
        Tournament t = random_tournament(n, seed);
        UDecompTree tree = fast_umodular_tree(build_standard_relation(t));
        for (const auto& node : tree.nodes) {
            if (node.type == UNodeType::complete) {
                return {false, "complete node in a tournament tree at seed " +
                                   std::to_string(seed)};
            }
        }
        BigUint count = count_umodules(tree);
        if (!count.fits_u64() ||
            count.to_u64() > static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n + 2)) {
            return {false, "umodule count exceeds n^2+2n at seed " + std::to_string(seed)};
        }
        ++cases;
    }
    return {cases >= 200,
            std::to_string(cases) + " tournaments: no complete node, count <= n^2+2n"};
}

// ---- criterion 9 ---------------------------------------------------------

UndirectedGraph graph_from_mask(int n, std::uint64_t mask) {
    UndirectedGraph g(n);
    int bit = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++bit) {
            if ((mask >> bit) & 1) g.add_edge(i, j);
        }
    }
    return g;
}

Outcome criterion_9() {
    std::uint64_t exhaustive = 0;
    for (int n = 1; n <= 6; ++n) {
        int bits = n * (n - 1) / 2;
        for (std::uint64_t mask = 0; mask < (1ull << bits); ++mask) {
            UndirectedGraph g = graph_from_mask(n, mask);
            if (is_totally_decomposable(g) != obstruction_free(g)) {
                return {false,
                        "n=" + std::to_string(n) + " mask=" + std::to_string(mask) + " disagrees"};
            }
            ++exhaustive;
        }
    }
    std::uint64_t sampled = 0;
    for (std::uint64_t seed = 0; seed < 100000; ++seed) {
        UndirectedGraph g = random_graph(7, seed);
        if (is_totally_decomposable(g) != obstruction_free(g)) {
            return {false, "sampled n=7 seed=" + std::to_string(seed) + " disagrees"};
        }
        ++sampled;
    }
    return {sampled >= 100000, std::to_string(exhaustive) + " graphs exhaustive to n=6, " +
                                   std::to_string(sampled) +
                                   " sampled at n=7, obstruction equivalence holds"};
}

// ---- criterion 10 --------------------------------------------------------

// a tournament is acyclic exactly when its out-degrees are pairwise distinct
bool kept_acyclic(const Tournament& t, std::uint32_t removed_mask) {
    std::vector<int> kept;
    for (int v = 0; v < t.n; ++v) {
        if (!((removed_mask >> v) & 1)) kept.push_back(v);
    }
    std::vector<int> degs;
    for (int v : kept) {
        int d = 0;
        for (int w : kept) {
            if (w != v && t.arc(v, w)) ++d;
        }
        degs.push_back(d);
    }
    std::sort(degs.begin(), degs.end());
    for (std::size_t i = 0; i < degs.size(); ++i) {
        if (degs[i] != static_cast<int>(i)) return false;
    }
    return true;
}

int brute_min_fvs(const Tournament& t) {
    for (int k = 0; k <= t.n; ++k) {
        for (std::uint32_t mask = 0; mask < (1u << t.n); ++mask) {
            if (__builtin_popcount(mask) == k && kept_acyclic(t, mask)) return k;
        }
    }
    return t.n;
}

Outcome criterion_10() {
    int cases = 0;
    for (std::uint64_t seed = 0; seed < 220; ++seed) {
        int n = 3 + static_cast<int>(seed % 7);
        Tournament t = random_locally_transitive_tournament(n, seed);
        std::vector<int> removed = feedback_vertex_set(t);
        std::uint32_t mask = 0;
        for (int v : removed) mask |= 1u << v;
        if (!kept_acyclic(t, mask)) {
            return {false, "kept set is cyclic at seed " + std::to_string(seed)};
        }
        int best = brute_min_fvs(t);
        if (static_cast<int>(removed.size()) != best) {
            return {false, "fvs size " + std::to_string(removed.size()) + " differs from optimum " +
                               std::to_string(best) + " at seed " + std::to_string(seed) + " (n=" +
                               std::to_string(n) + ")"};
        }
        ++cases;
    }
    return {cases >= 200, std::to_string(cases) + " locally transitive tournaments at the optimum"};
}

// ---- criterion 11 --------------------------------------------------------

bool factorial_isomorphic(const Tournament& a, const Tournament& b) {
    if (a.n != b.n) return false;
    std::vector<int> perm(static_cast<std::size_t>(a.n));
    for (int i = 0; i < a.n; ++i) perm[static_cast<std::size_t>(i)] = i;
    do {
        bool match = true;
        for (int u = 0; u < a.n && match; ++u) {
            for (int v = u + 1; v < a.n && match; ++v) {
                if (a.arc(u, v) !=
                    b.arc(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)])) {
                    match = false;
                }
            }
        }
        if (match) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

Outcome criterion_11() {
    int relabeled = 0;
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        int n = 3 + static_cast<int>(seed % 10);
        Tournament t = random_locally_transitive_tournament(n, seed);
        Tournament image = relabel(t, random_permutation(n, seed * 13 + 5));
        if (!isomorphic_decomposable(t, image)) {
            return {false, "relabeled pair reported non-isomorphic at seed " +
                               std::to_string(seed)};
        }
        ++relabeled;
    }
    int non_iso = 0;
    int oracle_agree = 0;
    std::uint64_t seed = 0;
    while (non_iso < 100 && seed < 100000) {
        std::uint64_t s = seed++;
        int n = 4 + static_cast<int>(s % 5);
        Tournament a = random_locally_transitive_tournament(n, s * 2 + 1);
        Tournament b = random_locally_transitive_tournament(n, s * 2 + 2);
        bool want = factorial_isomorphic(a, b);
        bool got = isomorphic_decomposable(a, b);
        if (got != want) {
            return {false, "disagrees with the factorial oracle at seed " + std::to_string(s)};
        }
        ++oracle_agree;
        if (!want) ++non_iso;
    }
    return {relabeled >= 100 && non_iso >= 100,
            std::to_string(relabeled) + " relabeled pairs true, " + std::to_string(non_iso) +
                " verified non-isomorphic pairs false, " + std::to_string(oracle_agree) +
                " oracle comparisons"};
}

Outcome criterion_12() {
    std::uint64_t cases = 0;
    for (int n = 1; n <= 6; ++n) {
        int bits = n * (n - 1) / 2;
        for (std::uint64_t mask = 0; mask < (1ull << bits); ++mask) {
            UndirectedGraph g = graph_from_mask(n, mask);
            if (check_threshold_umodule_property(g) != is_threshold_graph(g)) {
                return {false,
                        "n=" + std::to_string(n) + " mask=" + std::to_string(mask) + " disagrees"};
            }
            ++cases;
        }
    }
    return {true, std::to_string(cases) + " graphs to n=6, threshold recognizer agreement"};
}

}  // namespace

int main() {
    int failures = 0;
    report(1, criterion_1(), failures);
    report(2, criterion_2(), failures);
    report(3, criterion_3(), failures);
    report(4, criterion_4(), failures);
    report(5, criterion_5(), failures);
    report(6, criterion_6(), failures);
    report(7, criterion_7(), failures);
    report(8, criterion_8(), failures);
    report(9, criterion_9(), failures);
    report(10, criterion_10(), failures);
    report(11, criterion_11(), failures);
    report(12, criterion_12(), failures);
    if (failures) {
        std::cout << failures << " criteria failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
