#include "umod/apps.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <unordered_set>
#include <utility>

#include "umod/seidel.hpp"
#include "umod/udecomp.hpp"

namespace umod {

namespace {

std::vector<Bitset> in_neighbors(const Tournament& t) {
    std::vector<Bitset> in(static_cast<std::size_t>(t.n), Bitset(t.n));
    for (int u = 0; u < t.n; ++u) {
        for (int v : t.beats[static_cast<std::size_t>(u)].to_vector()) in[v].set(u);
    }
    return in;
}

// A subtournament is transitive exactly when its internal out-degrees are
// pairwise distinct.
bool induces_transitive(const Tournament& t, const Bitset& s) {
    const int k = static_cast<int>(s.count());
    if (k <= 2) return true;
    std::vector<char> seen(static_cast<std::size_t>(k), 0);
    for (int v : s.to_vector()) {
        int d = static_cast<int>((t.beats[static_cast<std::size_t>(v)] & s).count());
        if (seen[static_cast<std::size_t>(d)]) return false;
        seen[static_cast<std::size_t>(d)] = 1;
    }
    return true;
}

bool tree_has_prime(const UDecompTree& tree) {
    for (const auto& node : tree.nodes) {
        if (node.type == UNodeType::prime) return true;
    }
    return false;
}

std::optional<BijoinWitness> witness_from_sides(const std::vector<int>& inside, int n,
                                                const std::vector<Bitset>& toward,
                                                const Bitset& inside_set) {
    // toward[i]: outside vertices the i-th inside vertex is joined to (graph
    // neighbors, or out-neighbors for tournaments)
    Bitset outside = inside_set.complemented();
    Bitset a = toward.front();
    Bitset b = outside ^ a;
    bool split = a.any() && b.any();
    for (const auto& tw : toward) {
        if (split) {
            if (!(tw == a || tw == b)) return std::nullopt;
        } else {
            if (tw.any() && tw != outside) return std::nullopt;
        }
    }
    BijoinWitness w;
    w.inside = inside;
    std::sort(w.inside.begin(), w.inside.end());
    Bitset c = outside;
    Bitset d(n);
    if (split) {
        int low = outside.find_first();
        c = a.test(low) ? a : b;
        d = outside ^ c;
    }
    w.side_c = c.to_vector();
    w.side_d = d.to_vector();
    w.joined_to_c.reserve(inside.size());
    for (std::size_t i = 0; i < inside.size(); ++i) {
        const Bitset& tw = toward[i];
        w.joined_to_c.push_back(split ? tw == c : tw.any());
    }
    // keep the flag list aligned with the sorted inside list
    std::vector<std::pair<int, char>> paired;
    paired.reserve(inside.size());
    for (std::size_t i = 0; i < inside.size(); ++i) paired.emplace_back(inside[i], w.joined_to_c[i]);
    std::sort(paired.begin(), paired.end());
    for (std::size_t i = 0; i < paired.size(); ++i) w.joined_to_c[i] = paired[i].second;
    return w;
}

Bitset checked_inside(int n, const std::vector<int>& inside) {
    Bitset s(n);
    for (int v : inside) {
        if (v < 0 || v >= n) throw PreconditionError("vertex id out of range");
        if (s.test(v)) throw PreconditionError("duplicate vertex in the inside set");
        s.set(v);
    }
    if (!s.any()) throw PreconditionError("inside set must be non-empty");
    return s;
}

}  // namespace

std::optional<BijoinWitness> bijoin_witness(const UndirectedGraph& g,
                                            const std::vector<int>& inside) {
    Bitset s = checked_inside(g.n, inside);
    Bitset outside = s.complemented();
    if (!outside.any()) {
        BijoinWitness w;
        w.inside = inside;
        std::sort(w.inside.begin(), w.inside.end());
        w.joined_to_c.assign(inside.size(), 0);
        return w;
    }
    std::vector<Bitset> toward;
    toward.reserve(inside.size());
    for (int v : inside) toward.push_back(g.adj[static_cast<std::size_t>(v)] & outside);
    return witness_from_sides(inside, g.n, toward, s);
}

std::optional<BijoinWitness> bijoin_witness(const Tournament& t, const std::vector<int>& inside) {
    Bitset s = checked_inside(t.n, inside);
    Bitset outside = s.complemented();
    if (!outside.any()) {
        BijoinWitness w;
        w.inside = inside;
        std::sort(w.inside.begin(), w.inside.end());
        w.joined_to_c.assign(inside.size(), 0);
        return w;
    }
    std::vector<Bitset> toward;
    toward.reserve(inside.size());
    for (int v : inside) toward.push_back(t.beats[static_cast<std::size_t>(v)] & outside);
    return witness_from_sides(inside, t.n, toward, s);
}

DiamondReport find_diamond(const Tournament& t) {
    const int n = t.n;
    std::vector<Bitset> in = in_neighbors(t);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            for (int c = b + 1; c < n; ++c) {
                int x = a, y = b, z = c;
                if (t.arc(a, b) && t.arc(b, c) && t.arc(c, a)) {
                    // keep (x, y, z) as the cycle orientation
                } else if (t.arc(a, c) && t.arc(c, b) && t.arc(b, a)) {
                    y = c;
                    z = b;
                } else {
                    continue;
                }
                Bitset into = t.beats[static_cast<std::size_t>(x)] &
                              t.beats[static_cast<std::size_t>(y)] &
                              t.beats[static_cast<std::size_t>(z)];
                if (into.any()) {
                    return {false, std::array<int, 4>{x, y, z, into.find_first()}};
                }
                Bitset from = in[static_cast<std::size_t>(x)] & in[static_cast<std::size_t>(y)] &
                              in[static_cast<std::size_t>(z)];
                if (from.any()) {
                    return {false, std::array<int, 4>{x, y, z, from.find_first()}};
                }
            }
        }
    }
    return {true, std::nullopt};
}

bool is_locally_transitive(const Tournament& t) {
    std::vector<Bitset> in = in_neighbors(t);
    for (int x = 0; x < t.n; ++x) {
        if (!induces_transitive(t, t.beats[static_cast<std::size_t>(x)])) return false;
        if (!induces_transitive(t, in[static_cast<std::size_t>(x)])) return false;
    }
    return true;
}

bool is_totally_decomposable(const Tournament& t) {
    bool no_diamond = find_diamond(t).diamond_free;
    bool local = is_locally_transitive(t);
    bool no_prime = !tree_has_prime(fast_umodular_tree(build_standard_relation(t)));
    if (no_diamond != local || local != no_prime) {
        throw Error("decomposability cross-check failed");
    }
    return no_diamond;
}

bool is_totally_decomposable(const UndirectedGraph& g, int bound) {
    const int n = g.n;
    if (n > bound) {
        throw PreconditionError("ground set of " + std::to_string(n) +
                                " vertices exceeds the exhaustive bound " + std::to_string(bound));
    }
    if (n < 4) return true;
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u) {
        for (int v : g.adj[static_cast<std::size_t>(u)].to_vector()) adj[u] |= 1u << v;
    }
    auto umodule_inside = [&](std::uint32_t u, std::uint32_t out) {
        int rep = std::countr_zero(u);
        std::uint32_t a = adj[static_cast<std::size_t>(rep)] & out;
        std::uint32_t b = out ^ a;
        for (std::uint32_t rest = u & (u - 1); rest; rest &= rest - 1) {
            int v = std::countr_zero(rest);
            std::uint32_t av = adj[static_cast<std::size_t>(v)] & out;
            if (av != a && av != b) return false;
        }
        return true;
    };
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        int k = std::popcount(mask);
        if (k < 4) continue;
        bool found = false;
        for (std::uint32_t sub = mask & (mask - 1); sub; sub = (sub - 1) & mask) {
            int size = std::popcount(sub);
            if (size < 2 || size > k - 2) continue;
            if (umodule_inside(sub, mask ^ sub)) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

namespace {

int pair_bit(int i, int j) {
    static constexpr int base[5] = {0, 4, 7, 9, 10};
    return base[i] + (j - i - 1);
}

const std::unordered_set<std::uint16_t>& obstruction_codes() {
    static const std::unordered_set<std::uint16_t> codes = [] {
        const std::vector<std::vector<std::pair<int, int>>> patterns = {
            {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}},                          // C5
            {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 4}},                          // bull
            {{0, 1}, {1, 2}, {2, 3}, {4, 0}, {4, 1}, {4, 2}, {4, 3}},          // gem
            {{0, 1}, {1, 2}, {2, 3}},                                          // co-gem
        };
        std::unordered_set<std::uint16_t> out;
        for (const auto& edges : patterns) {
            bool adj[5][5] = {};
            for (auto [u, v] : edges) adj[u][v] = adj[v][u] = true;
            std::array<int, 5> perm{0, 1, 2, 3, 4};
            do {
                std::uint16_t code = 0;
                for (int i = 0; i < 5; ++i) {
                    for (int j = i + 1; j < 5; ++j) {
                        if (adj[perm[i]][perm[j]]) code |= std::uint16_t{1} << pair_bit(i, j);
                    }
                }
                out.insert(code);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        return out;
    }();
    return codes;
}

}  // namespace

bool obstruction_free(const UndirectedGraph& g) {
    const int n = g.n;
    if (n < 5) return true;
    const auto& bad = obstruction_codes();
    std::array<int, 5> v{};
    for (v[0] = 0; v[0] < n; ++v[0]) {
        for (v[1] = v[0] + 1; v[1] < n; ++v[1]) {
            for (v[2] = v[1] + 1; v[2] < n; ++v[2]) {
                for (v[3] = v[2] + 1; v[3] < n; ++v[3]) {
                    for (v[4] = v[3] + 1; v[4] < n; ++v[4]) {
                        std::uint16_t code = 0;
                        for (int i = 0; i < 5; ++i) {
                            for (int j = i + 1; j < 5; ++j) {
                                if (g.has_edge(v[i], v[j])) {
                                    code |= std::uint16_t{1} << pair_bit(i, j);
                                }
                            }
                        }
                        if (bad.count(code)) return false;
                    }
                }
            }
        }
    }
    return true;
}

std::vector<int> circular_order(const Tournament& t) {
    const int n = t.n;
    if (n < 3) throw PreconditionError("circular order needs at least three vertices");
    if (!is_totally_decomposable(t)) {
        throw PreconditionError("tournament is not totally decomposable");
    }
    // In a round layout every vertex beats exactly the vertices that follow it,
    // so its circle successor is the source of its (transitive) out-neighborhood.
    // At most one vertex, the sink, has no successor; the walk must reach it last.
    std::vector<int> succ(static_cast<std::size_t>(n), -1);
    Bitset is_succ(n);
    for (int v = 0; v < n; ++v) {
        const Bitset& out = t.beats[static_cast<std::size_t>(v)];
        int d = out.count();
        if (d == 0) continue;
        int src = -1;
        for (int w : out.to_vector()) {
            if ((t.beats[static_cast<std::size_t>(w)] & out).count() == d - 1) {
                src = w;
                break;
            }
        }
        if (src < 0) throw Error("out-neighborhood of a decomposable tournament lost its source");
        succ[static_cast<std::size_t>(v)] = src;
        is_succ.set(src);
    }
    int start = 0;
    if (static_cast<int>(is_succ.count()) == n - 1) start = is_succ.complemented().find_first();
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    Bitset seen(n);
    for (int cur = start; order.size() < static_cast<std::size_t>(n); cur = succ[static_cast<std::size_t>(cur)]) {
        if (cur < 0 || seen.test(cur)) throw Error("successor walk failed to close the circle");
        order.push_back(cur);
        seen.set(cur);
    }
    auto zero = std::find(order.begin(), order.end(), 0);
    std::rotate(order.begin(), zero, order.end());

    // every vertex must beat exactly the out-degree many vertices after it
    for (int i = 0; i < n; ++i) {
        int v = order[static_cast<std::size_t>(i)];
        const Bitset& out = t.beats[static_cast<std::size_t>(v)];
        int d = out.count();
        for (int j = 1; j <= d; ++j) {
            if (!out.test(order[static_cast<std::size_t>((i + j) % n)])) {
                throw Error("circular order violates out-neighbor consecutivity");
            }
        }
    }
    return order;
}

std::optional<ExtensionSequence> extension_sequence(const Tournament& t) {
    const int n = t.n;
    if (n <= 0) throw PreconditionError("empty tournament");
    Bitset alive = Bitset(n).complemented();
    std::vector<ExtensionStep> steps;
    while (alive.count() > 1) {
        std::vector<int> members = alive.to_vector();
        bool found = false;
        for (std::size_t i = 0; i < members.size() && !found; ++i) {
            for (std::size_t j = i + 1; j < members.size() && !found; ++j) {
                int x = members[i];
                int y = members[j];
                Bitset rest = alive;
                rest.reset(x);
                rest.reset(y);
                Bitset ox = t.beats[static_cast<std::size_t>(x)] & rest;
                Bitset oy = t.beats[static_cast<std::size_t>(y)] & rest;
                ExtensionStep st;
                if (ox == oy) {
                    st.kind = ExtensionStep::Kind::twin;
                } else if ((ox ^ oy) == rest) {
                    st.kind = ExtensionStep::Kind::antitwin;
                } else {
                    continue;
                }
                st.anchor = x;
                st.added = y;
                st.added_beats_anchor = t.arc(y, x);
                steps.push_back(st);
                alive.reset(y);
                found = true;
            }
        }
        if (!found) return std::nullopt;
    }
    ExtensionSequence seq;
    seq.start = alive.find_first();
    seq.steps.assign(steps.rbegin(), steps.rend());
    return seq;
}

Tournament replay_extension_sequence(int n, const ExtensionSequence& seq) {
    if (n <= 0) throw PreconditionError("empty tournament");
    if (seq.start < 0 || seq.start >= n) throw PreconditionError("start vertex out of range");
    Tournament t(n);
    Bitset present(n);
    present.set(seq.start);
    for (const auto& st : seq.steps) {
        if (st.added < 0 || st.added >= n || st.anchor < 0 || st.anchor >= n ||
            !present.test(st.anchor) || present.test(st.added)) {
            throw PreconditionError("malformed extension step");
        }
        for (int v : present.to_vector()) {
            if (v == st.anchor) continue;
            bool beats_v = st.kind == ExtensionStep::Kind::twin ? t.arc(st.anchor, v)
                                                                : t.arc(v, st.anchor);
            if (beats_v) {
                t.set_arc(st.added, v);
            } else {
                t.set_arc(v, st.added);
            }
        }
        if (st.added_beats_anchor) {
            t.set_arc(st.added, st.anchor);
        } else {
            t.set_arc(st.anchor, st.added);
        }
        present.set(st.added);
    }
    if (present.count() != n) {
        throw PreconditionError("extension sequence does not cover the ground set");
    }
    return t;
}

namespace {

using CircleFeature = std::pair<int, int>;  // (gap to first out-neighbor, out-degree)

std::vector<CircleFeature> circle_features(const Tournament& t, const std::vector<int>& order,
                                           bool reversed) {
    const int n = t.n;
    std::vector<int> seq(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        seq[static_cast<std::size_t>(i)] =
            reversed ? order[static_cast<std::size_t>((n - i) % n)]
                     : order[static_cast<std::size_t>(i)];
    }
    std::vector<int> pos(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(seq[static_cast<std::size_t>(i)])] = i;
    std::vector<CircleFeature> f(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        int v = seq[static_cast<std::size_t>(i)];
        const Bitset& out = t.beats[static_cast<std::size_t>(v)];
        int d = static_cast<int>(out.count());
        if (d == 0) {
            f[static_cast<std::size_t>(i)] = {0, 0};
            continue;
        }
        int gap = n;
        for (int w : out.to_vector()) {
            gap = std::min(gap, (pos[static_cast<std::size_t>(w)] - i + n) % n);
        }
        for (int j = 0; j < d; ++j) {
            if (!out.test(seq[static_cast<std::size_t>((i + gap + j) % n)])) {
                throw Error("circular order violates out-neighbor consecutivity");
            }
        }
        f[static_cast<std::size_t>(i)] = {gap, d};
    }
    return f;
}

std::vector<CircleFeature> minimal_rotation(const std::vector<CircleFeature>& f) {
    const int n = static_cast<int>(f.size());
    std::vector<CircleFeature> best;
    for (int s = 0; s < n; ++s) {
        std::vector<CircleFeature> cand(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) cand[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>((s + i) % n)];
        if (best.empty() || cand < best) best = std::move(cand);
    }
    return best;
}

std::vector<CircleFeature> canonical_circle(const Tournament& t) {
    std::vector<int> order = circular_order(t);
    auto fwd = minimal_rotation(circle_features(t, order, false));
    auto bwd = minimal_rotation(circle_features(t, order, true));
    return std::min(fwd, bwd);
}

}  // namespace

bool isomorphic_decomposable(const Tournament& a, const Tournament& b) {
    if (!is_totally_decomposable(a) || !is_totally_decomposable(b)) {
        throw PreconditionError("isomorphism routine requires totally decomposable tournaments");
    }
    if (a.n != b.n) return false;
    if (a.n <= 2) return true;
    return canonical_circle(a) == canonical_circle(b);
}

std::vector<int> feedback_vertex_set(const Tournament& t) {
    if (!is_totally_decomposable(t)) {
        throw PreconditionError("feedback procedure requires a totally decomposable tournament");
    }
    int best = 0;
    for (int x = 1; x < t.n; ++x) {
        if (t.out_degree(x) > t.out_degree(best)) best = x;
    }
    Bitset kept = t.beats[static_cast<std::size_t>(best)];
    kept.set(best);
    if (!induces_transitive(t, kept)) throw Error("kept set is not acyclic");
    return kept.complemented().to_vector();
}

}  // namespace umod
