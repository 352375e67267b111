#include "umod/udecomp.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "umod/oracle.hpp"
#include "umod/partition.hpp"

namespace umod {

namespace {

bool sets_overlap(const Bitset& a, const Bitset& b) {
    return a.intersects(b) && !a.is_subset_of(b) && !b.is_subset_of(a);
}

// Rooted skeleton of the unrooted tree: leaves 0..n-1, internal node n+i for
// the i-th set (ascending size, top set X minus {0} last and acting as root).
// Leaf 0 hangs off the top node, so every skeleton edge realizes one strong
// bipartition: the side below the edge against the rest.
struct Skeleton {
    int n = 0;
    std::vector<Bitset> below;               // internal node n+i carries below[i]
    std::vector<int> parent;                 // -1 for the root
    std::vector<std::vector<int>> children;  // sorted by minimum leaf
};

int min_leaf_below(const Skeleton& sk, int v) {
    return v < sk.n ? v : sk.below[v - sk.n].find_first();
}

Skeleton build_skeleton(int n, std::vector<Bitset> sets) {
    Skeleton sk;
    sk.n = n;
    Bitset top = Bitset(n).complemented();
    top.reset(0);
    sets.push_back(top);
    std::sort(sets.begin(), sets.end(), [](const Bitset& a, const Bitset& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        return a.to_vector() < b.to_vector();
    });
    const int m = static_cast<int>(sets.size());
    sk.below = std::move(sets);
    sk.parent.assign(n + m, -1);
    sk.children.assign(n + m, {});
    for (int i = 0; i + 1 < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            if (sk.below[j].count() > sk.below[i].count() && sk.below[i].is_subset_of(sk.below[j])) {
                sk.parent[n + i] = n + j;
                break;
            }
        }
        if (sk.parent[n + i] == -1) throw Error("bipartition family is not laminar");
    }
    sk.parent[0] = n + m - 1;
    for (int x = 1; x < n; ++x) {
        for (int i = 0; i < m; ++i) {
            if (sk.below[i].test(x)) {
                sk.parent[x] = n + i;
                break;
            }
        }
    }
    for (int v = 0; v < n + m; ++v) {
        if (sk.parent[v] >= 0) sk.children[sk.parent[v]].push_back(v);
    }
    for (auto& ch : sk.children) {
        std::sort(ch.begin(), ch.end(),
                  [&](int a, int b) { return min_leaf_below(sk, a) < min_leaf_below(sk, b); });
    }
    // children of a node must partition its leaf set
    for (int i = 0; i < m; ++i) {
        std::size_t covered = 0;
        for (int c : sk.children[n + i]) covered += c < n ? 1 : sk.below[c - n].count();
        std::size_t want = sk.below[i].count() + (i == m - 1 ? 1 : 0);  // root also owns leaf 0
        if (covered != want) throw Error("bipartition family is not laminar");
    }
    return sk;
}

// Lexicographically minimal rotation/reflection of a cyclic neighbor list,
// compared through per-direction keys (which are pairwise distinct).
std::vector<int> canonical_cycle_order(const std::vector<int>& ids, const std::vector<int>& keys) {
    const int k = static_cast<int>(ids.size());
    int start = 0;
    for (int i = 1; i < k; ++i) {
        if (keys[i] < keys[start]) start = i;
    }
    bool forward = true;
    for (int i = 1; i < k; ++i) {
        int kf = keys[(start + i) % k];
        int kb = keys[(start - i % k + k) % k];
        if (kf != kb) {
            forward = kf < kb;
            break;
        }
    }
    std::vector<int> out(k);
    for (int i = 0; i < k; ++i) out[i] = ids[forward ? (start + i) % k : (start - i % k + k) % k];
    return out;
}

UNodeType validated_type(const detail::NodeTyping& ty, int k) {
    if (ty.type == UNodeType::leaf) throw Error("typer produced a leaf for an internal node");
    if (ty.type == UNodeType::circular) {
        if (static_cast<int>(ty.cycle.size()) != k) throw Error("circular typing has a bad cycle length");
        std::vector<char> hit(k, 0);
        for (int p : ty.cycle) {
            if (p < 0 || p >= k || hit[p]) throw Error("circular typing is not a permutation");
            hit[p] = 1;
        }
    }
    return ty.type;
}

// Rooted view of a finished tree, used by the enumerator and the emitters.
struct Rooted {
    std::vector<int> preorder;
    std::vector<int> parent;
    std::vector<Bitset> below;
};

Rooted root_at_leaf0(const UDecompTree& t) {
    const int total = static_cast<int>(t.nodes.size());
    Rooted r;
    r.parent.assign(total, -2);
    r.below.assign(total, Bitset(t.n));
    r.preorder.reserve(total);
    std::vector<int> stack{0};
    r.parent[0] = -1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        r.preorder.push_back(u);
        for (int v : t.nodes[u].neighbors) {
            if (r.parent[v] == -2) {
                r.parent[v] = u;
                stack.push_back(v);
            }
        }
    }
    if (static_cast<int>(r.preorder.size()) != total) throw Error("decomposition tree is not connected");
    for (auto it = r.preorder.rbegin(); it != r.preorder.rend(); ++it) {
        int u = *it;
        if (t.nodes[u].type == UNodeType::leaf) r.below[u].set(t.nodes[u].element);
        if (r.parent[u] >= 0) r.below[r.parent[u]] |= r.below[u];
    }
    return r;
}

Bitset piece_toward(const Rooted& r, int u, int v) {
    return v == r.parent[u] ? r.below[u].complemented() : r.below[v];
}

// Union-of-two-adjacent-subtrees probe: each piece is itself a umodule, so
// the union is one exactly when one representative per piece induces the
// same outside partition.
detail::NodeTyping generic_typing(const HomogeneousRelation& h, const std::vector<Bitset>& pieces) {
    const int k = static_cast<int>(pieces.size());
    std::vector<int> reps(k);
    for (int i = 0; i < k; ++i) reps[i] = pieces[i].find_first();
    std::vector<std::vector<int>> adj(k);
    int edges = 0;
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            std::vector<int> both = (pieces[i] | pieces[j]).to_vector();
            if (signature(h, both, reps[i]) == signature(h, both, reps[j])) {
                adj[i].push_back(j);
                adj[j].push_back(i);
                ++edges;
            }
        }
    }
    if (edges == k * (k - 1) / 2) return {UNodeType::complete, {}};
    if (edges == 0) return {UNodeType::prime, {}};
    bool all_degree_two = true;
    for (int i = 0; i < k; ++i) all_degree_two = all_degree_two && adj[i].size() == 2;
    if (edges == k && all_degree_two) {
        std::vector<int> cycle;
        cycle.reserve(k);
        int prev = -1;
        int cur = 0;
        for (int step = 0; step < k; ++step) {
            cycle.push_back(cur);
            int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            prev = cur;
            cur = nxt;
        }
        if (cur == 0) return {UNodeType::circular, cycle};
    }
    throw Error("node typing failed: adjacent-union pattern is neither complete, empty, nor a cycle");
}

const char* kind_name(UNodeType ty) {
    switch (ty) {
        case UNodeType::leaf: return "leaf";
        case UNodeType::prime: return "prime";
        case UNodeType::complete: return "complete";
        case UNodeType::circular: return "circular";
    }
    return "leaf";
}

}  // namespace

namespace detail {

UDecompTree assemble_umodular_tree(int n, const std::vector<Bitset>& zero_free_sides,
                                   const NodeTyper& typer) {
    if (n <= 0) throw Error("empty ground set");
    UDecompTree t;
    t.n = n;
    if (n == 1) {
        t.nodes.push_back({UNodeType::leaf, 0, {}});
        return t;
    }
    if (n == 2) {
        t.nodes.push_back({UNodeType::leaf, 0, {1}});
        t.nodes.push_back({UNodeType::leaf, 1, {0}});
        return t;
    }
    std::unordered_set<Bitset, BitsetHash> seen;
    std::vector<Bitset> sets;
    for (const auto& s : zero_free_sides) {
        int c = static_cast<int>(s.count());
        if (s.test(0) || c < 2 || c > n - 2) throw Error("invalid strong bipartition side");
        if (seen.insert(s).second) sets.push_back(s);
    }
    Skeleton sk = build_skeleton(n, std::move(sets));
    const int m = static_cast<int>(sk.below.size());
    const int top = n + m - 1;

    struct Arranged {
        UNodeType type = UNodeType::prime;
        std::vector<int> order;  // neighbor skeleton ids in final list order
    };
    std::vector<Arranged> arranged(m);
    for (int i = 0; i < m; ++i) {
        const int u = n + i;
        std::vector<int> nbr_ids;
        std::vector<Bitset> pieces;
        for (int c : sk.children[u]) {
            if (c == 0) continue;  // leaf 0 is reached through the upward piece below
            nbr_ids.push_back(c);
            if (c < n) {
                Bitset one(n);
                one.set(c);
                pieces.push_back(one);
            } else {
                pieces.push_back(sk.below[c - n]);
            }
        }
        nbr_ids.push_back(u == top ? 0 : sk.parent[u]);
        pieces.push_back(sk.below[i].complemented());
        const int k = static_cast<int>(pieces.size());
        if (k < 3) throw Error("decomposition tree has an internal node of degree below 3");
        NodeTyping ty;
        if (k == 3) {
            // all three types describe the same bipartitions on a triangle
            ty = {UNodeType::circular, {0, 1, 2}};
        } else {
            ty = typer(sk.below[i], pieces);
        }
        arranged[i].type = validated_type(ty, k);
        std::vector<int> keys(k);
        for (int p = 0; p < k; ++p) keys[p] = pieces[p].find_first();
        if (arranged[i].type == UNodeType::circular) {
            std::vector<int> cyc_ids(k), cyc_keys(k);
            for (int p = 0; p < k; ++p) {
                cyc_ids[p] = nbr_ids[ty.cycle[p]];
                cyc_keys[p] = keys[ty.cycle[p]];
            }
            arranged[i].order = canonical_cycle_order(cyc_ids, cyc_keys);
        } else {
            std::vector<int> idx(k);
            for (int p = 0; p < k; ++p) idx[p] = p;
            std::sort(idx.begin(), idx.end(), [&](int a, int b) { return keys[a] < keys[b]; });
            for (int p : idx) arranged[i].order.push_back(nbr_ids[p]);
        }
    }

    // renumber internals in preorder from the node adjacent to leaf 0
    std::vector<int> new_id(n + m, -1);
    for (int x = 0; x < n; ++x) new_id[x] = x;
    int next = n;
    std::vector<int> stack{top};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        new_id[u] = next++;
        for (auto it = sk.children[u].rbegin(); it != sk.children[u].rend(); ++it) {
            if (*it >= n) stack.push_back(*it);
        }
    }
    t.nodes.assign(n + m, {});
    for (int x = 0; x < n; ++x) {
        t.nodes[x].type = UNodeType::leaf;
        t.nodes[x].element = x;
        t.nodes[x].neighbors = {new_id[sk.parent[x]]};
    }
    for (int i = 0; i < m; ++i) {
        auto& node = t.nodes[new_id[n + i]];
        node.type = arranged[i].type;
        node.neighbors.reserve(arranged[i].order.size());
        for (int v : arranged[i].order) node.neighbors.push_back(new_id[v]);
    }
    return t;
}

}  // namespace detail

void require_self_complemented(const HomogeneousRelation& h) {
    Provenance p = h.provenance();
    if (p == Provenance::graph || p == Provenance::tournament) return;
    if (check_four_elements(h).holds) return;
    if (h.size() <= oracle_bound()) {
        std::unordered_set<Bitset, BitsetHash> family;
        for (const auto& u : brute_force_umodules(h)) family.insert(Bitset::from(u, h.size()));
        bool closed = true;
        for (const auto& b : family) {
            if (family.find(b.complemented()) == family.end()) {
                closed = false;
                break;
            }
        }
        if (closed) return;
    }
    throw PreconditionError("umodule family is not certifiably closed under complement");
}

UDecompTree build_umodular_tree(const HomogeneousRelation& h) {
    require_self_complemented(h);
    const int n = h.size();
    if (n <= 2) return detail::assemble_umodular_tree(n, {}, {});

    // non-trivial parts avoiding the pivot, over all runs mu({0, x})
    std::unordered_set<Bitset, BitsetHash> part_seen;
    std::vector<Bitset> parts;
    for (int x = 1; x < n; ++x) {
        Partition p = mu(h, {0, x});
        for (const auto& part : p.parts) {
            int c = static_cast<int>(part.size());
            if (c < 2 || c > n - 2) continue;
            Bitset b = Bitset::from(part, n);
            if (b.test(0)) continue;
            if (part_seen.insert(b).second) parts.push_back(b);
        }
    }

    // candidates: every 0-free umodule is the intersection of the collected
    // parts that contain it, and for strong sides that intersection shows up
    // as a prefix of the size-ordered containing list of any inner element
    std::vector<std::vector<int>> containing(n);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (int u : parts[i].to_vector()) containing[u].push_back(static_cast<int>(i));
    }
    std::unordered_set<Bitset, BitsetHash> cand_seen;
    std::vector<Bitset> cands;
    auto record = [&](const Bitset& b) {
        int c = static_cast<int>(b.count());
        if (c < 2 || c > n - 2) return;
        if (cand_seen.insert(b).second) cands.push_back(b);
    };
    for (int u = 1; u < n; ++u) {
        auto idx = containing[u];
        if (idx.empty()) continue;
        std::sort(idx.begin(), idx.end(),
                  [&](int a, int b) { return parts[a].count() > parts[b].count(); });
        Bitset run = parts[idx[0]];
        record(run);
        for (std::size_t j = 1; j < idx.size(); ++j) {
            run &= parts[idx[j]];
            if (run.count() <= 1) break;
            record(run);
        }
    }

    // a candidate survives when it is a umodule crossed by no collected part;
    // crossing and overlap coincide for sets avoiding the pivot
    std::vector<Bitset> sides;
    for (const auto& c : cands) {
        if (!is_umodule(h, c)) continue;
        bool crossed = false;
        for (const auto& p : parts) {
            if (sets_overlap(c, p)) {
                crossed = true;
                break;
            }
        }
        if (!crossed) sides.push_back(c);
    }

    auto typer = [&h](const Bitset&, const std::vector<Bitset>& pieces) {
        return generic_typing(h, pieces);
    };
    return detail::assemble_umodular_tree(n, sides, typer);
}

BigUint count_umodules(const UDecompTree& t) {
    if (t.n <= 1) return BigUint(0);
    BigUint total(0);
    total.add_u64(2 * (static_cast<std::uint64_t>(t.nodes.size()) - 1));
    for (const auto& node : t.nodes) {
        const int k = static_cast<int>(node.neighbors.size());
        if (k < 3) continue;
        if (node.type == UNodeType::complete) {
            total.add(BigUint::pow2(k));
            total.sub_u64(2 * static_cast<std::uint64_t>(k) + 2);
        } else if (node.type == UNodeType::circular) {
            total.add_u64(static_cast<std::uint64_t>(k) * (k - 3));
        }
    }
    return total;
}

std::vector<std::vector<int>> enumerate_umodules(const UDecompTree& t, std::uint64_t limit) {
    BigUint total = count_umodules(t);
    if (!total.fits_u64() || total.to_u64() > limit) {
        throw PreconditionError("umodule family too large to enumerate: " + total.to_string() +
                                " sets");
    }
    if (t.n <= 1) return {};
    Rooted r = root_at_leaf0(t);
    std::unordered_set<Bitset, BitsetHash> seen;
    std::vector<Bitset> sets;
    auto push = [&](const Bitset& b) {
        if (seen.insert(b).second) sets.push_back(b);
    };
    const int count = static_cast<int>(t.nodes.size());
    for (int v = 0; v < count; ++v) {
        if (r.parent[v] < 0) continue;
        push(r.below[v]);
        push(r.below[v].complemented());
    }
    for (int u = 0; u < count; ++u) {
        const auto& node = t.nodes[u];
        const int k = static_cast<int>(node.neighbors.size());
        if (k < 4) continue;
        std::vector<Bitset> pieces;
        pieces.reserve(k);
        for (int v : node.neighbors) pieces.push_back(piece_toward(r, u, v));
        if (node.type == UNodeType::complete) {
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
                int pc = std::popcount(mask);
                if (pc < 2 || pc > k - 2) continue;
                Bitset uni(t.n);
                for (int p = 0; p < k; ++p) {
                    if (mask >> p & 1) uni |= pieces[p];
                }
                push(uni);
            }
        } else if (node.type == UNodeType::circular) {
            for (int s = 0; s < k; ++s) {
                Bitset run = pieces[s];
                for (int len = 2; len <= k - 2; ++len) {
                    run |= pieces[(s + len - 1) % k];
                    push(run);
                }
            }
        }
    }
    std::vector<std::vector<int>> out;
    out.reserve(sets.size());
    for (const auto& b : sets) out.push_back(b.to_vector());
    std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

std::string tree_to_json(const UDecompTree& t) {
    nlohmann::json j;
    j["n"] = t.n;
    j["umodule_count"] = count_umodules(t).to_string();
    nlohmann::json nodes = nlohmann::json::array();
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const auto& node = t.nodes[i];
        nlohmann::json e;
        e["id"] = i;
        e["kind"] = kind_name(node.type);
        if (node.type == UNodeType::leaf) e["element"] = node.element;
        e["neighbors"] = node.neighbors;
        nodes.push_back(std::move(e));
    }
    j["nodes"] = std::move(nodes);
    return j.dump(2);
}

std::string tree_to_dot(const UDecompTree& t) {
    std::string s = "graph decomposition {\n";
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const auto& node = t.nodes[i];
        s += "  n" + std::to_string(i);
        if (node.type == UNodeType::leaf) {
            s += " [shape=plaintext,label=\"" + std::to_string(node.element) + "\"];\n";
        } else if (node.type == UNodeType::circular) {
            s += " [shape=ellipse,label=\"circular\"];\n";
        } else {
            s += std::string(" [shape=box,label=\"") + kind_name(node.type) + "\"];\n";
        }
    }
    auto port = [&](int u, int v) {
        const auto& nb = t.nodes[u].neighbors;
        for (std::size_t p = 0; p < nb.size(); ++p) {
            if (nb[p] == v) return static_cast<int>(p);
        }
        return -1;
    };
    for (std::size_t u = 0; u < t.nodes.size(); ++u) {
        for (int v : t.nodes[u].neighbors) {
            if (static_cast<std::size_t>(v) <= u) continue;
            s += "  n" + std::to_string(u) + " -- n" + std::to_string(v);
            std::string attrs;
            if (t.nodes[u].type == UNodeType::circular) {
                attrs += "taillabel=\"" + std::to_string(port(static_cast<int>(u), v)) + "\"";
            }
            if (t.nodes[v].type == UNodeType::circular) {
                if (!attrs.empty()) attrs += ",";
                attrs += "headlabel=\"" + std::to_string(port(v, static_cast<int>(u))) + "\"";
            }
            if (!attrs.empty()) s += " [" + attrs + "]";
            s += ";\n";
        }
    }
    s += "}\n";
    return s;
}

}  // namespace umod
