#include "umod/seidel.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "umod/partition.hpp"

namespace umod {

namespace {

bool sets_overlap(const Bitset& a, const Bitset& b) {
    return a.intersects(b) && !a.is_subset_of(b) && !b.is_subset_of(a);
}

// Strong non-trivial modules via per-element coarsest partitions: prefix
// intersections of the size-ordered containing parts are a complete
// candidate set, and a candidate survives when it is a module no collected
// part overlaps. Two discrete partitions plus a full closure of {0, 1}
// certify that only trivial modules exist, keeping the common case at
// quadratic cost.
std::vector<Bitset> strong_nontrivial_modules(const HomogeneousRelation& h) {
    const int n = h.size();
    std::vector<Bitset> result;
    if (n < 3) return result;
    if (coarsest_module_partition(h, {0}).parts.size() == static_cast<std::size_t>(n) &&
        coarsest_module_partition(h, {1}).parts.size() == static_cast<std::size_t>(n) &&
        smallest_module_containing(h, {0, 1}).count() == n) {
        return result;
    }

    std::unordered_set<Bitset, BitsetHash> part_seen;
    std::vector<Bitset> parts;
    for (int z = 0; z < n; ++z) {
        Partition p = coarsest_module_partition(h, {z});
        for (const auto& part : p.parts) {
            int c = static_cast<int>(part.size());
            if (c < 2 || c > n - 1) continue;
            Bitset b = Bitset::from(part, n);
            if (part_seen.insert(b).second) parts.push_back(b);
        }
    }

    std::vector<std::vector<int>> containing(n);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (int u : parts[i].to_vector()) containing[u].push_back(static_cast<int>(i));
    }
    std::unordered_set<Bitset, BitsetHash> cand_seen;
    std::vector<Bitset> cands;
    auto record = [&](const Bitset& b) {
        int c = static_cast<int>(b.count());
        if (c < 2 || c > n - 1) return;
        if (cand_seen.insert(b).second) cands.push_back(b);
    };
    for (int u = 0; u < n; ++u) {
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
    for (const auto& c : cands) {
        if (!is_module(h, c)) continue;
        bool crossed = false;
        for (const auto& p : parts) {
            if (sets_overlap(c, p)) {
                crossed = true;
                break;
            }
        }
        if (!crossed) result.push_back(c);
    }
    return result;
}

struct QuotientTyping {
    ModularTree::NodeType type = ModularTree::NodeType::prime;
    std::vector<int> order;  // positions into the by-minimum child list, linear only
};

// Types a node from one representative per child. A node is complete when
// every representative sees the others in one class, linear when the
// representatives admit an order with constant strict-prefix and
// strict-suffix classes per row, prime otherwise.
QuotientTyping type_modular_node(const HomogeneousRelation& h, const std::vector<int>& reps) {
    const int k = static_cast<int>(reps.size());
    std::vector<int> class_count(k, 0);
    std::vector<char> single(k, 0);
    for (int i = 0; i < k; ++i) {
        ClassId first = kNoClass;
        ClassId other = kNoClass;
        int distinct = 0;
        for (int j = 0; j < k && distinct < 3; ++j) {
            if (j == i) continue;
            ClassId c = h.at(reps[i], reps[j]);
            if (first == kNoClass) {
                first = c;
                distinct = 1;
            } else if (c != first && other == kNoClass) {
                other = c;
                distinct = 2;
            } else if (c != first && c != other) {
                distinct = 3;
            }
        }
        class_count[i] = distinct;
        single[i] = distinct == 1;
    }
    bool all_single = true;
    for (int i = 0; i < k; ++i) all_single = all_single && single[i];
    if (all_single) return {ModularTree::NodeType::complete, {}};

    bool linear_possible = true;
    for (int i = 0; i < k; ++i) linear_possible = linear_possible && class_count[i] <= 2;
    std::vector<int> ends;
    for (int i = 0; i < k; ++i) {
        if (single[i]) ends.push_back(i);
    }
    if (linear_possible && ends.size() == 2) {
        const int head = ends[0];
        std::vector<std::pair<int, int>> ranked;  // (class size toward head, position)
        for (int i = 0; i < k; ++i) {
            if (i == head) continue;
            int s = 0;
            ClassId toward = h.at(reps[i], reps[head]);
            for (int j = 0; j < k; ++j) {
                if (j != i && h.at(reps[i], reps[j]) == toward) ++s;
            }
            ranked.emplace_back(s, i);
        }
        std::sort(ranked.begin(), ranked.end());
        bool distinct_ranks = true;
        for (std::size_t i = 1; i < ranked.size(); ++i) {
            distinct_ranks = distinct_ranks && ranked[i - 1].first != ranked[i].first;
        }
        if (distinct_ranks) {
            std::vector<int> order{head};
            for (const auto& [s, i] : ranked) order.push_back(i);
            bool ok = true;
            for (int i = 0; i < k && ok; ++i) {
                ClassId before = kNoClass;
                ClassId after = kNoClass;
                for (int j = 0; j < i && ok; ++j) {
                    ClassId c = h.at(reps[order[i]], reps[order[j]]);
                    if (before == kNoClass) before = c;
                    ok = c == before;
                }
                for (int j = i + 1; j < k && ok; ++j) {
                    ClassId c = h.at(reps[order[i]], reps[order[j]]);
                    if (after == kNoClass) after = c;
                    ok = c == after;
                }
                if (i > 0 && i + 1 < k) ok = ok && before != after;
            }
            if (ok) {
                return {ModularTree::NodeType::linear, order};
            }
        }
    }
    return {ModularTree::NodeType::prime, {}};
}

}  // namespace

SwitchedRelation seidel_switch(const HomogeneousRelation& h, int s) {
    const int n = h.size();
    if (s < 0 || s >= n) throw PreconditionError("switch pivot out of range");
    if (n < 2) throw PreconditionError("switch needs at least two elements");
    if (local_congruence(h) > 2)
        throw PreconditionError("switch requires at most two classes per row");
    SwitchedRelation out;
    out.pivot = s;
    out.original_ids.reserve(n - 1);
    for (int x = 0; x < n; ++x) {
        if (x != s) out.original_ids.push_back(x);
    }
    const int m = n - 1;
    std::vector<std::vector<ClassId>> rows(m, std::vector<ClassId>(m, 0));
    for (int xi = 0; xi < m; ++xi) {
        int x = out.original_ids[xi];
        ClassId sx = h.at(s, x);
        for (int yi = 0; yi < m; ++yi) {
            if (yi == xi) continue;
            int y = out.original_ids[yi];
            bool second = h.at(x, y) == 1;
            bool flipped = h.at(s, y) != sx;  // y lies in the class of s away from x
            rows[xi][yi] = second != flipped ? 1 : 0;
        }
    }
    out.relation = HomogeneousRelation::from_classes(m, rows, Provenance::unknown);
    return out;
}

bool verify_switch_correspondence(const HomogeneousRelation& h, int s, int bound) {
    const int n = h.size();
    if (n > bound) {
        throw PreconditionError("ground set of " + std::to_string(n) +
                                " elements exceeds the exhaustive bound " + std::to_string(bound));
    }
    SwitchedRelation sw = seidel_switch(h, s);
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        if (!(mask >> s & 1)) continue;
        Bitset u(n);
        Bitset image(n - 1);
        for (int y = 0; y < n; ++y) {
            if (mask >> y & 1) {
                u.set(y);
            } else {
                image.set(y < s ? y : y - 1);
            }
        }
        if (is_umodule(h, u) != is_module(sw.relation, image)) return false;
    }
    return true;
}

ModularTree modular_strong_tree(const HomogeneousRelation& h) {
    const int n = h.size();
    if (n <= 0) throw Error("empty ground set");
    std::vector<Bitset> strong = strong_nontrivial_modules(h);

    std::vector<std::vector<int>> sets;
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    sets.push_back(all);
    for (const auto& b : strong) sets.push_back(b.to_vector());
    if (n >= 2) {
        for (int x = 0; x < n; ++x) sets.push_back({x});
    }
    std::sort(sets.begin(), sets.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });

    ModularTree t;
    t.n = n;
    t.nodes.resize(sets.size());
    std::vector<Bitset> bits;
    bits.reserve(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) {
        t.nodes[i].elements = sets[i];
        bits.push_back(Bitset::from(sets[i], n));
    }
    for (std::size_t i = 1; i < sets.size(); ++i) {
        for (int j = static_cast<int>(i) - 1; j >= 0; --j) {
            if (sets[j].size() > sets[i].size() && bits[i].is_subset_of(bits[j])) {
                t.nodes[i].parent = j;
                break;
            }
        }
        if (t.nodes[i].parent < 0) throw Error("strong module family is not laminar");
        t.nodes[t.nodes[i].parent].children.push_back(static_cast<int>(i));
    }
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        auto& node = t.nodes[i];
        if (node.elements.size() == 1) {
            node.type = ModularTree::NodeType::leaf;
            continue;
        }
        std::sort(node.children.begin(), node.children.end(),
                  [&](int a, int b) { return t.nodes[a].elements[0] < t.nodes[b].elements[0]; });
        std::vector<int> reps;
        reps.reserve(node.children.size());
        for (int c : node.children) reps.push_back(t.nodes[c].elements[0]);
        QuotientTyping ty = type_modular_node(h, reps);
        node.type = ty.type;
        if (ty.type == ModularTree::NodeType::linear) {
            std::vector<int> ordered;
            ordered.reserve(node.children.size());
            for (int p : ty.order) ordered.push_back(node.children[p]);
            if (t.nodes[ordered.front()].elements[0] > t.nodes[ordered.back()].elements[0]) {
                std::reverse(ordered.begin(), ordered.end());
            }
            node.children = std::move(ordered);
        }
    }
    return t;
}

UDecompTree fast_umodular_tree(const HomogeneousRelation& h) {
    const int n = h.size();
    if (n <= 0) throw Error("empty ground set");
    if (local_congruence(h) > 2)
        throw PreconditionError("switch construction requires at most two classes per row");
    require_self_complemented(h);
    if (n <= 2) return detail::assemble_umodular_tree(n, {}, {});

    SwitchedRelation sw = seidel_switch(h, 0);
    ModularTree mt = modular_strong_tree(sw.relation);

    std::unordered_map<Bitset, detail::NodeTyping, BitsetHash> typing;
    std::vector<Bitset> sides;
    for (const auto& node : mt.nodes) {
        if (node.elements.size() < 2) continue;
        Bitset w(n);
        for (int e : node.elements) w.set(sw.original_ids[e]);
        if (node.parent >= 0) sides.push_back(w);
        detail::NodeTyping ty;
        switch (node.type) {
            case ModularTree::NodeType::complete:
                ty.type = UNodeType::complete;
                break;
            case ModularTree::NodeType::prime:
                ty.type = UNodeType::prime;
                break;
            default: {
                // a linear node closes into a circle through the upward side
                ty.type = UNodeType::circular;
                const int k = static_cast<int>(node.children.size());
                std::vector<int> by_min(node.children.begin(), node.children.end());
                std::sort(by_min.begin(), by_min.end(), [&](int a, int b) {
                    return mt.nodes[a].elements[0] < mt.nodes[b].elements[0];
                });
                std::unordered_map<int, int> pos;
                for (int p = 0; p < k; ++p) pos.emplace(by_min[p], p);
                ty.cycle.reserve(k + 1);
                for (int c : node.children) ty.cycle.push_back(pos.at(c));
                ty.cycle.push_back(k);
                break;
            }
        }
        typing.emplace(w, std::move(ty));
    }
    auto typer = [&typing](const Bitset& below, const std::vector<Bitset>&) -> detail::NodeTyping {
        auto it = typing.find(below);
        if (it == typing.end()) throw Error("switch tree does not match the bipartition family");
        return it->second;
    };
    return detail::assemble_umodular_tree(n, sides, typer);
}

}  // namespace umod
