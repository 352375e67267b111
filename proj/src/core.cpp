#include "umod/core.hpp"

#include <algorithm>
#include <unordered_map>

namespace umod {

bool Tournament::valid() const {
    for (int x = 0; x < n; ++x) {
        if (beats[static_cast<std::size_t>(x)].test(x)) return false;
        for (int y = x + 1; y < n; ++y)
            if (arc(x, y) == arc(y, x)) return false;
    }
    return true;
}

HomogeneousRelation HomogeneousRelation::from_classes(int n,
                                                      const std::vector<std::vector<ClassId>>& rows,
                                                      Provenance prov) {
    if (n <= 0) throw Error("relation needs a positive ground set");
    if (static_cast<int>(rows.size()) != n) throw Error("relation row count mismatch");
    HomogeneousRelation h;
    h.n_ = n;
    h.prov_ = prov;
    h.cells_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), kNoClass);
    std::vector<ClassId> remap(static_cast<std::size_t>(n), kNoClass);
    std::vector<ClassId> seen;
    std::unordered_map<ClassId, ClassId> big;  // raw ids outside 0..n-1
    for (int x = 0; x < n; ++x) {
        if (static_cast<int>(rows[static_cast<std::size_t>(x)].size()) != n)
            throw Error("relation row length mismatch");
        // Renormalize row x to first-use class ids.
        for (ClassId c : seen) remap[c] = kNoClass;
        seen.clear();
        big.clear();
        ClassId next = 0;
        for (int y = 0; y < n; ++y) {
            if (y == x) continue;
            ClassId raw = rows[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
            ClassId id;
            if (raw < static_cast<ClassId>(n)) {
                if (remap[raw] == kNoClass) {
                    remap[raw] = next++;
                    seen.push_back(raw);
                }
                id = remap[raw];
            } else {
                auto [it, inserted] = big.try_emplace(raw, next);
                if (inserted) ++next;
                id = it->second;
            }
            h.cells_[static_cast<std::size_t>(x) * static_cast<std::size_t>(n) +
                     static_cast<std::size_t>(y)] = id;
        }
    }
    return h;
}

int HomogeneousRelation::row_class_count(int x) const {
    ClassId mx = 0;
    bool anything = false;
    for (int y = 0; y < n_; ++y) {
        if (y == x) continue;
        anything = true;
        mx = std::max(mx, at(x, y));
    }
    return anything ? static_cast<int>(mx) + 1 : 1;
}

int local_congruence(const HomogeneousRelation& h) {
    int lc = 1;
    for (int x = 0; x < h.size(); ++x) lc = std::max(lc, h.row_class_count(x));
    return lc;
}

namespace {

std::vector<std::vector<ClassId>> pair_color_rows(int n, auto&& color) {
    // Classes of row x are the distinct ordered pairs (color(x,y), color(y,x)).
    std::vector<std::vector<ClassId>> rows(static_cast<std::size_t>(n),
                                           std::vector<ClassId>(static_cast<std::size_t>(n), 0));
    std::vector<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (int x = 0; x < n; ++x) {
        seen.clear();
        for (int y = 0; y < n; ++y) {
            if (y == x) continue;
            std::pair<std::uint32_t, std::uint32_t> key{color(x, y), color(y, x)};
            ClassId id = kNoClass;
            for (std::size_t i = 0; i < seen.size(); ++i) {
                if (seen[i] == key) {
                    id = static_cast<ClassId>(i);
                    break;
                }
            }
            if (id == kNoClass) {
                id = static_cast<ClassId>(seen.size());
                seen.push_back(key);
            }
            rows[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = id;
        }
    }
    return rows;
}

}  // namespace

HomogeneousRelation build_standard_relation(const UndirectedGraph& g) {
    auto rows = pair_color_rows(g.n, [&](int x, int y) { return g.has_edge(x, y) ? 1u : 0u; });
    return HomogeneousRelation::from_classes(g.n, rows, Provenance::graph);
}

HomogeneousRelation build_standard_relation(const Tournament& t) {
    auto rows = pair_color_rows(t.n, [&](int x, int y) { return t.arc(x, y) ? 1u : 0u; });
    return HomogeneousRelation::from_classes(t.n, rows, Provenance::tournament);
}

HomogeneousRelation build_standard_relation(const TwoStructure& s) {
    auto rows = pair_color_rows(s.n, [&](int x, int y) { return s.at(x, y); });
    return HomogeneousRelation::from_classes(s.n, rows, Provenance::two_structure);
}

bool is_module(const HomogeneousRelation& h, const Bitset& u) {
    int n = h.size();
    std::vector<int> inside = u.to_vector();
    if (inside.size() <= 1) return true;
    for (int w = 0; w < n; ++w) {
        if (u.test(w)) continue;
        ClassId c = h.at(w, inside[0]);
        for (std::size_t i = 1; i < inside.size(); ++i)
            if (h.at(w, inside[i]) != c) return false;
    }
    return true;
}

bool is_module(const HomogeneousRelation& h, const std::vector<int>& u) {
    return is_module(h, Bitset::from(u, h.size()));
}

namespace {

// Partition of the columns `outside` induced by row x, as first-use ids.
void outside_signature_row(const HomogeneousRelation& h, int x, const std::vector<int>& outside,
                           std::vector<ClassId>& remap, std::vector<ClassId>& out) {
    std::fill(remap.begin(), remap.end(), kNoClass);
    out.clear();
    ClassId next = 0;
    for (int w : outside) {
        ClassId raw = h.at(x, w);
        if (remap[raw] == kNoClass) remap[raw] = next++;
        out.push_back(remap[raw]);
    }
}

}  // namespace

bool is_umodule(const HomogeneousRelation& h, const Bitset& u) {
    int n = h.size();
    std::vector<int> inside = u.to_vector();
    if (inside.size() <= 1 || static_cast<int>(inside.size()) == n) return true;
    std::vector<int> outside;
    outside.reserve(static_cast<std::size_t>(n) - inside.size());
    for (int w = 0; w < n; ++w)
        if (!u.test(w)) outside.push_back(w);
    std::vector<ClassId> remap(static_cast<std::size_t>(n), kNoClass);
    std::vector<ClassId> ref, cur;
    outside_signature_row(h, inside[0], outside, remap, ref);
    for (std::size_t i = 1; i < inside.size(); ++i) {
        outside_signature_row(h, inside[i], outside, remap, cur);
        if (cur != ref) return false;
    }
    return true;
}

bool is_umodule(const HomogeneousRelation& h, const std::vector<int>& u) {
    return is_umodule(h, Bitset::from(u, h.size()));
}

FourElementsReport check_four_elements(const HomogeneousRelation& h) {
    int n = h.size();
    for (int m = 0; m < n; ++m)
        for (int m2 = 0; m2 < n; ++m2) {
            if (m2 == m) continue;
            for (int x = 0; x < n; ++x) {
                if (x == m || x == m2) continue;
                for (int x2 = 0; x2 < n; ++x2) {
                    if (x2 == m || x2 == m2 || x2 == x) continue;
                    bool a = same_class(h, m, x, x2);
                    bool b = same_class(h, m2, x, x2);
                    bool c = same_class(h, x, m, m2);
                    bool d = same_class(h, x2, m, m2);
                    if ((a && b && c && !d) || (!a && !b && !c && d))
                        return {false, std::array<int, 4>{m, m2, x, x2}};
                }
            }
        }
    return {true, std::nullopt};
}

}  // namespace umod
