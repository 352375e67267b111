#include "umod/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace umod {

int oracle_bound() {
    if (const char* env = std::getenv("UMOD_ORACLE_BOUND")) {
        int v = std::atoi(env);
        if (v >= 1 && v <= 24) return v;
    }
    return 14;
}

namespace {

std::vector<std::vector<int>> subset_sweep(const HomogeneousRelation& h, int bound, auto&& keep) {
    int n = h.size();
    if (n > bound)
        throw PreconditionError("ground set of size " + std::to_string(n) +
                                " exceeds the exhaustive-search bound " + std::to_string(bound));
    std::vector<std::vector<int>> out;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        Bitset u(n);
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1u) u.set(i);
        if (keep(u)) out.push_back(u.to_vector());
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

}  // namespace

std::vector<std::vector<int>> brute_force_umodules(const HomogeneousRelation& h, int bound) {
    return subset_sweep(h, bound, [&](const Bitset& u) { return is_umodule(h, u); });
}

std::vector<std::vector<int>> brute_force_modules(const HomogeneousRelation& h, int bound) {
    return subset_sweep(h, bound, [&](const Bitset& u) { return is_module(h, u); });
}

bool is_threshold_graph(const UndirectedGraph& g) {
    Bitset alive(g.n);
    for (int v = 0; v < g.n; ++v) alive.set(v);
    int remaining = g.n;
    while (remaining > 1) {
        int peel = -1;
        for (int v = 0; v < g.n && peel < 0; ++v) {
            if (!alive.test(v)) continue;
            int deg = (g.adj[static_cast<std::size_t>(v)] & alive).count();
            if (deg == 0 || deg == remaining - 1) peel = v;
        }
        if (peel < 0) return false;
        alive.reset(peel);
        --remaining;
    }
    return true;
}

bool check_threshold_umodule_property(const UndirectedGraph& g, int bound) {
    if (g.n > bound)
        throw PreconditionError("graph of size " + std::to_string(g.n) +
                                " exceeds the exhaustive-search bound " + std::to_string(bound));
    for (std::uint32_t vmask = 1; vmask < (std::uint32_t{1} << g.n); ++vmask) {
        std::vector<int> verts;
        for (int v = 0; v < g.n; ++v)
            if (vmask >> v & 1u) verts.push_back(v);
        int k = static_cast<int>(verts.size());
        UndirectedGraph ind(k);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (g.has_edge(verts[static_cast<std::size_t>(i)], verts[static_cast<std::size_t>(j)]))
                    ind.add_edge(i, j);
        HomogeneousRelation h = build_standard_relation(ind);
        for (const auto& u : brute_force_umodules(h, bound)) {
            Bitset b = Bitset::from(u, k);
            if (!is_module(h, b) && !is_module(h, b.complemented())) return false;
        }
    }
    return true;
}

}  // namespace umod
