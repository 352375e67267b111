#include "umod/gen.hpp"

#include <numeric>
#include <random>

#include "umod/apps.hpp"

namespace umod {

UndirectedGraph random_graph(int n, std::uint64_t seed) {
    if (n < 0) throw PreconditionError("negative size");
    std::mt19937_64 rng(seed);
    UndirectedGraph g(n);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (rng() & 1) g.add_edge(u, v);
        }
    }
    return g;
}

Tournament random_tournament(int n, std::uint64_t seed) {
    if (n < 0) throw PreconditionError("negative size");
    std::mt19937_64 rng(seed);
    Tournament t(n);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (rng() & 1) {
                t.set_arc(u, v);
            } else {
                t.set_arc(v, u);
            }
        }
    }
    return t;
}

Tournament random_locally_transitive_tournament(int n, std::uint64_t seed) {
    if (n <= 0) throw PreconditionError("size must be positive");
    std::mt19937_64 rng(seed);
    ExtensionSequence seq;
    seq.start = 0;
    for (int k = 1; k < n; ++k) {
        ExtensionStep st;
        st.kind = rng() & 1 ? ExtensionStep::Kind::twin : ExtensionStep::Kind::antitwin;
        st.anchor = static_cast<int>(rng() % static_cast<std::uint64_t>(k));
        st.added = k;
        st.added_beats_anchor = rng() & 1;
        seq.steps.push_back(st);
    }
    return replay_extension_sequence(n, seq);
}

HomogeneousRelation random_relation(int n, int max_classes, std::uint64_t seed) {
    if (n <= 0 || max_classes <= 0) throw PreconditionError("size and class count must be positive");
    std::mt19937_64 rng(seed);
    std::vector<std::vector<ClassId>> rows(static_cast<std::size_t>(n),
                                           std::vector<ClassId>(static_cast<std::size_t>(n), 0));
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (y == x) continue;
            rows[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
                static_cast<ClassId>(rng() % static_cast<std::uint64_t>(max_classes));
        }
    }
    return HomogeneousRelation::from_classes(n, rows);
}

std::vector<int> random_permutation(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
        std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
    }
    return p;
}

Tournament relabel(const Tournament& t, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != t.n) throw PreconditionError("permutation size mismatch");
    Tournament out(t.n);
    for (int u = 0; u < t.n; ++u) {
        for (int v : t.beats[static_cast<std::size_t>(u)].to_vector()) {
            out.set_arc(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
        }
    }
    return out;
}

}  // namespace umod
