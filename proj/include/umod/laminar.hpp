#pragma once

#include <vector>

#include "umod/core.hpp"

namespace umod {

// Inclusion tree of a laminar set family: root is X, leaves are singletons,
// internal nodes are the non-trivial strong umodules.
struct LaminarTree {
    struct Node {
        std::vector<int> elements;  // sorted
        int parent = -1;
        std::vector<int> children;  // sorted by minimum element
    };
    // Sorted by (size descending, lexicographic); nodes[0] is the root.
    std::vector<Node> nodes;
    int n = 0;

    int root() const { return 0; }
    bool is_star() const { return static_cast<int>(nodes.size()) == (n == 1 ? 1 : n + 1); }
};

// Builds the inclusion tree from an already-laminar family; X and the
// singletons are added if missing. Exposed for reuse and tests.
LaminarTree laminar_tree_from(int n, const std::vector<Bitset>& family);

// Strong umodules of h: the non-trivial umodules overlapping no non-trivial
// umodule, plus X and the singletons as tree scaffolding. Candidates come
// from the parts of mu({x,y}) over all pairs; every strong umodule is a
// prefix intersection of the size-sorted collected parts through one of its
// elements, and a collected part witnesses every overlap, so the filter is
// exact. threads > 1 parallelizes the pair runs.
LaminarTree strong_umodules(const HomogeneousRelation& h, int threads = 1);

// True iff every umodule of h is trivial. Decided by the pair runs alone:
// a non-trivial umodule always leaves a non-trivial part in some mu({x,y}).
bool is_umodular_prime(const HomogeneousRelation& h);

// True iff for every two members with a non-empty intersection and a
// non-covering union, the intersection and union are members too.
bool check_crossing_family(const std::vector<std::vector<int>>& family, int n);

}  // namespace umod
