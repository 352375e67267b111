#pragma once

#include <vector>

#include "umod/core.hpp"
#include "umod/oracle.hpp"
#include "umod/udecomp.hpp"

namespace umod {

// Switch of a relation with at most two classes per row, taken at a pivot s:
// the relation on X minus {s} whose row at x regroups y by whether y sits in
// x's second class XOR y sits in the class of s's row not containing x.
// Ground set ids are compacted; original_ids maps them back.
struct SwitchedRelation {
    HomogeneousRelation relation;
    int pivot = -1;
    std::vector<int> original_ids;
};

SwitchedRelation seidel_switch(const HomogeneousRelation& h, int s);

// Exhaustive cross-check at oracle scale: for every subset U containing s,
// U is a umodule of h exactly when the image of X minus U is a module of the
// switch at s.
bool verify_switch_correspondence(const HomogeneousRelation& h, int s, int bound = oracle_bound());

// Rooted tree of the strong modules, singletons and the ground set included.
// Nodes are ordered by (size descending, lexicographic members), so the root
// sits at index 0; children of linear nodes are kept in transitive order
// with the direction chosen so the first child has the smaller minimum.
struct ModularTree {
    enum class NodeType { leaf, prime, complete, linear };
    struct Node {
        NodeType type = NodeType::leaf;
        std::vector<int> elements;
        int parent = -1;
        std::vector<int> children;

        bool operator==(const Node&) const = default;
    };
    std::vector<Node> nodes;
    int n = 0;

    bool operator==(const ModularTree&) const = default;
};

ModularTree modular_strong_tree(const HomogeneousRelation& h);

// Switch-based construction of the same canonical tree build_umodular_tree
// produces: strong modules of the switch at pivot 0 are exactly the pivot-free
// strong bipartition sides, and linear nodes reappear as circular ones with
// the upward direction closing the cycle. Requires rows with at most two
// classes on top of the complement-closed family.
UDecompTree fast_umodular_tree(const HomogeneousRelation& h);

}  // namespace umod
