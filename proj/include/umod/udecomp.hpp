#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "umod/core.hpp"
#include "umod/util.hpp"

namespace umod {

enum class UNodeType { leaf, prime, complete, circular };

// Unrooted decomposition tree of a self-complemented umodule family. Leaves
// 0..n-1 carry the elements; internal nodes are typed. Edges are exactly the
// strong bipartitions: removing one splits the leaves into the two sides.
// Every umodule is readable off the tree: edge sides, unions of 2..k-2
// incident subtrees at complete nodes, cyclic intervals at circular nodes.
//
// Canonical form: leaves come first (node i = element i); internal nodes
// follow in preorder from the internal node adjacent to leaf 0, visiting
// subtrees by ascending minimum leaf. Prime/complete nodes list neighbors by
// ascending minimum leaf of the neighbor's side; circular nodes list them in
// cyclic order, at the rotation/reflection minimizing that key sequence.
struct UDecompTree {
    struct Node {
        UNodeType type = UNodeType::leaf;
        int element = -1;            // leaves only
        std::vector<int> neighbors;  // circular nodes: cyclic order

        bool operator==(const Node&) const = default;
    };
    std::vector<Node> nodes;
    int n = 0;

    bool operator==(const UDecompTree&) const = default;
};

// Builds the canonical tree for a relation whose umodule family is closed
// under complement. Pairs every element with pivot 0 through mu runs,
// extracts the strong bipartition sides avoiding 0, and types each node by
// probing which unions of two adjacent subtrees are umodules.
UDecompTree build_umodular_tree(const HomogeneousRelation& h);

// All umodules encoded by the tree except the empty set and X, each sorted,
// the family ordered by (size, lexicographic). Throws PreconditionError when
// more than `limit` sets would be produced.
std::vector<std::vector<int>> enumerate_umodules(const UDecompTree& t,
                                                 std::uint64_t limit = std::uint64_t{1} << 20);

// Number of umodules the tree encodes (empty set and X excluded), without
// expanding them.
BigUint count_umodules(const UDecompTree& t);

std::string tree_to_json(const UDecompTree& t);
std::string tree_to_dot(const UDecompTree& t);

// Throws PreconditionError unless the umodule family is certifiably closed
// under complement: graph/tournament provenance qualifies directly, the four
// elements condition is a sufficient check, and at oracle scale the family
// itself is inspected as a fallback.
void require_self_complemented(const HomogeneousRelation& h);

namespace detail {

struct NodeTyping {
    UNodeType type = UNodeType::prime;
    std::vector<int> cycle;  // circular only: piece indices in cyclic order
};

// below: leaf set of the node's side away from leaf 0; pieces: leaf sets of
// all components around the node, children by ascending minimum element,
// the piece toward leaf 0 last.
using NodeTyper = std::function<NodeTyping(const Bitset& below, const std::vector<Bitset>& pieces)>;

// Shared tree assembly for the generic and switch-based builders: turns the
// laminar family of 0-free strong bipartition sides into the canonical
// unrooted tree. Degree-3 nodes are circular by convention (all three types
// describe the same bipartitions there), so the typer only sees degree >= 4.
UDecompTree assemble_umodular_tree(int n, const std::vector<Bitset>& zero_free_sides,
                                   const NodeTyper& typer);

}  // namespace detail

}  // namespace umod
