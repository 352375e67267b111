#pragma once

#include <array>
#include <optional>
#include <vector>

#include "umod/core.hpp"
#include "umod/oracle.hpp"

namespace umod {

// Umodule witness for graphs and tournaments: the outside splits into sides
// C and D with every inside vertex fully joined to exactly one side, for
// tournaments beating one side in full and beaten by the other. C is the
// side holding the smallest outside vertex; D may be empty.
struct BijoinWitness {
    std::vector<int> inside;
    std::vector<int> side_c;
    std::vector<int> side_d;
    std::vector<char> joined_to_c;  // aligned with inside
};

std::optional<BijoinWitness> bijoin_witness(const UndirectedGraph& g,
                                            const std::vector<int>& inside);
std::optional<BijoinWitness> bijoin_witness(const Tournament& t, const std::vector<int>& inside);

// In-diamond: a directed 3-cycle with all three arcs into a fourth vertex;
// out-diamond: a fourth vertex with arcs onto all of a 3-cycle. The witness
// lists the 3-cycle in arc order, then the apex.
struct DiamondReport {
    bool diamond_free = true;
    std::optional<std::array<int, 4>> witness;
};

DiamondReport find_diamond(const Tournament& t);

inline bool is_diamond_free(const Tournament& t) { return find_diamond(t).diamond_free; }

// Every out- and in-neighborhood induces a transitive subtournament.
bool is_locally_transitive(const Tournament& t);

// Computed three independent ways (diamond scan, neighborhood transitivity,
// absence of prime nodes in the decomposition tree) with agreement asserted.
bool is_totally_decomposable(const Tournament& t);

// Definitional check for graphs: every induced subgraph on at least four
// vertices has a non-trivial umodule. Exponential, guarded by the bound.
bool is_totally_decomposable(const UndirectedGraph& g, int bound = oracle_bound());

// No induced C5, bull, gem, or co-gem.
bool obstruction_free(const UndirectedGraph& g);

// Round layout of a totally decomposable tournament, rotated to start at
// vertex 0: every vertex beats exactly the vertices that follow it
// consecutively, out-degree many. The invariant is re-verified before
// returning. Unique up to rotation, so relabelling a tournament relabels
// its order; reversing one reverses it.
std::vector<int> circular_order(const Tournament& t);

struct ExtensionStep {
    enum class Kind { twin, antitwin };
    Kind kind = Kind::twin;
    int anchor = -1;
    int added = -1;
    bool added_beats_anchor = false;

    bool operator==(const ExtensionStep&) const = default;
};

// Build recipe: start from one vertex and repeatedly attach a twin (same
// out-neighborhood as the anchor) or antitwin (the anchor's in-neighborhood)
// plus the recorded arc against the anchor. A tournament admits one exactly
// when it is totally decomposable; replay reconstructs it arc for arc.
struct ExtensionSequence {
    int start = 0;
    std::vector<ExtensionStep> steps;

    bool operator==(const ExtensionSequence&) const = default;
};

std::optional<ExtensionSequence> extension_sequence(const Tournament& t);
Tournament replay_extension_sequence(int n, const ExtensionSequence& seq);

// Isomorphism of totally decomposable tournaments through their circular
// encodings: per position the out-arc span (gap to the first out-neighbor
// and out-degree), direction canonicalized, rotations compared.
bool isomorphic_decomposable(const Tournament& a, const Tournament& b);

// Vertices outside {x*} and N⁺(x*) for x* of maximum out-degree (ties to
// the lowest id); the kept set induces a transitive subtournament.
std::vector<int> feedback_vertex_set(const Tournament& t);

}  // namespace umod
