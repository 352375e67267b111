#pragma once

#include <vector>

#include "umod/core.hpp"

namespace umod {

// Ordered list of disjoint non-empty parts covering 0..n-1. Marks flag parts
// known to be unrefinable; they are bookkeeping for the refinement loop and
// do not take part in equality.
struct Partition {
    int n = 0;
    std::vector<std::vector<int>> parts;
    std::vector<char> marks;

    // {S, X \ S}, both parts unmarked. S must be a proper non-empty subset.
    static Partition top(int n, const std::vector<int>& s);

    bool valid() const;

    // Parts ordered by minimum element, elements ascending. Marks follow
    // their parts.
    void canonicalize();

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.n == b.n && a.parts == b.parts;
    }
};

// Normalized class-id vector of row x over the columns X \ C, ascending.
// Two elements of C get equal signatures iff they induce the same partition
// of X \ C.
using OutsideSignature = std::vector<ClassId>;

OutsideSignature signature(const HomogeneousRelation& h, const std::vector<int>& c, int x);

// Replaces part `index` by its signature classes, in place in the part
// order; fragments appear by ascending minimum element and come out
// unmarked, untouched parts keep their marks. No split returns p unchanged.
Partition refine(const HomogeneousRelation& h, const Partition& p, int index);
// Convenience overload; c must be one of p's parts.
Partition refine(const HomogeneousRelation& h, const Partition& p, const std::vector<int>& c);

enum class MuAlgorithm { naive, hopcroft };

// Coarsest partition of X into umodules at or below {S, X \ S}, canonical
// form. The naive variant reruns full signature splits to a fixpoint; the
// hopcroft variant batches columns so each (element, column) pair is
// examined once. Both return the same partition.
Partition mu(const HomogeneousRelation& h, const std::vector<int>& s,
             MuAlgorithm alg = MuAlgorithm::hopcroft);

// Module analog of mu: coarsest partition into modules at or below
// {S, X \ S}. A part splits when an outside element sees it with two
// different colors.
Partition coarsest_module_partition(const HomogeneousRelation& h, const std::vector<int>& s);

// Smallest module containing the seed: any outside element distinguishing
// two members is forced in, to a fixpoint.
Bitset smallest_module_containing(const HomogeneousRelation& h, const std::vector<int>& seed);

}  // namespace umod
