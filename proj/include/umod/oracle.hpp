#pragma once

#include <vector>

#include "umod/core.hpp"

namespace umod {

// Exhaustive-search size cap. Defaults to 14; the UMOD_ORACLE_BOUND
// environment variable overrides it.
int oracle_bound();

// All umodules of h, found by checking every subset. Includes the trivial
// members (empty set, singletons, co-singletons, X). Each set is sorted and
// the family is ordered by (size, lexicographic). Throws PreconditionError
// when h.size() exceeds bound.
std::vector<std::vector<int>> brute_force_umodules(const HomogeneousRelation& h,
                                                   int bound = oracle_bound());

// Same exhaustive sweep for modules.
std::vector<std::vector<int>> brute_force_modules(const HomogeneousRelation& h,
                                                  int bound = oracle_bound());

// Threshold graphs are exactly those built from one vertex by repeatedly
// adding an isolated or a dominating vertex; recognized here by peeling such
// vertices off.
bool is_threshold_graph(const UndirectedGraph& g);

// True iff in every induced subgraph of g, every umodule is a module or the
// complement of a module. Exhaustive over subsets, so n is capped by bound.
bool check_threshold_umodule_property(const UndirectedGraph& g, int bound = oracle_bound());

}  // namespace umod
