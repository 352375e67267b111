#pragma once

#include <cstdint>
#include <vector>

#include "umod/core.hpp"

namespace umod {

// Deterministic instance generators (seeded mt19937_64) for tests and the
// bench subcommand.
UndirectedGraph random_graph(int n, std::uint64_t seed);
Tournament random_tournament(int n, std::uint64_t seed);

// Replays a random twin/antitwin build recipe, so the result is always
// totally decomposable.
Tournament random_locally_transitive_tournament(int n, std::uint64_t seed);

// Uniform class ids below max_classes per row, then normalized; the local
// congruence never exceeds max_classes.
HomogeneousRelation random_relation(int n, int max_classes, std::uint64_t seed);

std::vector<int> random_permutation(int n, std::uint64_t seed);
Tournament relabel(const Tournament& t, const std::vector<int>& perm);

}  // namespace umod
