#pragma once

#include <iosfwd>
#include <string>

#include "umod/core.hpp"

namespace umod {

enum class InputKind { graph, tournament, two_structure, relation };

// A parsed input document. Exactly one of the structure members is
// meaningful, selected by `kind`.
struct InputDocument {
    InputKind kind = InputKind::relation;
    std::string source;

    UndirectedGraph graph;
    Tournament tournament;
    TwoStructure structure;
    HomogeneousRelation relation;

    // Standard relation of whichever structure was parsed (the relation
    // itself for `relation` inputs).
    HomogeneousRelation to_relation() const;
};

// Parses the line-oriented input format. The first significant line is a
// header, one of:
//
//   graph n m          followed by m lines "u v"
//   tournament n       followed by an n x n 0/1 matrix, one row per line
//   twostructure n     followed by an n x n color matrix
//   relation n         followed by an n x n class matrix (diagonal ignored)
//
// Ids are 0-based. '#' starts a comment; blank lines are skipped. Any
// malformed token, out-of-range id, self loop, duplicate edge, nonzero
// tournament diagonal, or asymmetric tournament pair raises ParseError
// carrying the 1-based line and column of the offending token.
InputDocument parse_input(std::istream& in, const std::string& source = "<input>");

// Reads from a file, or from stdin when `path` is "-".
InputDocument parse_input_file(const std::string& path);

}  // namespace umod
