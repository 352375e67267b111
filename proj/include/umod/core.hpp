#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "umod/util.hpp"

namespace umod {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input violates a documented operation precondition.
struct PreconditionError : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line;
    int col;
    ParseError(int line_, int col_, const std::string& msg)
        : Error(msg), line(line_), col(col_) {}
};

using ClassId = std::uint32_t;

// Diagonal sentinel: an element is in no class of its own row.
inline constexpr ClassId kNoClass = std::numeric_limits<ClassId>::max();

struct GroundSet {
    int n = 0;
    // Empty, or exactly n labels (dense id -> external name).
    std::vector<std::string> labels;
};

struct UndirectedGraph {
    int n = 0;
    std::vector<Bitset> adj;

    UndirectedGraph() = default;
    explicit UndirectedGraph(int n_) : n(n_), adj(static_cast<std::size_t>(n_), Bitset(n_)) {}

    void add_edge(int u, int v) {
        adj[static_cast<std::size_t>(u)].set(v);
        adj[static_cast<std::size_t>(v)].set(u);
    }

    bool has_edge(int u, int v) const { return adj[static_cast<std::size_t>(u)].test(v); }

    int degree(int u) const { return adj[static_cast<std::size_t>(u)].count(); }
};

struct Tournament {
    int n = 0;
    // beats[x].test(y) iff the arc goes x -> y.
    std::vector<Bitset> beats;

    Tournament() = default;
    explicit Tournament(int n_) : n(n_), beats(static_cast<std::size_t>(n_), Bitset(n_)) {}

    void set_arc(int u, int v) {
        beats[static_cast<std::size_t>(u)].set(v);
        beats[static_cast<std::size_t>(v)].reset(u);
    }

    bool arc(int u, int v) const { return beats[static_cast<std::size_t>(u)].test(v); }

    int out_degree(int u) const { return beats[static_cast<std::size_t>(u)].count(); }

    // Exactly one arc per unordered pair, none on the diagonal.
    bool valid() const;
};

// Complete edge-colored structure: an arbitrary color per ordered pair.
struct TwoStructure {
    int n = 0;
    std::vector<std::uint32_t> color;  // row-major, diagonal ignored

    TwoStructure() = default;
    explicit TwoStructure(int n_)
        : n(n_), color(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0) {}

    std::uint32_t at(int x, int y) const {
        return color[static_cast<std::size_t>(x) * static_cast<std::size_t>(n) +
                     static_cast<std::size_t>(y)];
    }

    void set(int x, int y, std::uint32_t c) {
        color[static_cast<std::size_t>(x) * static_cast<std::size_t>(n) +
              static_cast<std::size_t>(y)] = c;
    }
};

// Where a relation came from. Relations built from graphs or tournaments are
// known to satisfy the four elements condition, which some operations use as
// a cheap precondition certificate.
enum class Provenance { unknown, graph, tournament, two_structure };

// One equivalence relation per element x over X \ {x}, stored as a dense
// class-id matrix. Rows are kept normalized: scanning row x by increasing
// column, class ids appear in first-use order 0,1,2,...; the diagonal holds
// kNoClass.
class HomogeneousRelation {
public:
    HomogeneousRelation() = default;

    // Builds from raw per-row class ids (diagonal entries ignored) and
    // normalizes each row.
    static HomogeneousRelation from_classes(int n, const std::vector<std::vector<ClassId>>& rows,
                                            Provenance prov = Provenance::unknown);

    int size() const { return n_; }

    ClassId at(int x, int y) const {
        return cells_[static_cast<std::size_t>(x) * static_cast<std::size_t>(n_) +
                      static_cast<std::size_t>(y)];
    }

    // Number of classes of row x (at least 1; a one-element ground set still
    // counts one empty class).
    int row_class_count(int x) const;

    Provenance provenance() const { return prov_; }
    void set_provenance(Provenance p) { prov_ = p; }

    // Provenance is a hint, not part of the relation's value.
    bool operator==(const HomogeneousRelation& o) const {
        return n_ == o.n_ && cells_ == o.cells_;
    }

private:
    int n_ = 0;
    std::vector<ClassId> cells_;
    Provenance prov_ = Provenance::unknown;
};

// True iff y and z fall in the same class of row x.
inline bool same_class(const HomogeneousRelation& h, int x, int y, int z) {
    return h.at(x, y) == h.at(x, z);
}

// Maximum row class count over all elements.
int local_congruence(const HomogeneousRelation& h);

// x ~ y iff the ordered color pair (C(x,y), C(y,x)) matches. Graphs and
// tournaments are the two-color special cases.
HomogeneousRelation build_standard_relation(const UndirectedGraph& g);
HomogeneousRelation build_standard_relation(const Tournament& t);
HomogeneousRelation build_standard_relation(const TwoStructure& s);

// U is a module iff no outside element distinguishes two elements of U.
bool is_module(const HomogeneousRelation& h, const Bitset& u);
bool is_module(const HomogeneousRelation& h, const std::vector<int>& u);

// U is a umodule iff every element of U induces the same partition on X \ U.
bool is_umodule(const HomogeneousRelation& h, const Bitset& u);
bool is_umodule(const HomogeneousRelation& h, const std::vector<int>& u);

// Empty set, singletons, co-singletons and X are umodules of any relation.
inline bool is_trivial_subset(int n, int k) { return k <= 1 || k >= n - 1; }

struct FourElementsReport {
    bool holds = false;
    // A violating ordered quadruple (m, m', x, x') when holds is false.
    std::optional<std::array<int, 4>> witness;
};

// Checks, over all ordered quadruples of distinct elements (m, m', x, x'):
// if neither m nor m' distinguishes {x,x'} and x does not distinguish {m,m'},
// then x' does not distinguish {m,m'} either; and the same with all four
// "does not distinguish" replaced by "distinguishes".
FourElementsReport check_four_elements(const HomogeneousRelation& h);

}  // namespace umod
