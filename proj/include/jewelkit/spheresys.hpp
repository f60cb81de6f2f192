#ifndef JEWELKIT_SPHERESYS_HPP
#define JEWELKIT_SPHERESYS_HPP

#include <optional>
#include <string>
#include <vector>

#include "jewelkit/multigraph.hpp"
#include "jewelkit/rational.hpp"

namespace jewelkit {

/// A sphere system in the connected sum of n copies of S^1 x S^2, up to
/// diffeomorphism, encoded as its dual graph: one vertex per complementary
/// piece (decorated with the piece's genus), one edge per sphere. The vertex
/// validity clauses encode non-trivial, pairwise non-isotopic spheres: no
/// genus-0 vertex of valence < 3 (a sphere bounding a ball, or parallel
/// copies), except the single-loop vertex describing the one-sphere system at
/// n = 1.
struct DecoratedGraph {
    MultiGraph graph;
    std::vector<int> genus;  // per vertex index
};

/// First violated validity clause, or nullopt when valid.
std::optional<std::string> validation_error(const DecoratedGraph& d);
bool validate(const DecoratedGraph& d);

/// b1 of the dual graph plus total genus; the rank of the ambient manifold.
int total_n(const DecoratedGraph& d);

/// Complete systems cut the manifold into simply-connected pieces: all genus
/// labels zero.
bool is_complete(const DecoratedGraph& d);

/// Core systems contain no separating sphere: bridgeless dual graph.
bool is_core(const DecoratedGraph& d);

/// Number of spheres minus number of complementary pieces: edges - vertices.
int h_value(const DecoratedGraph& d);

/// Number of spheres of t minus the number of components the ambient manifold
/// is cut into by t alone.
int h_value_ambient(const DecoratedGraph& d, EdgeSet t);

/// The class of the subsystem with sphere set t, inside the same manifold:
/// contract every edge not in t (contracting a loop adds one to the genus of
/// its vertex). Preserves total_n; the result is valid.
DecoratedGraph subsystem_class(const DecoratedGraph& d, EdgeSet t);

/// t is a core complement when the remaining spheres form a core system in
/// the cut manifold — equivalently the complementary edges span a core
/// subgraph. Checked by that criterion and, independently, by a direct
/// cut-based bridge test; the two must agree.
bool is_core_complement(const DecoratedGraph& d, EdgeSet t);

/// All core complements, ordered by (size, bitmask).
std::vector<EdgeSet> core_complements(const DecoratedGraph& d);

/// r = h(S) - h(T) and the truncation constant 3^r / N.
std::pair<int, Rat> r_and_t(const DecoratedGraph& d, EdgeSet t, long long N);

struct WallPiece {
    int genus = 0;             // n_i of the piece
    int boundary_spheres = 0;  // s_i, counted with half-edges
};

/// A wall, described by its jewel factor and the pieces the system cuts the
/// manifold into.
struct WallDescriptor {
    DecoratedGraph system;          // the incomplete core class indexing the wall
    std::vector<WallPiece> pieces;  // one per complementary piece, sorted
    std::size_t jewel_face_count = 0;
};

/// Wall data of an incomplete core system over its own spheres. Errors on
/// complete input: walls are indexed by incomplete systems only.
WallDescriptor pieces(const DecoratedGraph& t);

/// A complete core class containing t's spheres with t as a core complement:
/// each positive-genus piece is opened up by that many new loops. The three
/// claimed properties are verified on the result.
DecoratedGraph complete_extension(const DecoratedGraph& t);

struct ClassFilter {
    std::optional<bool> complete;  // true: complete only; false: incomplete only
    std::optional<bool> core;
    int min_edges = 1;
    int max_edges = 1 << 20;
};

struct SystemClass {
    std::string code;
    int edge_count = 0;
    bool complete = false;
    bool core = false;
    DecoratedGraph representative;  // in canonical form
};

/// Largest n enumerate_classes accepts.
constexpr int kMaxEnumerationN = 4;

/// All isomorphism classes of valid systems of rank n matching the filter,
/// ordered by canonical code. Workers partition the generation; the merge
/// restores a job-count-independent order.
std::vector<SystemClass> enumerate_classes(int n, const ClassFilter& filter = {}, int jobs = 1);

/// Relabel vertices and reorder edges into canonical form (edge IDs become
/// s1..sk in canonical order).
DecoratedGraph canonical_representative(const DecoratedGraph& d);

/// Max edge count over incomplete core classes, minus one; checked against
/// 3n - 6 before returning.
int sc_infty_dimension(int n);

/// True iff every core class with at most n-1 spheres is incomplete (it takes
/// at least n spheres to cut the manifold into simply connected pieces).
bool skeleton_check(int n);

}  // namespace jewelkit

#endif
