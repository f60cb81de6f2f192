#ifndef JEWELKIT_MULTIGRAPH_HPP
#define JEWELKIT_MULTIGRAPH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace jewelkit {

/// Subset of the edges of a host MultiGraph, as a bitmask over edge indices.
/// Host graphs are capped at 63 edges, far beyond desk scale.
struct EdgeSet {
    std::uint64_t bits = 0;

    bool contains(int e) const { return (bits >> e) & 1u; }
    void insert(int e) { bits |= (std::uint64_t{1} << e); }
    void erase(int e) { bits &= ~(std::uint64_t{1} << e); }
    int size() const { return __builtin_popcountll(bits); }
    bool empty() const { return bits == 0; }

    EdgeSet operator|(EdgeSet o) const { return {bits | o.bits}; }
    EdgeSet operator&(EdgeSet o) const { return {bits & o.bits}; }
    EdgeSet minus(EdgeSet o) const { return {bits & ~o.bits}; }
    bool subset_of(EdgeSet o) const { return (bits & ~o.bits) == 0; }
    bool proper_subset_of(EdgeSet o) const { return subset_of(o) && bits != o.bits; }
    auto operator<=>(const EdgeSet&) const = default;

    std::vector<int> indices() const;
};

/// Finite multigraph: loops and parallel edges allowed. Vertices carry integer
/// identifiers, edges string identifiers; endpoints are stored as vertex
/// indices. The stored orders are input artifacts only — any permutation
/// yields an isomorphic graph.
class MultiGraph {
public:
    struct Edge {
        std::string id;
        int u = 0;  // vertex indices; u == v for loops
        int v = 0;
    };

    MultiGraph() = default;
    MultiGraph(std::vector<int> vertex_ids, std::vector<Edge> edges);

    /// Build from endpoint vertex IDs (as opposed to indices).
    static MultiGraph from_ends(std::vector<int> vertex_ids,
                                const std::vector<std::tuple<std::string, int, int>>& edges);

    int vertex_count() const { return static_cast<int>(vertex_ids_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int vertex_id(int idx) const { return vertex_ids_[idx]; }
    const Edge& edge(int idx) const { return edges_[idx]; }
    const std::vector<int>& vertex_ids() const { return vertex_ids_; }
    const std::vector<Edge>& edges() const { return edges_; }

    int vertex_index(int id) const;                 // throws on unknown id
    int edge_index(const std::string& id) const;    // throws on unknown id
    bool is_loop(int e) const { return edges_[e].u == edges_[e].v; }
    int valence(int v_idx) const;                   // half-edge count, loops count twice

    EdgeSet all_edges() const;
    EdgeSet edge_set(const std::vector<std::string>& ids) const;  // throws on unknown id
    std::vector<std::string> edge_ids(EdgeSet a) const;

private:
    std::vector<int> vertex_ids_;
    std::vector<Edge> edges_;
};

// ---- subgraph calculus ----------------------------------------------------

/// Connected components of the whole graph, as a partition of vertex indices.
std::vector<std::vector<int>> components(const MultiGraph& g);

/// First Betti number of the whole graph: |E| - |V| + #components.
int first_betti(const MultiGraph& g);

/// First Betti number of the subgraph spanned by a (nonempty).
int first_betti(const MultiGraph& g, EdgeSet a);

/// Bridges of the subgraph spanned by a (bridges are intrinsic to the span).
EdgeSet bridges_of_span(const MultiGraph& g, EdgeSet a);

/// True iff the spanned subgraph is core: no separating edges. Spanned
/// subgraphs never have isolated vertices. Requires a nonempty.
bool is_core(const MultiGraph& g, EdgeSet a);

/// The edges of a lying on a cycle of the spanned subgraph — a minus its
/// bridges. Result is core or empty; idempotent; empty iff a is a forest.
EdgeSet core_of(const MultiGraph& g, EdgeSet a);

/// True iff the span of a is acyclic. The empty set is a forest.
bool is_forest(const MultiGraph& g, EdgeSet a);

/// Collapse each edge of a to a point. Edges of a disappear (loops simply
/// vanish); all other edges keep their IDs with endpoints merged.
MultiGraph collapse(const MultiGraph& g, EdgeSet a);

/// E(g) minus a. Throws if a = E(g): the empty complement is not a subgraph.
EdgeSet complement(const MultiGraph& g, EdgeSet a);

/// The spanned subgraph as a standalone graph: vertices meeting a, in host
/// order; edges of a in host order, IDs preserved.
MultiGraph span_subgraph(const MultiGraph& g, EdgeSet a);

/// All edge sets whose span is core, ordered by (size, bitmask).
std::vector<EdgeSet> enumerate_core_subgraphs(const MultiGraph& g, bool proper_only);

// ---- isomorphism ----------------------------------------------------------

struct CanonicalForm {
    std::string code;             // equal iff labeled graphs isomorphic
    std::vector<int> vertex_map;  // vertex index -> canonical position
    std::vector<int> edge_map;    // edge index -> canonical position
};

/// Canonical form under optional per-vertex integer labels (e.g. genus).
/// Exact backtracking over vertex bijections with prefix pruning; desk scale
/// keeps this fast without an external canonical-labeling dependency.
CanonicalForm canonical_form(const MultiGraph& g,
                             const std::vector<int>* vertex_labels = nullptr);

bool is_isomorphic(const MultiGraph& g1, const MultiGraph& g2);

/// All label- and adjacency-preserving vertex permutations.
std::vector<std::vector<int>> vertex_automorphisms(const MultiGraph& g,
                                                   const std::vector<int>* vertex_labels = nullptr);

/// True iff some automorphism (edge bijection compatible with a vertex
/// bijection) induces an odd permutation of the edge set. Any parallel pair
/// or double loop qualifies via the swap fixing all vertices.
bool has_odd_edge_automorphism(const MultiGraph& g,
                               const std::vector<int>* vertex_labels = nullptr);

/// All connected core graphs with 1..max_edges edges, one per isomorphism
/// class, ordered by canonical code.
std::vector<MultiGraph> enumerate_connected_core_graphs(int max_edges);

int permutation_sign(const std::vector<int>& p);

}  // namespace jewelkit

#endif
