#ifndef JEWELKIT_JACOBIAN_HPP
#define JEWELKIT_JACOBIAN_HPP

#include <string>
#include <vector>

#include "jewelkit/jewel.hpp"
#include "jewelkit/multigraph.hpp"
#include "jewelkit/rational.hpp"

namespace jewelkit {

/// A core connected graph with positive edge lengths of total volume one.
struct MetricGraph {
    MultiGraph graph;
    std::vector<Rat> lengths;  // per edge index
};

std::optional<std::string> metric_validation_error(const MetricGraph& mg);

/// Fundamental cycles of a deterministic spanning tree (first spanning edge
/// in index order wins), as integer vectors over the edge space. Loops give
/// unit vectors; the count is the first Betti number.
std::vector<std::vector<int>> cycle_basis(const MultiGraph& g);

/// Symmetric positive definite Gram matrix of the cycle space.
struct QuadForm {
    std::vector<std::vector<Rat>> m;

    int size() const { return static_cast<int>(m.size()); }
};

enum class EdgeWeighting {
    lengths,  // <e,e> = length(e): the tropical convention, the default
    unit,     // <e,e> = 1, lengths ignored
};

/// Restrict the weighted inner product on edge space to the cycle space:
/// Q_ij = sum_e w_e z_i(e) z_j(e) over the fundamental cycle basis.
QuadForm jacobian_form(const MetricGraph& mg, EdgeWeighting w = EdgeWeighting::lengths);

/// Exact leading-principal-minor test. Throws on a non-symmetric matrix.
bool is_positive_definite(const QuadForm& q);

Rat quadform_det(const QuadForm& q);

struct BoundarySample {
    std::string class_code;                 // complete core class the facet sits on
    std::vector<std::string> core_edge_ids; // the truncated core subgraph
    std::vector<Rat> point;                 // barycentric lengths on the facet
    QuadForm form;
};

/// Jacobian forms at `count` points in the relative interior of the border
/// facet opposite the core subgraph c (the lengths on c sum to the truncation
/// constant). Deterministic under a fixed seed.
std::vector<BoundarySample> facet_samples(const MultiGraph& g, EdgeSet c,
                                          const TruncationParams& params, int count,
                                          unsigned long seed = 1);

/// Samples over every border facet of every complete core class of rank n.
std::vector<BoundarySample> boundary_samples(int n, int count, unsigned long seed = 1,
                                             int jobs = 1);

}  // namespace jewelkit

#endif
