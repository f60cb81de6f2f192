#ifndef JEWELKIT_JEWEL_HPP
#define JEWELKIT_JEWEL_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "jewelkit/multigraph.hpp"
#include "jewelkit/rational.hpp"

namespace jewelkit {

/// A face of the jewel of a core graph G, indexed by a forest F (possibly
/// empty) together with a strictly nested chain of proper core subgraphs,
/// each chain member being the core of its union with F. Codimension of the
/// face is |F| + chain length; the empty label is the whole jewel.
struct FaceLabel {
    EdgeSet forest;
    std::vector<EdgeSet> chain;  // strictly increasing

    bool operator==(const FaceLabel&) const = default;
    int codim() const { return forest.size() + static_cast<int>(chain.size()); }
};

/// True iff s's label set contains t's, i.e. the face of s is a subface of
/// the face of t (reverse inclusion is the face order).
bool label_contains(const FaceLabel& s, const FaceLabel& t);

bool validate_face_label(const MultiGraph& g, const FaceLabel& s);

/// All faces of J(G) as labels, ordered by (codimension, forest, chain),
/// with the reverse-inclusion face order.
class JewelPoset {
public:
    JewelPoset(MultiGraph host, std::vector<FaceLabel> faces);

    const MultiGraph& host() const { return host_; }
    const std::vector<FaceLabel>& faces() const { return faces_; }
    std::size_t size() const { return faces_.size(); }
    int codim(int i) const { return faces_[i].codim(); }

    /// face i is a (sub)face of face j
    bool face_le(int i, int j) const { return label_contains(faces_[i], faces_[j]); }

    /// index of a label, or -1
    int find(const FaceLabel& s) const;

private:
    MultiGraph host_;
    std::vector<FaceLabel> faces_;
    std::map<std::pair<std::uint64_t, std::vector<std::uint64_t>>, int> index_;
};

JewelPoset face_poset(const MultiGraph& g);

/// Truncation scale: constants 3^rank/N shave the faces opposite core
/// subgraphs. Valid when N exceeds 3^rank(G) times the number of proper core
/// subgraphs; the default leaves a factor-9 margin on top of that, and
/// lattice_check is the per-instance arbiter of geometric correctness.
struct TruncationParams {
    long long N = 0;

    static TruncationParams defaults_for(const MultiGraph& g);
};

/// 3^first_betti(c) / N for a proper core subgraph c.
Rat truncation_constant(const MultiGraph& g, EdgeSet c, const TruncationParams& params);

/// N > 3^rank(g) * #proper-core-subgraphs — the margin the defaults satisfy.
bool satisfies_conservative_margin(const MultiGraph& g, const TruncationParams& params);

/// Exact-rational H-representation: barycentric coordinates indexed by edges,
/// the unit-sum equality, nonnegativity rows, and one truncation row per
/// proper core subgraph.
struct HPolytope {
    enum class RowKind { nonneg, truncation };
    struct Row {
        std::vector<Rat> coeffs;  // coeffs . x >= rhs
        Rat rhs;
    };
    struct Tag {
        RowKind kind;
        int edge = -1;    // nonneg rows
        EdgeSet core{};   // truncation rows
    };

    std::vector<std::string> coords;  // edge IDs
    std::vector<Rat> equality_coeffs;
    Rat equality_rhs;
    std::vector<Row> rows;
    std::vector<Tag> tags;

    int dim_ambient() const { return static_cast<int>(coords.size()); }
};

HPolytope hrep(const MultiGraph& g, const TruncationParams& params);

/// All vertices, exact and sorted, by rank-checking active-constraint subsets
/// against the equality. Throws on an empty polytope.
std::vector<std::vector<Rat>> vertices(const HPolytope& p);

struct LatticeReport {
    bool ok = false;
    std::string detail;  // first failure, empty when ok
};

/// Certifies that the face lattice reconstructed from the vertices of hrep(g)
/// is isomorphic, as a graded poset, to face_poset(g) under the natural map
/// sending a label to the vertices where its defining rows are tight.
LatticeReport lattice_check_report(const MultiGraph& g, const TruncationParams& params);
bool lattice_check(const MultiGraph& g, const TruncationParams& params);

/// Verified order isomorphism between the border facet at a proper core
/// subgraph c and the product of the jewels of c and of g//c.
struct FacetProductCertificate {
    EdgeSet core;
    MultiGraph left_host;   // span of c
    MultiGraph right_host;  // g // c
    std::size_t left_count = 0, right_count = 0;
    // (face index in face_poset(g), index in left factor, index in right factor)
    std::vector<std::array<int, 3>> correspondence;
};

FacetProductCertificate facet_product_iso(const MultiGraph& g, EdgeSet c);

/// Verified order isomorphism between the interior facet at a non-loop edge e
/// (faces whose forest contains e) and the jewel poset of g//e.
struct InteriorFacetCertificate {
    int edge = -1;
    MultiGraph host;  // g // e
    std::size_t face_count = 0;
    std::vector<std::array<int, 2>> correspondence;
};

InteriorFacetCertificate interior_facet_iso(const MultiGraph& g, int edge_index);

}  // namespace jewelkit

#endif
