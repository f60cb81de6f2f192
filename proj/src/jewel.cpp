#include "jewelkit/jewel.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

namespace jewelkit {

bool label_contains(const FaceLabel& s, const FaceLabel& t) {
    if (!t.forest.subset_of(s.forest)) return false;
    for (EdgeSet c : t.chain)
        if (std::find(s.chain.begin(), s.chain.end(), c) == s.chain.end()) return false;
    return true;
}

bool validate_face_label(const MultiGraph& g, const FaceLabel& s) {
    if (!is_forest(g, s.forest)) return false;
    EdgeSet all = g.all_edges();
    for (std::size_t i = 0; i < s.chain.size(); ++i) {
        EdgeSet c = s.chain[i];
        if (c.empty() || c.bits == all.bits) return false;
        if (!is_core(g, c)) return false;
        if (i > 0 && !s.chain[i - 1].proper_subset_of(c)) return false;
        if (core_of(g, s.forest | c) != c) return false;
    }
    return true;
}

static std::pair<std::uint64_t, std::vector<std::uint64_t>> label_key(const FaceLabel& s) {
    std::vector<std::uint64_t> ch;
    ch.reserve(s.chain.size());
    for (EdgeSet c : s.chain) ch.push_back(c.bits);
    return {s.forest.bits, std::move(ch)};
}

JewelPoset::JewelPoset(MultiGraph host, std::vector<FaceLabel> faces)
    : host_(std::move(host)), faces_(std::move(faces)) {
    for (int i = 0; i < static_cast<int>(faces_.size()); ++i) index_[label_key(faces_[i])] = i;
}

int JewelPoset::find(const FaceLabel& s) const {
    auto it = index_.find(label_key(s));
    return it == index_.end() ? -1 : it->second;
}

JewelPoset face_poset(const MultiGraph& g) {
    if (g.edge_count() == 0 || !is_core(g, g.all_edges()))
        throw std::invalid_argument("face_poset requires a core graph");

    auto cores = enumerate_core_subgraphs(g, /*proper_only=*/true);

    std::vector<FaceLabel> faces;
    const std::uint64_t top = std::uint64_t{1} << g.edge_count();
    for (std::uint64_t fmask = 0; fmask < top; ++fmask) {
        EdgeSet forest{fmask};
        if (!is_forest(g, forest)) continue;
        // cores compatible with this forest, in enumeration order (by size)
        std::vector<EdgeSet> compat;
        for (EdgeSet c : cores)
            if (core_of(g, forest | c) == c) compat.push_back(c);
        const int k = static_cast<int>(compat.size());
        // every strictly nested chain over compat, the empty chain included
        std::vector<EdgeSet> chain;
        auto dfs = [&](auto&& self, int from) -> void {
            faces.push_back({forest, chain});
            for (int i = from; i < k; ++i) {
                if (!chain.empty() && !chain.back().proper_subset_of(compat[i])) continue;
                chain.push_back(compat[i]);
                self(self, i + 1);
                chain.pop_back();
            }
        };
        dfs(dfs, 0);
    }

    std::sort(faces.begin(), faces.end(), [](const FaceLabel& a, const FaceLabel& b) {
        if (a.codim() != b.codim()) return a.codim() < b.codim();
        if (a.forest.bits != b.forest.bits) return a.forest.bits < b.forest.bits;
        return label_key(a).second < label_key(b).second;
    });
    return JewelPoset(g, std::move(faces));
}

TruncationParams TruncationParams::defaults_for(const MultiGraph& g) {
    int rank = first_betti(g);
    long long k = static_cast<long long>(enumerate_core_subgraphs(g, true).size());
    long long pow3 = 1;
    for (int i = 0; i < rank + 2; ++i) pow3 *= 3;
    return {pow3 * (k + 1)};
}

bool satisfies_conservative_margin(const MultiGraph& g, const TruncationParams& params) {
    if (params.N <= 0) return false;
    int rank = first_betti(g);
    Int bound = int_pow(3, rank) * Int(static_cast<long>(enumerate_core_subgraphs(g, true).size()));
    return Int(static_cast<long>(params.N)) > bound;
}

// hrep rejects only egregious scales (a shave at least the size of the whole
// simplex); for anything subtler, lattice_check is the arbiter.
static void check_margin(const MultiGraph& g, const TruncationParams& params) {
    if (params.N <= 0) throw std::invalid_argument("truncation scale N must be positive");
    for (EdgeSet c : enumerate_core_subgraphs(g, true))
        if (truncation_constant(g, c, params) >= 1)
            throw std::invalid_argument("N violates the truncation margin (too small for this graph)");
}

Rat truncation_constant(const MultiGraph& g, EdgeSet c, const TruncationParams& params) {
    if (c.empty() || c.bits == g.all_edges().bits || !is_core(g, c))
        throw std::invalid_argument("truncation_constant requires a proper core subgraph");
    if (params.N <= 0) throw std::invalid_argument("truncation scale N must be positive");
    Rat t{int_pow(3, first_betti(g, c)), Int(static_cast<long>(params.N))};
    t.canonicalize();
    return t;
}

HPolytope hrep(const MultiGraph& g, const TruncationParams& params) {
    if (g.edge_count() == 0 || !is_core(g, g.all_edges()))
        throw std::invalid_argument("hrep requires a core graph");
    check_margin(g, params);

    const int ne = g.edge_count();
    HPolytope p;
    for (int e = 0; e < ne; ++e) p.coords.push_back(g.edge(e).id);
    p.equality_coeffs.assign(ne, Rat(1));
    p.equality_rhs = Rat(1);

    for (int e = 0; e < ne; ++e) {
        HPolytope::Row row;
        row.coeffs.assign(ne, Rat(0));
        row.coeffs[e] = 1;
        row.rhs = 0;
        p.rows.push_back(std::move(row));
        p.tags.push_back({HPolytope::RowKind::nonneg, e, {}});
    }
    for (EdgeSet c : enumerate_core_subgraphs(g, true)) {
        HPolytope::Row row;
        row.coeffs.assign(ne, Rat(0));
        for (int e : c.indices()) row.coeffs[e] = 1;
        row.rhs = truncation_constant(g, c, params);
        p.rows.push_back(std::move(row));
        p.tags.push_back({HPolytope::RowKind::truncation, -1, c});
    }
    return p;
}

// ---- vertex enumeration -----------------------------------------------------

namespace {

struct IntRow {
    std::vector<Int> coeffs;
    Int rhs;
};

IntRow integerize(const std::vector<Rat>& coeffs, const Rat& rhs) {
    Int l = rhs.get_den();
    for (const Rat& c : coeffs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    IntRow out;
    out.coeffs.reserve(coeffs.size());
    for (const Rat& c : coeffs) out.coeffs.push_back(Int(c.get_num() * (l / c.get_den())));
    out.rhs = rhs.get_num() * (l / rhs.get_den());
    return out;
}

// Solve the square integer system by fraction-free (Bareiss) elimination.
// Returns nullopt when singular.
std::optional<std::vector<Rat>> solve_square(std::vector<std::vector<Int>> m) {
    const int n = static_cast<int>(m.size());  // rows of [A|b], n x (n+1)
    Int prev(1);
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int r = k; r < n; ++r)
            if (m[r][k] != 0) { pivot = r; break; }
        if (pivot < 0) return std::nullopt;
        if (pivot != k) std::swap(m[pivot], m[k]);
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j <= n; ++j) {
                Int t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    std::vector<Rat> x(n);
    for (int i = n - 1; i >= 0; --i) {
        Rat acc{m[i][n], 1};
        for (int j = i + 1; j < n; ++j) acc -= Rat(m[i][j]) * x[j];
        acc /= Rat(m[i][i]);
        acc.canonicalize();
        x[i] = acc;
    }
    return x;
}

}  // namespace

std::vector<std::vector<Rat>> vertices(const HPolytope& p) {
    const int d = p.dim_ambient();
    const int m = static_cast<int>(p.rows.size());
    if (d == 0) throw std::invalid_argument("vertices: polytope has no coordinates");

    std::vector<IntRow> rows;
    rows.reserve(m);
    for (const auto& r : p.rows) rows.push_back(integerize(r.coeffs, r.rhs));
    IntRow eq = integerize(p.equality_coeffs, p.equality_rhs);

    auto feasible = [&](const std::vector<Rat>& x) {
        for (const auto& r : rows) {
            Rat acc(0);
            for (int j = 0; j < d; ++j)
                if (r.coeffs[j] != 0) acc += Rat(r.coeffs[j]) * x[j];
            if (acc < Rat(r.rhs)) return false;
        }
        return true;
    };

    std::set<std::vector<Rat>, RatVectorLess> found;
    // choose d-1 rows to make tight alongside the equality
    std::vector<int> pick(std::max(d - 1, 0));
    auto run = [&](auto&& self, int idx, int from) -> void {
        if (idx == d - 1) {
            std::vector<std::vector<Int>> sys;
            sys.reserve(d);
            {
                std::vector<Int> r = eq.coeffs;
                r.push_back(eq.rhs);
                sys.push_back(std::move(r));
            }
            for (int i = 0; i < d - 1; ++i) {
                std::vector<Int> r = rows[pick[i]].coeffs;
                r.push_back(rows[pick[i]].rhs);
                sys.push_back(std::move(r));
            }
            auto x = solve_square(std::move(sys));
            if (x && feasible(*x)) found.insert(std::move(*x));
            return;
        }
        for (int r = from; r < m; ++r) {
            pick[idx] = r;
            self(self, idx + 1, r + 1);
        }
    };
    run(run, 0, 0);

    if (found.empty()) throw std::runtime_error("empty polytope");
    return {found.begin(), found.end()};
}

// ---- lattice agreement ------------------------------------------------------

namespace {

bool sorted_subset(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

int affine_rank(const std::vector<std::vector<Rat>>& pts) {
    if (pts.size() <= 1) return 0;
    std::vector<std::vector<Rat>> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        std::vector<Rat> row(pts[i].size());
        for (std::size_t j = 0; j < pts[i].size(); ++j) row[j] = pts[i][j] - pts[0][j];
        diffs.push_back(std::move(row));
    }
    return rational_rank(std::move(diffs));
}

}  // namespace

LatticeReport lattice_check_report(const MultiGraph& g, const TruncationParams& params) {
    JewelPoset poset = face_poset(g);
    HPolytope p = hrep(g, params);
    std::vector<std::vector<Rat>> verts = vertices(p);
    const int nv = static_cast<int>(verts.size());
    const int ne = g.edge_count();

    // vertex set selected by each label's defining equalities
    auto select = [&](const FaceLabel& s) {
        std::vector<int> sel;
        for (int v = 0; v < nv; ++v) {
            bool on = true;
            for (int e : s.forest.indices())
                if (verts[v][e] != 0) { on = false; break; }
            for (std::size_t ci = 0; on && ci < s.chain.size(); ++ci) {
                Rat acc(0);
                for (int e : s.chain[ci].indices()) acc += verts[v][e];
                if (acc != truncation_constant(g, s.chain[ci], params)) on = false;
            }
            if (on) sel.push_back(v);
        }
        return sel;
    };

    std::vector<std::vector<int>> sels;
    sels.reserve(poset.size());
    for (const FaceLabel& s : poset.faces()) {
        auto sel = select(s);
        if (sel.empty()) return {false, "label selects no vertex (truncation too deep?)"};
        sels.push_back(std::move(sel));
    }

    std::set<std::vector<int>> distinct(sels.begin(), sels.end());
    if (distinct.size() != sels.size()) return {false, "two labels select the same geometric face"};

    // order agreement in both directions
    for (std::size_t i = 0; i < sels.size(); ++i)
        for (std::size_t j = 0; j < sels.size(); ++j) {
            bool lab = label_contains(poset.faces()[i], poset.faces()[j]);
            bool geo = sorted_subset(sels[i], sels[j]);
            if (lab != geo) return {false, "face order mismatch between labels and geometry"};
        }

    // grading: affine dimension must equal (ambient - 1) - codim
    for (std::size_t i = 0; i < sels.size(); ++i) {
        std::vector<std::vector<Rat>> pts;
        for (int v : sels[i]) pts.push_back(verts[v]);
        if (affine_rank(pts) != (ne - 1) - poset.faces()[i].codim())
            return {false, "face dimension disagrees with label codimension"};
    }

    // completeness: the closure of the tight sets under intersection must be
    // exactly the label-selected family
    std::set<std::vector<int>> geo_faces;
    {
        std::vector<int> full(nv);
        for (int v = 0; v < nv; ++v) full[v] = v;
        geo_faces.insert(full);
        for (std::size_t r = 0; r < p.rows.size(); ++r) {
            std::vector<int> tight;
            for (int v = 0; v < nv; ++v) {
                Rat acc(0);
                for (int j = 0; j < ne; ++j)
                    if (p.rows[r].coeffs[j] != 0) acc += p.rows[r].coeffs[j] * verts[v][j];
                if (acc == p.rows[r].rhs) tight.push_back(v);
            }
            if (tight.empty()) continue;
            std::vector<std::vector<int>> fresh;
            for (const auto& f : geo_faces) {
                std::vector<int> meet;
                std::set_intersection(f.begin(), f.end(), tight.begin(), tight.end(),
                                      std::back_inserter(meet));
                if (!meet.empty()) fresh.push_back(std::move(meet));
            }
            geo_faces.insert(fresh.begin(), fresh.end());
        }
    }
    if (geo_faces != distinct) return {false, "geometric face lattice differs from label poset"};

    return {true, ""};
}

bool lattice_check(const MultiGraph& g, const TruncationParams& params) {
    return lattice_check_report(g, params).ok;
}

// ---- facet isomorphisms -----------------------------------------------------

namespace {

// position of each original edge index among the surviving set, in order
std::vector<int> reindex_table(const MultiGraph& g, EdgeSet surviving) {
    std::vector<int> table(g.edge_count(), -1);
    int pos = 0;
    for (int e = 0; e < g.edge_count(); ++e)
        if (surviving.contains(e)) table[e] = pos++;
    return table;
}

EdgeSet map_set(EdgeSet s, const std::vector<int>& table) {
    EdgeSet out;
    for (int e : s.indices()) {
        if (table[e] < 0) throw std::logic_error("edge not present in factor");
        out.insert(table[e]);
    }
    return out;
}

}  // namespace

FacetProductCertificate facet_product_iso(const MultiGraph& g, EdgeSet c) {
    if (c.empty() || c.bits == g.all_edges().bits || !is_core(g, c))
        throw std::invalid_argument("facet_product_iso requires a proper core subgraph");

    JewelPoset whole = face_poset(g);
    MultiGraph left_host = span_subgraph(g, c);
    MultiGraph right_host = collapse(g, c);
    JewelPoset left = face_poset(left_host);
    JewelPoset right = face_poset(right_host);

    std::vector<int> to_left = reindex_table(g, c);
    std::vector<int> to_right = reindex_table(g, complement(g, c));

    // subposet of faces whose chain passes through c
    std::vector<int> sub;
    for (int i = 0; i < static_cast<int>(whole.size()); ++i) {
        const auto& ch = whole.faces()[i].chain;
        if (std::find(ch.begin(), ch.end(), c) != ch.end()) sub.push_back(i);
    }

    FacetProductCertificate cert;
    cert.core = c;
    cert.left_host = left_host;
    cert.right_host = right_host;
    cert.left_count = left.size();
    cert.right_count = right.size();

    std::set<std::pair<int, int>> image;
    for (int i : sub) {
        const FaceLabel& s = whole.faces()[i];
        auto at = std::find(s.chain.begin(), s.chain.end(), c);

        FaceLabel ls;
        ls.forest = map_set(s.forest & c, to_left);
        for (auto it = s.chain.begin(); it != at; ++it) ls.chain.push_back(map_set(*it, to_left));

        FaceLabel rs;
        rs.forest = map_set(s.forest.minus(c), to_right);
        for (auto it = std::next(at); it != s.chain.end(); ++it)
            rs.chain.push_back(map_set(it->minus(c), to_right));

        int li = left.find(ls), ri = right.find(rs);
        if (li < 0 || ri < 0)
            throw std::runtime_error("facet_product_iso: image label is not a face of the factor");
        if (!image.insert({li, ri}).second)
            throw std::runtime_error("facet_product_iso: map is not injective");
        cert.correspondence.push_back({i, li, ri});
    }

    if (image.size() != left.size() * right.size())
        throw std::runtime_error("facet_product_iso: map is not onto the product poset");

    // order preserved in both directions
    for (const auto& a : cert.correspondence)
        for (const auto& b : cert.correspondence) {
            bool in_g = whole.face_le(a[0], b[0]);
            bool in_prod = left.face_le(a[1], b[1]) && right.face_le(a[2], b[2]);
            if (in_g != in_prod)
                throw std::runtime_error("facet_product_iso: order not preserved");
        }
    return cert;
}

InteriorFacetCertificate interior_facet_iso(const MultiGraph& g, int edge_index) {
    if (edge_index < 0 || edge_index >= g.edge_count())
        throw std::invalid_argument("unknown edge identifier");
    if (g.is_loop(edge_index))
        throw std::invalid_argument(
            "interior_facet_iso: a loop spans a core subgraph, its facet is a border facet");

    EdgeSet e;
    e.insert(edge_index);
    JewelPoset whole = face_poset(g);
    MultiGraph host = collapse(g, e);
    JewelPoset target = face_poset(host);
    std::vector<int> table = reindex_table(g, complement(g, e));

    InteriorFacetCertificate cert;
    cert.edge = edge_index;
    cert.host = host;
    cert.face_count = target.size();

    std::set<int> image;
    for (int i = 0; i < static_cast<int>(whole.size()); ++i) {
        const FaceLabel& s = whole.faces()[i];
        if (!s.forest.contains(edge_index)) continue;
        FaceLabel t;
        t.forest = map_set(s.forest.minus(e), table);
        for (EdgeSet c : s.chain) t.chain.push_back(map_set(c.minus(e), table));
        int ti = target.find(t);
        if (ti < 0)
            throw std::runtime_error("interior_facet_iso: image label is not a face of g//e");
        if (!image.insert(ti).second)
            throw std::runtime_error("interior_facet_iso: map is not injective");
        cert.correspondence.push_back({i, ti});
    }

    if (image.size() != target.size())
        throw std::runtime_error("interior_facet_iso: map is not onto face_poset(g//e)");

    for (const auto& a : cert.correspondence)
        for (const auto& b : cert.correspondence)
            if (whole.face_le(a[0], b[0]) != target.face_le(a[1], b[1]))
                throw std::runtime_error("interior_facet_iso: order not preserved");
    return cert;
}

}  // namespace jewelkit
