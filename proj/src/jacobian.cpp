#include "jewelkit/jacobian.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "jewelkit/spheresys.hpp"

namespace jewelkit {

std::optional<std::string> metric_validation_error(const MetricGraph& mg) {
    if (mg.graph.edge_count() == 0) return "metric graph has no edges";
    if (components(mg.graph).size() != 1) return "metric graph is not connected";
    if (!is_core(mg.graph, mg.graph.all_edges())) return "metric graph is not core";
    if (static_cast<int>(mg.lengths.size()) != mg.graph.edge_count())
        return "length vector does not match the edge count";
    Rat total(0);
    for (const Rat& l : mg.lengths) {
        if (l <= 0) return "edge lengths must be positive";
        total += l;
    }
    if (total != 1) return "edge lengths must sum to one";
    return std::nullopt;
}

std::vector<std::vector<int>> cycle_basis(const MultiGraph& g) {
    if (components(g).size() != 1) throw std::invalid_argument("cycle_basis: disconnected input");
    const int nv = g.vertex_count(), ne = g.edge_count();

    // spanning tree: first edge joining two components wins
    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<char> in_tree(ne, 0);
    std::vector<std::vector<std::pair<int, int>>> tree_adj(nv);  // (neighbor, edge)
    for (int e = 0; e < ne; ++e) {
        int ru = find(g.edge(e).u), rv = find(g.edge(e).v);
        if (ru != rv) {
            parent[ru] = rv;
            in_tree[e] = 1;
            tree_adj[g.edge(e).u].push_back({g.edge(e).v, e});
            tree_adj[g.edge(e).v].push_back({g.edge(e).u, e});
        }
    }

    // path in the tree as a list of (edge, +1 when traversed u->v)
    auto tree_path = [&](int from, int to) {
        std::vector<int> prev_vertex(nv, -1), prev_edge(nv, -1);
        std::vector<int> stack{from};
        prev_vertex[from] = from;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            if (x == to) break;
            for (auto [y, e] : tree_adj[x])
                if (prev_vertex[y] < 0) {
                    prev_vertex[y] = x;
                    prev_edge[y] = e;
                    stack.push_back(y);
                }
        }
        std::vector<std::pair<int, int>> path;  // walked to -> from backwards
        for (int x = to; x != from; x = prev_vertex[x]) {
            int e = prev_edge[x];
            // traversal direction prev_vertex[x] -> x
            path.push_back({e, g.edge(e).u == prev_vertex[x] ? 1 : -1});
        }
        return path;
    };

    std::vector<std::vector<int>> basis;
    for (int e = 0; e < ne; ++e) {
        if (in_tree[e]) continue;
        std::vector<int> z(ne, 0);
        z[e] = 1;
        if (!g.is_loop(e))
            for (auto [f, sign] : tree_path(g.edge(e).v, g.edge(e).u)) z[f] += sign;
        basis.push_back(std::move(z));
    }
    return basis;
}

QuadForm jacobian_form(const MetricGraph& mg, EdgeWeighting w) {
    if (auto err = metric_validation_error(mg)) throw std::invalid_argument(*err);
    auto basis = cycle_basis(mg.graph);
    const int b = static_cast<int>(basis.size());
    QuadForm q;
    q.m.assign(b, std::vector<Rat>(b, Rat(0)));
    for (int e = 0; e < mg.graph.edge_count(); ++e) {
        Rat we = (w == EdgeWeighting::lengths) ? mg.lengths[e] : Rat(1);
        for (int i = 0; i < b; ++i) {
            if (basis[i][e] == 0) continue;
            for (int j = i; j < b; ++j)
                if (basis[j][e] != 0) q.m[i][j] += we * Rat(basis[i][e] * basis[j][e]);
        }
    }
    for (int i = 0; i < b; ++i)
        for (int j = 0; j < i; ++j) q.m[i][j] = q.m[j][i];
    return q;
}

bool is_positive_definite(const QuadForm& q) {
    const int n = q.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (q.m[i][j] != q.m[j][i])
                throw std::invalid_argument("quadratic form is not symmetric");
    for (int k = 1; k <= n; ++k) {
        std::vector<std::vector<Rat>> minor(k, std::vector<Rat>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) minor[i][j] = q.m[i][j];
        if (rational_det(std::move(minor)) <= 0) return false;
    }
    return true;
}

Rat quadform_det(const QuadForm& q) {
    return rational_det(q.m);
}

std::vector<BoundarySample> facet_samples(const MultiGraph& g, EdgeSet c,
                                          const TruncationParams& params, int count,
                                          unsigned long seed) {
    if (count < 0) throw std::invalid_argument("negative sample count");
    std::vector<BoundarySample> out;
    if (count == 0) return out;

    Rat t = truncation_constant(g, c, params);
    auto verts = vertices(hrep(g, params));
    std::vector<int> facet;
    for (int v = 0; v < static_cast<int>(verts.size()); ++v) {
        Rat acc(0);
        for (int e : c.indices()) acc += verts[v][e];
        if (acc == t) facet.push_back(v);
    }
    if (facet.empty()) throw std::runtime_error("facet has no vertices at this scale");

    std::string code = canonical_form(g).code;
    std::mt19937_64 rng(seed);
    for (int k = 0; k < count; ++k) {
        // positive weights keep the point in the relative interior
        std::vector<long> w(facet.size());
        long total = 0;
        for (auto& x : w) {
            x = 1 + static_cast<long>(rng() % 9);
            total += x;
        }
        std::vector<Rat> point(g.edge_count(), Rat(0));
        for (std::size_t i = 0; i < facet.size(); ++i) {
            Rat weight(w[i], total);
            weight.canonicalize();
            for (int e = 0; e < g.edge_count(); ++e)
                point[e] += weight * verts[facet[i]][e];
        }

        MetricGraph mg{g, point};
        BoundarySample s;
        s.class_code = code;
        s.core_edge_ids = g.edge_ids(c);
        s.point = point;
        s.form = jacobian_form(mg);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<BoundarySample> boundary_samples(int n, int count, unsigned long seed, int jobs) {
    ClassFilter f;
    f.complete = true;
    f.core = true;
    std::vector<BoundarySample> out;
    unsigned long salt = 0;
    for (const auto& cls : enumerate_classes(n, f, jobs)) {
        const MultiGraph& g = cls.representative.graph;
        TruncationParams params = TruncationParams::defaults_for(g);
        for (EdgeSet c : enumerate_core_subgraphs(g, true)) {
            auto batch = facet_samples(g, c, params, count, seed + salt++);
            out.insert(out.end(), batch.begin(), batch.end());
        }
    }
    return out;
}

}  // namespace jewelkit
