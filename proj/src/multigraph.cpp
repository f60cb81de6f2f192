#include "jewelkit/multigraph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace jewelkit {

std::vector<int> EdgeSet::indices() const {
    std::vector<int> out;
    for (int e = 0; e < 64; ++e)
        if ((bits >> e) & 1u) out.push_back(e);
    return out;
}

MultiGraph::MultiGraph(std::vector<int> vertex_ids, std::vector<Edge> edges)
    : vertex_ids_(std::move(vertex_ids)), edges_(std::move(edges)) {
    if (edges_.size() > 63) throw std::invalid_argument("graph too large: more than 63 edges");
    std::set<int> vids(vertex_ids_.begin(), vertex_ids_.end());
    if (vids.size() != vertex_ids_.size())
        throw std::invalid_argument("duplicate vertex identifier");
    std::set<std::string> eids;
    for (const Edge& e : edges_) {
        if (e.u < 0 || e.u >= vertex_count() || e.v < 0 || e.v >= vertex_count())
            throw std::invalid_argument("edge endpoint names no existing vertex: " + e.id);
        if (!eids.insert(e.id).second)
            throw std::invalid_argument("duplicate edge identifier: " + e.id);
    }
}

MultiGraph MultiGraph::from_ends(std::vector<int> vertex_ids,
                                 const std::vector<std::tuple<std::string, int, int>>& edges) {
    std::map<int, int> idx;
    for (int i = 0; i < static_cast<int>(vertex_ids.size()); ++i) idx[vertex_ids[i]] = i;
    std::vector<Edge> es;
    es.reserve(edges.size());
    for (const auto& [id, a, b] : edges) {
        auto ia = idx.find(a), ib = idx.find(b);
        if (ia == idx.end() || ib == idx.end())
            throw std::invalid_argument("edge endpoint names no existing vertex: " + id);
        es.push_back({id, ia->second, ib->second});
    }
    return MultiGraph(std::move(vertex_ids), std::move(es));
}

int MultiGraph::vertex_index(int id) const {
    for (int i = 0; i < vertex_count(); ++i)
        if (vertex_ids_[i] == id) return i;
    throw std::invalid_argument("unknown vertex identifier: " + std::to_string(id));
}

int MultiGraph::edge_index(const std::string& id) const {
    for (int i = 0; i < edge_count(); ++i)
        if (edges_[i].id == id) return i;
    throw std::invalid_argument("unknown edge identifier: " + id);
}

int MultiGraph::valence(int v_idx) const {
    int d = 0;
    for (const Edge& e : edges_) {
        if (e.u == v_idx) ++d;
        if (e.v == v_idx) ++d;
    }
    return d;
}

EdgeSet MultiGraph::all_edges() const {
    if (edge_count() == 0) return {};
    return {(std::uint64_t{1} << edge_count()) - 1};
}

EdgeSet MultiGraph::edge_set(const std::vector<std::string>& ids) const {
    EdgeSet a;
    for (const std::string& id : ids) a.insert(edge_index(id));
    return a;
}

std::vector<std::string> MultiGraph::edge_ids(EdgeSet a) const {
    std::vector<std::string> out;
    for (int e : a.indices()) out.push_back(edges_[e].id);
    return out;
}

namespace {

void check_edges_known(const MultiGraph& g, EdgeSet a) {
    if (g.edge_count() < 64 && (a.bits >> g.edge_count()) != 0)
        throw std::invalid_argument("unknown edge identifier in edge set");
}

// Union-find over the host's vertex indices, merging along the given edges.
struct DSU {
    std::vector<int> parent;
    explicit DSU(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

DSU dsu_over(const MultiGraph& g, EdgeSet a) {
    DSU d(g.vertex_count());
    for (int e : a.indices()) d.unite(g.edge(e).u, g.edge(e).v);
    return d;
}

// Components of the span of a, counted over the vertices meeting `support`.
int span_component_count(const MultiGraph& g, EdgeSet a, EdgeSet support) {
    DSU d = dsu_over(g, a);
    std::set<int> roots;
    for (int e : support.indices()) {
        roots.insert(d.find(g.edge(e).u));
        roots.insert(d.find(g.edge(e).v));
    }
    return static_cast<int>(roots.size());
}

int span_vertex_count(const MultiGraph& g, EdgeSet a) {
    std::set<int> vs;
    for (int e : a.indices()) {
        vs.insert(g.edge(e).u);
        vs.insert(g.edge(e).v);
    }
    return static_cast<int>(vs.size());
}

}  // namespace

std::vector<std::vector<int>> components(const MultiGraph& g) {
    DSU d = dsu_over(g, g.all_edges());
    std::map<int, std::vector<int>> by_root;
    for (int v = 0; v < g.vertex_count(); ++v) by_root[d.find(v)].push_back(v);
    std::vector<std::vector<int>> out;
    std::vector<char> seen(g.vertex_count(), 0);
    for (int v = 0; v < g.vertex_count(); ++v) {
        int r = d.find(v);
        if (!seen[r]) {
            seen[r] = 1;
            out.push_back(by_root[r]);
        }
    }
    return out;
}

int first_betti(const MultiGraph& g) {
    return g.edge_count() - g.vertex_count() + static_cast<int>(components(g).size());
}

int first_betti(const MultiGraph& g, EdgeSet a) {
    check_edges_known(g, a);
    if (a.empty()) throw std::invalid_argument("first_betti: empty edge set spans no subgraph");
    return a.size() - span_vertex_count(g, a) + span_component_count(g, a, a);
}

EdgeSet bridges_of_span(const MultiGraph& g, EdgeSet a) {
    check_edges_known(g, a);
    EdgeSet out;
    if (a.empty()) return out;
    const int base = span_component_count(g, a, a);
    for (int e : a.indices()) {
        if (g.is_loop(e)) continue;  // loops never separate
        EdgeSet rest = a;
        rest.erase(e);
        // component count over the same vertex support, edge e removed
        if (span_component_count(g, rest, a) > base) out.insert(e);
    }
    return out;
}

bool is_core(const MultiGraph& g, EdgeSet a) {
    if (a.empty()) throw std::invalid_argument("is_core: empty edge set spans no subgraph");
    return bridges_of_span(g, a).empty();
}

EdgeSet core_of(const MultiGraph& g, EdgeSet a) {
    // Edges on a cycle of the span = the span's non-bridges; a single pass
    // agrees with iterated bridge deletion since cycle edges survive it.
    return a.minus(bridges_of_span(g, a));
}

bool is_forest(const MultiGraph& g, EdgeSet a) {
    check_edges_known(g, a);
    if (a.empty()) return true;
    return first_betti(g, a) == 0;
}

MultiGraph collapse(const MultiGraph& g, EdgeSet a) {
    check_edges_known(g, a);
    DSU d = dsu_over(g, a);
    // Representative of each class = smallest vertex index in it; keep host order.
    std::vector<int> rep(g.vertex_count(), -1);
    std::vector<int> new_index(g.vertex_count(), -1);
    std::vector<int> new_ids;
    for (int v = 0; v < g.vertex_count(); ++v) {
        int r = d.find(v);
        if (rep[r] < 0) {
            rep[r] = v;
            new_index[v] = static_cast<int>(new_ids.size());
            new_ids.push_back(g.vertex_id(v));
        }
    }
    std::vector<MultiGraph::Edge> es;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (a.contains(e)) continue;
        const auto& ed = g.edge(e);
        es.push_back({ed.id, new_index[rep[d.find(ed.u)]], new_index[rep[d.find(ed.v)]]});
    }
    return MultiGraph(std::move(new_ids), std::move(es));
}

EdgeSet complement(const MultiGraph& g, EdgeSet a) {
    check_edges_known(g, a);
    EdgeSet all = g.all_edges();
    if (a.bits == all.bits)
        throw std::invalid_argument("complement of the full edge set is not a subgraph");
    return all.minus(a);
}

MultiGraph span_subgraph(const MultiGraph& g, EdgeSet a) {
    check_edges_known(g, a);
    std::vector<char> used(g.vertex_count(), 0);
    for (int e : a.indices()) {
        used[g.edge(e).u] = 1;
        used[g.edge(e).v] = 1;
    }
    std::vector<int> ids;
    std::vector<int> new_index(g.vertex_count(), -1);
    for (int v = 0; v < g.vertex_count(); ++v)
        if (used[v]) {
            new_index[v] = static_cast<int>(ids.size());
            ids.push_back(g.vertex_id(v));
        }
    std::vector<MultiGraph::Edge> es;
    for (int e : a.indices())
        es.push_back({g.edge(e).id, new_index[g.edge(e).u], new_index[g.edge(e).v]});
    return MultiGraph(std::move(ids), std::move(es));
}

std::vector<EdgeSet> enumerate_core_subgraphs(const MultiGraph& g, bool proper_only) {
    std::vector<EdgeSet> out;
    const std::uint64_t top = std::uint64_t{1} << g.edge_count();
    for (std::uint64_t m = 1; m < top; ++m) {
        if (proper_only && m == top - 1) continue;
        if (is_core(g, {m})) out.push_back({m});
    }
    std::sort(out.begin(), out.end(), [](EdgeSet x, EdgeSet y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x.bits < y.bits;
    });
    return out;
}

// ---- canonical form ---------------------------------------------------------

namespace {

// Multiplicity matrix; diagonal counts loops.
std::vector<std::vector<int>> mult_matrix(const MultiGraph& g) {
    std::vector<std::vector<int>> m(g.vertex_count(), std::vector<int>(g.vertex_count(), 0));
    for (const auto& e : g.edges()) {
        if (e.u == e.v)
            ++m[e.u][e.u];
        else {
            ++m[e.u][e.v];
            ++m[e.v][e.u];
        }
    }
    return m;
}

// Rows of the canonical code: row p = (label, m[0][p], ..., m[p][p]) under the
// candidate placement. Lexicographically smallest full code wins; search
// prunes as soon as a partial row exceeds the best. state[d] compares the
// current prefix of length d against the best (0 equal, -1 strictly less);
// recording a new best resets every entry, since at that moment the current
// path *is* the best at each prefix length.
struct CanonSearch {
    const std::vector<std::vector<int>>& m;
    const std::vector<int>& labels;
    int n;
    std::vector<std::vector<int>> best;      // best rows found so far
    std::vector<int> best_perm;              // canonical position -> vertex
    std::vector<std::vector<int>> cur;
    std::vector<int> cur_perm;
    std::vector<char> used;
    std::vector<int> state;

    CanonSearch(const std::vector<std::vector<int>>& m_, const std::vector<int>& labels_)
        : m(m_), labels(labels_), n(static_cast<int>(m_.size())), used(n, 0), state(n + 1, 0) {}

    std::vector<int> row_for(int w, int depth) const {
        std::vector<int> row;
        row.reserve(depth + 2);
        row.push_back(labels[w]);
        for (int q = 0; q < depth; ++q) row.push_back(m[cur_perm[q]][w]);
        row.push_back(m[w][w]);
        return row;
    }

    void dfs(int depth) {
        if (depth == n) {
            if (best.empty() || state[depth] < 0) {
                best = cur;
                best_perm = cur_perm;
                std::fill(state.begin(), state.end(), 0);
            }
            return;
        }
        for (int w = 0; w < n; ++w) {
            if (used[w]) continue;
            std::vector<int> row = row_for(w, depth);
            int st = state[depth];  // re-read: an inner best update resets it
            if (!best.empty() && st == 0) {
                if (row > best[depth]) continue;
                if (row < best[depth]) st = -1;
            }
            state[depth + 1] = st;
            used[w] = 1;
            cur_perm.push_back(w);
            cur.push_back(std::move(row));
            dfs(depth + 1);
            cur.pop_back();
            cur_perm.pop_back();
            used[w] = 0;
        }
    }
};

}  // namespace

CanonicalForm canonical_form(const MultiGraph& g, const std::vector<int>* vertex_labels) {
    const int n = g.vertex_count();
    std::vector<int> labels(n, 0);
    if (vertex_labels) {
        if (static_cast<int>(vertex_labels->size()) != n)
            throw std::invalid_argument("vertex label vector size mismatch");
        labels = *vertex_labels;
    }
    auto m = mult_matrix(g);
    CanonSearch s(m, labels);
    s.dfs(0);

    CanonicalForm out;
    out.vertex_map.assign(n, -1);
    for (int p = 0; p < n; ++p) out.vertex_map[s.best_perm[p]] = p;

    std::string code = std::to_string(n) + "#";
    for (int p = 0; p < n; ++p) {
        for (std::size_t i = 0; i < s.best[p].size(); ++i)
            code += std::to_string(s.best[p][i]) + (i + 1 < s.best[p].size() ? "," : "");
        code += ";";
    }
    out.code = std::move(code);

    // Canonical edge order: sort by mapped endpoint pair; ties (parallel
    // edges) broken by original index.
    std::vector<int> order(g.edge_count());
    std::iota(order.begin(), order.end(), 0);
    auto key = [&](int e) {
        int a = out.vertex_map[g.edge(e).u], b = out.vertex_map[g.edge(e).v];
        if (a > b) std::swap(a, b);
        return std::tuple<int, int, int>(a, b, e);
    };
    std::sort(order.begin(), order.end(), [&](int x, int y) { return key(x) < key(y); });
    out.edge_map.assign(g.edge_count(), -1);
    for (int p = 0; p < g.edge_count(); ++p) out.edge_map[order[p]] = p;
    return out;
}

bool is_isomorphic(const MultiGraph& g1, const MultiGraph& g2) {
    if (g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count())
        return false;
    return canonical_form(g1).code == canonical_form(g2).code;
}

std::vector<std::vector<int>> vertex_automorphisms(const MultiGraph& g,
                                                   const std::vector<int>* vertex_labels) {
    const int n = g.vertex_count();
    std::vector<int> labels(n, 0);
    if (vertex_labels) labels = *vertex_labels;
    auto m = mult_matrix(g);

    std::vector<std::vector<int>> autos;
    std::vector<int> img(n, -1);
    std::vector<char> used(n, 0);
    auto dfs = [&](auto&& self, int v) -> void {
        if (v == n) {
            autos.push_back(img);
            return;
        }
        for (int w = 0; w < n; ++w) {
            if (used[w] || labels[w] != labels[v] || m[w][w] != m[v][v]) continue;
            bool ok = true;
            for (int q = 0; q < v && ok; ++q)
                if (m[q][v] != 0 || m[img[q]][w] != 0)
                    ok = (m[q][v] == m[img[q]][w]);
            if (!ok) continue;
            img[v] = w;
            used[w] = 1;
            self(self, v + 1);
            used[w] = 0;
            img[v] = -1;
        }
    };
    dfs(dfs, 0);
    return autos;
}

int permutation_sign(const std::vector<int>& p) {
    std::vector<char> seen(p.size(), 0);
    int sign = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = 1;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

bool has_odd_edge_automorphism(const MultiGraph& g, const std::vector<int>* vertex_labels) {
    // Parallel class of size >= 2: the swap fixing all vertices is odd.
    std::map<std::pair<int, int>, std::vector<int>> classes;
    for (int e = 0; e < g.edge_count(); ++e) {
        int a = g.edge(e).u, b = g.edge(e).v;
        if (a > b) std::swap(a, b);
        classes[{a, b}].push_back(e);
    }
    for (const auto& [k, es] : classes)
        if (es.size() >= 2) return true;

    // No parallels: each vertex automorphism induces a unique edge permutation.
    for (const auto& pi : vertex_automorphisms(g, vertex_labels)) {
        std::vector<int> ep(g.edge_count());
        for (int e = 0; e < g.edge_count(); ++e) {
            int a = pi[g.edge(e).u], b = pi[g.edge(e).v];
            if (a > b) std::swap(a, b);
            ep[e] = classes.at({a, b}).front();
        }
        if (permutation_sign(ep) < 0) return true;
    }
    return false;
}

// ---- core graph enumeration -------------------------------------------------

namespace {

// Multisets of `count` items over slots [first, slot_count), nondecreasing.
void for_each_multiset(int slot_count, int count, std::vector<int>& pick,
                       const std::function<void(const std::vector<int>&)>& fn, int first = 0) {
    if (count == 0) {
        fn(pick);
        return;
    }
    for (int s = first; s < slot_count; ++s) {
        pick.push_back(s);
        for_each_multiset(slot_count, count - 1, pick, fn, s);
        pick.pop_back();
    }
}

}  // namespace

std::vector<MultiGraph> enumerate_connected_core_graphs(int max_edges) {
    std::map<std::string, MultiGraph> classes;
    for (int nv = 1; nv <= max_edges; ++nv) {
        std::vector<std::pair<int, int>> slots;
        for (int i = 0; i < nv; ++i)
            for (int j = i; j < nv; ++j) slots.emplace_back(i, j);
        // Connected and bridgeless forces |V| <= |E|.
        for (int ne = std::max(nv, 1); ne <= max_edges; ++ne) {
            std::vector<int> pick;
            for_each_multiset(static_cast<int>(slots.size()), ne, pick,
                              [&](const std::vector<int>& sel) {
                std::vector<int> vids(nv);
                std::iota(vids.begin(), vids.end(), 0);
                std::vector<MultiGraph::Edge> es;
                for (std::size_t k = 0; k < sel.size(); ++k)
                    es.push_back({"e" + std::to_string(k + 1), slots[sel[k]].first,
                                  slots[sel[k]].second});
                MultiGraph g(vids, es);
                if (static_cast<int>(components(g).size()) != 1) return;
                if (!is_core(g, g.all_edges())) return;
                std::string code = canonical_form(g).code;
                classes.emplace(std::move(code), std::move(g));
            });
        }
    }
    std::vector<MultiGraph> out;
    out.reserve(classes.size());
    for (auto& [code, g] : classes) out.push_back(std::move(g));
    return out;
}

}  // namespace jewelkit
