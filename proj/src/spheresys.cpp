#include "jewelkit/spheresys.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "jewelkit/jewel.hpp"

namespace jewelkit {

std::optional<std::string> validation_error(const DecoratedGraph& d) {
    const int nv = d.graph.vertex_count();
    if (static_cast<int>(d.genus.size()) != nv)
        return "genus vector does not match the vertex count";
    for (int g : d.genus)
        if (g < 0) return "negative genus label";
    if (components(d.graph).size() != 1) return "dual graph is not connected";
    if (total_n(d) < 1) return "total rank is zero";
    for (int v = 0; v < nv; ++v) {
        int val = d.graph.valence(v);
        if (d.genus[v] == 0 && val < 3) {
            // the one exception: both half-edges belong to a single loop
            bool single_loop = val == 2 && [&] {
                for (int e = 0; e < d.graph.edge_count(); ++e)
                    if (d.graph.is_loop(e) && d.graph.edge(e).u == v) return true;
                return false;
            }();
            if (!single_loop)
                return "genus-0 vertex of valence < 3 (trivial or parallel sphere)";
        }
        if (d.genus[v] > 0 && val < 1) return "positive-genus vertex meets no sphere";
    }
    return std::nullopt;
}

bool validate(const DecoratedGraph& d) { return !validation_error(d).has_value(); }

static void require_valid(const DecoratedGraph& d) {
    if (auto err = validation_error(d)) throw std::invalid_argument(*err);
}

int total_n(const DecoratedGraph& d) {
    int g = 0;
    for (int x : d.genus) g += x;
    return first_betti(d.graph) + g;
}

bool is_complete(const DecoratedGraph& d) {
    require_valid(d);
    for (int g : d.genus)
        if (g > 0) return false;
    return true;
}

bool is_core(const DecoratedGraph& d) {
    require_valid(d);
    return jewelkit::is_core(d.graph, d.graph.all_edges());
}

int h_value(const DecoratedGraph& d) {
    require_valid(d);
    return d.graph.edge_count() - d.graph.vertex_count();
}

int h_value_ambient(const DecoratedGraph& d, EdgeSet t) {
    // components of the manifold cut along t alone = components of the dual
    // graph with t's edges deleted
    std::vector<int> parent(d.graph.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int e = 0; e < d.graph.edge_count(); ++e)
        if (!t.contains(e)) parent[find(d.graph.edge(e).u)] = find(d.graph.edge(e).v);
    std::set<int> roots;
    for (int v = 0; v < d.graph.vertex_count(); ++v) roots.insert(find(v));
    return t.size() - static_cast<int>(roots.size());
}

DecoratedGraph subsystem_class(const DecoratedGraph& d, EdgeSet t) {
    require_valid(d);
    if (t.empty() || t.bits == d.graph.all_edges().bits)
        throw std::invalid_argument("subsystem must be a proper nonempty sphere set");

    EdgeSet contract = d.graph.all_edges().minus(t);
    std::vector<int> parent(d.graph.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int e : contract.indices()) parent[find(d.graph.edge(e).u)] = find(d.graph.edge(e).v);

    // per class: representative (smallest index), genus sum, class size,
    // number of contracted edges inside — the class's contribution to genus is
    // its genus sum plus the b1 of the contracted span (loops it swallows)
    std::map<int, int> new_index;
    std::vector<int> rep_of(d.graph.vertex_count(), -1);
    std::vector<int> new_ids;
    std::vector<int> new_genus;
    std::vector<int> class_size, class_edges;
    for (int v = 0; v < d.graph.vertex_count(); ++v) {
        int r = find(v);
        if (rep_of[r] < 0) {
            rep_of[r] = static_cast<int>(new_ids.size());
            new_ids.push_back(d.graph.vertex_id(v));
            new_genus.push_back(0);
            class_size.push_back(0);
            class_edges.push_back(0);
        }
        new_genus[rep_of[r]] += d.genus[v];
        class_size[rep_of[r]] += 1;
    }
    for (int e : contract.indices()) class_edges[rep_of[find(d.graph.edge(e).u)]] += 1;
    for (std::size_t c = 0; c < new_genus.size(); ++c)
        if (class_edges[c] > 0) new_genus[c] += class_edges[c] - (class_size[c] - 1);

    std::vector<MultiGraph::Edge> es;
    for (int e : t.indices()) {
        const auto& ed = d.graph.edge(e);
        es.push_back({ed.id, rep_of[find(ed.u)], rep_of[find(ed.v)]});
    }
    DecoratedGraph out{MultiGraph(std::move(new_ids), std::move(es)), std::move(new_genus)};
    if (auto err = validation_error(out))
        throw std::logic_error("subsystem_class produced an invalid class: " + *err);
    if (total_n(out) != total_n(d))
        throw std::logic_error("subsystem_class changed the total rank");
    return out;
}

bool is_core_complement(const DecoratedGraph& d, EdgeSet t) {
    require_valid(d);
    if (!is_core(d)) throw std::invalid_argument("is_core_complement requires a core system");
    if (t.empty() || t.bits == d.graph.all_edges().bits)
        throw std::invalid_argument("core complement must be a proper nonempty sphere set");

    // criterion: the spheres outside t span a core subgraph
    EdgeSet rest = complement(d.graph, t);
    bool by_subgraph = jewelkit::is_core(d.graph, rest);

    // independent route: no remaining sphere separates the cut manifold — no
    // edge of rest is a bridge of the graph with t's edges deleted
    bool by_cut = true;
    auto comp_count = [&](EdgeSet keep) {
        std::vector<int> parent(d.graph.vertex_count());
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (int e : keep.indices()) parent[find(d.graph.edge(e).u)] = find(d.graph.edge(e).v);
        std::set<int> roots;
        for (int v = 0; v < d.graph.vertex_count(); ++v) roots.insert(find(v));
        return static_cast<int>(roots.size());
    };
    const int base = comp_count(rest);
    for (int e : rest.indices()) {
        EdgeSet fewer = rest;
        fewer.erase(e);
        if (comp_count(fewer) > base) { by_cut = false; break; }
    }

    if (by_subgraph != by_cut)
        throw std::logic_error("core-complement criteria disagree (internal inconsistency)");
    return by_subgraph;
}

std::vector<EdgeSet> core_complements(const DecoratedGraph& d) {
    require_valid(d);
    std::vector<EdgeSet> out;
    const std::uint64_t top = std::uint64_t{1} << d.graph.edge_count();
    for (std::uint64_t m = 1; m + 1 < top; ++m)
        if (is_core_complement(d, {m})) out.push_back({m});
    std::sort(out.begin(), out.end(), [](EdgeSet x, EdgeSet y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x.bits < y.bits;
    });
    return out;
}

std::pair<int, Rat> r_and_t(const DecoratedGraph& d, EdgeSet t, long long N) {
    if (!is_core_complement(d, t))
        throw std::invalid_argument("r_and_t requires a core complement");
    if (N <= 0) throw std::invalid_argument("truncation scale N must be positive");
    int r = h_value(d) - h_value_ambient(d, t);
    // the same value through the subsystem's own dual graph
    DecoratedGraph sub = subsystem_class(d, t);
    if (h_value(sub) != h_value_ambient(d, t))
        throw std::logic_error("ambient and intrinsic h disagree");
    Rat tc{int_pow(3, r), Int(static_cast<long>(N))};
    tc.canonicalize();
    return {r, tc};
}

WallDescriptor pieces(const DecoratedGraph& t) {
    require_valid(t);
    if (!is_core(t)) throw std::invalid_argument("walls are indexed by core systems");
    if (is_complete(t))
        throw std::invalid_argument("walls are indexed by incomplete systems only");

    WallDescriptor w;
    w.system = t;
    for (int v = 0; v < t.graph.vertex_count(); ++v)
        w.pieces.push_back({t.genus[v], t.graph.valence(v)});
    std::sort(w.pieces.begin(), w.pieces.end(), [](const WallPiece& a, const WallPiece& b) {
        return std::pair(a.genus, a.boundary_spheres) < std::pair(b.genus, b.boundary_spheres);
    });
    w.jewel_face_count = face_poset(t.graph).size();

    int piece_rank = 0, boundary = 0;
    for (const auto& p : w.pieces) {
        if (p.boundary_spheres < 1)
            throw std::logic_error("wall piece with no boundary sphere");
        piece_rank += p.genus;
        boundary += p.boundary_spheres;
    }
    if (piece_rank + first_betti(t.graph) != total_n(t))
        throw std::logic_error("wall pieces do not reconstruct the ambient rank");
    if (boundary != 2 * t.graph.edge_count())
        throw std::logic_error("wall piece boundary count mismatch");
    return w;
}

DecoratedGraph complete_extension(const DecoratedGraph& t) {
    require_valid(t);
    if (!is_core(t)) throw std::invalid_argument("complete_extension requires a core system");
    if (is_complete(t)) throw std::invalid_argument("system is already complete");

    std::set<std::string> used;
    for (const auto& e : t.graph.edges()) used.insert(e.id);
    auto fresh = [&, k = 0]() mutable {
        std::string id;
        do {
            id = "c" + std::to_string(k++);
        } while (used.count(id));
        used.insert(id);
        return id;
    };

    std::vector<MultiGraph::Edge> es = t.graph.edges();
    for (int v = 0; v < t.graph.vertex_count(); ++v)
        for (int i = 0; i < t.genus[v]; ++i) es.push_back({fresh(), v, v});
    DecoratedGraph out{MultiGraph(t.graph.vertex_ids(), std::move(es)),
                       std::vector<int>(t.graph.vertex_count(), 0)};

    EdgeSet original;
    for (int e = 0; e < t.graph.edge_count(); ++e) original.insert(e);
    if (!is_complete(out) || !is_core(out) || !is_core_complement(out, original))
        throw std::logic_error("complete_extension failed verification");
    if (total_n(out) != total_n(t))
        throw std::logic_error("complete_extension changed the total rank");
    return out;
}

// ---- enumeration --------------------------------------------------------------

DecoratedGraph canonical_representative(const DecoratedGraph& d) {
    CanonicalForm cf = canonical_form(d.graph, &d.genus);
    const int nv = d.graph.vertex_count();
    std::vector<int> vids(nv);
    std::iota(vids.begin(), vids.end(), 0);
    std::vector<int> genus(nv, 0);
    for (int v = 0; v < nv; ++v) genus[cf.vertex_map[v]] = d.genus[v];
    std::vector<MultiGraph::Edge> es(d.graph.edge_count());
    for (int e = 0; e < d.graph.edge_count(); ++e) {
        int pos = cf.edge_map[e];
        int a = cf.vertex_map[d.graph.edge(e).u], b = cf.vertex_map[d.graph.edge(e).v];
        if (a > b) std::swap(a, b);
        es[pos] = {"s" + std::to_string(pos + 1), a, b};
    }
    return {MultiGraph(std::move(vids), std::move(es)), std::move(genus)};
}

namespace {

struct GenTask {
    int nv, ne, first_slot;
};

void enumerate_into(int n, const GenTask& task,
                    std::map<std::string, DecoratedGraph>& classes) {
    const int nv = task.nv, ne = task.ne;
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < nv; ++i)
        for (int j = i; j < nv; ++j) slots.emplace_back(i, j);
    const int ns = static_cast<int>(slots.size());

    std::vector<int> sel(ne, 0);
    std::vector<int> valence(nv), genus(nv), lower(nv);

    std::function<void(int, int)> rec = [&](int idx, int from) {
        if (idx < ne) {
            for (int s = from; s < ns; ++s) {
                sel[idx] = s;
                rec(idx + 1, s);
            }
            return;
        }
        // valences and connectivity
        std::fill(valence.begin(), valence.end(), 0);
        std::vector<int> parent(nv);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (int k = 0; k < ne; ++k) {
            auto [a, b] = slots[sel[k]];
            valence[a] += 1;
            valence[b] += 1;
            parent[find(a)] = find(b);
        }
        for (int v = 0; v < nv; ++v)
            if (valence[v] == 0) return;
        int root = find(0);
        for (int v = 1; v < nv; ++v)
            if (find(v) != root) return;

        const int b1 = ne - nv + 1;
        const int gsum = n - b1;
        if (gsum < 0) return;

        // vertices of valence <= 2 need positive genus, except the lone
        // single-loop vertex at n = 1
        bool lone_loop = (nv == 1 && ne == 1 && slots[sel[0]].first == slots[sel[0]].second);
        int need = 0;
        for (int v = 0; v < nv; ++v) {
            lower[v] = (valence[v] <= 2 && !lone_loop) ? 1 : 0;
            need += lower[v];
        }
        if (need > gsum) return;

        // distribute the remaining genus freely
        std::function<void(int, int)> dist = [&](int v, int left) {
            if (v == nv - 1) {
                genus[v] = lower[v] + left;
                std::vector<int> vids(nv);
                std::iota(vids.begin(), vids.end(), 0);
                std::vector<MultiGraph::Edge> es;
                es.reserve(ne);
                for (int k = 0; k < ne; ++k)
                    es.push_back({"s" + std::to_string(k + 1), slots[sel[k]].first,
                                  slots[sel[k]].second});
                DecoratedGraph d{MultiGraph(vids, es), genus};
                if (!validate(d)) return;
                std::string code = canonical_form(d.graph, &d.genus).code;
                classes.emplace(std::move(code), std::move(d));
                return;
            }
            for (int extra = 0; extra <= left; ++extra) {
                genus[v] = lower[v] + extra;
                dist(v + 1, left - extra);
            }
        };
        dist(0, gsum - need);
    };

    // first slot pinned for task partitioning
    if (ne == 0) return;
    sel[0] = task.first_slot;
    if (task.first_slot >= ns) return;
    rec(1, task.first_slot);
}

}  // namespace

std::vector<SystemClass> enumerate_classes(int n, const ClassFilter& filter, int jobs) {
    if (n < 1 || n > kMaxEnumerationN)
        throw std::invalid_argument("n out of configured range (1.." +
                                    std::to_string(kMaxEnumerationN) + ")");
    const int max_v = std::max(1, 2 * n - 2);
    const int max_e_global = std::max(1, 3 * n - 3);

    std::vector<GenTask> tasks;
    for (int nv = 1; nv <= max_v; ++nv) {
        const int ns = nv * (nv + 1) / 2;
        for (int ne = std::max(1, nv - 1); ne <= std::min(max_e_global, nv - 1 + n); ++ne) {
            if (ne < filter.min_edges || ne > filter.max_edges) continue;
            for (int s = 0; s < ns; ++s) tasks.push_back({nv, ne, s});
        }
    }

    std::map<std::string, DecoratedGraph> classes;
    if (jobs <= 1) {
        for (const auto& t : tasks) enumerate_into(n, t, classes);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::map<std::string, DecoratedGraph>> partial(jobs);
        std::vector<std::thread> workers;
        for (int w = 0; w < jobs; ++w)
            workers.emplace_back([&, w] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) break;
                    enumerate_into(n, tasks[i], partial[w]);
                }
            });
        for (auto& th : workers) th.join();
        for (auto& p : partial) classes.merge(p);
    }

    std::vector<SystemClass> out;
    out.reserve(classes.size());
    for (auto& [code, d] : classes) {
        SystemClass sc;
        sc.code = code;
        sc.edge_count = d.graph.edge_count();
        sc.complete = is_complete(d);
        sc.core = is_core(d);
        if (filter.complete && *filter.complete != sc.complete) continue;
        if (filter.core && *filter.core != sc.core) continue;
        sc.representative = canonical_representative(d);
        out.push_back(std::move(sc));
    }
    return out;
}

int sc_infty_dimension(int n) {
    if (n < 2) throw std::invalid_argument("sc_infty_dimension requires n >= 2");
    ClassFilter f;
    f.complete = false;
    f.core = true;
    int max_edges = 0;
    for (const auto& c : enumerate_classes(n, f)) max_edges = std::max(max_edges, c.edge_count);
    int dim = max_edges - 1;
    if (dim != 3 * n - 6)
        throw std::runtime_error("complex dimension " + std::to_string(dim) +
                                 " disagrees with 3n-6");
    return dim;
}

bool skeleton_check(int n) {
    if (n < 2) throw std::invalid_argument("skeleton_check requires n >= 2");
    ClassFilter f;
    f.core = true;
    f.max_edges = n - 1;
    for (const auto& c : enumerate_classes(n, f))
        if (c.complete) return false;
    return true;
}

}  // namespace jewelkit
