#include "doctest.h"

#include <random>
#include <set>

#include "jewelkit/multigraph.hpp"
#include "test_helpers.hpp"

using namespace jewelkit;
using testutil::fig1_graph;
using testutil::rose;
using testutil::single_loop;
using testutil::theta_graph;

TEST_CASE("components") {
    CHECK(components(single_loop()).size() == 1);
    MultiGraph g = fig1_graph();
    CHECK(components(g).size() == 1);
    // deleting the parallel pair disconnects u from v
    MultiGraph cut = span_subgraph(g, g.edge_set({"e1", "e4"}));
    CHECK(components(cut).size() == 2);
}

TEST_CASE("first_betti") {
    MultiGraph l1 = single_loop();
    CHECK(first_betti(l1, l1.all_edges()) == 1);
    MultiGraph g = fig1_graph();
    CHECK(first_betti(g, g.edge_set({"e2", "e3"})) == 1);
    CHECK(first_betti(g, g.edge_set({"e1", "e4"})) == 2);
    CHECK_THROWS_AS((void)g.edge_set({"e9"}), std::invalid_argument);
}

TEST_CASE("is_core") {
    MultiGraph g = fig1_graph();
    CHECK(is_core(g, g.edge_set({"e1"})));
    CHECK_FALSE(is_core(g, g.edge_set({"e2"})));
    MultiGraph th = theta_graph();
    CHECK_FALSE(is_core(th, th.edge_set({"x1"})));
    CHECK_FALSE(is_core(th, th.edge_set({"x2"})));
    CHECK_FALSE(is_core(th, th.edge_set({"x3"})));
}

TEST_CASE("core_of") {
    MultiGraph g = fig1_graph();
    CHECK(core_of(g, g.edge_set({"e1", "e2"})) == g.edge_set({"e1"}));
    CHECK(core_of(g, g.edge_set({"e2", "e3"})) == g.edge_set({"e2", "e3"}));
    CHECK(core_of(g, g.edge_set({"e2"})).empty());  // forests have empty core
    CHECK(core_of(g, EdgeSet{}).empty());
}

TEST_CASE("collapse") {
    MultiGraph g = fig1_graph();
    MultiGraph c = collapse(g, g.edge_set({"e2"}));
    CHECK(c.vertex_count() == 1);
    CHECK(c.edge_count() == 3);
    for (const auto& e : c.edges()) CHECK(e.u == e.v);  // e1, e3, e4 all loops

    MultiGraph c2 = collapse(g, g.edge_set({"e1", "e4"}));  // loops vanish
    CHECK(c2.vertex_count() == 2);
    CHECK(c2.edge_count() == 2);
    for (const auto& e : c2.edges()) CHECK(e.u != e.v);

    MultiGraph c3 = collapse(g, EdgeSet{});
    CHECK(c3.vertex_count() == g.vertex_count());
    CHECK(c3.edge_count() == g.edge_count());
    for (int i = 0; i < g.edge_count(); ++i) CHECK(c3.edge(i).id == g.edge(i).id);
}

TEST_CASE("complement") {
    MultiGraph g = fig1_graph();
    CHECK(complement(g, g.edge_set({"e1"})) == g.edge_set({"e2", "e3", "e4"}));
    CHECK(complement(g, g.edge_set({"e2", "e3"})) == g.edge_set({"e1", "e4"}));
    MultiGraph th = theta_graph();
    CHECK(complement(th, th.edge_set({"x1"})) == th.edge_set({"x2", "x3"}));
    CHECK_THROWS_AS(complement(g, g.all_edges()), std::invalid_argument);
}

TEST_CASE("is_forest") {
    MultiGraph g = fig1_graph();
    CHECK(is_forest(g, g.edge_set({"e2"})));
    CHECK_FALSE(is_forest(g, g.edge_set({"e2", "e3"})));
    CHECK_FALSE(is_forest(g, g.edge_set({"e1"})));
    CHECK(is_forest(g, EdgeSet{}));
}

TEST_CASE("enumerate_core_subgraphs on the figure-1 graph") {
    MultiGraph g = fig1_graph();
    auto cores = enumerate_core_subgraphs(g, true);
    std::vector<EdgeSet> expected = {
        g.edge_set({"e1"}),       g.edge_set({"e4"}),
        g.edge_set({"e2", "e3"}), g.edge_set({"e1", "e4"}),
        g.edge_set({"e1", "e2", "e3"}), g.edge_set({"e2", "e3", "e4"})};
    CHECK(cores == expected);
}

TEST_CASE("enumerate_core_subgraphs: theta by brute force oracle") {
    MultiGraph th = theta_graph();
    std::vector<EdgeSet> oracle;
    for (std::uint64_t m = 1; m < 7; ++m)  // proper nonempty subsets
        if (testutil::oracle_is_core(th, {m})) oracle.push_back({m});
    auto cores = enumerate_core_subgraphs(th, true);
    CHECK(cores.size() == 3);  // the three parallel pairs
    std::set<std::uint64_t> got, want;
    for (auto c : cores) got.insert(c.bits);
    for (auto c : oracle) want.insert(c.bits);
    CHECK(got == want);
}

TEST_CASE("enumerate_core_subgraphs: rose") {
    MultiGraph r = rose(4);
    auto cores = enumerate_core_subgraphs(r, true);
    CHECK(cores.size() == (1u << 4) - 2);  // every nonempty proper subset of loops
}

TEST_CASE("canonical form and isomorphism") {
    MultiGraph g = fig1_graph();
    // swap the two vertices and rename edges
    MultiGraph h = MultiGraph::from_ends(
        {5, 7}, {{"a4", 5, 5}, {"a3", 7, 5}, {"a2", 5, 7}, {"a1", 7, 7}});
    CHECK(is_isomorphic(g, h));
    CHECK_FALSE(is_isomorphic(theta_graph(), rose(2)));

    // labeled canonicalization: 4 parallel edges, labels (1,0) vs (0,1)
    MultiGraph p4 = MultiGraph::from_ends(
        {0, 1}, {{"s1", 0, 1}, {"s2", 0, 1}, {"s3", 0, 1}, {"s4", 0, 1}});
    std::vector<int> lab1{1, 0}, lab2{0, 1};
    CHECK(canonical_form(p4, &lab1).code == canonical_form(p4, &lab2).code);
    std::vector<int> lab3{1, 1};
    CHECK(canonical_form(p4, &lab1).code != canonical_form(p4, &lab3).code);
}

TEST_CASE("canonical form is invariant under relabeling (property)") {
    std::mt19937 rng(20240811);
    auto graphs = enumerate_connected_core_graphs(4);
    for (const auto& g : graphs) {
        std::string base = canonical_form(g).code;
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<int> perm(g.vertex_count());
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            std::vector<int> vids(g.vertex_count());
            for (int v = 0; v < g.vertex_count(); ++v) vids[perm[v]] = v;
            std::vector<MultiGraph::Edge> es;
            for (const auto& e : g.edges()) es.push_back({e.id, perm[e.u], perm[e.v]});
            std::shuffle(es.begin(), es.end(), rng);
            MultiGraph h(vids, es);
            CHECK(canonical_form(h).code == base);
        }
    }
}

TEST_CASE("canonical form equals the brute-force minimum over permutations (property)") {
    // brute force: minimize the row code over every vertex permutation
    auto brute_code = [](const MultiGraph& g, const std::vector<int>& labels) {
        const int n = g.vertex_count();
        std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
        for (const auto& e : g.edges()) {
            if (e.u == e.v)
                ++m[e.u][e.u];
            else {
                ++m[e.u][e.v];
                ++m[e.v][e.u];
            }
        }
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::string best;
        do {
            std::string code = std::to_string(n) + "#";
            for (int p = 0; p < n; ++p) {
                std::vector<int> row;
                row.push_back(labels[perm[p]]);
                for (int q = 0; q < p; ++q) row.push_back(m[perm[q]][perm[p]]);
                row.push_back(m[perm[p]][perm[p]]);
                for (std::size_t i = 0; i < row.size(); ++i)
                    code += std::to_string(row[i]) + (i + 1 < row.size() ? "," : "");
                code += ";";
            }
            if (best.empty() || code < best) best = code;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    };

    std::mt19937 rng(5150);
    for (int trial = 0; trial < 1500; ++trial) {
        int nv = 1 + static_cast<int>(rng() % 5);
        int ne = 1 + static_cast<int>(rng() % 7);
        std::vector<int> vids(nv);
        std::iota(vids.begin(), vids.end(), 0);
        std::vector<MultiGraph::Edge> es;
        for (int e = 0; e < ne; ++e)
            es.push_back({"e" + std::to_string(e), static_cast<int>(rng() % nv),
                          static_cast<int>(rng() % nv)});
        std::vector<int> labels(nv);
        for (auto& l : labels) l = static_cast<int>(rng() % 3);
        MultiGraph g(vids, es);
        CHECK(canonical_form(g, &labels).code == brute_code(g, labels));
    }
}

TEST_CASE("core_of idempotence and forest equivalence (exhaustive <=4 edges)") {
    for (const auto& g : enumerate_connected_core_graphs(4)) {
        const std::uint64_t top = std::uint64_t{1} << g.edge_count();
        for (std::uint64_t m = 1; m < top; ++m) {
            EdgeSet a{m};
            EdgeSet c = core_of(g, a);
            if (!c.empty()) {
                CHECK(is_core(g, c));
                CHECK(core_of(g, c) == c);
            }
            CHECK(is_forest(g, a) == c.empty());
        }
    }
}

TEST_CASE("rank additivity under collapse (exhaustive <=5 edges)") {
    for (const auto& g : enumerate_connected_core_graphs(5)) {
        const std::uint64_t top = std::uint64_t{1} << g.edge_count();
        for (std::uint64_t m = 1; m + 1 < top; ++m) {
            EdgeSet a{m};
            MultiGraph q = collapse(g, a);
            int lhs = first_betti(g, g.all_edges());
            int rhs = first_betti(q, q.all_edges()) + first_betti(g, a);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("core subgraphs closed under union when the union is bridgeless (<=5 edges)") {
    for (const auto& g : enumerate_connected_core_graphs(5)) {
        auto cores = enumerate_core_subgraphs(g, false);
        std::set<std::uint64_t> core_bits;
        for (auto c : cores) core_bits.insert(c.bits);
        for (auto a : cores)
            for (auto b : cores) {
                EdgeSet u = a | b;
                if (is_core(g, u)) CHECK(core_bits.count(u.bits) == 1);
            }
    }
}

TEST_CASE("library core predicates match the deletion oracle (exhaustive <=4 edges)") {
    for (const auto& g : enumerate_connected_core_graphs(4)) {
        const std::uint64_t top = std::uint64_t{1} << g.edge_count();
        for (std::uint64_t m = 1; m < top; ++m) {
            EdgeSet a{m};
            CHECK(is_core(g, a) == testutil::oracle_is_core(g, a));
            CHECK(first_betti(g, a) == testutil::oracle_first_betti(g, a));
        }
    }
}

TEST_CASE("vertex automorphism counts match brute force (property)") {
    std::mt19937 rng(321);
    for (int trial = 0; trial < 600; ++trial) {
        int nv = 1 + static_cast<int>(rng() % 5);
        int ne = 1 + static_cast<int>(rng() % 6);
        std::vector<int> vids(nv);
        std::iota(vids.begin(), vids.end(), 0);
        std::vector<MultiGraph::Edge> es;
        for (int e = 0; e < ne; ++e)
            es.push_back({"e" + std::to_string(e), static_cast<int>(rng() % nv),
                          static_cast<int>(rng() % nv)});
        std::vector<int> labels(nv);
        for (auto& l : labels) l = static_cast<int>(rng() % 2);
        MultiGraph g(vids, es);

        std::vector<std::vector<int>> m(nv, std::vector<int>(nv, 0));
        for (const auto& e : g.edges()) {
            if (e.u == e.v)
                ++m[e.u][e.u];
            else {
                ++m[e.u][e.v];
                ++m[e.v][e.u];
            }
        }
        std::vector<int> perm(nv);
        std::iota(perm.begin(), perm.end(), 0);
        long brute = 0;
        do {
            bool ok = true;
            for (int a = 0; a < nv && ok; ++a) {
                if (labels[a] != labels[perm[a]]) ok = false;
                for (int b = a; b < nv && ok; ++b)
                    if (m[a][b] != m[perm[a]][perm[b]]) ok = false;
            }
            if (ok) ++brute;
        } while (std::next_permutation(perm.begin(), perm.end()));

        CHECK(static_cast<long>(vertex_automorphisms(g, &labels).size()) == brute);
    }
}

TEST_CASE("odd edge automorphisms match the pairwise brute force (property)") {
    auto brute_odd = [](const MultiGraph& g, const std::vector<int>& labels) {
        const int nv = g.vertex_count(), ne = g.edge_count();
        std::vector<int> eperm(ne), vperm(nv);
        std::iota(eperm.begin(), eperm.end(), 0);
        do {
            if (permutation_sign(eperm) > 0) continue;
            std::iota(vperm.begin(), vperm.end(), 0);
            do {
                bool ok = true;
                for (int v = 0; v < nv && ok; ++v)
                    if (labels[v] != labels[vperm[v]]) ok = false;
                for (int e = 0; e < ne && ok; ++e) {
                    int a = vperm[g.edge(e).u], b = vperm[g.edge(e).v];
                    int c = g.edge(eperm[e]).u, d = g.edge(eperm[e]).v;
                    if (std::minmax(a, b) != std::minmax(c, d)) ok = false;
                }
                if (ok) return true;
            } while (std::next_permutation(vperm.begin(), vperm.end()));
        } while (std::next_permutation(eperm.begin(), eperm.end()));
        return false;
    };

    std::mt19937 rng(777);
    for (int trial = 0; trial < 250; ++trial) {
        int nv = 1 + static_cast<int>(rng() % 4);
        int ne = 1 + static_cast<int>(rng() % 5);
        std::vector<int> vids(nv);
        std::iota(vids.begin(), vids.end(), 0);
        std::vector<MultiGraph::Edge> es;
        for (int e = 0; e < ne; ++e)
            es.push_back({"e" + std::to_string(e), static_cast<int>(rng() % nv),
                          static_cast<int>(rng() % nv)});
        std::vector<int> labels(nv);
        for (auto& l : labels) l = static_cast<int>(rng() % 2);
        MultiGraph g(vids, es);
        CHECK(has_odd_edge_automorphism(g, &labels) == brute_odd(g, labels));
    }
}

TEST_CASE("odd edge automorphisms") {
    CHECK(has_odd_edge_automorphism(theta_graph()));   // parallel class
    CHECK(has_odd_edge_automorphism(rose(2)));         // double loop
    CHECK_FALSE(has_odd_edge_automorphism(single_loop()));
    // loop at one vertex, loop at another, joining edge: the flip swaps the
    // two loops and fixes the bar — one transposition, odd
    MultiGraph dumbbell = MultiGraph::from_ends(
        {0, 1}, {{"a", 0, 0}, {"b", 0, 1}, {"c", 1, 1}});
    CHECK(has_odd_edge_automorphism(dumbbell));
    std::vector<int> labels{0, 1};  // distinct genera break the flip
    CHECK_FALSE(has_odd_edge_automorphism(dumbbell, &labels));
}
