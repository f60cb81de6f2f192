#include "doctest.h"

#include <functional>
#include <numeric>
#include <random>

#include "jewelkit/jacobian.hpp"
#include "test_helpers.hpp"

using namespace jewelkit;
using testutil::fig1_graph;
using testutil::rose;
using testutil::theta_graph;

namespace {

// Independent Gram summation over a given basis, written without the library
// loops: expand the double sum per entry.
QuadForm oracle_gram(const MultiGraph& g, const std::vector<std::vector<int>>& basis,
                     const std::vector<Rat>& lengths) {
    const int b = static_cast<int>(basis.size());
    QuadForm q;
    q.m.assign(b, std::vector<Rat>(b, Rat(0)));
    for (int i = 0; i < b; ++i)
        for (int j = 0; j < b; ++j) {
            Rat acc(0);
            for (int e = 0; e < g.edge_count(); ++e)
                acc += lengths[e] * Rat(basis[i][e]) * Rat(basis[j][e]);
            q.m[i][j] = acc;
        }
    return q;
}

// Alternate deterministic spanning tree: prefer the *last* edges. Fundamental
// cycles built by brute force over the tree path.
std::vector<std::vector<int>> reversed_cycle_basis(const MultiGraph& g) {
    const int nv = g.vertex_count(), ne = g.edge_count();
    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<char> in_tree(ne, 0);
    for (int e = ne - 1; e >= 0; --e) {
        int ru = find(g.edge(e).u), rv = find(g.edge(e).v);
        if (ru != rv) {
            parent[ru] = rv;
            in_tree[e] = 1;
        }
    }
    std::vector<std::vector<int>> basis;
    for (int e = 0; e < ne; ++e) {
        if (in_tree[e]) continue;
        // walk every tree path by depth-first search from v to u
        std::vector<int> z(ne, 0);
        z[e] = 1;
        if (!g.is_loop(e)) {
            std::vector<int> prev_v(nv, -1), prev_e(nv, -1);
            std::vector<int> stack{g.edge(e).v};
            prev_v[g.edge(e).v] = g.edge(e).v;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (int f = 0; f < ne; ++f) {
                    if (!in_tree[f]) continue;
                    int y = -1;
                    if (g.edge(f).u == x) y = g.edge(f).v;
                    if (g.edge(f).v == x) y = g.edge(f).u;
                    if (y >= 0 && prev_v[y] < 0) {
                        prev_v[y] = x;
                        prev_e[y] = f;
                        stack.push_back(y);
                    }
                }
            }
            for (int x = g.edge(e).u; x != g.edge(e).v; x = prev_v[x])
                z[prev_e[x]] += (g.edge(prev_e[x]).u == prev_v[x]) ? 1 : -1;
        }
        basis.push_back(std::move(z));
    }
    return basis;
}

std::vector<Rat> random_lengths(int count, std::mt19937& rng) {
    std::vector<long> raw(count);
    long total = 0;
    for (auto& x : raw) {
        x = 1 + static_cast<long>(rng() % 20);
        total += x;
    }
    std::vector<Rat> out;
    for (long x : raw) {
        Rat r(x, total);
        r.canonicalize();
        out.push_back(r);
    }
    return out;
}

}  // namespace

TEST_CASE("cycle basis") {
    auto b2 = cycle_basis(rose(2));
    REQUIRE(b2.size() == 2);
    CHECK(b2[0] == std::vector<int>{1, 0});
    CHECK(b2[1] == std::vector<int>{0, 1});

    auto bt = cycle_basis(theta_graph());  // tree = x1
    REQUIRE(bt.size() == 2);
    for (const auto& z : bt) {
        int nonzero = 0;
        for (int c : z) nonzero += (c != 0);
        CHECK(nonzero == 2);  // each cycle uses the tree edge and one other
    }

    auto bf = cycle_basis(fig1_graph());  // tree = {e2}
    REQUIRE(bf.size() == 3);
    CHECK(bf[0] == std::vector<int>{1, 0, 0, 0});          // the loop e1
    CHECK(bf[2] == std::vector<int>{0, 0, 0, 1});          // the loop e4
    CHECK(bf[1][1] * bf[1][2] == -1);                      // e3 against e2

    MultiGraph disconnected = MultiGraph::from_ends({0, 1}, {{"a", 0, 0}, {"b", 1, 1}});
    CHECK_THROWS_AS(cycle_basis(disconnected), std::invalid_argument);
}

TEST_CASE("jacobian forms") {
    MetricGraph r2{rose(2), {Rat(1, 2), Rat(1, 2)}};
    QuadForm q = jacobian_form(r2);
    CHECK(q.m == std::vector<std::vector<Rat>>{{Rat(1, 2), Rat(0)}, {Rat(0), Rat(1, 2)}});

    // theta with lengths (a, b, c), tree = x1: frozen from the summation oracle
    Rat a(1, 2), b(1, 3), c(1, 6);
    MetricGraph th{theta_graph(), {a, b, c}};
    QuadForm qt = jacobian_form(th);
    QuadForm expect = oracle_gram(th.graph, cycle_basis(th.graph), th.lengths);
    CHECK(qt.m == expect.m);
    CHECK(qt.m[0][0] == a + b);
    CHECK(qt.m[1][1] == a + c);
    CHECK(quadform_det(qt) == a * b + b * c + a * c);

    // block structure on the figure-1 graph: loops contribute diagonally
    MetricGraph fg{fig1_graph(), {Rat(1, 4), Rat(1, 4), Rat(1, 4), Rat(1, 4)}};
    QuadForm qf = jacobian_form(fg);
    CHECK(qf.m[0][0] == Rat(1, 4));
    CHECK(qf.m[2][2] == Rat(1, 4));
    CHECK(qf.m[1][1] == Rat(1, 2));  // the parallel-pair cycle
    CHECK(qf.m[0][1] == Rat(0));
    CHECK(qf.m[0][2] == Rat(0));

    QuadForm unit = jacobian_form(fg, EdgeWeighting::unit);
    CHECK(unit.m[0][0] == Rat(1));
    CHECK(unit.m[1][1] == Rat(2));

    MetricGraph bad{rose(2), {Rat(1, 2), Rat(1, 3)}};
    CHECK_THROWS_AS(jacobian_form(bad), std::invalid_argument);
}

TEST_CASE("positive definiteness") {
    CHECK(is_positive_definite({{{Rat(1, 2), Rat(0)}, {Rat(0), Rat(1, 2)}}}));
    CHECK_FALSE(is_positive_definite({{{Rat(1), Rat(2)}, {Rat(2), Rat(1)}}}));
    CHECK_THROWS_AS(is_positive_definite({{{Rat(1), Rat(2)}, {Rat(0), Rat(1)}}}),
                    std::invalid_argument);
}

TEST_CASE("forms are positive definite and tree-independent in determinant (<=4 edges)") {
    std::mt19937 rng(99123);
    for (const auto& g : enumerate_connected_core_graphs(4)) {
        for (int trial = 0; trial < 4; ++trial) {
            MetricGraph mg{g, random_lengths(g.edge_count(), rng)};
            QuadForm q = jacobian_form(mg);
            CHECK(is_positive_definite(q));
            QuadForm alt = oracle_gram(g, reversed_cycle_basis(g), mg.lengths);
            CHECK(quadform_det(q) == quadform_det(alt));
        }
    }
}

TEST_CASE("loop edges only touch diagonal entries (structure)") {
    for (const auto& g : enumerate_connected_core_graphs(4)) {
        auto basis = cycle_basis(g);
        for (int e = 0; e < g.edge_count(); ++e) {
            if (!g.is_loop(e)) continue;
            int touching = 0;
            for (const auto& z : basis) touching += (z[e] != 0);
            CHECK(touching <= 1);
        }
    }
}

TEST_CASE("boundary samples") {
    MultiGraph r2 = rose(2);
    TruncationParams p{12};
    auto samples = facet_samples(r2, r2.edge_set({"l1"}), p, 3, 7);
    REQUIRE(samples.size() == 3);
    for (const auto& s : samples) {
        CHECK(s.point == std::vector<Rat>{Rat(1, 4), Rat(3, 4)});  // 0-dimensional facet
        CHECK(s.form.m == std::vector<std::vector<Rat>>{{Rat(1, 4), Rat(0)},
                                                        {Rat(0), Rat(3, 4)}});
    }

    // on the figure-2 system, the facet opposite {s1,s4} pins l1 + l4 = 9/N
    MultiGraph g = testutil::d_fig2().graph;
    TruncationParams pg = TruncationParams::defaults_for(g);
    EdgeSet c = g.edge_set({"s1", "s4"});
    auto fs = facet_samples(g, c, pg, 4, 11);
    REQUIRE(fs.size() == 4);
    Rat expected = truncation_constant(g, c, pg);
    for (const auto& s : fs) {
        CHECK(s.point[g.edge_index("s1")] + s.point[g.edge_index("s4")] == expected);
        CHECK(is_positive_definite(s.form));
        for (const Rat& x : s.point) CHECK(x > 0);
    }

    CHECK(facet_samples(r2, r2.edge_set({"l1"}), p, 0).empty());
    CHECK(boundary_samples(2, 0).empty());
    auto agg = boundary_samples(2, 1);
    CHECK(!agg.empty());
    for (const auto& s : agg) CHECK(is_positive_definite(s.form));
}
