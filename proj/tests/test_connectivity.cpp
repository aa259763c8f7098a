#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "chambers/complex.hpp"
#include "chambers/connectivity.hpp"
#include "chambers/coxeter.hpp"
#include "oracles.hpp"

using namespace chambers;

namespace {

ChamberGraph complete_graph(int n) {
    ChamberGraph g(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
    g.finalize();
    return g;
}

ChamberGraph path_graph(int n) {
    ChamberGraph g(n);
    for (int a = 0; a + 1 < n; ++a) g.add_edge(a, a + 1);
    g.finalize();
    return g;
}

ChamberGraph cycle_graph(int n) {
    ChamberGraph g(n);
    for (int a = 0; a + 1 < n; ++a) g.add_edge(a, a + 1);
    g.add_edge(0, n - 1);
    g.finalize();
    return g;
}

// Complete ternary tree with `depth` levels of edges below the root.
ChamberGraph ternary_tree(int depth) {
    std::vector<std::pair<int, int>> edges;
    int next = 1;
    std::vector<int> frontier{0};
    for (int d = 0; d < depth; ++d) {
        std::vector<int> nxt;
        for (int v : frontier)
            for (int c = 0; c < 3; ++c) {
                edges.emplace_back(v, next);
                nxt.push_back(next++);
            }
        frontier = nxt;
    }
    ChamberGraph g(next);
    for (auto [a, b] : edges) g.add_edge(a, b);
    g.finalize();
    return g;
}

} // namespace

TEST_CASE("local connectivity on basic graphs") {
    auto k4 = complete_graph(4);
    auto r = local_connectivity(k4, 0, 2);
    CHECK(r.value == 3);
    CHECK(verify_disjoint_family(k4, r.family).ok);

    auto p5 = path_graph(5);
    auto rp = local_connectivity(p5, 0, 4);
    CHECK(rp.value == 1);
    CHECK(rp.family.paths.size() == 1);

    CHECK_THROWS_AS(local_connectivity(p5, 2, 2), Error);
}

TEST_CASE("local connectivity on the S_4 Cayley graph matches the paper example") {
    CayleyBall ball(CoxeterMatrix::type_a(3), 6);
    const auto& g = ball.graph();
    REQUIRE(g.complete());
    int s1 = ball.id_of({0});
    int s2 = ball.id_of({1});
    auto r = local_connectivity(g, s1, s2);
    CHECK(r.value == 3);
    CHECK(verify_disjoint_family(g, r.family).ok);
    CHECK(static_cast<int>(r.min_cut.size()) == 3);
}

TEST_CASE("liu criterion") {
    CayleyBall ball(CoxeterMatrix::type_a(3), 6);
    auto rep = liu_check(ball.graph(), 3);
    CHECK(rep.passed);
    CHECK(rep.method == "liu");

    auto tree = ternary_tree(4);
    auto tr = liu_check(tree, 2);
    CHECK_FALSE(tr.passed);
    REQUIRE(tr.witness_pair.has_value());
    auto [u, v] = *tr.witness_pair;
    CHECK(tree.distance(u, v) == 2);
    CHECK(local_connectivity(tree, u, v).value < 2);

    auto c6 = cycle_graph(6);
    CHECK(liu_check(c6, 2).passed);

    CHECK_THROWS_AS(liu_check(complete_graph(3), 3), Error);
}

TEST_CASE("liu pass implies random deletions keep the graph connected") {
    auto c6 = cycle_graph(6);
    REQUIRE(liu_check(c6, 2).passed);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        int drop = static_cast<int>(rng() % 6);
        std::vector<char> removed(6, 0);
        removed[static_cast<size_t>(drop)] = 1;
        int start = drop == 0 ? 1 : 0;
        for (int v = 0; v < 6; ++v) {
            if (removed[static_cast<size_t>(v)] || v == start) continue;
            CHECK(oracles::connects_avoiding(c6, start, v, removed));
        }
    }
}

TEST_CASE("exact vertex connectivity") {
    CHECK(vertex_connectivity(complete_graph(5)).kappa() == 4);

    CayleyBall ball(CoxeterMatrix::type_a(3), 6);
    auto rep = vertex_connectivity(ball.graph());
    CHECK(rep.kappa() == 3);
    REQUIRE(static_cast<int>(rep.separating_set.size()) == 3);

    // The reported separating set must disconnect the graph when removed.
    std::vector<char> removed(static_cast<size_t>(ball.graph().vertex_count()), 0);
    for (int v : rep.separating_set) removed[static_cast<size_t>(v)] = 1;
    int a = -1;
    for (int v = 0; v < ball.graph().vertex_count(); ++v)
        if (!removed[static_cast<size_t>(v)]) {
            a = v;
            break;
        }
    bool all_reachable = true;
    for (int v = a + 1; v < ball.graph().vertex_count(); ++v)
        if (!removed[static_cast<size_t>(v)] &&
            !oracles::connects_avoiding(ball.graph(), a, v, removed))
            all_reachable = false;
    CHECK_FALSE(all_reachable);
}

TEST_CASE("verify_disjoint_family flags violations") {
    auto c6 = cycle_graph(6);
    PathFamily fam;
    fam.source = 0;
    fam.target = 3;
    fam.paths = {{0, 1, 2, 3}, {0, 5, 4, 3}};
    CHECK(verify_disjoint_family(c6, fam).ok);

    PathFamily shared = fam;
    shared.paths[1] = {0, 1, 2, 3};
    auto cert = verify_disjoint_family(c6, shared);
    CHECK_FALSE(cert.ok);
    CHECK(cert.shared_vertex >= 0);

    PathFamily nonedge = fam;
    nonedge.paths[0] = {0, 2, 3};
    CHECK_FALSE(verify_disjoint_family(c6, nonedge).ok);

    PathFamily wrong_end = fam;
    wrong_end.paths[0] = {0, 1, 2};
    CHECK_FALSE(verify_disjoint_family(c6, wrong_end).ok);
}

TEST_CASE("flow equals exhaustive Menger bounds on random graphs") {
    std::mt19937 rng(20250810);
    int tested = 0;
    while (tested < 40) {
        int n = 4 + static_cast<int>(rng() % 7);  // 4..10
        auto g = oracles::random_graph(rng, n, 0.4);
        int u = 0, v = n - 1;
        if (g.has_edge(u, v)) continue;
        ++tested;
        auto res = local_connectivity(g, u, v);
        CHECK(res.value == oracles::brute_min_vertex_cut(g, u, v));
        CHECK(res.value == oracles::brute_max_disjoint_paths(g, u, v));
        CHECK(static_cast<int>(res.family.paths.size()) == res.value);
        CHECK(verify_disjoint_family(g, res.family).ok);
        CHECK(static_cast<int>(res.min_cut.size()) == res.value);
        if (res.value > 0) {
            std::vector<char> removed(static_cast<size_t>(n), 0);
            for (int x : res.min_cut) removed[static_cast<size_t>(x)] = 1;
            CHECK_FALSE(oracles::connects_avoiding(g, u, v, removed));
        }
    }
}

TEST_CASE("incomplete graphs require an explicit override") {
    CayleyBall ball(CoxeterMatrix::dihedral(CoxeterMatrix::kInfinity), 3);
    const auto& g = ball.graph();
    REQUIRE_FALSE(g.complete());
    int s = ball.id_of({0});
    int t = ball.id_of({1});
    CHECK_THROWS_AS(local_connectivity(g, s, t), Error);
    LocalConnectivityOptions opts;
    opts.allow_incomplete = true;
    auto res = local_connectivity(g, s, t, opts);
    CHECK(res.lower_bound_only);
    CHECK(res.value == 1);

    // endpoints too close to the boundary are rejected even with the override
    int deep = ball.id_of({0, 1, 0});
    CHECK(g.is_boundary(deep));
    CHECK_THROWS_AS(local_connectivity(g, s, deep, opts), Error);
}
