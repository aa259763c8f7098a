#include <catch2/catch_amalgamated.hpp>

#include "chambers/complex.hpp"
#include "chambers/connectivity.hpp"

using namespace chambers;

namespace {

PureComplex simplex_boundary_3() {
    // all 3-subsets of {0,1,2,3}
    return PureComplex(2, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

PureComplex octahedron() {
    // antipodal vertex pairs (0,5), (1,4), (2,3); facets pick one from each
    std::vector<std::vector<int>> facets;
    for (int a : {0, 5})
        for (int b : {1, 4})
            for (int c : {2, 3}) facets.push_back({a, b, c});
    return PureComplex(2, facets);
}

} // namespace

TEST_CASE("chamber graph of the 3-simplex boundary is K_4") {
    auto g = chamber_graph_from_complex(simplex_boundary_3());
    CHECK(g.vertex_count() == 4);
    CHECK(g.is_regular(3));
    CHECK(static_cast<int>(g.edges().size()) == 6);
    CHECK(vertex_connectivity(g).kappa() == 3);
}

TEST_CASE("chamber graph of the octahedron boundary") {
    auto g = chamber_graph_from_complex(octahedron());
    CHECK(g.vertex_count() == 8);
    CHECK(g.is_regular(3));

    // bipartite: 2-color by BFS
    auto dist = g.distances_from(0);
    for (const auto& e : g.edges())
        CHECK((dist[static_cast<size_t>(e.a)] + dist[static_cast<size_t>(e.b)]) % 2 == 1);
}

TEST_CASE("non-pure input is rejected") {
    CHECK_THROWS_AS(PureComplex(2, {{0, 1, 2}, {3, 4}}), Error);
}

TEST_CASE("balanced labeling of the octahedron pairs antipodes") {
    auto k = octahedron();
    auto labeling = balanced_type_labeling(k);
    REQUIRE(labeling.has_value());
    for (const auto& c : k.chambers()) {
        std::set<int> colors;
        for (int v : c) colors.insert(labeling->vertex_colors.at(v));
        CHECK(static_cast<int>(colors.size()) == 3);
    }
    CHECK(labeling->vertex_colors.at(0) == labeling->vertex_colors.at(5));
    CHECK(labeling->vertex_colors.at(1) == labeling->vertex_colors.at(4));
    CHECK(labeling->vertex_colors.at(2) == labeling->vertex_colors.at(3));
}

TEST_CASE("the 3-simplex boundary is not balanced") {
    CHECK_FALSE(balanced_type_labeling(simplex_boundary_3()).has_value());
}

TEST_CASE("flag complex of a graded poset is balanced by rank") {
    // chains of the poset 0 < {a,b} < 1 (diamond), as a 2-complex
    // vertices: 0 -> 0, a -> 1, b -> 2, 1 -> 3
    PureComplex flags(2, {{0, 1, 3}, {0, 2, 3}});
    auto labeling = balanced_type_labeling(flags);
    REQUIRE(labeling.has_value());
    CHECK(labeling->vertex_colors.at(1) == labeling->vertex_colors.at(2));
}

TEST_CASE("labeled chamber graph carries the missing wall color") {
    auto k = octahedron();
    auto labeling = balanced_type_labeling(k);
    REQUIRE(labeling.has_value());
    auto g = chamber_graph_from_complex(k, &*labeling);
    for (const auto& e : g.edges()) {
        REQUIRE(e.label.has_value());
        const auto& ca = k.chambers()[static_cast<size_t>(e.a)];
        const auto& cb = k.chambers()[static_cast<size_t>(e.b)];
        std::vector<int> only_a;
        std::set_difference(ca.begin(), ca.end(), cb.begin(), cb.end(),
                            std::back_inserter(only_a));
        REQUIRE(only_a.size() == 1);
        CHECK(*e.label == labeling->vertex_colors.at(only_a[0]));
    }
    // thin complex: at most one neighbor per label
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::set<int> labels;
        for (int w : g.neighbors(v)) labels.insert(*g.edge_label(v, w));
        CHECK(static_cast<int>(labels.size()) == g.degree(v));
    }
}
