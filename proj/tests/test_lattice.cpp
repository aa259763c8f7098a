#include <catch2/catch_amalgamated.hpp>

#include "chambers/building.hpp"
#include "chambers/connectivity.hpp"
#include "chambers/lattice.hpp"
#include "oracles.hpp"

using namespace chambers;

namespace {

GeometricLattice pentagon_n5() {
    // 0 < a < c < 1 and 0 < b < 1
    // ids: 0 bottom, 1 = a, 2 = b, 3 = c, 4 top; ranks by longest chain
    return GeometricLattice({0, 1, 1, 2, 3}, {{0, 1}, {0, 2}, {1, 3}, {3, 4}, {2, 4}}, "N5");
}

GeometricLattice square_face_lattice() {
    // vertices v1..v4 (ids 1-4), edges e12, e23, e34, e41 (ids 5-8), face 9
    std::vector<std::pair<int, int>> covers;
    for (int v = 1; v <= 4; ++v) covers.emplace_back(0, v);
    auto edge = [&](int id, int va, int vb) {
        covers.emplace_back(va, id);
        covers.emplace_back(vb, id);
    };
    edge(5, 1, 2);
    edge(6, 2, 3);
    edge(7, 3, 4);
    edge(8, 4, 1);
    for (int e = 5; e <= 8; ++e) covers.emplace_back(e, 9);
    return GeometricLattice({0, 1, 1, 1, 1, 2, 2, 2, 2, 3}, covers, "square-faces");
}

} // namespace

TEST_CASE("lattice constructors") {
    auto b4 = boolean_lattice(4);
    CHECK(b4.size() == 16);
    CHECK(b4.height() == 4);
    CHECK(static_cast<int>(b4.atoms().size()) == 4);

    auto p4 = partition_lattice(4);
    CHECK(p4.size() == 15);
    CHECK(p4.height() == 3);
    CHECK(static_cast<int>(p4.atoms().size()) == 6);

    auto s32 = subspace_lattice(3, 2);
    CHECK(s32.size() == 16);
    CHECK(s32.height() == 3);
    CHECK(static_cast<int>(s32.atoms().size()) == 7);
}

TEST_CASE("flats of a matrix over F_p form a geometric lattice") {
    PrimeField f2(2);
    // U_{2,3}: three pairwise independent vectors in F_2^2
    FpMatrix ground = {{1, 0}, {0, 1}, {1, 1}};
    auto flats = flats_lattice(f2, ground);
    CHECK(flats.height() == 2);
    CHECK(static_cast<int>(flats.atoms().size()) == 3);
    CHECK(validate_geometric(flats).ok());
    CHECK(q_of_lattice(flats).q == 2);

    // a matrix with a loop column and a parallel pair
    FpMatrix degenerate = {{0, 0}, {1, 0}, {1, 0}, {0, 1}};
    auto flats2 = flats_lattice(f2, degenerate);
    CHECK(validate_geometric(flats2).ok());
    CHECK(flats2.height() == 2);
    CHECK(static_cast<int>(flats2.atoms().size()) == 2);
}

TEST_CASE("validate_geometric distinguishes the good and the bad") {
    CHECK(validate_geometric(boolean_lattice(3)).ok());
    CHECK(validate_geometric(partition_lattice(4)).ok());
    CHECK(validate_geometric(subspace_lattice(3, 2)).ok());

    auto n5 = validate_geometric(pentagon_n5());
    CHECK_FALSE(n5.ok());
    CHECK_FALSE(n5.graded);

    auto sq = validate_geometric(square_face_lattice());
    CHECK_FALSE(sq.ok());
    CHECK_FALSE(sq.semimodular);
}

TEST_CASE("q of the standard lattices") {
    CHECK(q_of_lattice(boolean_lattice(4)).q == 1);
    CHECK(q_of_lattice(subspace_lattice(3, 2)).q == 2);
    CHECK(q_of_lattice(partition_lattice(4)).q == 1);
    CHECK(q_of_lattice(subspace_lattice(3, 3)).q == 3);
    CHECK_THROWS_AS(q_of_lattice(boolean_lattice(1)), Error);
}

TEST_CASE("lemma 5.2 injection property") {
    for (const auto& p : {boolean_lattice(4), subspace_lattice(3, 2), partition_lattice(4)}) {
        for (int x = 0; x < p.size(); ++x)
            for (int y = 0; y < p.size(); ++y) {
                if (!p.lt(x, y) || p.rank(y) != p.rank(x) + 2) continue;
                // find atoms a, b with x < x v a < x v a v b = y
                int a = -1, bb = -1;
                for (int at : p.atoms()) {
                    if (p.leq(at, x) || !p.leq(at, y)) continue;
                    if (a < 0) {
                        a = at;
                        continue;
                    }
                    if (!p.leq(at, p.join(x, a))) {
                        bb = at;
                        break;
                    }
                }
                REQUIRE(a >= 0);
                REQUIRE(bb >= 0);
                int ab = p.join(a, bb);
                // c -> x v c from (0, a v b) into (x, y) is injective
                std::map<int, int> seen;
                for (int cc : p.open_interval(p.bottom(), ab)) {
                    int img = p.join(x, cc);
                    CHECK(p.lt(x, img));
                    CHECK(p.lt(img, y));
                    CHECK(seen.emplace(img, cc).second);
                }
            }
    }
}

TEST_CASE("chamber graphs of the standard lattices") {
    auto b4 = lattice_chamber_graph(boolean_lattice(4));
    CHECK(b4.graph.vertex_count() == 24);
    CHECK(b4.graph.is_regular(3));

    auto p4 = lattice_chamber_graph(partition_lattice(4));
    CHECK(p4.graph.vertex_count() == static_cast<int>(oracles::partition_chain_count(4)));
    CHECK(p4.graph.vertex_count() == 18);

    auto s32 = lattice_chamber_graph(subspace_lattice(3, 2));
    CHECK(s32.graph.vertex_count() == 21);
    CHECK(s32.graph.is_regular(4));
}

TEST_CASE("subspace(3,2) chain complex is isomorphic to the flag building") {
    auto lat = subspace_lattice(3, 2);
    auto cc = lattice_chamber_graph(lat);
    FlagBuilding bldg(3, 2);
    REQUIRE(cc.graph.vertex_count() == bldg.chamber_count());

    // a chain (line, plane) is exactly a flag, and both sides sort their
    // chambers by the same canonical subspace order, so the identity map on
    // ids is the isomorphism: labeled edge sets must match verbatim
    CHECK(cc.graph.edges().size() == bldg.graph().edges().size());
    std::vector<std::tuple<int, int, int>> ec, eb;
    for (const auto& e : cc.graph.edges()) ec.emplace_back(e.a, e.b, *e.label);
    for (const auto& e : bldg.graph().edges()) eb.emplace_back(e.a, e.b, *e.label);
    CHECK(ec == eb);
}

TEST_CASE("distance-2 witness") {
    auto b4 = boolean_lattice(4);
    auto id_of_set = [&](unsigned mask) {
        // elements sorted by (popcount, mask)
        std::vector<std::pair<int, unsigned>> elems;
        for (unsigned m = 0; m < 16; ++m) elems.emplace_back(__builtin_popcount(m), m);
        std::sort(elems.begin(), elems.end());
        for (int i = 0; i < 16; ++i)
            if (elems[static_cast<size_t>(i)].second == mask) return i;
        return -1;
    };
    // C: {1} < {1,2} < {1,2,3};  D: {2} < {1,2} < {1,2,4}
    Chain c = {id_of_set(0b0001), id_of_set(0b0011), id_of_set(0b0111)};
    Chain d = {id_of_set(0b0010), id_of_set(0b0011), id_of_set(0b1011)};
    auto w = distance2_witness(b4, c, d);
    CHECK(w.i1 == 1);
    CHECK(w.i2 == 3);
    CHECK_FALSE(w.swapped);
    Chain expected_b = {id_of_set(0b0010), id_of_set(0b0011), id_of_set(0b0111)};
    CHECK(w.common == expected_b);

    Chain adjacent = {id_of_set(0b0010), id_of_set(0b0011), id_of_set(0b0111)};
    CHECK_THROWS_AS(distance2_witness(b4, c, adjacent), Error);
    CHECK_THROWS_AS(distance2_witness(b4, c, c), Error);
    Chain far = {id_of_set(0b0010), id_of_set(0b1010), id_of_set(0b1011)};
    CHECK_THROWS_AS(distance2_witness(b4, c, far), Error);
}

TEST_CASE("theorem 5.3 families on the acceptance lattices") {
    struct Instance {
        GeometricLattice lattice;
        int expected_paths;
    };
    std::vector<Instance> instances;
    instances.push_back({boolean_lattice(4), 3});
    instances.push_back({partition_lattice(4), 2});
    instances.push_back({subspace_lattice(3, 2), 4});

    for (const auto& inst : instances) {
        const auto& lat = inst.lattice;
        auto cc = lattice_chamber_graph(lat);
        int q = q_of_lattice(lat).q;
        int n = lat.height();
        REQUIRE(q * (n - 1) == inst.expected_paths);
        int pairs = 0;
        for (auto [u, v] : cc.graph.distance_two_pairs()) {
            auto fam = lattice_disjoint_paths(lat, cc.chains[static_cast<size_t>(u)],
                                              cc.chains[static_cast<size_t>(v)]);
            CHECK(fam.path_count() == inst.expected_paths);
            auto pf = to_path_family(cc, fam);
            CHECK(verify_disjoint_family(cc.graph, pf).ok);
            CHECK(local_connectivity(cc.graph, u, v).value >= inst.expected_paths);
            ++pairs;
        }
        CHECK(pairs > 0);
    }
}

TEST_CASE("theorem 5.3 exercises the far cases on larger boolean lattices") {
    // cases with |r - i1|, |r - i2| >= 2 and the one-sided near cases need
    // rank >= 5; pick explicit pairs instead of sweeping
    auto b6 = boolean_lattice(6);
    auto chain_of_masks = [&](std::vector<unsigned> masks) {
        std::vector<std::pair<int, unsigned>> elems;
        for (unsigned m = 0; m < 64; ++m) elems.emplace_back(__builtin_popcount(m), m);
        std::sort(elems.begin(), elems.end());
        Chain out;
        for (unsigned m : masks)
            for (int i = 0; i < 64; ++i)
                if (elems[static_cast<size_t>(i)].second == m) {
                    out.push_back(i);
                    break;
                }
        return out;
    };
    // C and D differ at ranks 1 and 5: exercises cases 1 (r=3), 2, 3, 7, 8, 9, 10
    Chain c = chain_of_masks({0b000001, 0b000011, 0b000111, 0b001111, 0b011111});
    Chain d = chain_of_masks({0b000010, 0b000011, 0b000111, 0b001111, 0b101111});
    auto fam = lattice_disjoint_paths(b6, c, d);
    CHECK(fam.path_count() == 1 * 5);

    // differ at ranks 2 and 3 (adjacent, interior): cases 2, 4, 6, 9 and far case
    Chain c2 = chain_of_masks({0b000001, 0b000011, 0b000111, 0b001111, 0b011111});
    Chain d2 = chain_of_masks({0b000001, 0b000101, 0b001101, 0b001111, 0b011111});
    auto fam2 = lattice_disjoint_paths(b6, c2, d2);
    CHECK(fam2.path_count() == 5);

    // differ at ranks 2 and 4: case 5 at r=3
    Chain c3 = chain_of_masks({0b000001, 0b000011, 0b000111, 0b001111, 0b011111});
    Chain d3 = chain_of_masks({0b000001, 0b000101, 0b000111, 0b010111, 0b011111});
    auto fam3 = lattice_disjoint_paths(b6, c3, d3);
    CHECK(fam3.path_count() == 5);
}

TEST_CASE("theorem 5.3 full sweep on subspace(3,3) has q = 3 groups") {
    auto lat = subspace_lattice(3, 3);
    auto cc = lattice_chamber_graph(lat);
    int q = q_of_lattice(lat).q;
    REQUIRE(q == 3);
    int count = 0;
    for (auto [u, v] : cc.graph.distance_two_pairs()) {
        if (count++ % 7 != 0) continue;  // sample; the acceptance suite sweeps
        auto fam = lattice_disjoint_paths(lat, cc.chains[static_cast<size_t>(u)],
                                          cc.chains[static_cast<size_t>(v)]);
        CHECK(fam.path_count() == q * 2);
        CHECK(verify_disjoint_family(cc.graph, to_path_family(cc, fam)).ok);
    }
}

TEST_CASE("swapped witness orientation still yields a certified family") {
    // engineer a pair where B1 is invalid so the roles must swap:
    // subspace lattice, chains differing at adjacent ranks
    auto lat = subspace_lattice(3, 2);
    auto cc = lattice_chamber_graph(lat);
    int found = 0;
    for (auto [u, v] : cc.graph.distance_two_pairs()) {
        auto w = distance2_witness(lat, cc.chains[static_cast<size_t>(u)],
                                   cc.chains[static_cast<size_t>(v)]);
        if (!w.swapped) continue;
        ++found;
        auto fam = lattice_disjoint_paths(lat, cc.chains[static_cast<size_t>(u)],
                                          cc.chains[static_cast<size_t>(v)]);
        CHECK(fam.swapped);
        CHECK(fam.source == cc.chains[static_cast<size_t>(u)]);
        CHECK(verify_disjoint_family(cc.graph, to_path_family(cc, fam)).ok);
    }
    CHECK(found > 0);
}
