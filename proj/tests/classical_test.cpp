// Copyright 2026 The qgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace qgraph;
using namespace qgraph::testing;

namespace {
const Tolerance kTol{};
}

TEST_CASE("lift dimensions") {
    CHECK(lift(empty_graph(2), kTol).dim() == 2);
    CHECK(lift(complete_graph(2), kTol).dim() == 4);
    CHECK(lift(path_graph(3), kTol).dim() == 7);  // 3 loops + 2 edges x 2 orientations
}

TEST_CASE("lift stores exact matrix units") {
    QuantumGraph s = lift(path_graph(3), kTol);
    CHECK(s.space().contains(unit(3, 0, 1)));
    CHECK(s.space().contains(unit(3, 1, 2)));
    CHECK_FALSE(s.space().contains(unit(3, 0, 2)));
}

TEST_CASE("confusability of scalar and full spans") {
    QuantumGraph scalar = make_quantum_graph(4, {}, kTol);
    Rng rng(7);
    OrthonormalBasisCn haar = random_basis(rng, 4, kTol);
    CHECK(confusability(scalar, haar).edge_count() == 0);

    std::vector<CMat> all_units;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) all_units.push_back(unit(3, i, j));
    QuantumGraph full = make_quantum_graph(3, all_units, kTol);
    CHECK(confusability(full, random_basis(rng, 3, kTol)).is_complete());
}

TEST_CASE("confusability returns the graph itself in the standard basis") {
    Rng rng(11);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = rng.uniform_int(2, 6);
        ClassicalGraph g = random_graph(rng, n, rng.uniform());
        CHECK(confusability(lift(g, kTol), OrthonormalBasisCn::standard(n)) == g);
    }
}

TEST_CASE("classical_connected basics") {
    CHECK(classical_connected(path_graph(3)));
    CHECK_FALSE(classical_connected(empty_graph(2)));
    // K_4 minus a perfect matching keeps the 4-cycle 1-3-2-4.
    ClassicalGraph g = complete_graph(4);
    ClassicalGraph h(4);
    for (auto [i, j] : g.edges())
        if (!((i == 0 && j == 1) || (i == 2 && j == 3))) h.add_edge(i, j);
    CHECK(h.edge_count() == 4);
    CHECK(classical_connected(h));
}

TEST_CASE("classical_vertex_connectivity on named graphs") {
    CHECK(classical_vertex_connectivity(path_graph(3)) == 1);
    CHECK(classical_vertex_connectivity(complete_graph(4)) == 3);
    CHECK(classical_vertex_connectivity(empty_graph(2)) == 0);
    CHECK_THROWS_AS(classical_vertex_connectivity(ClassicalGraph(1)), DegenerateInputError);

    // Cycle C_4: removing any single vertex leaves a connected path, and
    // {1, 3} is a 2-cut. Enumerated here as the independent oracle.
    ClassicalGraph c4 = cycle_graph(4);
    for (int v = 0; v < 4; ++v) CHECK(classical_connected(c4.remove_vertices({v})));
    CHECK_FALSE(classical_connected(c4.remove_vertices({1, 3})));
    CHECK(classical_vertex_connectivity(c4) == 2);
}

TEST_CASE("flow-based connectivity agrees with exhaustive enumeration") {
    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = rng.uniform_int(4, 9);
        ClassicalGraph g = random_graph(rng, n, 0.2 + 0.6 * rng.uniform());
        const int exhaustive = classical_vertex_connectivity(g);  // n < 12 route
        if (g.is_complete()) continue;
        int flow = n - 1;
        for (int s = 0; s < n; ++s)
            for (int t = s + 1; t < n; ++t)
                if (!g.adjacent(s, t)) flow = std::min(flow, detail::vertex_disjoint_paths(g, s, t));
        CHECK(flow == exhaustive);
    }
}

TEST_CASE("flow route handles graphs at and above the switchover size") {
    // Two cliques glued on a k-vertex boundary have connectivity exactly k.
    for (int k : {1, 2, 3}) {
        const int side = 6;
        const int n = 2 * side + k;
        ClassicalGraph g(n);
        auto connect_clique = [&](std::vector<int> verts) {
            for (std::size_t a = 0; a < verts.size(); ++a)
                for (std::size_t b = a + 1; b < verts.size(); ++b) g.add_edge(verts[a], verts[b]);
        };
        std::vector<int> left, right;
        for (int v = 0; v < side; ++v) left.push_back(v);
        for (int v = side; v < 2 * side; ++v) right.push_back(v);
        for (int v = 2 * side; v < n; ++v) {
            left.push_back(v);
            right.push_back(v);
        }
        connect_clique(left);
        connect_clique(right);
        REQUIRE(n >= 12);
        CHECK(classical_vertex_connectivity(g) == k);
    }
}

TEST_CASE("minimum_vertex_cuts enumerates all minimum cuts") {
    auto cuts_p3 = minimum_vertex_cuts(path_graph(3));
    REQUIRE(cuts_p3.size() == 1);
    CHECK(cuts_p3[0] == std::vector<int>{1});

    auto cuts_c4 = minimum_vertex_cuts(cycle_graph(4));
    REQUIRE(cuts_c4.size() == 2);
    CHECK(cuts_c4[0] == std::vector<int>{0, 2});
    CHECK(cuts_c4[1] == std::vector<int>{1, 3});

    CHECK(minimum_vertex_cuts(complete_graph(4)).size() == 4);
    auto cuts_disc = minimum_vertex_cuts(empty_graph(3));
    REQUIRE(cuts_disc.size() == 1);
    CHECK(cuts_disc[0].empty());
}

TEST_CASE("classical_tree_packing_base counts cross edges") {
    auto r = classical_tree_packing_base(path_graph(3), {{0}, {1}, {2}});
    CHECK(r.cross_edges == 2);
    CHECK(r.holds);

    auto whole = classical_tree_packing_base(path_graph(3), {{0, 1, 2}});
    CHECK(whole.cross_edges == 0);
    CHECK(whole.holds);

    auto fail = classical_tree_packing_base(empty_graph(2), {{0}, {1}});
    CHECK(fail.cross_edges == 0);
    CHECK_FALSE(fail.holds);

    CHECK_THROWS_AS(classical_tree_packing_base(path_graph(3), {{0}, {1}}), ValidationError);
    CHECK_THROWS_AS(classical_tree_packing_base(path_graph(3), {{0, 1}, {1, 2}}), ValidationError);
    CHECK_THROWS_AS(classical_tree_packing_base(path_graph(3), {{0, 1, 2}, {}}), ValidationError);
}

TEST_CASE("tree packing base case holds for every partition of small connected graphs") {
    for (int n = 2; n <= 5; ++n) {
        const auto partitions = set_partitions(n);
        for (const ClassicalGraph& g : all_labeled_graphs(n)) {
            if (!classical_connected(g)) continue;
            for (const auto& partition : partitions) {
                CHECK(classical_tree_packing_base(g, partition).holds);
            }
        }
    }
}

TEST_CASE("validate_orth_rep accepts and rejects as specified") {
    // Empty graph on 2 vertices with orthogonal coordinates.
    ClassicalOrthRep ortho{2, {basis_vec(2, 0), basis_vec(2, 1)}};
    auto ok = validate_orth_rep(empty_graph(2), ortho, kTol);
    CHECK(ok.valid);
    CHECK(ok.locally_general_position);

    // Complete graphs admit anything nonzero, vacuously LGP.
    ClassicalOrthRep ones{1, {CVec::Ones(1), CVec::Ones(1), CVec::Ones(1)}};
    auto vac = validate_orth_rep(complete_graph(3), ones, kTol);
    CHECK(vac.valid);
    CHECK(vac.locally_general_position);

    // Path 1-2-3 with f(1) = f(3): the non-adjacent endpoints collide.
    CVec mid(2);
    mid << 1.0, 1.0;
    ClassicalOrthRep bad{2, {basis_vec(2, 0), mid, basis_vec(2, 0)}};
    CHECK_FALSE(validate_orth_rep(path_graph(3), bad, kTol).valid);

    ClassicalOrthRep zero{2, {basis_vec(2, 0), CVec::Zero(2)}};
    CHECK_THROWS_AS(validate_orth_rep(empty_graph(2), zero, kTol), ValidationError);
}

TEST_CASE("validate_orth_rep flags collinear non-neighbors as not LGP") {
    // Vertices 1, 2 share a direction and are both non-adjacent to vertex 3.
    ClassicalGraph g(3);
    g.add_edge(0, 1);
    ClassicalOrthRep f{2, {basis_vec(2, 0), (2.0 * basis_vec(2, 0)).eval(), basis_vec(2, 1)}};
    auto check = validate_orth_rep(g, f, kTol);
    CHECK(check.valid);
    CHECK_FALSE(check.locally_general_position);
}

TEST_CASE("the pentagon umbrella is a valid LGP representation") {
    auto check = validate_orth_rep(cycle_graph(5), c5_umbrella(), kTol);
    CHECK(check.valid);
    CHECK(check.locally_general_position);
}

TEST_CASE("constructed representation instances validate as built") {
    Rng rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        RepInstance inst = random_rep_instance(rng);
        auto check = validate_orth_rep(inst.graph, inst.rep, kTol);
        CHECK(check.valid);
        if (inst.lgp_by_construction) CHECK(check.locally_general_position);
    }
}

TEST_CASE("basis_aligned_with splits along a projection") {
    Projection p = coordinate_projection(4, {1, 3}, kTol);
    OrthonormalBasisCn basis = basis_aligned_with(p, kTol);
    for (int k = 0; k < 2; ++k) CHECK((p.matrix * basis.vectors.col(k) - basis.vectors.col(k)).norm() < 1e-12);
    for (int k = 2; k < 4; ++k) CHECK((p.matrix * basis.vectors.col(k)).norm() < 1e-12);
}

TEST_CASE("graph JSON round trip is one-indexed") {
    ClassicalGraph g = path_graph(3);
    Json j = classical_graph_instance(g);
    CHECK(j["payload"]["edges"][0][0] == 1);
    ClassicalGraph back = build_classical_graph(parse_instance(j));
    CHECK(back == g);
}
