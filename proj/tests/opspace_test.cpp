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

/// The seven canonical matrix units of the lifted path 1-2-3.
std::vector<CMat> p3_units() {
    return {unit(3, 0, 0), unit(3, 1, 1), unit(3, 2, 2), unit(3, 0, 1),
            unit(3, 1, 0), unit(3, 1, 2), unit(3, 2, 1)};
}

QuantumGraph s_p3() { return lift(path_graph(3), kTol); }

OperatorSubspace diagonal_algebra(int n) {
    std::vector<CMat> gens;
    for (int i = 0; i < n; ++i) gens.push_back(unit(n, i, i));
    return OperatorSubspace::span(n, gens, kTol);
}

QuantumGraph full_matrix_graph(int n) {
    std::vector<CMat> gens;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gens.push_back(unit(n, i, j));
    return make_quantum_graph(n, gens, kTol);
}

}  // namespace

TEST_CASE("make_quantum_graph degenerate and permissive spans") {
    QuantumGraph scalar = make_quantum_graph(2, {}, kTol);
    CHECK(scalar.dim() == 1);
    CHECK(scalar.space().contains(CMat::Identity(2, 2)));

    // One off-diagonal unit: permissive mode adjoins I and the adjoint.
    const int oracle = span_rank_oracle({CMat::Identity(2, 2), unit(2, 0, 1), unit(2, 1, 0)});
    REQUIRE(oracle == 3);
    QuantumGraph three = make_quantum_graph(2, {unit(2, 0, 1)}, kTol);
    CHECK(three.dim() == 3);

    CHECK(full_matrix_graph(2).dim() == 4);
}

TEST_CASE("make_quantum_graph strict mode names the failing invariant") {
    CHECK_THROWS_WITH(make_quantum_graph(2, {unit(2, 0, 1), unit(2, 1, 0)}, kTol, true),
                      Catch::Matchers::ContainsSubstring("identity"));
    CHECK_THROWS_WITH(make_quantum_graph(2, {CMat::Identity(2, 2), unit(2, 0, 1)}, kTol, true),
                      Catch::Matchers::ContainsSubstring("adjoint"));
    CHECK_NOTHROW(make_quantum_graph(3, p3_units(), kTol, true));
}

TEST_CASE("contains decides membership") {
    QuantumGraph scalar = make_quantum_graph(2, {}, kTol);
    CHECK(scalar.space().contains(CMat::Identity(2, 2)));
    CHECK_FALSE(scalar.space().contains(unit(2, 0, 0)));

    OperatorSubspace diag = diagonal_algebra(2);
    CMat d(2, 2);
    d << 3, 0, 0, 7;
    CHECK(diag.contains(d));
    CHECK_FALSE(diag.contains(unit(2, 0, 1)));
    CHECK_THROWS_AS(diag.contains(CMat::Identity(3, 3)), DimensionError);
}

TEST_CASE("product of scalar and rank-one spans") {
    OperatorSubspace scalar = OperatorSubspace::span(3, {CMat::Identity(3, 3)}, kTol);
    OperatorSubspace sq = product(scalar, scalar);
    CHECK(sq.dim() == 1);
    CHECK(sq.contains(CMat::Identity(3, 3)));

    OperatorSubspace u = OperatorSubspace::span(2, {unit(2, 0, 1)}, kTol);
    OperatorSubspace v = OperatorSubspace::span(2, {unit(2, 1, 0)}, kTol);
    OperatorSubspace uv = product(u, v);
    CHECK(uv.dim() == 1);
    CHECK(uv.contains(unit(2, 0, 0)));

    CHECK_THROWS_AS(product(scalar, u), DimensionError);
}

TEST_CASE("product of the lifted path with itself fills M_3") {
    // Oracle: brute-force span of all 49 pairwise products of the 7 units.
    std::vector<CMat> prods;
    for (const CMat& a : p3_units())
        for (const CMat& b : p3_units()) prods.push_back(a * b);
    const int oracle = span_rank_oracle(prods);
    REQUIRE(oracle == 9);
    QuantumGraph s = s_p3();
    CHECK(product(s.space(), s.space()).dim() == 9);
}

TEST_CASE("power recursion") {
    QuantumGraph s = s_p3();
    OperatorSubspace p0 = power(s, 0);
    CHECK(p0.dim() == 1);
    CHECK(p0.contains(CMat::Identity(3, 3)));

    QuantumGraph m2 = full_matrix_graph(2);
    CHECK(power(m2, 1).dim() == 4);

    CHECK(power(s, 2).dim() == 9);  // |e_1><e_2| |e_2><e_3| fills the missing corner
    CHECK_THROWS_AS(power(s, 3 * 3 + 2), ContractViolationError);
}

TEST_CASE("generated_algebra finds fixed points and stabilization powers") {
    auto full = generated_algebra(full_matrix_graph(3));
    CHECK(full.algebra.dim() == 9);
    CHECK(full.stabilization_power == 1);

    auto scalar = generated_algebra(make_quantum_graph(2, {}, kTol));
    CHECK(scalar.algebra.dim() == 1);
    CHECK(scalar.stabilization_power == 1);

    auto path = generated_algebra(s_p3());
    CHECK(path.algebra.dim() == 9);
    CHECK(path.stabilization_power == 2);
}

TEST_CASE("commutant of scalar, full, and diagonal spans") {
    OperatorSubspace scalars = OperatorSubspace::span(2, {CMat::Identity(2, 2)}, kTol);
    CHECK(commutant(scalars).dim() == 4);

    CHECK(commutant(full_matrix_graph(2).space()).dim() == 1);

    // By-hand oracle: X commutes with E_11 and E_22 iff X is diagonal.
    OperatorSubspace diag = diagonal_algebra(2);
    OperatorSubspace comm = commutant(diag);
    CHECK(comm.dim() == 2);
    for (const CMat& b : comm.basis()) {
        CHECK(std::abs(b(0, 1)) < 1e-10);
        CHECK(std::abs(b(1, 0)) < 1e-10);
    }
}

TEST_CASE("compress onto coordinate ranges") {
    Projection p2 = coordinate_projection(3, {0, 1}, kTol);
    CompressedSubspace full = compress(full_matrix_graph(3).space(), p2);
    CHECK(full.space.ambient_dim() == 2);
    CHECK(full.space.dim() == 4);

    CompressedSubspace scalar = compress(OperatorSubspace::span(3, {CMat::Identity(3, 3)}, kTol), p2);
    CHECK(scalar.space.dim() == 1);

    // No 1-3 edge in the path: compressing onto {e_1, e_3} kills off-diagonals.
    Projection p13 = coordinate_projection(3, {0, 2}, kTol);
    CompressedSubspace comp = compress(s_p3().space(), p13);
    CHECK(comp.space.dim() == 2);
    for (const CMat& b : comp.space.basis()) {
        CHECK(std::abs(b(0, 1)) < 1e-10);
        CHECK(std::abs(b(1, 0)) < 1e-10);
    }

    CHECK_THROWS_AS(compress(diagonal_algebra(3), Projection::zero(3)), DegenerateInputError);
}

TEST_CASE("cross_space dimensions on the lifted path") {
    QuantumGraph s = s_p3();
    Projection p1 = coordinate_projection(3, {0}, kTol);
    Projection p2 = coordinate_projection(3, {1}, kTol);
    Projection p3 = coordinate_projection(3, {2}, kTol);
    CHECK(cross_space(s.space(), p3, p1).dim() == 0);  // no (3,1) entry in any unit
    CHECK(cross_space(s.space(), p1, p2).dim() == 1);  // exactly |e_1><e_2|
}

TEST_CASE("cross_space of the full algebra is the full block") {
    Rng rng(71);
    for (int trial = 0; trial < 4; ++trial) {
        const int n = rng.uniform_int(2, 5);
        const int r = rng.uniform_int(1, n - 1), q = rng.uniform_int(1, n - 1);
        Projection p = Projection::from_range(rng.haar_isometry(n, r), kTol);
        Projection qq = Projection::from_range(rng.haar_isometry(n, q), kTol);
        CHECK(cross_space(full_matrix_graph(n).space(), p, qq).dim() == r * q);
    }
}

TEST_CASE("product is associative in dimension and span") {
    Rng rng(73);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = rng.uniform_int(2, 4);
        auto mk = [&](int gens) {
            std::vector<CMat> g;
            for (int i = 0; i < gens; ++i) g.push_back(rng.ginibre(n, n));
            return OperatorSubspace::span(n, g, kTol);
        };
        OperatorSubspace u = mk(rng.uniform_int(1, 2));
        OperatorSubspace v = mk(rng.uniform_int(1, 2));
        OperatorSubspace w = mk(rng.uniform_int(1, 2));
        OperatorSubspace left = product(product(u, v), w);
        OperatorSubspace right = product(u, product(v, w));
        CHECK(left.dim() == right.dim());
        CHECK(left.contains_subspace(right));
        CHECK(right.contains_subspace(left));
    }
}

TEST_CASE("powers of an operator system are nested") {
    Rng rng(79);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = rng.uniform_int(2, 4);
        QuantumGraph s = random_operator_system(rng, n, rng.uniform_int(1, 3), kTol);
        OperatorSubspace sq = product(s.space(), s.space());
        CHECK(sq.contains_subspace(s.space()));
        int prev = 1;
        for (int m = 1; m <= 4; ++m) {
            const int dim = power(s, m).dim();
            CHECK(dim >= prev);
            prev = dim;
        }
    }
}

TEST_CASE("generated algebras are *-algebras containing the identity") {
    Rng rng(83);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = rng.uniform_int(2, 4);
        QuantumGraph s = trial % 2 == 0
                             ? random_operator_system(rng, n, 1, kTol)
                             : random_block_operator_system(rng, {1, n - 1}, 2, kTol);
        auto ga = generated_algebra(s);
        OperatorSubspace sq = product(ga.algebra, ga.algebra);
        CHECK(sq.dim() == ga.algebra.dim());
        CHECK(ga.algebra.contains_subspace(sq));
        CHECK(ga.algebra.is_adjoint_closed());
        CHECK(ga.algebra.contains_identity());
    }
}

TEST_CASE("scalar commutant characterizes full generated algebra") {
    Rng rng(89);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = rng.uniform_int(2, 4);
        QuantumGraph s = trial % 3 == 0
                             ? random_block_operator_system(rng, {1, n - 1}, 1, kTol)
                             : random_operator_system(rng, n, rng.uniform_int(1, 3), kTol);
        const bool full = generated_algebra(s).algebra.dim() == n * n;
        const bool scalar_comm = commutant(s.space()).dim() == 1;
        CHECK(full == scalar_comm);
    }
}

TEST_CASE("cross_space dimensions are adjoint symmetric") {
    Rng rng(97);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = rng.uniform_int(2, 4);
        QuantumGraph s = random_operator_system(rng, n, rng.uniform_int(1, 2), kTol);
        Projection p = Projection::from_range(rng.haar_isometry(n, rng.uniform_int(1, n - 1)), kTol);
        Projection q = Projection::from_range(rng.haar_isometry(n, rng.uniform_int(1, n - 1)), kTol);
        CHECK(cross_space(s.space(), p, q).dim() == cross_space(s.space(), q, p).dim());
    }
}

TEST_CASE("compressing by the full projection is idempotent in dimension") {
    Rng rng(101);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = rng.uniform_int(3, 5);
        QuantumGraph s = random_operator_system(rng, n, 2, kTol);
        Projection p = Projection::from_range(rng.haar_isometry(n, rng.uniform_int(1, n - 1)), kTol);
        CompressedSubspace once = compress(s.space(), p);
        CompressedSubspace twice = compress(once.space, Projection::identity(once.space.ambient_dim()));
        CHECK(twice.space.dim() == once.space.dim());
    }
}

TEST_CASE("compression of an operator system is an operator system") {
    Rng rng(103);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = rng.uniform_int(3, 5);
        QuantumGraph s = random_operator_system(rng, n, 2, kTol);
        Projection p = Projection::from_range(rng.haar_isometry(n, rng.uniform_int(1, n - 1)), kTol);
        CompressedSubspace comp = compress(s.space(), p);
        CHECK_NOTHROW(as_quantum_graph(comp.space));
        CHECK((comp.isometry.adjoint() * comp.isometry - CMat::Identity(p.rank, p.rank)).norm() <
              1e-12);
    }
}
