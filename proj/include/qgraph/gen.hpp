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

#pragma once

#include <vector>

#include "qgraph/classical.hpp"
#include "qgraph/cpmaps.hpp"
#include "qgraph/opspace.hpp"
#include "qgraph/rng.hpp"

namespace qgraph {

/// Erdos-Renyi G(n, p).
inline ClassicalGraph random_graph(Rng& rng, int n, double p) {
    ClassicalGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < p) g.add_edge(i, j);
    return g;
}

/// Operator system spanned by Ginibre generators (plus identity and adjoints).
inline QuantumGraph random_operator_system(Rng& rng, int n, int generators,
                                           const Tolerance& tol = {}) {
    std::vector<CMat> gens;
    gens.reserve(static_cast<std::size_t>(generators));
    for (int i = 0; i < generators; ++i) gens.push_back(rng.ginibre(n, n));
    return make_quantum_graph(n, gens, tol);
}

/// Operator system with hidden block structure: block-diagonal Ginibre
/// generators conjugated by one Haar unitary. Disconnected by construction
/// when there are at least two blocks.
inline QuantumGraph random_block_operator_system(Rng& rng, const std::vector<int>& blocks,
                                                 int generators, const Tolerance& tol = {}) {
    int n = 0;
    for (int b : blocks) {
        if (b <= 0) throw ValidationError("random_block_operator_system: block sizes must be positive");
        n += b;
    }
    CMat u = rng.haar_unitary(n);
    std::vector<CMat> gens;
    for (int i = 0; i < generators; ++i) {
        CMat g = CMat::Zero(n, n);
        int off = 0;
        for (int b : blocks) {
            g.block(off, off, b, b) = rng.ginibre(b, b);
            off += b;
        }
        gens.push_back(u * g * u.adjoint());
    }
    return make_quantum_graph(n, gens, tol);
}

/// Haar-random quantum channel M_n -> M_d with k Kraus operators, via a
/// Stinespring isometry C^n -> C^d (x) C^k.
inline KrausMap random_channel(Rng& rng, int n, int d, int k, const Tolerance& tol = {}) {
    if (d * k < n) throw ValidationError("random_channel: need d*k >= n for an isometry");
    CMat v = rng.haar_isometry(d * k, n);
    std::vector<CMat> ops;
    ops.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) ops.push_back(v.middleRows(i * d, d));
    return KrausMap::make(std::move(ops), tol);
}

/// Direct sum of two random channels with orthogonal output blocks; its
/// confusability graph is block-diagonal, hence disconnected.
inline KrausMap random_direct_sum_channel(Rng& rng, int n1, int n2, int d1, int d2, int k,
                                          const Tolerance& tol = {}) {
    KrausMap a = random_channel(rng, n1, d1, k, tol);
    KrausMap b = random_channel(rng, n2, d2, k, tol);
    std::vector<CMat> ops;
    const int n = n1 + n2, d = d1 + d2;
    for (int i = 0; i < k; ++i) {
        CMat k1 = CMat::Zero(d, n);
        k1.block(0, 0, d1, n1) = a.kraus[static_cast<std::size_t>(i)];
        ops.push_back(std::move(k1));
        CMat k2 = CMat::Zero(d, n);
        k2.block(d1, n1, d2, n2) = b.kraus[static_cast<std::size_t>(i)];
        ops.push_back(std::move(k2));
    }
    return KrausMap::make(std::move(ops), tol);
}

inline OrthonormalBasisCn random_basis(Rng& rng, int n, const Tolerance& tol = {}) {
    return OrthonormalBasisCn::from_columns(rng.haar_unitary(n), tol);
}

/// Coordinate partition of [n] into m nonempty groups, returned as
/// projections; optionally conjugated by a Haar unitary.
inline std::vector<Projection> random_partition(Rng& rng, int n, int m, bool haar_conjugated,
                                                const Tolerance& tol = {}) {
    if (m < 2 || m > n) throw ValidationError("random_partition: need 2 <= m <= n");
    // Random composition of n into m positive parts.
    std::vector<int> sizes(static_cast<std::size_t>(m), 1);
    for (int extra = n - m; extra > 0; --extra) ++sizes[static_cast<std::size_t>(rng.uniform_int(0, m - 1))];
    CMat frame = haar_conjugated ? rng.haar_unitary(n) : CMat(CMat::Identity(n, n));
    std::vector<Projection> parts;
    int off = 0;
    for (int sz : sizes) {
        parts.push_back(Projection::from_range(frame.middleCols(off, sz), tol));
        off += sz;
    }
    return parts;
}

/// The quantum Hamming cube in M_{2^m}: the span of all m-fold tensor words
/// with at most one non-identity single-qubit factor.
inline QuantumGraph quantum_hamming_cube(int m, const Tolerance& tol = {}) {
    CMat id2 = CMat::Identity(2, 2);
    CMat px(2, 2), py(2, 2), pz(2, 2);
    px << 0, 1, 1, 0;
    py << 0, Cplx(0, -1), Cplx(0, 1), 0;
    pz << 1, 0, 0, -1;
    std::vector<CMat> gens;
    for (int site = 0; site < m; ++site) {
        for (const CMat& a : {px, py, pz}) {
            CMat word = CMat::Identity(1, 1);
            for (int k = 0; k < m; ++k) word = kron(word, k == site ? a : id2).eval();
            gens.push_back(word);
        }
    }
    return make_quantum_graph(1 << m, gens, tol);
}

}  // namespace qgraph
