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

// Shared oracles and instance builders for the test suites. Everything here
// is deliberately independent of the library's span machinery: rank oracles
// go straight to an SVD of stacked vectorized matrices.

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "qgraph/qgraph.hpp"

namespace qgraph::testing {

inline CMat unit(int n, int i, int j) {
    CMat e = CMat::Zero(n, n);
    e(i, j) = 1.0;
    return e;
}

inline CVec basis_vec(int n, int i) {
    CVec e = CVec::Zero(n);
    e(i) = 1.0;
    return e;
}

/// Independent rank oracle for span problems: stack vectorized matrices as
/// columns and count singular values above 1e-9 * sigma_max.
inline int span_rank_oracle(const std::vector<CMat>& mats) {
    if (mats.empty()) return 0;
    const Eigen::Index nn = mats.front().size();
    CMat stacked(nn, static_cast<Eigen::Index>(mats.size()));
    for (std::size_t i = 0; i < mats.size(); ++i) {
        stacked.col(static_cast<Eigen::Index>(i)) =
            Eigen::Map<const CVec>(mats[i].data(), mats[i].size());
    }
    Eigen::JacobiSVD<CMat> svd(stacked);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > 1e-9 * s(0)) ++rank;
    return rank;
}

// Named small graphs (0-indexed vertices).

inline ClassicalGraph path_graph(int n) {
    ClassicalGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline ClassicalGraph cycle_graph(int n) {
    ClassicalGraph g = path_graph(n);
    g.add_edge(n - 1, 0);
    return g;
}

inline ClassicalGraph complete_graph(int n) {
    ClassicalGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

inline ClassicalGraph empty_graph(int n) { return ClassicalGraph(n); }

// Exhaustive enumeration of labeled graphs and isomorphism classes (tiny n).

inline std::vector<std::pair<int, int>> vertex_pairs(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    return pairs;
}

inline ClassicalGraph graph_from_mask(int n, std::uint64_t mask) {
    ClassicalGraph g(n);
    const auto pairs = vertex_pairs(n);
    for (std::size_t k = 0; k < pairs.size(); ++k)
        if (mask & (1ULL << k)) g.add_edge(pairs[k].first, pairs[k].second);
    return g;
}

inline std::uint64_t mask_of_graph(const ClassicalGraph& g) {
    std::uint64_t mask = 0;
    const auto pairs = vertex_pairs(g.n());
    for (std::size_t k = 0; k < pairs.size(); ++k)
        if (g.adjacent(pairs[k].first, pairs[k].second)) mask |= (1ULL << k);
    return mask;
}

inline std::vector<ClassicalGraph> all_labeled_graphs(int n) {
    const std::uint64_t count = 1ULL << (n * (n - 1) / 2);
    std::vector<ClassicalGraph> out;
    out.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) out.push_back(graph_from_mask(n, mask));
    return out;
}

/// Canonical form: the minimum adjacency mask over all vertex permutations.
inline std::uint64_t canonical_mask(const ClassicalGraph& g) {
    const int n = g.n();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    const auto pairs = vertex_pairs(n);
    std::uint64_t best = ~0ULL;
    do {
        std::uint64_t mask = 0;
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            if (g.adjacent(perm[static_cast<std::size_t>(pairs[k].first)],
                           perm[static_cast<std::size_t>(pairs[k].second)]))
                mask |= (1ULL << k);
        }
        best = std::min(best, mask);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline std::vector<ClassicalGraph> isomorphism_class_representatives(int n) {
    std::map<std::uint64_t, ClassicalGraph> reps;
    for (const ClassicalGraph& g : all_labeled_graphs(n)) reps.emplace(canonical_mask(g), g);
    std::vector<ClassicalGraph> out;
    for (auto& [key, g] : reps) out.push_back(g);
    return out;
}

/// All set partitions of {0..n-1} (restricted growth strings).
inline std::vector<std::vector<std::vector<int>>> set_partitions(int n) {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<int> assign(static_cast<std::size_t>(n), 0);
    while (true) {
        int parts = 1 + *std::max_element(assign.begin(), assign.end());
        std::vector<std::vector<int>> partition(static_cast<std::size_t>(parts));
        for (int v = 0; v < n; ++v) partition[static_cast<std::size_t>(assign[static_cast<std::size_t>(v)])].push_back(v);
        out.push_back(std::move(partition));
        // next restricted growth string
        int i = n - 1;
        while (i > 0) {
            int maxprefix = 0;
            for (int k = 0; k < i; ++k) maxprefix = std::max(maxprefix, assign[static_cast<std::size_t>(k)]);
            if (assign[static_cast<std::size_t>(i)] <= maxprefix) break;
            --i;
        }
        if (i == 0) break;
        ++assign[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < n; ++k) assign[static_cast<std::size_t>(k)] = 0;
    }
    return out;
}

inline QuantumGraph conjugated(const QuantumGraph& s, const CMat& u) {
    std::vector<CMat> gens;
    for (const CMat& b : s.basis()) gens.push_back(u * b * u.adjoint());
    return make_quantum_graph(s.ambient_dim(), gens, s.tol());
}

/// Coordinate projection onto span{e_i : i in set}.
inline Projection coordinate_projection(int n, const std::vector<int>& set, const Tolerance& tol = {}) {
    CMat frame = CMat::Zero(n, static_cast<Eigen::Index>(set.size()));
    for (std::size_t c = 0; c < set.size(); ++c) frame(set[c], static_cast<Eigen::Index>(c)) = 1.0;
    return Projection::from_range(frame, tol);
}

// ---------------------------------------------------------------------------
// Classical orthogonal representations with validity by construction.
// ---------------------------------------------------------------------------

/// The pentagon umbrella: unit vectors in R^3 with non-adjacent cycle
/// vertices orthogonal; in locally general position.
inline ClassicalOrthRep c5_umbrella() {
    ClassicalOrthRep f;
    f.d = 3;
    const double c2 = 1.0 / std::sqrt(5.0);  // cos^2 theta
    const double ct = std::sqrt(c2), st = std::sqrt(1.0 - c2);
    for (int i = 0; i < 5; ++i) {
        const double a = 2.0 * 3.14159265358979323846 * i / 5.0;
        CVec v(3);
        v << st * std::cos(a), st * std::sin(a), ct;
        f.vectors.push_back(v);
    }
    return f;
}

struct RepInstance {
    ClassicalGraph graph;
    ClassicalOrthRep rep;
    bool lgp_by_construction = false;
    RepInstance(ClassicalGraph g, ClassicalOrthRep r, bool lgp)
        : graph(std::move(g)), rep(std::move(r)), lgp_by_construction(lgp) {}
};

/// Atoms with known valid (and LGP) representations.
inline RepInstance rep_atom(int which) {
    switch (which % 5) {
        case 0: {  // single vertex in C^1
            ClassicalOrthRep f;
            f.d = 1;
            f.vectors.push_back(CVec::Ones(1));
            return RepInstance(ClassicalGraph(1), std::move(f), true);
        }
        case 1: {  // two isolated vertices in C^2
            ClassicalOrthRep f;
            f.d = 2;
            f.vectors.push_back(basis_vec(2, 0));
            f.vectors.push_back(basis_vec(2, 1));
            return RepInstance(ClassicalGraph(2), std::move(f), true);
        }
        case 2: {  // path 1-2-3 in C^2
            ClassicalOrthRep f;
            f.d = 2;
            f.vectors.push_back(basis_vec(2, 0));
            CVec mid(2);
            mid << 1.0, 1.0;
            f.vectors.push_back(mid);
            f.vectors.push_back(basis_vec(2, 1));
            return RepInstance(path_graph(3), std::move(f), true);
        }
        case 3: {  // 4-cycle in C^2
            ClassicalOrthRep f;
            f.d = 2;
            CVec a(2), b(2), c(2), d(2);
            a << 1, 0;
            b << 1, 1;
            c << 0, 1;
            d << 1, -1;
            f.vectors = {a, b, c, d};
            return RepInstance(cycle_graph(4), std::move(f), true);
        }
        default:
            return RepInstance(cycle_graph(5), c5_umbrella(), true);
    }
}

/// Join of two graphs (every cross pair adjacent) with representations
/// embedded in orthogonal coordinate blocks; validity and LGP are inherited.
inline RepInstance rep_join(const RepInstance& a, const RepInstance& b) {
    const int n1 = a.graph.n(), n2 = b.graph.n();
    ClassicalGraph g(n1 + n2);
    for (auto [i, j] : a.graph.edges()) g.add_edge(i, j);
    for (auto [i, j] : b.graph.edges()) g.add_edge(n1 + i, n1 + j);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) g.add_edge(i, n1 + j);
    ClassicalOrthRep f;
    f.d = a.rep.d + b.rep.d;
    for (const CVec& v : a.rep.vectors) {
        CVec w = CVec::Zero(f.d);
        w.head(a.rep.d) = v;
        f.vectors.push_back(w);
    }
    for (const CVec& v : b.rep.vectors) {
        CVec w = CVec::Zero(f.d);
        w.tail(b.rep.d) = v;
        f.vectors.push_back(w);
    }
    return RepInstance(std::move(g), std::move(f),
                       a.lgp_by_construction && b.lgp_by_construction);
}

/// Rotate by a Haar unitary on C^d and rescale each vector; preserves
/// validity and LGP.
inline void rep_randomize(RepInstance& inst, Rng& rng) {
    CMat u = rng.haar_unitary(inst.rep.d);
    for (CVec& v : inst.rep.vectors) {
        const double scale = 0.5 + rng.uniform();
        v = (scale * (u * v)).eval();
    }
}

/// Collinear-group representation: vectors within a group share a direction,
/// cross-group directions are orthogonal; the graph gets all within-group
/// edges plus random extras. Valid by construction, usually not LGP.
inline RepInstance rep_collinear_groups(Rng& rng, int n, int groups) {
    CMat dirs = rng.haar_unitary(groups);
    ClassicalGraph g(n);
    ClassicalOrthRep f;
    f.d = groups;
    std::vector<int> assignment;
    for (int v = 0; v < n; ++v) assignment.push_back(v < groups ? v : rng.uniform_int(0, groups - 1));
    for (int v = 0; v < n; ++v) {
        const double scale = 0.5 + rng.uniform();
        f.vectors.push_back((scale * dirs.col(assignment[static_cast<std::size_t>(v)])).eval());
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (assignment[static_cast<std::size_t>(i)] == assignment[static_cast<std::size_t>(j)] ||
                rng.uniform() < 0.3)
                g.add_edge(i, j);
        }
    return RepInstance(std::move(g), std::move(f), false);
}

/// Random valid representation instance: a join tree over LGP atoms, or a
/// collinear-group instance, randomized.
inline RepInstance random_rep_instance(Rng& rng, int max_n = 6) {
    RepInstance inst = rep_atom(rng.uniform_int(0, 4));
    for (int tries = 0; tries < 4; ++tries) {
        if (rng.uniform() < 0.5) break;
        RepInstance next = rep_atom(rng.uniform_int(0, 3));
        if (inst.graph.n() + next.graph.n() > max_n) break;
        inst = rng.uniform() < 0.5 ? rep_join(inst, next) : rep_join(next, inst);
    }
    if (inst.graph.n() <= 2 && max_n >= 4 && rng.uniform() < 0.35) {
        inst = rep_collinear_groups(rng, rng.uniform_int(3, std::min(max_n, 5)), 2 + (rng.bits() % 2));
    }
    rep_randomize(inst, rng);
    return inst;
}

}  // namespace qgraph::testing
