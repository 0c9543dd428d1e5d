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

#include <algorithm>
#include <numeric>
#include <queue>
#include <utility>
#include <vector>

#include "qgraph/opspace.hpp"

namespace qgraph {

/// Simple undirected graph on vertices 0..n-1. Loops are never stored: the
/// lift to an operator system always includes every |e_i><e_i|, so they are
/// implicit throughout.
class ClassicalGraph {
  public:
    explicit ClassicalGraph(int n) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0) {
        if (n <= 0) throw DimensionError("ClassicalGraph: vertex count must be positive");
    }

    static ClassicalGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        ClassicalGraph g(n);
        for (auto [i, j] : edges) g.add_edge(i, j);
        return g;
    }

    int n() const { return n_; }

    void add_edge(int i, int j) {
        check_vertex(i);
        check_vertex(j);
        if (i == j) throw ValidationError("ClassicalGraph: self-loops are not stored");
        if (adjacent(i, j)) return;
        adj_[idx(i, j)] = adj_[idx(j, i)] = 1;
        edges_.emplace_back(std::min(i, j), std::max(i, j));
    }

    bool adjacent(int i, int j) const {
        check_vertex(i);
        check_vertex(j);
        return adj_[idx(i, j)] != 0;
    }

    /// Edges as (i, j) with i < j, sorted.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> e = edges_;
        std::sort(e.begin(), e.end());
        return e;
    }

    int edge_count() const { return static_cast<int>(edges_.size()); }

    int degree(int v) const {
        check_vertex(v);
        int d = 0;
        for (int u = 0; u < n_; ++u)
            if (u != v && adj_[idx(v, u)]) ++d;
        return d;
    }

    std::vector<int> neighbors(int v) const {
        check_vertex(v);
        std::vector<int> out;
        for (int u = 0; u < n_; ++u)
            if (u != v && adj_[idx(v, u)]) out.push_back(u);
        return out;
    }

    bool is_complete() const { return edge_count() == n_ * (n_ - 1) / 2; }

    bool operator==(const ClassicalGraph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

    /// Delete a vertex set; vertices are renumbered in increasing order.
    ClassicalGraph remove_vertices(const std::vector<int>& drop) const {
        std::vector<bool> dead(static_cast<std::size_t>(n_), false);
        for (int v : drop) {
            check_vertex(v);
            dead[static_cast<std::size_t>(v)] = true;
        }
        std::vector<int> keep;
        for (int v = 0; v < n_; ++v)
            if (!dead[static_cast<std::size_t>(v)]) keep.push_back(v);
        if (keep.empty()) throw DegenerateInputError("remove_vertices: no vertices left");
        ClassicalGraph g(static_cast<int>(keep.size()));
        for (std::size_t a = 0; a < keep.size(); ++a)
            for (std::size_t b = a + 1; b < keep.size(); ++b)
                if (adjacent(keep[a], keep[b])) g.add_edge(static_cast<int>(a), static_cast<int>(b));
        return g;
    }

  private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(j);
    }
    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw ValidationError("ClassicalGraph: vertex out of range");
    }

    int n_;
    std::vector<char> adj_;
    std::vector<std::pair<int, int>> edges_;
};

inline bool classical_connected(const ClassicalGraph& g) {
    const int n = g.n();
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int count = 1;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (int u : g.neighbors(v)) {
            if (!seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = true;
                ++count;
                q.push(u);
            }
        }
    }
    return count == n;
}

namespace detail {

/// Max number of internally vertex-disjoint s-t paths for non-adjacent s, t
/// (Menger), via unit-capacity max-flow on the node-split digraph.
inline int vertex_disjoint_paths(const ClassicalGraph& g, int s, int t) {
    const int n = g.n();
    // Node v splits into in-node 2v and out-node 2v+1.
    const int nodes = 2 * n;
    struct Arc {
        int to;
        int cap;
        int rev;
    };
    std::vector<std::vector<Arc>> arcs(static_cast<std::size_t>(nodes));
    auto add_arc = [&](int a, int b, int cap) {
        arcs[static_cast<std::size_t>(a)].push_back({b, cap, static_cast<int>(arcs[static_cast<std::size_t>(b)].size())});
        arcs[static_cast<std::size_t>(b)].push_back({a, 0, static_cast<int>(arcs[static_cast<std::size_t>(a)].size()) - 1});
    };
    const int big = n + 1;
    for (int v = 0; v < n; ++v) add_arc(2 * v, 2 * v + 1, (v == s || v == t) ? big : 1);
    for (auto [a, b] : g.edges()) {
        add_arc(2 * a + 1, 2 * b, big);
        add_arc(2 * b + 1, 2 * a, big);
    }
    const int source = 2 * s + 1, sink = 2 * t;
    int flow = 0;
    while (true) {
        std::vector<int> prev_node(static_cast<std::size_t>(nodes), -1);
        std::vector<int> prev_arc(static_cast<std::size_t>(nodes), -1);
        std::queue<int> q;
        q.push(source);
        prev_node[static_cast<std::size_t>(source)] = source;
        while (!q.empty() && prev_node[static_cast<std::size_t>(sink)] < 0) {
            const int v = q.front();
            q.pop();
            for (std::size_t i = 0; i < arcs[static_cast<std::size_t>(v)].size(); ++i) {
                const Arc& a = arcs[static_cast<std::size_t>(v)][i];
                if (a.cap > 0 && prev_node[static_cast<std::size_t>(a.to)] < 0) {
                    prev_node[static_cast<std::size_t>(a.to)] = v;
                    prev_arc[static_cast<std::size_t>(a.to)] = static_cast<int>(i);
                    q.push(a.to);
                }
            }
        }
        if (prev_node[static_cast<std::size_t>(sink)] < 0) break;
        for (int v = sink; v != source; v = prev_node[static_cast<std::size_t>(v)]) {
            Arc& a = arcs[static_cast<std::size_t>(prev_node[static_cast<std::size_t>(v)])]
                         [static_cast<std::size_t>(prev_arc[static_cast<std::size_t>(v)])];
            a.cap -= 1;
            arcs[static_cast<std::size_t>(v)][static_cast<std::size_t>(a.rev)].cap += 1;
        }
        ++flow;
        if (flow > n) break;  // unreachable; guards against arc bookkeeping bugs
    }
    return flow;
}

inline bool cut_disconnects(const ClassicalGraph& g, const std::vector<int>& cut) {
    if (static_cast<int>(cut.size()) >= g.n()) return false;
    ClassicalGraph rest = g.remove_vertices(cut);
    return rest.n() == 1 || !classical_connected(rest);
}

template <typename Fn>
inline void for_each_subset_of_size(int n, int k, Fn&& fn) {
    std::vector<int> pick(static_cast<std::size_t>(k));
    std::iota(pick.begin(), pick.end(), 0);
    if (k == 0) {
        std::vector<int> empty;
        fn(empty);
        return;
    }
    while (true) {
        fn(pick);
        int i = k - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace detail

/// Vertex connectivity kappa(G): the size of a smallest vertex set whose
/// removal disconnects G or leaves a single vertex. Exhaustive cut
/// enumeration below 12 vertices, Menger max-flow above.
inline int classical_vertex_connectivity(const ClassicalGraph& g) {
    const int n = g.n();
    if (n < 2) throw DegenerateInputError("classical_vertex_connectivity: need at least 2 vertices");
    if (g.is_complete()) return n - 1;
    if (n < 12) {
        for (int k = 0; k <= n - 2; ++k) {
            bool found = false;
            detail::for_each_subset_of_size(n, k, [&](const std::vector<int>& cut) {
                if (!found && detail::cut_disconnects(g, cut)) found = true;
            });
            if (found) return k;
        }
        return n - 1;
    }
    int best = n - 1;
    for (int s = 0; s < n; ++s)
        for (int t = s + 1; t < n; ++t)
            if (!g.adjacent(s, t)) best = std::min(best, detail::vertex_disjoint_paths(g, s, t));
    return best;
}

/// All minimum vertex cuts, by exhaustive enumeration (desk scale). For a
/// complete graph these are all (n-1)-subsets; for a disconnected graph the
/// single empty cut.
inline std::vector<std::vector<int>> minimum_vertex_cuts(const ClassicalGraph& g) {
    const int n = g.n();
    const int kappa = classical_vertex_connectivity(g);
    std::vector<std::vector<int>> cuts;
    if (g.is_complete()) {
        detail::for_each_subset_of_size(n, n - 1, [&](const std::vector<int>& cut) { cuts.push_back(cut); });
        return cuts;
    }
    detail::for_each_subset_of_size(n, kappa, [&](const std::vector<int>& cut) {
        if (detail::cut_disconnects(g, cut)) cuts.push_back(cut);
    });
    return cuts;
}

struct TreePackingBase {
    int cross_edges = 0;
    bool holds = false;
};

/// Count edges joining different parts; a connected graph has at least
/// |partition| - 1 of them.
inline TreePackingBase classical_tree_packing_base(const ClassicalGraph& g,
                                                   const std::vector<std::vector<int>>& partition) {
    const int n = g.n();
    std::vector<int> part(static_cast<std::size_t>(n), -1);
    for (std::size_t p = 0; p < partition.size(); ++p) {
        if (partition[p].empty()) throw ValidationError("tree packing: empty partition part");
        for (int v : partition[p]) {
            if (v < 0 || v >= n) throw ValidationError("tree packing: vertex out of range");
            if (part[static_cast<std::size_t>(v)] >= 0) {
                throw ValidationError("tree packing: partition parts are not disjoint");
            }
            part[static_cast<std::size_t>(v)] = static_cast<int>(p);
        }
    }
    for (int v = 0; v < n; ++v)
        if (part[static_cast<std::size_t>(v)] < 0) {
            throw ValidationError("tree packing: partition does not cover every vertex");
        }
    int cross = 0;
    for (auto [i, j] : g.edges())
        if (part[static_cast<std::size_t>(i)] != part[static_cast<std::size_t>(j)]) ++cross;
    return {cross, cross >= static_cast<int>(partition.size()) - 1};
}

/// The operator system spanned by the matrix units of all loops and edges.
/// Dimension n + 2|E|; the units are already orthonormal.
inline QuantumGraph lift(const ClassicalGraph& g, const Tolerance& tol = {}) {
    const int n = g.n();
    std::vector<CMat> units;
    units.reserve(static_cast<std::size_t>(n + 2 * g.edge_count()));
    for (int i = 0; i < n; ++i) {
        CMat e = CMat::Zero(n, n);
        e(i, i) = 1.0;
        units.push_back(e);
    }
    for (auto [i, j] : g.edges()) {
        CMat e = CMat::Zero(n, n);
        e(i, j) = 1.0;
        units.push_back(e);
        units.push_back(e.adjoint().eval());
    }
    return make_quantum_graph(n, units, tol, /*strict=*/true);
}

/// Ordered orthonormal basis of C^n, stored as matrix columns.
struct OrthonormalBasisCn {
    CMat vectors;  // n x n, column k = |v_k>

    int n() const { return static_cast<int>(vectors.rows()); }

    static OrthonormalBasisCn standard(int n) { return {CMat::Identity(n, n)}; }

    static OrthonormalBasisCn from_columns(const CMat& m, const Tolerance& tol = {}) {
        require_square(m, "OrthonormalBasisCn");
        require_finite(m, "OrthonormalBasisCn");
        CMat gram = m.adjoint() * m;
        if ((gram - CMat::Identity(m.rows(), m.cols())).norm() > tol.residual_abs) {
            throw ValidationError("OrthonormalBasisCn: Gram matrix is not the identity within residual_abs");
        }
        return {m};
    }
};

/// Basis whose first rank(P) vectors span range(P) and the rest its complement.
inline OrthonormalBasisCn basis_aligned_with(const Projection& p, const Tolerance& tol = {}) {
    const int n = p.ambient_dim();
    CMat cols(n, n);
    cols.leftCols(p.rank) = p.range_basis;
    cols.rightCols(n - p.rank) = complement_frame(p.range_basis);
    return OrthonormalBasisCn::from_columns(cols, tol);
}

/// The confusability graph of S with respect to a basis v: i ~ j exactly when
/// some element of S has a nonzero (v_i, v_j) coefficient. Loops implicit.
inline ClassicalGraph confusability(const QuantumGraph& s, const OrthonormalBasisCn& v) {
    const int n = s.ambient_dim();
    if (v.n() != n) throw DimensionError("confusability: basis dimension mismatch");
    ClassicalGraph g(n);
    const double thr = s.tol().residual_abs;
    for (const CMat& b : s.basis()) {
        CMat coeff = v.vectors.adjoint() * b * v.vectors;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (!g.adjacent(i, j) &&
                    (std::abs(coeff(i, j)) > thr || std::abs(coeff(j, i)) > thr))
                    g.add_edge(i, j);
    }
    return g;
}

/// Vertex-to-vector assignment with non-adjacent vertices mapped to
/// orthogonal vectors.
struct ClassicalOrthRep {
    int d = 0;
    std::vector<CVec> vectors;  // vectors[i] = f(i), nonzero
};

struct OrthRepValidation {
    bool valid = false;
    bool locally_general_position = false;
    std::string detail;
};

/// Check orthogonality on all non-adjacent pairs, and the locally-general-
/// position flag: for every vertex, the vectors of its non-neighbors are
/// linearly independent.
inline OrthRepValidation validate_orth_rep(const ClassicalGraph& g, const ClassicalOrthRep& f,
                                           const Tolerance& tol = {}) {
    const int n = g.n();
    if (static_cast<int>(f.vectors.size()) != n) {
        throw DimensionError("validate_orth_rep: one vector per vertex required");
    }
    for (int i = 0; i < n; ++i) {
        if (f.vectors[static_cast<std::size_t>(i)].size() != f.d) {
            throw DimensionError("validate_orth_rep: vector dimension mismatch");
        }
        if (f.vectors[static_cast<std::size_t>(i)].norm() <= tol.residual_abs) {
            throw ValidationError("validate_orth_rep: zero vector assigned to vertex " +
                                  std::to_string(i + 1));
        }
    }
    OrthRepValidation out;
    out.valid = true;
    for (int i = 0; i < n && out.valid; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (g.adjacent(i, j)) continue;
            const CVec& a = f.vectors[static_cast<std::size_t>(i)];
            const CVec& b = f.vectors[static_cast<std::size_t>(j)];
            if (std::abs(a.dot(b)) > tol.residual_abs * a.norm() * b.norm()) {
                out.valid = false;
                out.detail = "vertices " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                             " are non-adjacent but not orthogonal";
                break;
            }
        }
    }
    out.locally_general_position = out.valid;
    for (int i = 0; i < n && out.locally_general_position; ++i) {
        std::vector<int> others;
        for (int j = 0; j < n; ++j)
            if (j != i && !g.adjacent(i, j)) others.push_back(j);
        if (others.empty()) continue;
        CMat cols(f.d, static_cast<Eigen::Index>(others.size()));
        for (std::size_t c = 0; c < others.size(); ++c)
            cols.col(static_cast<Eigen::Index>(c)) = f.vectors[static_cast<std::size_t>(others[c])];
        if (numerical_rank(cols, tol) != static_cast<int>(others.size())) {
            out.locally_general_position = false;
            out.detail = "non-neighbors of vertex " + std::to_string(i + 1) +
                         " carry linearly dependent vectors";
        }
    }
    return out;
}

}  // namespace qgraph
