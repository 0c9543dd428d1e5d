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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgraph/matcore.hpp"

namespace qgraph {

/// A linear subspace of M_n stored as a Hilbert-Schmidt-orthonormal basis.
///
/// Every constructor re-orthonormalizes, so dim() is just the basis length and
/// membership is a single projection. Immutable after construction.
class OperatorSubspace {
  public:
    OperatorSubspace() = default;

    /// Span of arbitrary generators, orthonormalized.
    static OperatorSubspace span(int n, const std::vector<CMat>& generators,
                                 const Tolerance& tol = {}) {
        check_ambient(n, generators);
        return OperatorSubspace(n, gram_schmidt_hs(generators, tol), tol);
    }

    /// Wrap a basis that is already orthonormal (e.g. SVD output); validated.
    static OperatorSubspace from_orthonormal(int n, std::vector<CMat> basis,
                                             const Tolerance& tol = {}) {
        check_ambient(n, basis);
        OperatorSubspace s(n, std::move(basis), tol);
        for (int i = 0; i < s.dim(); ++i) {
            for (int j = i; j < s.dim(); ++j) {
                const Cplx g = hs_inner(s.basis_[i], s.basis_[j]);
                const double want = (i == j) ? 1.0 : 0.0;
                if (std::abs(g - want) > tol.residual_abs) {
                    throw ValidationError("OperatorSubspace: supplied basis is not orthonormal");
                }
            }
        }
        return s;
    }

    int ambient_dim() const { return n_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<CMat>& basis() const { return basis_; }
    const Tolerance& tol() const { return tol_; }

    OperatorSubspace with_tolerance(const Tolerance& tol) const {
        OperatorSubspace s = *this;
        s.tol_ = tol;
        return s;
    }

    /// Orthogonal projection of x onto the subspace.
    CMat project(const CMat& x) const {
        check_shape(x);
        if (dim() == 0) return CMat::Zero(n_, n_);
        CVec coeffs = vec_basis_.adjoint() * vec(x);
        return unvec(vec_basis_ * coeffs, n_, n_);
    }

    /// Membership within residual_abs * max(||x||, 1).
    bool contains(const CMat& x) const {
        check_shape(x);
        const double resid = (x - project(x)).norm();
        return resid <= tol_.residual_abs * std::max(x.norm(), 1.0);
    }

    bool contains_subspace(const OperatorSubspace& other) const {
        if (other.n_ != n_) throw DimensionError("contains_subspace: ambient dimension mismatch");
        for (const CMat& b : other.basis_)
            if (!contains(b)) return false;
        return true;
    }

    bool contains_identity() const {
        const CMat id = CMat::Identity(n_, n_);
        return (id - project(id)).norm() <= tol_.residual_abs * std::sqrt(static_cast<double>(n_));
    }

    bool is_adjoint_closed() const {
        for (const CMat& b : basis_) {
            CMat adj = b.adjoint();
            if ((adj - project(adj)).norm() > tol_.residual_abs) return false;
        }
        return true;
    }

  private:
    OperatorSubspace(int n, std::vector<CMat> basis, const Tolerance& tol)
        : n_(n), tol_(tol), basis_(std::move(basis)) {
        tol_.validate();
        vec_basis_.resize(static_cast<Eigen::Index>(n_) * n_, static_cast<Eigen::Index>(basis_.size()));
        for (std::size_t j = 0; j < basis_.size(); ++j)
            vec_basis_.col(static_cast<Eigen::Index>(j)) = vec(basis_[j]);
    }

    static void check_ambient(int n, const std::vector<CMat>& mats) {
        if (n <= 0) throw DimensionError("OperatorSubspace: ambient dimension must be positive");
        for (const CMat& m : mats) {
            if (m.rows() != n || m.cols() != n) {
                throw DimensionError("OperatorSubspace: generator is not " + std::to_string(n) + "x" +
                                     std::to_string(n));
            }
        }
    }

    void check_shape(const CMat& x) const {
        if (x.rows() != n_ || x.cols() != n_) {
            throw DimensionError("OperatorSubspace: operand is not " + std::to_string(n_) + "x" +
                                 std::to_string(n_));
        }
    }

    int n_ = 0;
    Tolerance tol_{};
    std::vector<CMat> basis_;
    CMat vec_basis_;  // n^2 x dim cache of vectorized basis
};

/// An operator system: a subspace of M_n containing the identity and closed
/// under adjoints. Construction always validates both invariants.
class QuantumGraph {
  public:
    const OperatorSubspace& space() const { return space_; }
    int ambient_dim() const { return space_.ambient_dim(); }
    int dim() const { return space_.dim(); }
    const std::vector<CMat>& basis() const { return space_.basis(); }
    const Tolerance& tol() const { return space_.tol(); }

    QuantumGraph with_tolerance(const Tolerance& tol) const {
        return QuantumGraph(space_.with_tolerance(tol));
    }

    friend QuantumGraph as_quantum_graph(const OperatorSubspace& s);

  private:
    explicit QuantumGraph(OperatorSubspace s) : space_(std::move(s)) {}
    OperatorSubspace space_;
};

/// Validate an existing subspace as an operator system.
inline QuantumGraph as_quantum_graph(const OperatorSubspace& s) {
    if (!s.contains_identity()) {
        throw ValidationError("quantum graph validation failed: the span does not contain the identity");
    }
    if (!s.is_adjoint_closed()) {
        throw ValidationError("quantum graph validation failed: the span is not closed under adjoints");
    }
    return QuantumGraph(s);
}

/// Build an operator system from generators.
///
/// Permissive mode (default) adjoins the identity and all adjoints before
/// spanning; strict mode spans the generators as given and fails when the raw
/// span misses an invariant.
inline QuantumGraph make_quantum_graph(int n, const std::vector<CMat>& generators,
                                       const Tolerance& tol = {}, bool strict = false) {
    if (strict) {
        return as_quantum_graph(OperatorSubspace::span(n, generators, tol));
    }
    std::vector<CMat> gens;
    gens.reserve(generators.size() * 2 + 1);
    gens.push_back(CMat::Identity(n, n));
    for (const CMat& g : generators) {
        gens.push_back(g);
        gens.push_back(g.adjoint());
    }
    return as_quantum_graph(OperatorSubspace::span(n, gens, tol));
}

/// Span of all pairwise products of the two bases.
inline OperatorSubspace product(const OperatorSubspace& u, const OperatorSubspace& v) {
    if (u.ambient_dim() != v.ambient_dim()) {
        throw DimensionError("product: ambient dimension mismatch");
    }
    std::vector<CMat> prods;
    prods.reserve(static_cast<std::size_t>(u.dim()) * v.dim());
    for (const CMat& a : u.basis())
        for (const CMat& b : v.basis()) prods.push_back(a * b);
    return OperatorSubspace::span(u.ambient_dim(), prods, u.tol());
}

/// S^m by iterated product; S^0 is the scalar span of the identity.
inline OperatorSubspace power(const QuantumGraph& s, int m) {
    const int n = s.ambient_dim();
    if (m < 0) throw ContractViolationError("power: exponent must be nonnegative");
    if (m > n * n + 1) {
        throw ContractViolationError("power: exponent exceeds the n^2 + 1 stabilization bound");
    }
    OperatorSubspace acc = OperatorSubspace::span(n, {CMat::Identity(n, n)}, s.tol());
    for (int k = 0; k < m; ++k) acc = product(acc, s.space());
    return acc;
}

struct GeneratedAlgebra {
    OperatorSubspace algebra;
    int stabilization_power = 1;  // first m with S^m = S^{m+1}
};

/// The *-algebra generated by an operator system: iterate T <- T * S from
/// T = S until the dimension stops growing. Since I is in S the powers are
/// nested, so equal dimension means equality.
inline GeneratedAlgebra generated_algebra(const QuantumGraph& s) {
    OperatorSubspace t = s.space();
    int m = 1;
    const int full = s.ambient_dim() * s.ambient_dim();
    while (t.dim() < full) {
        OperatorSubspace next = product(t, s.space());
        if (next.dim() == t.dim()) return {t, m};
        t = std::move(next);
        ++m;
    }
    return {t, m};
}

/// {X : XB = BX for every basis element B}, computed as the null space of the
/// stacked Sylvester system (dim * n^2 rows, n^2 unknowns) by SVD. Always
/// contains the scalars, so the result has dimension >= 1.
inline OperatorSubspace commutant(const OperatorSubspace& s) {
    const int n = s.ambient_dim();
    const Eigen::Index nn = static_cast<Eigen::Index>(n) * n;
    if (s.dim() == 0) {
        std::vector<CMat> full;
        full.reserve(static_cast<std::size_t>(nn));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                CMat e = CMat::Zero(n, n);
                e(i, j) = 1.0;
                full.push_back(e);
            }
        return OperatorSubspace::span(n, full, s.tol());
    }
    CMat sys(static_cast<Eigen::Index>(s.dim()) * nn, nn);
    const CMat id = CMat::Identity(n, n);
    for (int k = 0; k < s.dim(); ++k) {
        const CMat& b = s.basis()[static_cast<std::size_t>(k)];
        // vec(XB - BX) = (B^T kron I - I kron B) vec(X)
        sys.middleRows(static_cast<Eigen::Index>(k) * nn, nn) =
            kron(b.transpose(), id) - kron(id, b);
    }
    CMat null = null_space(sys, s.tol());
    std::vector<CMat> basis;
    basis.reserve(static_cast<std::size_t>(null.cols()));
    for (Eigen::Index j = 0; j < null.cols(); ++j) basis.push_back(unvec(null.col(j), n, n));
    return OperatorSubspace::from_orthonormal(n, std::move(basis), s.tol());
}

/// A subspace compressed two-sided by a projection, living in M_rank(P).
struct CompressedSubspace {
    OperatorSubspace parent;
    Projection compressor;
    OperatorSubspace space;  // subspace of M_r, r = compressor.rank
    CMat isometry;           // n x r, columns = compressor.range_basis
};

/// P S P restricted to M_rank(P): with V the isometry onto range(P), the span
/// of {V^dagger B V} re-orthonormalized.
inline CompressedSubspace compress(const OperatorSubspace& s, const Projection& p) {
    if (p.ambient_dim() != s.ambient_dim()) {
        throw DimensionError("compress: projection lives in a different ambient dimension");
    }
    if (p.rank == 0) throw DegenerateInputError("compress: compressor has rank 0");
    const CMat& v = p.range_basis;
    std::vector<CMat> comp;
    comp.reserve(static_cast<std::size_t>(s.dim()));
    for (const CMat& b : s.basis()) comp.push_back(v.adjoint() * b * v);
    OperatorSubspace inner = OperatorSubspace::span(p.rank, comp, s.tol());
    return CompressedSubspace{s, p, std::move(inner), v};
}

/// span{P B Q : B basis of S}, kept in ambient shape (its dimension is the
/// dim[P S Q] entering the tree-packing bound).
inline OperatorSubspace cross_space(const OperatorSubspace& s, const Projection& p,
                                    const Projection& q) {
    if (p.ambient_dim() != s.ambient_dim() || q.ambient_dim() != s.ambient_dim()) {
        throw DimensionError("cross_space: projection lives in a different ambient dimension");
    }
    std::vector<CMat> gens;
    gens.reserve(static_cast<std::size_t>(s.dim()));
    for (const CMat& b : s.basis()) gens.push_back(p.matrix * b * q.matrix);
    return OperatorSubspace::span(s.ambient_dim(), gens, s.tol());
}

}  // namespace qgraph
