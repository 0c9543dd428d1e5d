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

#include "qgraph/classical.hpp"
#include "qgraph/connect.hpp"
#include "qgraph/opspace.hpp"
#include "qgraph/rng.hpp"

namespace qgraph {

/// Completely positive map M_n -> M_d in Kraus form. Complete positivity is
/// structural; trace preservation is detected and cached at construction.
struct KrausMap {
    int in_dim = 0;
    int out_dim = 0;
    std::vector<CMat> kraus;
    bool trace_preserving = false;
    Tolerance tol{};

    static KrausMap make(std::vector<CMat> ops, const Tolerance& tol = {}) {
        if (ops.empty()) throw ValidationError("KrausMap: at least one Kraus operator required");
        const int d = static_cast<int>(ops.front().rows());
        const int n = static_cast<int>(ops.front().cols());
        if (d <= 0 || n <= 0) throw DimensionError("KrausMap: Kraus operators must be nonempty");
        CMat acc = CMat::Zero(n, n);
        for (const CMat& k : ops) {
            if (k.rows() != d || k.cols() != n) {
                throw DimensionError("KrausMap: Kraus operators must share one d x n shape");
            }
            require_finite(k, "KrausMap");
            acc += k.adjoint() * k;
        }
        KrausMap out{n, d, std::move(ops), false, tol};
        out.trace_preserving = (acc - CMat::Identity(n, n)).norm() <= tol.residual_abs;
        return out;
    }

    /// Apply the map: rho -> sum_i K_i rho K_i^dagger.
    CMat apply(const CMat& rho) const {
        if (rho.rows() != in_dim || rho.cols() != in_dim) {
            throw DimensionError("KrausMap::apply: input must be " + std::to_string(in_dim) + "x" +
                                 std::to_string(in_dim));
        }
        CMat out = CMat::Zero(out_dim, out_dim);
        for (const CMat& k : kraus) out += k * rho * k.adjoint();
        return out;
    }
};

/// Choi matrix sum_ij |e_i><e_j| (x) Phi(|e_i><e_j|), assembled as
/// sum_k vec(K_k) vec(K_k)^dagger. Hermitian PSD by construction.
inline CMat choi(const KrausMap& phi) {
    const Eigen::Index nd = static_cast<Eigen::Index>(phi.in_dim) * phi.out_dim;
    CMat c = CMat::Zero(nd, nd);
    for (const CMat& k : phi.kraus) {
        CVec v = vec(k);
        c += v * v.adjoint();
    }
    return c;
}

/// Spectral factorization of a Choi matrix back to Kraus operators. Rejects
/// inputs that are not PSD within the residual tolerance.
inline KrausMap kraus_from_choi(const CMat& c, int in_dim, int out_dim, const Tolerance& tol = {}) {
    const Eigen::Index nd = static_cast<Eigen::Index>(in_dim) * out_dim;
    if (c.rows() != nd || c.cols() != nd) {
        throw DimensionError("kraus_from_choi: Choi matrix must be (n*d) x (n*d)");
    }
    EigResult eig = hermitian_eig(c, tol);
    const double top = std::max(eig.values(nd - 1), 0.0);
    if (eig.values(0) < -tol.residual_abs * std::max(top, 1.0)) {
        throw ValidationError("kraus_from_choi: Choi matrix is not positive semidefinite within tolerance");
    }
    std::vector<CMat> ops;
    const double cut = tol.rank_rel * std::max(top, 1.0);
    for (Eigen::Index i = 0; i < nd; ++i) {
        if (eig.values(i) >= cut) {
            ops.push_back(std::sqrt(eig.values(i)) * unvec(eig.vectors.col(i), out_dim, in_dim));
        }
    }
    if (ops.empty()) ops.push_back(CMat::Zero(out_dim, in_dim));
    return KrausMap::make(std::move(ops), tol);
}

/// The quantum confusability graph of a channel: span{K_i^dagger K_j}.
/// Requires trace preservation (which also puts the identity in the span).
inline QuantumGraph channel_confusability(const KrausMap& phi) {
    if (!phi.trace_preserving) {
        throw ValidationError("channel_confusability: the map is not trace-preserving");
    }
    std::vector<CMat> gens;
    gens.reserve(phi.kraus.size() * phi.kraus.size());
    for (const CMat& ki : phi.kraus)
        for (const CMat& kj : phi.kraus) gens.push_back(ki.adjoint() * kj);
    return make_quantum_graph(phi.in_dim, gens, phi.tol);
}

/// C*-orthogonality: all four products xy, yx, x^dagger y, x y^dagger vanish.
inline bool cstar_orthogonal(const CMat& x, const CMat& y, const Tolerance& tol = {}) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) {
        throw DimensionError("cstar_orthogonal: shape mismatch");
    }
    require_square(x, "cstar_orthogonal");
    const double scale = std::max(x.norm() * y.norm(), 1.0);
    const double bound = tol.residual_abs * scale;
    return (x * y).norm() <= bound && (y * x).norm() <= bound &&
           (x.adjoint() * y).norm() <= bound && (x * y.adjoint()).norm() <= bound;
}

namespace detail {

/// Residual of the four-way annihilation A S B = B S A = A* S B = A S B* = 0,
/// maximized over the basis, relative to ||A|| ||B||.
inline double annihilation_residual(const QuantumGraph& s, const CMat& a, const CMat& b) {
    double worst = 0.0;
    const CMat ad = a.adjoint();
    const CMat bd = b.adjoint();
    for (const CMat& x : s.basis()) {
        worst = std::max(worst, (a * x * b).norm());
        worst = std::max(worst, (b * x * a).norm());
        worst = std::max(worst, (ad * x * b).norm());
        worst = std::max(worst, (a * x * bd).norm());
    }
    return worst / std::max(a.norm() * b.norm(), 1e-300);
}

/// Solutions B of the four annihilation conditions for a fixed A form
/// {N G N^dagger}: columns of B and of B^dagger must lie in
/// N = the joint kernel of {A X, A^dagger X : X basis of S}.
inline CMat admissible_kernel(const QuantumGraph& s, const CMat& a) {
    const int n = s.ambient_dim();
    CMat sys(2 * s.dim() * n, n);
    const CMat ad = a.adjoint();
    Eigen::Index row = 0;
    for (const CMat& x : s.basis()) {
        sys.middleRows(row, n) = a * x;
        row += n;
        sys.middleRows(row, n) = ad * x;
        row += n;
    }
    return null_space(sys, s.tol());
}

}  // namespace detail

/// Sample pairs (A, B) with A S B = B S A = A* S B = A S B* = {0}. Coordinate
/// vertex pairs are enumerated directly; further pairs come from the exact
/// null-space construction around structured and random A (disconnection
/// witnesses, matrix units, Hermitian and Ginibre draws). Empty result means
/// no sampled A admitted a nonzero B.
inline std::vector<std::pair<CMat, CMat>> annihilating_pairs(const QuantumGraph& s, int samples,
                                                             std::uint64_t seed = kDefaultSeed) {
    const int n = s.ambient_dim();
    const Tolerance& tol = s.tol();
    std::vector<std::pair<CMat, CMat>> out;
    // Coordinate vertex pairs first: cheap, and they carry the classical bridge.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            CMat a = CMat::Zero(n, n);
            a(i, i) = 1.0;
            CMat b = CMat::Zero(n, n);
            b(j, j) = 1.0;
            if (detail::annihilation_residual(s, a, b) <= tol.residual_abs) out.emplace_back(a, b);
        }
    }
    std::vector<CMat> candidates;
    for (int i = 0; i < n; ++i) {
        CMat e = CMat::Zero(n, n);
        e(i, i) = 1.0;
        candidates.push_back(e);
    }
    {
        OperatorSubspace comm = commutant(s.space());
        if (comm.dim() > 1) {
            Projection w = detail::witness_from_commutant(comm, s, seed);
            candidates.push_back(w.matrix);
            candidates.push_back(CMat::Identity(n, n) - w.matrix);
        }
    }
    Rng root = Rng(seed).stream("annihilating-pairs");
    for (int i = static_cast<int>(candidates.size()); i < samples; ++i) {
        Rng rng = root.stream("sample", static_cast<std::uint64_t>(i));
        candidates.push_back(i % 2 == 0 ? rng.random_hermitian(n) : rng.ginibre(n, n));
    }
    if (static_cast<int>(candidates.size()) > samples) {
        candidates.resize(static_cast<std::size_t>(std::max(samples, n)));
    }
    Rng mix = root.stream("coefficients");
    for (const CMat& a : candidates) {
        CMat kernel = detail::admissible_kernel(s, a);
        const Eigen::Index nu = kernel.cols();
        if (nu == 0) continue;
        std::vector<CMat> coeffs;
        coeffs.push_back(CMat::Identity(nu, nu));
        coeffs.push_back(mix.ginibre(static_cast<int>(nu), static_cast<int>(nu)));
        if (nu > 1) coeffs.push_back(mix.ginibre(static_cast<int>(nu), static_cast<int>(nu)));
        for (const CMat& g : coeffs) {
            CMat b = kernel * g * kernel.adjoint();
            const double nrm = b.norm();
            if (nrm < 1e-12) continue;
            b /= nrm;
            if (detail::annihilation_residual(s, a, b) <= tol.residual_abs) out.emplace_back(a, b);
        }
    }
    return out;
}

enum class SampledVerdict { PassSampled, Violated };

struct OrthRepViolation {
    CMat a, b;
    std::string which;  // which of the four products failed
    double residual = 0.0;
};

/// Result of a sampled orthogonal-representation check. PassSampled is a
/// sampled verdict, never a proof.
struct OrthRepReport {
    int pairs_tested = 0;
    std::vector<OrthRepViolation> violations;
    SampledVerdict verdict() const {
        return violations.empty() ? SampledVerdict::PassSampled : SampledVerdict::Violated;
    }
    bool passed() const { return violations.empty(); }
};

/// Check that Phi maps every sampled annihilating pair of S to a
/// C*-orthogonal pair. A violation is recorded only when the pair annihilates
/// at residual_abs/10 while some image product exceeds 10 * residual_abs.
inline OrthRepReport check_orth_rep(const KrausMap& phi, const QuantumGraph& s, int samples,
                                    std::uint64_t seed = kDefaultSeed) {
    if (phi.in_dim != s.ambient_dim()) {
        throw DimensionError("check_orth_rep: map input dimension must match the ambient dimension");
    }
    const Tolerance& tol = s.tol();
    OrthRepReport report;
    for (const auto& [a, b] : annihilating_pairs(s, samples, seed)) {
        ++report.pairs_tested;
        const CMat x = phi.apply(a);
        const CMat y = phi.apply(b);
        const double scale = std::max(x.norm() * y.norm(), 1.0);
        const std::pair<std::string, double> products[] = {
            {"phi(A) phi(B)", (x * y).norm()},
            {"phi(B) phi(A)", (y * x).norm()},
            {"phi(A)* phi(B)", (x.adjoint() * y).norm()},
            {"phi(A) phi(B)*", (x * y.adjoint()).norm()},
        };
        for (const auto& [which, norm] : products) {
            if (norm > 10.0 * tol.residual_abs * scale &&
                detail::annihilation_residual(s, a, b) <= tol.residual_abs / 10.0) {
                report.violations.push_back({a, b, which, norm / scale});
                break;
            }
        }
    }
    return report;
}

/// The canonical completely positive lift of a classical orthogonal
/// representation: Phi(X) = sum_i |f(i)><e_i| X |e_i><f(i)|.
inline KrausMap classical_to_quantum_rep(const ClassicalGraph& g, const ClassicalOrthRep& f,
                                         const Tolerance& tol = {}) {
    OrthRepValidation check = validate_orth_rep(g, f, tol);
    if (!check.valid) {
        throw ValidationError("classical_to_quantum_rep: not an orthogonal representation (" +
                              check.detail + ")");
    }
    std::vector<CMat> ops;
    ops.reserve(static_cast<std::size_t>(g.n()));
    for (int i = 0; i < g.n(); ++i) {
        CMat k = CMat::Zero(f.d, g.n());
        k.col(i) = f.vectors[static_cast<std::size_t>(i)];
        ops.push_back(std::move(k));
    }
    return KrausMap::make(std::move(ops), tol);
}

/// Recover a classical orthogonal representation from a quantum one:
/// f(i) = the top eigenvector of Phi(|e_i><e_i|), scaled by its eigenvalue,
/// with a deterministic phase convention.
inline ClassicalOrthRep quantum_to_classical_rep(const KrausMap& phi, const ClassicalGraph& g) {
    if (phi.in_dim != g.n()) {
        throw DimensionError("quantum_to_classical_rep: map input dimension must match the vertex count");
    }
    const Tolerance& tol = phi.tol;
    ClassicalOrthRep f;
    f.d = phi.out_dim;
    for (int i = 0; i < g.n(); ++i) {
        CMat e = CMat::Zero(g.n(), g.n());
        e(i, i) = 1.0;
        CMat img = phi.apply(e);
        EigResult eig = hermitian_eig(img, tol);
        const double top = eig.values(phi.out_dim - 1);
        if (top <= tol.residual_abs) {
            throw DegenerateInputError("quantum_to_classical_rep: phi(|e_i><e_i|) vanishes for vertex " +
                                       std::to_string(i + 1));
        }
        CVec w = eig.vectors.col(phi.out_dim - 1);
        // Phase convention: largest-magnitude coordinate (lowest index on
        // ties) becomes real positive.
        int pick = 0;
        double best = -1.0;
        for (int j = 0; j < phi.out_dim; ++j) {
            const double mag = std::abs(w(j));
            if (mag > best + 1e-12) {
                best = mag;
                pick = j;
            }
        }
        w *= std::conj(w(pick)) / std::abs(w(pick));
        f.vectors.push_back(top * w);
    }
    OrthRepValidation check = validate_orth_rep(g, f, tol);
    if (!check.valid) {
        throw ValidationError("quantum_to_classical_rep: recovered vectors fail orthogonality (" +
                              check.detail + ")");
    }
    return f;
}

struct LgpViolation {
    Projection q;  // rank-one probe
    Projection p;  // projection whose image lost rank
    int rank_before = 0;
    int rank_after = 0;
};

struct LgpReport {
    int projections_tested = 0;
    std::optional<LgpViolation> violation;
    SampledVerdict verdict() const {
        return violation ? SampledVerdict::Violated : SampledVerdict::PassSampled;
    }
    bool passed() const { return !violation.has_value(); }
};

/// Locally-general-position check: for sampled rank-one probes Q = |u><u|,
/// every projection P into the joint kernel N_u of the rows <u|B_k must keep
/// rank(Phi(P)) >= rank(P). Every rank 1..dim N_u is covered by at least 20
/// random subspaces plus the full kernel.
inline LgpReport check_lgp(const KrausMap& phi, const QuantumGraph& s, int samples,
                           std::uint64_t seed = kDefaultSeed) {
    if (phi.in_dim != s.ambient_dim()) {
        throw DimensionError("check_lgp: map input dimension must match the ambient dimension");
    }
    const int n = s.ambient_dim();
    const Tolerance& tol = s.tol();
    Rng root = Rng(seed).stream("lgp");
    LgpReport report;
    std::vector<CVec> probes;
    for (int i = 0; i < n; ++i) {
        CVec e = CVec::Zero(n);
        e(i) = 1.0;
        probes.push_back(e);
    }
    Rng probe_rng = root.stream("probes");
    for (int i = n; i < samples; ++i) probes.push_back(probe_rng.haar_unit_vector(n));
    for (std::size_t pi = 0; pi < probes.size(); ++pi) {
        const CVec& u = probes[pi];
        CMat kernel = null_space(detail::annihilator_rows(s, u), tol);
        const int nu = static_cast<int>(kernel.cols());
        if (nu == 0) continue;
        Rng sub_rng = root.stream("subspaces", static_cast<std::uint64_t>(pi));
        std::vector<CMat> frames;
        frames.push_back(kernel);
        for (int r = 1; r <= nu; ++r) {
            for (int t = 0; t < 20; ++t) frames.push_back(kernel * sub_rng.haar_isometry(nu, r));
        }
        for (const CMat& frame : frames) {
            Projection p = Projection::from_range(frame, tol);
            ++report.projections_tested;
            const CMat img = phi.apply(p.matrix);
            if (numerical_rank(img, tol) >= p.rank) continue;
            // Tightened re-verification: a genuine rank drop survives a 10x
            // finer singular-value cutoff.
            if (numerical_rank(img, Tolerance{tol.rank_rel / 10.0, tol.residual_abs}) >= p.rank) continue;
            CMat uu = u * u.adjoint();
            report.violation = LgpViolation{Projection::from_matrix(uu, tol), p, p.rank,
                                            numerical_rank(img, tol)};
            return report;
        }
    }
    return report;
}

struct LgpBoundResult {
    std::optional<int> bound;  // max(n - d, 0), absent when a check failed
    OrthRepReport orth;
    LgpReport lgp;
};

/// Connectivity lower bound n - d from an orthogonal representation in
/// locally general position. Refuses to emit the bound unless both sampled
/// checks pass; the bound is always conditional on that sampled verification.
inline LgpBoundResult lgp_connectivity_bound(const KrausMap& phi, const QuantumGraph& s, int samples,
                                             std::uint64_t seed = kDefaultSeed) {
    LgpBoundResult out;
    out.orth = check_orth_rep(phi, s, samples, seed);
    out.lgp = check_lgp(phi, s, samples, seed);
    if (out.orth.passed() && out.lgp.passed()) {
        out.bound = std::max(s.ambient_dim() - phi.out_dim, 0);
    }
    return out;
}

// Canonical small maps.

inline KrausMap identity_map(int n, const Tolerance& tol = {}) {
    return KrausMap::make({CMat::Identity(n, n)}, tol);
}

/// tr : M_n -> M_1, Kraus rows <e_i|.
inline KrausMap trace_map(int n, const Tolerance& tol = {}) {
    std::vector<CMat> ops;
    for (int i = 0; i < n; ++i) {
        CMat k = CMat::Zero(1, n);
        k(0, i) = 1.0;
        ops.push_back(std::move(k));
    }
    return KrausMap::make(std::move(ops), tol);
}

/// Full dephasing: rho -> diag(rho).
inline KrausMap dephasing_map(int n, const Tolerance& tol = {}) {
    std::vector<CMat> ops;
    for (int i = 0; i < n; ++i) {
        CMat k = CMat::Zero(n, n);
        k(i, i) = 1.0;
        ops.push_back(std::move(k));
    }
    return KrausMap::make(std::move(ops), tol);
}

/// Completely depolarizing: rho -> (tr rho / n) I, Kraus |e_i><e_j|/sqrt(n).
inline KrausMap depolarizing_map(int n, const Tolerance& tol = {}) {
    std::vector<CMat> ops;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            CMat k = CMat::Zero(n, n);
            k(i, j) = scale;
            ops.push_back(std::move(k));
        }
    return KrausMap::make(std::move(ops), tol);
}

}  // namespace qgraph
