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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qgraph/errors.hpp"

namespace qgraph {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

/// Numerical knobs shared by every rank and membership decision.
///
/// rank_rel is a relative singular-value cutoff; residual_abs bounds the
/// acceptable residual of membership, orthonormality and idempotency checks.
struct Tolerance {
    double rank_rel = 1e-9;
    double residual_abs = 1e-8;

    void validate() const {
        if (!(rank_rel > 0.0 && rank_rel < 1e-2)) {
            throw ValidationError("Tolerance: rank_rel must lie in (0, 1e-2), got " +
                                  std::to_string(rank_rel));
        }
        if (!(residual_abs > 0.0 && residual_abs < 1e-2)) {
            throw ValidationError("Tolerance: residual_abs must lie in (0, 1e-2), got " +
                                  std::to_string(residual_abs));
        }
    }

    /// Same rank cutoff, residual bound divided by `factor` (certificate
    /// re-verification runs at tightened residuals).
    Tolerance tightened(double factor = 10.0) const { return Tolerance{rank_rel, residual_abs / factor}; }
};

inline bool all_finite(const CMat& x) {
    return x.allFinite();
}

inline void require_finite(const CMat& x, const char* what) {
    if (!all_finite(x)) throw ValidationError(std::string(what) + ": entries must be finite");
}

inline void require_square(const CMat& x, const char* what) {
    if (x.rows() != x.cols()) {
        throw DimensionError(std::string(what) + ": expected a square matrix, got " +
                             std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
    }
}

/// Hilbert-Schmidt inner product tr(x^dagger y); conjugate-linear in x.
inline Cplx hs_inner(const CMat& x, const CMat& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) {
        throw DimensionError("hs_inner: shape mismatch " + std::to_string(x.rows()) + "x" +
                             std::to_string(x.cols()) + " vs " + std::to_string(y.rows()) + "x" +
                             std::to_string(y.cols()));
    }
    return x.conjugate().cwiseProduct(y).sum();
}

inline double hs_norm(const CMat& x) { return x.norm(); }

/// Column-major flattening; hs_inner(X, Y) == vec(X).dot(vec(Y)).
inline CVec vec(const CMat& x) {
    return Eigen::Map<const CVec>(x.data(), x.size());
}

inline CMat unvec(const CVec& v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != rows * cols) throw DimensionError("unvec: size mismatch");
    return Eigen::Map<const CMat>(v.data(), rows, cols);
}

inline CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline RVec singular_values(const CMat& x) {
    if (x.rows() == 0 || x.cols() == 0) return RVec(0);
    if (x.rows() * x.cols() > 512 * 512) {
        Eigen::BDCSVD<CMat> svd(x);
        return svd.singularValues();
    }
    Eigen::JacobiSVD<CMat> svd(x);
    return svd.singularValues();
}

/// Count of singular values >= rank_rel * max(sigma_max, 1).
inline int numerical_rank(const CMat& x, const Tolerance& tol = {}) {
    require_finite(x, "numerical_rank");
    RVec s = singular_values(x);
    if (s.size() == 0) return 0;
    const double thresh = tol.rank_rel * std::max(s(0), 1.0);
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) >= thresh) ++r;
    return r;
}

/// Orthonormal basis of the null space {v : m v = 0}, decided at
/// rank_rel * max(sigma_max, 1). Columns of the result are the basis.
inline CMat null_space(const CMat& m, const Tolerance& tol = {}) {
    if (m.cols() == 0) return CMat(0, 0);
    if (m.rows() == 0) return CMat::Identity(m.cols(), m.cols());
    require_finite(m, "null_space");
    const bool big = m.rows() * m.cols() > 512 * 512;
    CMat v;
    RVec s;
    if (big) {
        Eigen::BDCSVD<CMat> svd(m, Eigen::ComputeFullV);
        v = svd.matrixV();
        s = svd.singularValues();
    } else {
        Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullV);
        v = svd.matrixV();
        s = svd.singularValues();
    }
    const double thresh = tol.rank_rel * std::max(s.size() > 0 ? s(0) : 0.0, 1.0);
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) >= thresh) ++rank;
    return v.rightCols(v.cols() - rank);
}

struct EigResult {
    RVec values;   // ascending
    CMat vectors;  // orthonormal columns, vectors.col(i) pairs with values(i)
};

/// Spectral decomposition of a Hermitian matrix. The input is symmetrized as
/// (H + H^dagger)/2 before factoring; inputs farther than residual_abs from
/// Hermitian are rejected.
inline EigResult hermitian_eig(const CMat& h, const Tolerance& tol = {}) {
    require_square(h, "hermitian_eig");
    require_finite(h, "hermitian_eig");
    const double dev = (h - h.adjoint()).norm();
    if (dev > tol.residual_abs) {
        throw ContractViolationError("hermitian_eig: input is not Hermitian (deviation " +
                                     std::to_string(dev) + ")");
    }
    CMat sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(sym);
    if (es.info() != Eigen::Success) throw Error("hermitian_eig: eigensolver failed to converge");
    return EigResult{es.eigenvalues(), es.eigenvectors()};
}

namespace detail {

/// Modified Gram-Schmidt on the columns of `cols` with one full
/// re-orthogonalization pass. Returns accepted orthonormal columns and flags
/// whether any accept/discard decision fell inside the fragile band around
/// the cutoff.
inline std::pair<CMat, bool> mgs_columns(const CMat& cols, double cutoff) {
    const Eigen::Index dim = cols.rows();
    CMat basis(dim, cols.cols());
    Eigen::Index accepted = 0;
    bool disputed = false;
    for (Eigen::Index j = 0; j < cols.cols(); ++j) {
        CVec v = cols.col(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index k = 0; k < accepted; ++k) {
                v -= basis.col(k).dot(v) * basis.col(k);
            }
        }
        const double nrm = v.norm();
        if (nrm > cutoff * 1e-2 && nrm < cutoff * 1e2) disputed = true;
        if (nrm > cutoff) {
            basis.col(accepted++) = v / nrm;
        }
    }
    return {basis.leftCols(accepted), disputed};
}

/// Orthonormal basis of the column space via SVD, cut at
/// rank_rel * max(sigma_max, 1). The arbiter for disputed Gram-Schmidt runs.
inline CMat svd_column_basis(const CMat& cols, const Tolerance& tol) {
    if (cols.cols() == 0) return CMat(cols.rows(), 0);
    Eigen::JacobiSVD<CMat> svd(cols, Eigen::ComputeThinU);
    RVec s = svd.singularValues();
    const double thresh = tol.rank_rel * std::max(s.size() > 0 ? s(0) : 0.0, 1.0);
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) >= thresh) ++rank;
    return svd.matrixU().leftCols(rank);
}

}  // namespace detail

/// Hilbert-Schmidt-orthonormal basis of span(mats).
///
/// Modified Gram-Schmidt with one full re-orthogonalization pass; a matrix is
/// discarded when its projected residual drops below rank_rel times the
/// largest input norm. Near-cutoff decisions re-route through an SVD of the
/// vectorized inputs.
inline std::vector<CMat> gram_schmidt_hs(const std::vector<CMat>& mats, const Tolerance& tol = {}) {
    if (mats.empty()) return {};
    const Eigen::Index n = mats.front().rows();
    for (const CMat& m : mats) {
        require_square(m, "gram_schmidt_hs");
        if (m.rows() != n) throw DimensionError("gram_schmidt_hs: mixed matrix sizes");
        require_finite(m, "gram_schmidt_hs");
    }
    CMat cols(n * n, static_cast<Eigen::Index>(mats.size()));
    double scale = 0.0;
    for (std::size_t i = 0; i < mats.size(); ++i) {
        cols.col(static_cast<Eigen::Index>(i)) = vec(mats[i]);
        scale = std::max(scale, mats[i].norm());
    }
    if (scale == 0.0) return {};
    auto [basis, disputed] = detail::mgs_columns(cols, tol.rank_rel * scale);
    if (disputed) basis = detail::svd_column_basis(cols, tol);
    std::vector<CMat> out;
    out.reserve(static_cast<std::size_t>(basis.cols()));
    for (Eigen::Index j = 0; j < basis.cols(); ++j) out.push_back(unvec(basis.col(j), n, n));
    return out;
}

/// Hermitian idempotent with cached rank and an orthonormal basis of its range.
struct Projection {
    CMat matrix;      // n x n
    int rank = 0;
    CMat range_basis;  // n x rank, orthonormal columns

    int ambient_dim() const { return static_cast<int>(matrix.rows()); }

    static Projection zero(int n) {
        return Projection{CMat::Zero(n, n), 0, CMat(n, 0)};
    }

    static Projection identity(int n) {
        return Projection{CMat::Identity(n, n), n, CMat::Identity(n, n)};
    }

    /// Wrap an orthonormal frame (columns) as the projection onto its span.
    static Projection from_range(const CMat& frame, const Tolerance& tol = {}) {
        const int n = static_cast<int>(frame.rows());
        const int r = static_cast<int>(frame.cols());
        if (r == 0) return zero(n);
        CMat gram = frame.adjoint() * frame;
        if ((gram - CMat::Identity(r, r)).norm() > tol.residual_abs) {
            throw ValidationError("Projection::from_range: frame columns are not orthonormal");
        }
        Projection p{frame * frame.adjoint(), r, frame};
        return p;
    }

    /// Validate an explicit matrix as a projection and recover rank and range.
    static Projection from_matrix(const CMat& p, const Tolerance& tol = {}) {
        require_square(p, "Projection::from_matrix");
        require_finite(p, "Projection::from_matrix");
        if ((p - p.adjoint()).norm() > tol.residual_abs) {
            throw ValidationError("Projection::from_matrix: not Hermitian within residual_abs");
        }
        if ((p * p - p).norm() > tol.residual_abs) {
            throw ValidationError("Projection::from_matrix: not idempotent within residual_abs");
        }
        EigResult eig = hermitian_eig(p, tol);
        const int n = static_cast<int>(p.rows());
        int rank = 0;
        for (int i = 0; i < n; ++i) {
            const double lam = eig.values(i);
            if (std::abs(lam - 1.0) > tol.residual_abs && std::abs(lam) > tol.residual_abs) {
                throw ValidationError("Projection::from_matrix: eigenvalue " + std::to_string(lam) +
                                      " is not within residual_abs of {0, 1}");
            }
            if (std::abs(lam - 1.0) <= tol.residual_abs) ++rank;
        }
        // Eigenvalues ascend, so the range vectors sit in the last `rank` columns.
        return Projection{p, rank, eig.vectors.rightCols(rank)};
    }

    Projection complement(const Tolerance& tol = {}) const {
        const int n = ambient_dim();
        return from_matrix(CMat::Identity(n, n) - matrix, tol);
    }

    void validate(const Tolerance& tol = {}) const {
        (void)from_matrix(matrix, tol);
        if (static_cast<int>(range_basis.cols()) != rank) {
            throw ValidationError("Projection: range_basis does not have `rank` columns");
        }
        if (rank > 0) {
            CMat gram = range_basis.adjoint() * range_basis;
            if ((gram - CMat::Identity(rank, rank)).norm() > tol.residual_abs) {
                throw ValidationError("Projection: range_basis is not orthonormal");
            }
            if ((matrix * range_basis - range_basis).norm() > tol.residual_abs) {
                throw ValidationError("Projection: range_basis does not span the range");
            }
        }
    }
};

/// Orthogonal projection onto the span of the given vectors.
inline Projection projector_onto(const std::vector<CVec>& vectors, const Tolerance& tol = {}) {
    if (vectors.empty()) throw DegenerateInputError("projector_onto: empty vector list");
    const Eigen::Index n = vectors.front().size();
    CMat cols(n, static_cast<Eigen::Index>(vectors.size()));
    double scale = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != n) throw DimensionError("projector_onto: mixed vector sizes");
        cols.col(static_cast<Eigen::Index>(i)) = vectors[i];
        scale = std::max(scale, vectors[i].norm());
    }
    if (!all_finite(cols)) throw ValidationError("projector_onto: entries must be finite");
    if (scale == 0.0) throw DegenerateInputError("projector_onto: all vectors are numerically zero");
    auto [basis, disputed] = detail::mgs_columns(cols, tol.rank_rel * scale);
    if (disputed) basis = detail::svd_column_basis(cols, tol);
    if (basis.cols() == 0) throw DegenerateInputError("projector_onto: all vectors are numerically zero");
    return Projection::from_range(basis, tol);
}

/// Orthonormal basis of the orthogonal complement of an orthonormal frame.
inline CMat complement_frame(const CMat& frame) {
    const Eigen::Index n = frame.rows();
    const Eigen::Index r = frame.cols();
    if (r == 0) return CMat::Identity(n, n);
    Eigen::HouseholderQR<CMat> qr(frame);
    CMat q = qr.householderQ();
    return q.rightCols(n - r);
}

}  // namespace qgraph
