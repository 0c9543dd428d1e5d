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

#include <cstdint>
#include <random>
#include <string_view>

#include "qgraph/matcore.hpp"

namespace qgraph {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace detail

/// Deterministic random source. All randomness in the artifact flows from one
/// root seed through named sub-streams, so independent phases draw from
/// independent, order-insensitive streams. Gaussians use Box-Muller on the raw
/// engine output to stay byte-reproducible across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(detail::splitmix64(seed)) {}

    std::uint64_t seed() const { return seed_; }

    Rng stream(std::string_view name) const {
        return Rng(detail::splitmix64(seed_ ^ detail::fnv1a64(name)));
    }

    Rng stream(std::string_view name, std::uint64_t index) const {
        return Rng(detail::splitmix64(detail::splitmix64(seed_ ^ detail::fnv1a64(name)) + index));
    }

    std::uint64_t bits() { return eng_(); }

    /// Uniform in [0, 1) with 53 random mantissa bits.
    double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(bits() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Cplx cgauss() {
        const double re = gauss();
        const double im = gauss();
        return Cplx(re, im);
    }

    CMat ginibre(int rows, int cols) {
        CMat g(rows, cols);
        for (int j = 0; j < cols; ++j)
            for (int i = 0; i < rows; ++i) g(i, j) = cgauss();
        return g;
    }

    CMat random_hermitian(int n) {
        CMat g = ginibre(n, n);
        return 0.5 * (g + g.adjoint());
    }

    CVec gauss_vector(int n) {
        CVec v(n);
        for (int i = 0; i < n; ++i) v(i) = cgauss();
        return v;
    }

    CVec haar_unit_vector(int n) {
        CVec v = gauss_vector(n);
        double nrm = v.norm();
        while (nrm < 1e-12) {
            v = gauss_vector(n);
            nrm = v.norm();
        }
        return v / nrm;
    }

    /// Haar-distributed unitary: QR of a Ginibre matrix with the R diagonal
    /// phase-normalized.
    CMat haar_unitary(int n) {
        CMat g = ginibre(n, n);
        Eigen::HouseholderQR<CMat> qr(g);
        CMat q = qr.householderQ();
        CVec diag = qr.matrixQR().diagonal();
        for (int j = 0; j < n; ++j) {
            const double a = std::abs(diag(j));
            q.col(j) *= (a > 0) ? (diag(j) / a) : Cplx(1, 0);
        }
        return q;
    }

    /// Haar-distributed isometry: first `cols` columns of a Haar unitary.
    CMat haar_isometry(int rows, int cols) {
        CMat g = ginibre(rows, cols);
        Eigen::HouseholderQR<CMat> qr(g);
        CMat q = qr.householderQ() * CMat::Identity(rows, cols);
        CVec diag = qr.matrixQR().diagonal();
        for (int j = 0; j < cols; ++j) {
            const double a = std::abs(diag(j));
            q.col(j) *= (a > 0) ? (diag(j) / a) : Cplx(1, 0);
        }
        return q;
    }

  private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qgraph
