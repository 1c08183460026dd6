// Copyright 2026 The qmt Authors
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

#include "qmt/linalg.h"

#include <gtest/gtest.h>

#include "test_util.h"

using namespace qmt;
using qmt::testing::max_abs;
using qmt::testing::random_hermitian;

namespace {

ComplexMatrix pauli_x() {
    ComplexMatrix x(2, 2);
    x << 0, 1, 1, 0;
    return x;
}

ComplexMatrix diag(std::initializer_list<double> values) {
    RealVector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index k = 0;
    for (double x : values) {
        v[k++] = x;
    }
    return v.cast<Complex>().asDiagonal();
}

}  // namespace

TEST(herm_eig, diagonal) {
    HermitianEig e = herm_eig(diag({2, -1}));
    ASSERT_EQ(e.eigenvalues.size(), 2);
    EXPECT_NEAR(e.eigenvalues[0], -1, 1e-14);
    EXPECT_NEAR(e.eigenvalues[1], 2, 1e-14);
}

TEST(herm_eig, pauli_x) {
    HermitianEig e = herm_eig(pauli_x());
    EXPECT_NEAR(e.eigenvalues[0], -1, 1e-14);
    EXPECT_NEAR(e.eigenvalues[1], 1, 1e-14);
    ComplexVector minus(2), plus(2);
    minus << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
    plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    // Eigenvectors are fixed up to phase.
    EXPECT_NEAR(std::abs(minus.dot(e.eigenvectors.col(0))), 1, 1e-12);
    EXPECT_NEAR(std::abs(plus.dot(e.eigenvectors.col(1))), 1, 1e-12);
}

TEST(herm_eig, reconstruction_and_unitarity) {
    Rng rng(1);
    for (std::size_t d : {2, 3, 4, 6, 8}) {
        for (int t = 0; t < 25; t++) {
            ComplexMatrix h = random_hermitian(d, rng);
            HermitianEig e = herm_eig(h);
            auto n = static_cast<Eigen::Index>(d);
            EXPECT_LE(max_abs(e.eigenvectors.adjoint() * e.eigenvectors - ComplexMatrix::Identity(n, n)), 1e-12);
            EXPECT_LE((e.reconstruct(e.eigenvalues) - h).norm(), 1e-9);
            for (Eigen::Index k = 1; k < n; k++) {
                EXPECT_LE(e.eigenvalues[k - 1], e.eigenvalues[k]);
            }
        }
    }
}

TEST(herm_eig, matches_reference_solver) {
    Rng rng(2);
    for (int t = 0; t < 50; t++) {
        ComplexMatrix h = random_hermitian(5, rng);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> ref(h);
        RealVector ours = herm_eig(h).eigenvalues;
        EXPECT_LE((ours - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(herm_eig, degenerate_and_zero) {
    HermitianEig z = herm_eig(ComplexMatrix::Zero(3, 3));
    EXPECT_EQ(z.eigenvalues.cwiseAbs().maxCoeff(), 0);
    HermitianEig id = herm_eig(ComplexMatrix::Identity(4, 4) * 2.5);
    EXPECT_NEAR(id.eigenvalues.minCoeff(), 2.5, 1e-15);
    EXPECT_NEAR(id.eigenvalues.maxCoeff(), 2.5, 1e-15);
}

TEST(herm_eig, errors) {
    EXPECT_THROW(herm_eig(ComplexMatrix::Zero(2, 3)), std::invalid_argument);
    ComplexMatrix a(2, 2);
    a << 1, 1, 0, 1;
    EXPECT_THROW(herm_eig(a), std::invalid_argument);
    // Tiny asymmetry is hermitized away.
    ComplexMatrix b = pauli_x();
    b(0, 1) += 1e-12;
    EXPECT_NO_THROW(herm_eig(b));
}

TEST(matrix_norm, examples) {
    EXPECT_NEAR(matrix_norm(diag({3, -5}), NormKind::spectral), 5, 1e-14);
    EXPECT_NEAR(matrix_norm(pauli_x(), NormKind::trace), 2, 1e-14);
    EXPECT_NEAR(matrix_norm(ComplexMatrix::Identity(3, 3), NormKind::frobenius), std::sqrt(3.0), 1e-14);
}

TEST(matrix_norm, ordering) {
    Rng rng(3);
    for (int t = 0; t < 100; t++) {
        ComplexMatrix h = random_hermitian(1 + t % 6, rng);
        double s = matrix_norm(h, NormKind::spectral);
        double f = matrix_norm(h, NormKind::frobenius);
        double tr = matrix_norm(h, NormKind::trace);
        EXPECT_LE(s, f + 1e-12);
        EXPECT_LE(f, tr + 1e-12);
        EXPECT_NEAR(s, qmt::testing::eigen_spectral(h), 1e-10);
    }
}

TEST(matrix_norm, rejects_non_hermitian_for_spectral_kinds) {
    ComplexMatrix a(2, 2);
    a << 0, 1, 0, 0;
    EXPECT_THROW(matrix_norm(a, NormKind::spectral), std::invalid_argument);
    EXPECT_THROW(matrix_norm(a, NormKind::trace), std::invalid_argument);
    EXPECT_NEAR(matrix_norm(a, NormKind::frobenius), 1, 1e-15);
}

TEST(psd_project, clipping_and_fixed_point) {
    EXPECT_LE(max_abs(psd_project(diag({1, -1})) - diag({1, 0})), 1e-14);
    Rng rng(4);
    for (int t = 0; t < 50; t++) {
        ComplexMatrix g = random_hermitian(4, rng);
        ComplexMatrix psd = g * g;
        EXPECT_LE(max_abs(psd_project(psd) - psd), 1e-10);
        ComplexMatrix once = psd_project(g);
        EXPECT_LE(max_abs(psd_project(once) - once), 1e-10);
        EXPECT_GE(herm_eig(once).eigenvalues.minCoeff(), -1e-12);
    }
}

// Nearest PSD matrix on real symmetric 2x2 inputs, against a grid over
// X = L L^T with L lower triangular.
TEST(psd_project, brute_force_2x2) {
    Rng rng(5);
    for (int t = 0; t < 3; t++) {
        ComplexMatrix a(2, 2);
        double p = rng.normal(), q = rng.normal(), r = rng.normal() - 1;
        a << p, q, q, r;
        double ours = (a - psd_project(a)).norm();
        double best = 1e300;
        const int steps = 120;
        const double lo = -3, step = 6.0 / steps;
        for (int i = 0; i <= steps; i++) {
            for (int j = 0; j <= steps; j++) {
                for (int k = 0; k <= steps; k++) {
                    double l11 = lo + i * step, l21 = lo + j * step, l22 = lo + k * step;
                    double x11 = l11 * l11, x12 = l11 * l21, x22 = l21 * l21 + l22 * l22;
                    double dist = std::hypot(std::hypot(p - x11, r - x22), std::sqrt(2.0) * (q - x12));
                    best = std::min(best, dist);
                }
            }
        }
        EXPECT_LE(ours, best + 1e-12);
        EXPECT_NEAR(ours, best, 0.05);
    }
}

TEST(kron, examples) {
    EXPECT_LE(max_abs(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)) -
                      ComplexMatrix::Identity(4, 4)),
              0);
    EXPECT_LE(max_abs(kron(diag({1, 0}), diag({0, 1})) - diag({0, 1, 0, 0})), 0);
    ComplexVector zero_zero = ComplexVector::Zero(4);
    zero_zero[0] = 1;
    ComplexVector out = kron(pauli_x(), pauli_x()) * zero_zero;
    ComplexVector one_one = ComplexVector::Zero(4);
    one_one[3] = 1;
    EXPECT_LE((out - one_one).norm(), 0);
}

TEST(kron, trace_property_and_cap) {
    Rng rng(6);
    for (int t = 0; t < 20; t++) {
        ComplexMatrix a = random_hermitian(2 + t % 3, rng);
        ComplexMatrix b = random_hermitian(1 + t % 4, rng);
        EXPECT_LE(std::abs(kron(a, b).trace() - a.trace() * b.trace()), 1e-10);
    }
    EXPECT_THROW(kron(ComplexMatrix::Identity(16, 16), ComplexMatrix::Identity(32, 32)), std::length_error);
    EXPECT_NO_THROW(kron(ComplexMatrix::Identity(16, 16), ComplexMatrix::Identity(32, 32), 512));
}

TEST(hs_inner, conjugates_first_argument) {
    ComplexMatrix a(1, 1), b(1, 1);
    a << Complex(0, 1);
    b << Complex(1, 0);
    EXPECT_EQ(hs_inner(a, b), Complex(0, -1));
}
