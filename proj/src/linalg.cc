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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmt {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kRelativeOffTol = 1e-12;

double off_diagonal_norm(const ComplexMatrix &a) {
    double s = 0;
    for (Eigen::Index j = 0; j < a.cols(); j++) {
        for (Eigen::Index i = 0; i < a.rows(); i++) {
            if (i != j) {
                s += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(s);
}

// Applies the rotation G = [[c, s e], [-s conj(e), c]] on the (p, q) plane:
// A <- G^dagger A G, V <- V G. Afterwards A(p, q) == 0.
void rotate(ComplexMatrix &a, ComplexMatrix &v, Eigen::Index p, Eigen::Index q) {
    Complex apq = a(p, q);
    double g = std::abs(apq);
    Complex e = apq / g;
    double app = a(p, p).real();
    double aqq = a(q, q).real();
    double theta = (aqq - app) / (2 * g);
    double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
    double c = 1 / std::sqrt(t * t + 1);
    double s = t * c;
    Complex se = s * e;
    Complex sec = s * std::conj(e);

    Eigen::Index n = a.rows();
    for (Eigen::Index k = 0; k < n; k++) {
        Complex akp = a(k, p);
        Complex akq = a(k, q);
        a(k, p) = c * akp - sec * akq;
        a(k, q) = se * akp + c * akq;
    }
    for (Eigen::Index k = 0; k < n; k++) {
        Complex apk = a(p, k);
        Complex aqk = a(q, k);
        a(p, k) = c * apk - se * aqk;
        a(q, k) = sec * apk + c * aqk;
    }
    a(p, q) = 0;
    a(q, p) = 0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
    for (Eigen::Index k = 0; k < n; k++) {
        Complex vkp = v(k, p);
        Complex vkq = v(k, q);
        v(k, p) = c * vkp - sec * vkq;
        v(k, q) = se * vkp + c * vkq;
    }
}

}  // namespace

ComplexMatrix HermitianEig::reconstruct(const RealVector &values) const {
    return eigenvectors * values.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

ComplexMatrix hermitize(const ComplexMatrix &a) {
    return (a + a.adjoint()) * 0.5;
}

double hermiticity_defect(const ComplexMatrix &a) {
    return (a - a.adjoint()).norm();
}

void require_hermitian(const ComplexMatrix &a, const char *what) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument(std::string(what) + ": matrix is not square");
    }
    if (!a.allFinite()) {
        throw std::invalid_argument(std::string(what) + ": matrix has non-finite entries");
    }
    double defect = hermiticity_defect(a);
    if (defect > kHermitianTol) {
        throw std::invalid_argument(
            std::string(what) + ": matrix is not Hermitian (||A - A^dagger||_F = " + std::to_string(defect) +
            ")");
    }
}

HermitianEig herm_eig(const ComplexMatrix &input) {
    require_hermitian(input, "herm_eig");
    Eigen::Index n = input.rows();
    ComplexMatrix a = hermitize(input);
    ComplexMatrix v = ComplexMatrix::Identity(n, n);

    double scale = a.norm();
    double threshold = kRelativeOffTol * scale;
    int sweep = 0;
    while (off_diagonal_norm(a) > threshold) {
        if (sweep++ >= kMaxSweeps) {
            throw std::runtime_error("herm_eig: Jacobi iteration failed to converge");
        }
        for (Eigen::Index p = 0; p + 1 < n; p++) {
            for (Eigen::Index q = p + 1; q < n; q++) {
                if (std::abs(a(p, q)) > 0) {
                    rotate(a, v, p, q);
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        return a(x, x).real() < a(y, y).real();
    });

    HermitianEig result;
    result.eigenvalues.resize(n);
    result.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; k++) {
        result.eigenvalues[k] = a(order[k], order[k]).real();
        result.eigenvectors.col(k) = v.col(order[k]);
    }
    return result;
}

double matrix_norm(const ComplexMatrix &a, NormKind kind) {
    switch (kind) {
        case NormKind::frobenius:
            return a.norm();
        case NormKind::spectral: {
            RealVector ev = herm_eig(a).eigenvalues;
            return ev.size() == 0 ? 0.0 : ev.cwiseAbs().maxCoeff();
        }
        case NormKind::trace:
            return herm_eig(a).eigenvalues.cwiseAbs().sum();
    }
    throw std::invalid_argument("matrix_norm: unknown norm kind");
}

ComplexMatrix psd_project(const ComplexMatrix &a) {
    HermitianEig eig = herm_eig(a);
    return hermitize(eig.reconstruct(eig.eigenvalues.cwiseMax(0.0)));
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b, std::size_t dimension_cap) {
    auto rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
    auto cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
    if (rows > dimension_cap || cols > dimension_cap) {
        throw std::length_error(
            "kron: result dimension " + std::to_string(rows) + "x" + std::to_string(cols) + " exceeds cap " +
            std::to_string(dimension_cap));
    }
    ComplexMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix outer(const ComplexVector &v) {
    return v * v.adjoint();
}

Complex hs_inner(const ComplexMatrix &a, const ComplexMatrix &b) {
    return (a.adjoint() * b).trace();
}

}  // namespace qmt
