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

#ifndef QMT_TEST_UTIL_H
#define QMT_TEST_UTIL_H

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qmt/linalg.h"
#include "qmt/rng.h"

namespace qmt::testing {

inline ComplexMatrix random_hermitian(std::size_t d, Rng &rng) {
    auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; i++) {
        for (Eigen::Index j = 0; j < n; j++) {
            g(i, j) = rng.complex_normal();
        }
    }
    return (g + g.adjoint()) / 2.0;
}

inline ComplexVector random_state(std::size_t d, Rng &rng) {
    ComplexVector v(static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < v.size(); i++) {
        v[i] = rng.complex_normal();
    }
    return v / v.norm();
}

inline ComplexMatrix random_density(std::size_t d, Rng &rng) {
    auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; i++) {
        for (Eigen::Index j = 0; j < n; j++) {
            g(i, j) = rng.complex_normal();
        }
    }
    ComplexMatrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

inline double max_abs(const ComplexMatrix &a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

/// Spectral norm of a Hermitian matrix via Eigen's own solver.
inline double eigen_spectral(const ComplexMatrix &a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

/// Euclidean projection onto the probability simplex by sorting.
inline std::vector<double> simplex_project(std::vector<double> v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double cum = 0, theta = 0;
    for (std::size_t k = 0; k < u.size(); k++) {
        cum += u[k];
        double t = (cum - 1) / static_cast<double>(k + 1);
        if (u[k] - t > 0) {
            theta = t;
        }
    }
    for (double &x : v) {
        x = std::max(x - theta, 0.0);
    }
    return v;
}

/// All n-qubit stabilizer states for n <= 2, as joint eigenvectors of
/// commuting Pauli pairs (n = 2) or single Paulis (n = 1). They form a
/// 2-design in dimension 2^n.
inline std::vector<ComplexVector> stabilizer_states(std::size_t n) {
    ComplexMatrix paulis[4] = {ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 2),
                               ComplexMatrix::Zero(2, 2)};
    paulis[1] << 0, 1, 1, 0;
    paulis[2] << 0, Complex(0, -1), Complex(0, 1), 0;
    paulis[3] << 1, 0, 0, -1;
    std::vector<ComplexMatrix> strings;
    if (n == 1) {
        for (int a = 1; a < 4; a++) {
            strings.push_back(paulis[a]);
        }
    } else {
        for (int a = 0; a < 4; a++) {
            for (int b = 0; b < 4; b++) {
                if (a + b > 0) {
                    strings.push_back(kron(paulis[a], paulis[b]));
                }
            }
        }
    }
    auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
    ComplexMatrix id = ComplexMatrix::Identity(d, d);
    std::vector<ComplexVector> out;
    auto add = [&](const ComplexMatrix &proj) {
        Eigen::Index best = 0;
        proj.colwise().norm().maxCoeff(&best);
        ComplexVector v = proj.col(best);
        if (v.norm() < 0.25) {
            return;
        }
        v /= v.norm();
        for (const auto &w : out) {
            if (std::abs(w.dot(v)) > 1 - 1e-9) {
                return;
            }
        }
        out.push_back(v);
    };
    for (std::size_t i = 0; i < strings.size(); i++) {
        for (double s1 : {1.0, -1.0}) {
            ComplexMatrix p1 = (id + s1 * strings[i]) / 2.0;
            if (n == 1) {
                add(p1);
                continue;
            }
            for (std::size_t j = i + 1; j < strings.size(); j++) {
                ComplexMatrix comm = strings[i] * strings[j] - strings[j] * strings[i];
                if (comm.norm() > 1e-12) {
                    continue;
                }
                for (double s2 : {1.0, -1.0}) {
                    add(p1 * (id + s2 * strings[j]) / 2.0);
                }
            }
        }
    }
    return out;
}

}  // namespace qmt::testing

#endif
