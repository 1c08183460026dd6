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

#ifndef QMT_LINALG_H
#define QMT_LINALG_H

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qmt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Tolerance (Frobenius) beyond which a matrix is rejected as non-Hermitian.
inline constexpr double kHermitianTol = 1e-9;

/// Default cap on the dimension of matrices produced by `kron`.
inline constexpr std::size_t kDefaultDimensionCap = 256;

/// Eigendecomposition of a Hermitian matrix.
///
/// `eigenvalues` are sorted ascending and column k of `eigenvectors` is the
/// eigenvector belonging to `eigenvalues[k]`.
struct HermitianEig {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;

    /// V diag(f(lambda)) V^dagger for a real function of the eigenvalues.
    ComplexMatrix reconstruct(const RealVector &values) const;
};

enum class NormKind { spectral, frobenius, trace };

/// (A + A^dagger) / 2.
ComplexMatrix hermitize(const ComplexMatrix &a);

/// ||A - A^dagger||_F.
double hermiticity_defect(const ComplexMatrix &a);

/// Throws std::invalid_argument if `a` is not square or not Hermitian within
/// `kHermitianTol`. `what` names the argument in the error message.
void require_hermitian(const ComplexMatrix &a, const char *what);

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Sweeps over all (p, q) pairs applying complex Givens rotations until the
/// off-diagonal Frobenius mass drops below 1e-12 times the Frobenius norm of
/// the input, or 100 sweeps pass (std::runtime_error). The strictly lower
/// and upper triangles are averaged before iterating, so a tiny residual
/// anti-Hermitian part is discarded.
HermitianEig herm_eig(const ComplexMatrix &a);

/// Spectral and trace norms require Hermitian input; frobenius accepts any.
double matrix_norm(const ComplexMatrix &a, NormKind kind);

/// Frobenius-nearest positive semidefinite matrix: eigenvalues clipped at 0.
ComplexMatrix psd_project(const ComplexMatrix &a);

/// Kronecker product. Throws std::length_error when either output dimension
/// would exceed `dimension_cap`.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b,
                   std::size_t dimension_cap = kDefaultDimensionCap);

/// Projector |v><v|.
ComplexMatrix outer(const ComplexVector &v);

/// Hilbert-Schmidt inner product tr(A^dagger B).
Complex hs_inner(const ComplexMatrix &a, const ComplexMatrix &b);

}  // namespace qmt

#endif
