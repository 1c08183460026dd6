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

#ifndef QMT_POVM_H
#define QMT_POVM_H

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "qmt/linalg.h"

namespace qmt {

inline constexpr double kDefaultPovmTol = 1e-8;

struct ValidationReport {
    bool ok = false;
    double min_eigenvalue = 0;
    /// ||sum_j E_j - 1||_F.
    double completeness_residual = 0;
};

/// Checks positivity and completeness of a candidate effect list. Always
/// returns a report; throws std::invalid_argument only when the elements
/// are not square matrices of one common dimension (or not Hermitian).
ValidationReport validate(std::span<const ComplexMatrix> elements, double tol = kDefaultPovmTol);

/// A physical measurement: L positive semidefinite d x d effects summing to
/// the identity, checked on construction.
class Povm {
   public:
    explicit Povm(std::vector<ComplexMatrix> elements, double tol = kDefaultPovmTol);

    std::size_t dim() const {
        return dim_;
    }
    std::size_t outcomes() const {
        return elements_.size();
    }
    double tol() const {
        return tol_;
    }
    const std::vector<ComplexMatrix> &elements() const {
        return elements_;
    }
    const ComplexMatrix &operator[](std::size_t j) const {
        return elements_[j];
    }

   private:
    std::size_t dim_;
    double tol_;
    std::vector<ComplexMatrix> elements_;
};

/// Unconstrained Hermitian effect estimates; need not be positive or
/// complete.
class RawEstimate {
   public:
    explicit RawEstimate(std::vector<ComplexMatrix> elements);

    std::size_t dim() const {
        return dim_;
    }
    std::size_t outcomes() const {
        return elements_.size();
    }
    const std::vector<ComplexMatrix> &elements() const {
        return elements_;
    }
    const ComplexMatrix &operator[](std::size_t j) const {
        return elements_[j];
    }

   private:
    std::size_t dim_;
    std::vector<ComplexMatrix> elements_;
};

/// Recipe for constructing a POVM. Fields that a kind does not use are
/// ignored.
struct PovmSpec {
    enum class Kind { computational, rotated, sic_qubit, depolarized, random, packing_op, packing_av };
    Kind kind = Kind::computational;
    std::size_t dim = 2;
    /// Outcome count for `random`; flat-element count for `packing_op`.
    std::size_t outcomes = 2;
    std::uint64_t seed = 0;
    double p = 0;
    double epsilon = 0;
    /// `rotated` and `packing_op` use unitaries[0]; `packing_av` uses all.
    std::vector<ComplexMatrix> unitaries;
    /// Projector for the packing kinds; empty means the leading-coordinates
    /// projector diag(1, ..., 1, 0, ..., 0) of rank d/2.
    ComplexMatrix projector;
    /// Base measurement for `depolarized`.
    std::shared_ptr<const PovmSpec> base;
};

Povm build_povm(const PovmSpec &spec);

Povm computational_povm(std::size_t d);
/// {U|j><j|U^dagger}.
Povm rotated_povm(const ComplexMatrix &u);
/// Effects (1/2)|phi_k><phi_k| over the tetrahedral qubit states.
Povm sic_qubit_povm();
/// E_j -> (1 - p) E_j + p tr(E_j) 1/d.
Povm depolarize(const Povm &base, double p);
/// Haar (dL) x d isometry V split into L blocks: E_j = V^dagger Pi_j V.
Povm random_povm(std::size_t d, std::size_t outcomes, std::uint64_t seed);
/// diag(1, ..., 1, 0, ..., 0) with d/2 ones; d must be even.
ComplexMatrix leading_projector(std::size_t d);
/// L flat effects 1/(2L) followed by (1+eps)/4 1 - (eps/2) U P U^dagger and
/// (1-eps)/4 1 + (eps/2) U P U^dagger; L + 2 outcomes in total.
Povm packing_op_povm(const ComplexMatrix &u, const ComplexMatrix &projector, double epsilon,
                     std::size_t flat_outcomes);
/// For j = 1..L/2: E^j = (1-eps)/L 1 + (2 eps/L) U_j P U_j^dagger, then
/// E^(j+L/2) = (1+eps)/L 1 - (2 eps/L) U_j P U_j^dagger.
Povm packing_av_povm(std::span<const ComplexMatrix> unitaries, const ComplexMatrix &projector, double epsilon);

/// Born-rule outcome probabilities tr(E_j rho) for a pure state. Values in
/// [-1e-12, 0) are clipped to 0 and the vector renormalized to sum 1.
RealVector born(const Povm &povm, const ComplexVector &state);
/// Same for a density matrix (trace 1, PSD within 1e-6).
RealVector born(const Povm &povm, const ComplexMatrix &rho);

/// F^(x) = sum over j in x of E_j. Indices are 0-based.
ComplexMatrix coarse_grain(std::span<const ComplexMatrix> elements, std::span<const std::size_t> subset);

/// Orthonormal tensor-Pauli basis on n qubits, ordered lexicographically in
/// {I, X, Y, Z}^n (qubit 1 most significant), each string scaled by 1/sqrt(d).
std::vector<ComplexMatrix> pauli_basis(std::size_t n_qubits);

/// Transfer matrix of sum_j |E_j)(E*_j| in the orthonormal Pauli basis:
/// entry (a, b) = sum_j tr(s_a E_j) tr(s_b E*_j). Requires d = 2^n.
ComplexMatrix measurement_channel(const Povm &ideal, const Povm &estimated);

}  // namespace qmt

#endif
