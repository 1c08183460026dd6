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

#ifndef QMT_FRAMES_H
#define QMT_FRAMES_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qmt/linalg.h"

namespace qmt {

enum class EnsembleKind { global_2design, local_product };

/// Recipe for a probe ensemble.
struct EnsembleSpec {
    enum class Kind { pauli6_product, mub, sic_qubit, sic_qubit_product, explicit_states };
    Kind kind = Kind::pauli6_product;
    /// Number of qubits for the product kinds.
    std::size_t n_qubits = 1;
    /// Hilbert-space dimension for `mub` (must be prime).
    std::size_t dim = 2;
    /// Unit vectors for `explicit_states`.
    std::vector<ComplexVector> states;
};

/// An informationally complete family of pure probe states.
///
/// Global ensembles store every state. Local ensembles store one per-qubit
/// base list of m states; the M = m^n product states are addressed by a flat
/// index whose base-m digits (most significant first) select the state of
/// qubit 1, 2, ..., n.
class ProbeEnsemble {
   public:
    static ProbeEnsemble global(std::vector<ComplexVector> states);
    static ProbeEnsemble local(std::vector<ComplexVector> qubit_states, std::size_t n_qubits);

    EnsembleKind kind() const {
        return kind_;
    }
    std::size_t dim() const {
        return dim_;
    }
    std::size_t n_qubits() const {
        return n_qubits_;
    }
    /// Total number of probe states M.
    std::uint64_t size() const {
        return size_;
    }
    /// Stored states: all M for global, the m per-qubit states for local.
    const std::vector<ComplexVector> &base_states() const {
        return states_;
    }

    /// Base-m digits of a flat local index, qubit 1 first.
    std::vector<std::size_t> multi_index(std::uint64_t index) const;

    /// |psi_i>, materialized on demand for local ensembles.
    ComplexVector state(std::uint64_t index) const;

    /// The dual frame element nu_i. Global: d(d+1)|psi_i><psi_i| - d*1.
    /// Local: tensor product over qubits of (6|psi_k><psi_k| - 2*1).
    ComplexMatrix frame_operator(std::uint64_t index) const;

   private:
    ProbeEnsemble() = default;
    void check_index(std::uint64_t index) const;

    EnsembleKind kind_ = EnsembleKind::global_2design;
    std::size_t dim_ = 0;
    std::size_t n_qubits_ = 0;
    std::uint64_t size_ = 0;
    std::vector<ComplexVector> states_;
    // Per-qubit frame factors 6|psi><psi| - 2*1, cached for local ensembles.
    std::vector<ComplexMatrix> qubit_frames_;
};

/// Builds an ensemble; throws std::invalid_argument on bad parameters or when
/// an explicit state list is not a 2-design.
ProbeEnsemble build_ensemble(const EnsembleSpec &spec);

/// The six Pauli eigenstates |0>, |1>, |+>, |->, |+i>, |-i>.
std::vector<ComplexVector> pauli6_states();

/// Four qubit states with tetrahedral Bloch vectors (1,1,1), (1,-1,-1),
/// (-1,1,-1), (-1,-1,1) (each over sqrt 3), in that order.
std::vector<ComplexVector> sic_qubit_states();

/// Complete set of d + 1 mutually unbiased bases for prime d, concatenated:
/// computational basis first, then for a = 0..d-1 the basis with components
/// omega^(a l^2 + b l) / sqrt(d), b = 0..d-1. For d = 2 the X then Y bases.
std::vector<ComplexVector> mub_states(std::size_t d);

bool is_prime(std::size_t n);

/// Max over the generalized Gell-Mann basis plus identity of
/// ||(1/M) sum_i <psi_i|X|psi_i> |psi_i><psi_i| - (X + tr(X) 1)/(d(d+1))||_F.
/// Zero iff the states form a (uniformly weighted) 2-design.
double design_deviation(std::span<const ComplexVector> states);

/// design_deviation of the stored states; for local ensembles this is the
/// single-qubit check on the base list.
double design_check(const ProbeEnsemble &ensemble);

/// Hermitian basis of d x d matrices: identity followed by the d^2 - 1
/// generalized Gell-Mann matrices (symmetric, antisymmetric, diagonal).
std::vector<ComplexMatrix> gell_mann_basis(std::size_t d);

}  // namespace qmt

#endif
