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

#ifndef QMT_TOMOGRAPHY_H
#define QMT_TOMOGRAPHY_H

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "qmt/frames.h"
#include "qmt/linalg.h"
#include "qmt/povm.h"

namespace qmt {

/// Outcome counts over (probe state, outcome) cells from N shots in total.
///
/// Only nonzero cells are stored, so tables over product ensembles with
/// M = 6^n states stay proportional to the number of distinct observations.
/// Relative frequencies are counts / N, which sum to one over all cells.
class FrequencyTable {
   public:
    using Cell = std::pair<std::uint64_t, std::uint32_t>;

    FrequencyTable(std::uint64_t num_states, std::uint32_t num_outcomes);

    /// Adds `count` observations of outcome j after preparing state i.
    void add(std::uint64_t i, std::uint32_t j, std::uint64_t count = 1);

    std::uint64_t num_states() const {
        return num_states_;
    }
    std::uint32_t num_outcomes() const {
        return num_outcomes_;
    }
    std::uint64_t shots() const {
        return shots_;
    }
    std::uint64_t count(std::uint64_t i, std::uint32_t j) const;
    double frequency(std::uint64_t i, std::uint32_t j) const;
    /// Nonzero cells in (state, outcome) order.
    const std::map<Cell, std::uint64_t> &cells() const {
        return counts_;
    }

   private:
    std::uint64_t num_states_;
    std::uint32_t num_outcomes_;
    std::uint64_t shots_ = 0;
    std::map<Cell, std::uint64_t> counts_;
};

/// One real-valued entry f_ij of a frequency table.
struct FrequencyCell {
    std::uint64_t state;
    std::uint32_t outcome;
    double value;
};

/// Shot-by-shot sampling: each shot draws a probe index uniformly from
/// [0, M) and then an outcome from the Born distribution of that probe.
/// Deterministic for a given seed (see Rng).
FrequencyTable simulate_shots(const Povm &povm, const ProbeEnsemble &ensemble, std::uint64_t shots,
                              std::uint64_t seed);

/// Exact expected frequencies f_ij = <psi_i|E_j|psi_i> / M over every cell.
std::vector<FrequencyCell> expected_frequencies(const Povm &povm, const ProbeEnsemble &ensemble);

/// Least-squares estimate E^_j = sum_i f_ij nu_i, accumulated over the
/// nonzero cells only.
RawEstimate lse_estimate(const FrequencyTable &table, const ProbeEnsemble &ensemble);
RawEstimate lse_estimate(std::span<const FrequencyCell> cells, std::size_t num_outcomes,
                         const ProbeEnsemble &ensemble);

enum class ProjectionMetric {
    /// sum_j ||E^_j - Z_j||_F^2.
    frobenius,
    /// sum_j (||E^_j - Z_j||_F^2 + tr(E^_j - Z_j)^2), i.e. 2d * d_av^2.
    dav,
};

struct ProjectionOptions {
    ProjectionMetric metric = ProjectionMetric::frobenius;
    double tol_feasibility = 1e-9;
    double tol_step = 1e-10;
    std::size_t max_iterations = 10000;

    /// Throws std::invalid_argument on non-positive tolerances or a zero
    /// iteration budget.
    void check() const;
};

struct ProjectionDiagnostics {
    std::size_t iterations = 0;
    /// ||sum_j Z_j - 1||_F of the returned iterate.
    double final_residual = 0;
    /// Change between the last two iterates (root of the summed squares).
    double final_step = 0;
    bool converged = false;
};

struct ProjectionResult {
    /// Returned iterate: every element is positive semidefinite.
    std::vector<ComplexMatrix> elements;
    ProjectionDiagnostics diagnostics;

    /// The iterate as a Povm validated at tol 1e-6; throws when the solver
    /// stopped too far from feasibility.
    Povm povm() const;
};

/// Metric projection of `raw` onto the set of POVMs, by Dykstra's
/// alternating projections between the product of PSD cones and the
/// affine set {sum_j Z_j = 1}. Both component projections are exact in the
/// chosen metric. Non-convergence is reported through the diagnostics.
ProjectionResult project_onto_povms(const RawEstimate &raw, const ProjectionOptions &opts = {});

/// Nearest PSD matrix to `a` in the metric ||A - Z||_F^2 + tr(A - Z)^2.
/// The minimizer shares the eigenbasis of `a`; its eigenvalues are
/// max(lambda_k - c, 0) with the shift c solving
/// c = sum_k max(lambda_k - c, 0) - sum_k lambda_k.
ComplexMatrix psd_project_trace_weighted(const ComplexMatrix &a);

enum class FrameKind { global, local };
enum class DistanceTarget { op, av };
enum class BoundVariant { theorem, proof };

struct SampleSizeQuery {
    std::size_t dim = 2;
    std::size_t outcomes = 2;
    double epsilon = 0.1;
    double delta = 0.05;
    FrameKind frame = FrameKind::global;
    /// Qubit count for the local frame; dim must equal 2^n_qubits.
    std::size_t n_qubits = 1;
    DistanceTarget distance = DistanceTarget::op;
    /// Only meaningful for (av, global): the theorem statement uses
    /// (1 + eps/(3L)), its derivation (1 + sqrt(d) eps/(6L)).
    BoundVariant variant = BoundVariant::theorem;
};

/// Right-hand side of the sample-size guarantee, before rounding.
double sample_size_bound(const SampleSizeQuery &q);

/// ceil(sample_size_bound(q)).
std::uint64_t sample_size(const SampleSizeQuery &q);

/// Smallest epsilon for which sample_size(q with that epsilon) <= shots,
/// found by bisection on the monotone bound. Returns +inf if none in (0, 1e6].
double guaranteed_epsilon(SampleSizeQuery q, std::uint64_t shots);

struct BernsteinDiagnostics {
    /// max_i ||nu_i||.
    double k_emp = 0;
    /// d^2 (global) or 4^n (local).
    double k_bound = 0;
    /// ||sum_i p_i nu_i^2 - F^2|| with p_i = <psi_i|F|psi_i> / M.
    double sigma2_emp = 0;
    /// d^3 + d^2 (global) or 10^n (local).
    double sigma2_bound = 0;
    bool within_bounds = false;
};

/// Shot-count-free Bernstein parameters (N K and N sigma^2) for the grouped
/// effect F = sum_{j in subset} E_j, by full enumeration of the ensemble.
BernsteinDiagnostics bernstein_diagnostics(const Povm &povm, const ProbeEnsemble &ensemble,
                                           std::span<const std::size_t> subset);

}  // namespace qmt

#endif
