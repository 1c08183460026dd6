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

#include "qmt/tomography.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "qmt/rng.h"

namespace qmt {

namespace {

// Enumerating every probe state is refused beyond this many.
constexpr std::uint64_t kMaxEnumeratedStates = 6 * 6 * 6 * 6 * 6 * 6;

void require_matching_dims(const Povm &povm, const ProbeEnsemble &ensemble, const char *what) {
    if (povm.dim() != ensemble.dim()) {
        throw std::invalid_argument(
            std::string(what) + ": POVM dimension " + std::to_string(povm.dim()) + " does not match ensemble dimension " +
            std::to_string(ensemble.dim()));
    }
}

using Elements = std::vector<ComplexMatrix>;

void affine_project(Elements &z) {
    auto n = z[0].rows();
    ComplexMatrix excess = -ComplexMatrix::Identity(n, n);
    for (const auto &m : z) {
        excess += m;
    }
    excess = hermitize(excess) / static_cast<double>(z.size());
    for (auto &m : z) {
        m = hermitize(m) - excess;
    }
}

double completeness_residual(const Elements &z) {
    auto n = z[0].rows();
    ComplexMatrix sum = -ComplexMatrix::Identity(n, n);
    for (const auto &m : z) {
        sum += m;
    }
    return sum.norm();
}

}  // namespace

FrequencyTable::FrequencyTable(std::uint64_t num_states, std::uint32_t num_outcomes)
    : num_states_(num_states), num_outcomes_(num_outcomes) {
    if (num_states == 0 || num_outcomes == 0) {
        throw std::invalid_argument("FrequencyTable: empty shape");
    }
}

void FrequencyTable::add(std::uint64_t i, std::uint32_t j, std::uint64_t count) {
    if (i >= num_states_ || j >= num_outcomes_) {
        throw std::out_of_range(
            "FrequencyTable: cell (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range");
    }
    if (count == 0) {
        return;
    }
    counts_[{i, j}] += count;
    shots_ += count;
}

std::uint64_t FrequencyTable::count(std::uint64_t i, std::uint32_t j) const {
    auto it = counts_.find({i, j});
    return it == counts_.end() ? 0 : it->second;
}

double FrequencyTable::frequency(std::uint64_t i, std::uint32_t j) const {
    if (shots_ == 0) {
        return 0;
    }
    return static_cast<double>(count(i, j)) / static_cast<double>(shots_);
}

FrequencyTable simulate_shots(const Povm &povm, const ProbeEnsemble &ensemble, std::uint64_t shots,
                              std::uint64_t seed) {
    require_matching_dims(povm, ensemble, "simulate_shots");
    if (shots < 1) {
        throw std::invalid_argument("simulate_shots: need at least one shot");
    }
    FrequencyTable table(ensemble.size(), static_cast<std::uint32_t>(povm.outcomes()));
    Rng rng(seed);
    // Cumulative outcome distributions of the probes drawn so far.
    std::unordered_map<std::uint64_t, std::vector<double>> cdf_cache;
    for (std::uint64_t s = 0; s < shots; s++) {
        std::uint64_t i = rng.uniform_index(ensemble.size());
        auto it = cdf_cache.find(i);
        if (it == cdf_cache.end()) {
            RealVector p = born(povm, ensemble.state(i));
            std::vector<double> cdf(static_cast<std::size_t>(p.size()));
            double acc = 0;
            for (Eigen::Index j = 0; j < p.size(); j++) {
                acc += p[j];
                cdf[static_cast<std::size_t>(j)] = acc;
            }
            it = cdf_cache.emplace(i, std::move(cdf)).first;
        }
        const auto &cdf = it->second;
        double u = rng.uniform() * cdf.back();
        auto pos = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
        // Skip trailing zero-probability outcomes if u lands on the total.
        auto j = static_cast<std::uint32_t>(std::min<std::ptrdiff_t>(pos, static_cast<std::ptrdiff_t>(cdf.size()) - 1));
        table.add(i, j);
    }
    return table;
}

std::vector<FrequencyCell> expected_frequencies(const Povm &povm, const ProbeEnsemble &ensemble) {
    require_matching_dims(povm, ensemble, "expected_frequencies");
    if (ensemble.size() > kMaxEnumeratedStates) {
        throw std::invalid_argument("expected_frequencies: ensemble too large to enumerate");
    }
    std::vector<FrequencyCell> out;
    double weight = 1.0 / static_cast<double>(ensemble.size());
    for (std::uint64_t i = 0; i < ensemble.size(); i++) {
        ComplexVector psi = ensemble.state(i);
        for (std::size_t j = 0; j < povm.outcomes(); j++) {
            out.push_back({i, static_cast<std::uint32_t>(j), weight * psi.dot(povm[j] * psi).real()});
        }
    }
    return out;
}

RawEstimate lse_estimate(std::span<const FrequencyCell> cells, std::size_t num_outcomes,
                         const ProbeEnsemble &ensemble) {
    if (num_outcomes == 0) {
        throw std::invalid_argument("lse_estimate: no outcomes");
    }
    auto n = static_cast<Eigen::Index>(ensemble.dim());
    Elements estimate(num_outcomes, ComplexMatrix::Zero(n, n));
    // Cells arrive grouped by state in practice; reuse nu_i across a run.
    std::uint64_t cached_state = std::numeric_limits<std::uint64_t>::max();
    ComplexMatrix nu;
    for (const auto &cell : cells) {
        if (cell.outcome >= num_outcomes) {
            throw std::out_of_range("lse_estimate: outcome index out of range");
        }
        if (cell.state >= ensemble.size()) {
            throw std::out_of_range("lse_estimate: state index out of range for the ensemble");
        }
        if (cell.value == 0) {
            continue;
        }
        if (cell.state != cached_state) {
            nu = ensemble.frame_operator(cell.state);
            cached_state = cell.state;
        }
        estimate[cell.outcome] += cell.value * nu;
    }
    return RawEstimate(std::move(estimate));
}

RawEstimate lse_estimate(const FrequencyTable &table, const ProbeEnsemble &ensemble) {
    if (table.num_states() != ensemble.size()) {
        throw std::invalid_argument(
            "lse_estimate: table has " + std::to_string(table.num_states()) + " states, ensemble has " +
            std::to_string(ensemble.size()));
    }
    std::vector<FrequencyCell> cells;
    cells.reserve(table.cells().size());
    double total = static_cast<double>(table.shots());
    for (const auto &[cell, count] : table.cells()) {
        cells.push_back({cell.first, cell.second, static_cast<double>(count) / total});
    }
    return lse_estimate(cells, table.num_outcomes(), ensemble);
}

void ProjectionOptions::check() const {
    if (!(tol_feasibility > 0) || !(tol_step > 0)) {
        throw std::invalid_argument("ProjectionOptions: tolerances must be positive");
    }
    if (max_iterations < 1) {
        throw std::invalid_argument("ProjectionOptions: max_iterations must be at least 1");
    }
}

Povm ProjectionResult::povm() const {
    return Povm(elements, 1e-6);
}

ComplexMatrix psd_project_trace_weighted(const ComplexMatrix &a) {
    HermitianEig eig = herm_eig(a);
    const RealVector &lambda = eig.eigenvalues;
    Eigen::Index n = lambda.size();
    double total = lambda.sum();
    // Eigenvalues are ascending; the active set is a suffix of them.
    double shift = 0;
    double active_sum = 0;
    for (Eigen::Index active = 0; active <= n; active++) {
        if (active > 0) {
            active_sum += lambda[n - active];
        }
        double c = (active_sum - total) / static_cast<double>(active + 1);
        double upper = active == 0 ? std::numeric_limits<double>::infinity() : lambda[n - active];
        double lower = active == n ? -std::numeric_limits<double>::infinity() : lambda[n - active - 1];
        if (c < upper && c >= lower) {
            shift = c;
            break;
        }
    }
    RealVector z = (lambda.array() - shift).cwiseMax(0.0);
    return hermitize(eig.reconstruct(z));
}

ProjectionResult project_onto_povms(const RawEstimate &raw, const ProjectionOptions &opts) {
    opts.check();
    std::function<ComplexMatrix(const ComplexMatrix &)> cone_project;
    if (opts.metric == ProjectionMetric::frobenius) {
        cone_project = [](const ComplexMatrix &m) { return psd_project(m); };
    } else {
        cone_project = [](const ComplexMatrix &m) { return psd_project_trace_weighted(m); };
    }

    std::size_t l = raw.outcomes();
    auto n = static_cast<Eigen::Index>(raw.dim());
    Elements x = raw.elements();
    Elements affine_correction(l, ComplexMatrix::Zero(n, n));
    Elements cone_correction(l, ComplexMatrix::Zero(n, n));
    Elements y(l);

    ProjectionResult result;
    auto &diag = result.diagnostics;
    for (std::size_t it = 1; it <= opts.max_iterations; it++) {
        for (std::size_t j = 0; j < l; j++) {
            y[j] = x[j] + affine_correction[j];
        }
        affine_project(y);
        for (std::size_t j = 0; j < l; j++) {
            affine_correction[j] = x[j] + affine_correction[j] - y[j];
        }
        double step2 = 0;
        for (std::size_t j = 0; j < l; j++) {
            ComplexMatrix shifted = y[j] + cone_correction[j];
            ComplexMatrix next = cone_project(shifted);
            cone_correction[j] = shifted - next;
            step2 += (next - x[j]).squaredNorm();
            x[j] = std::move(next);
        }
        diag.iterations = it;
        diag.final_step = std::sqrt(step2);
        diag.final_residual = completeness_residual(x);
        if (diag.final_residual <= opts.tol_feasibility && diag.final_step <= opts.tol_step) {
            diag.converged = true;
            break;
        }
    }
    result.elements = std::move(x);
    return result;
}

double sample_size_bound(const SampleSizeQuery &q) {
    if (!(q.epsilon > 0) || !std::isfinite(q.epsilon)) {
        throw std::invalid_argument("sample_size: epsilon must be positive");
    }
    if (!(q.delta > 0 && q.delta < 1)) {
        throw std::invalid_argument("sample_size: delta must lie in (0, 1)");
    }
    if (q.dim < 1 || q.outcomes < 1) {
        throw std::invalid_argument("sample_size: dimension and outcome count must be positive");
    }
    double d = static_cast<double>(q.dim);
    double l = static_cast<double>(q.outcomes);
    double eps = q.epsilon;
    double eps2 = eps * eps;
    if (q.frame == FrameKind::local) {
        if (q.n_qubits < 1 || q.n_qubits >= 64 || (std::size_t{1} << q.n_qubits) != q.dim) {
            throw std::invalid_argument("sample_size: local frame requires dim = 2^n_qubits");
        }
    }
    double n = static_cast<double>(q.n_qubits);
    if (q.distance == DistanceTarget::op) {
        // The union bound runs over all 2^L outcome subsets.
        double log_term = (l + 1) * std::log(2.0) + std::log(d / q.delta);
        if (q.frame == FrameKind::global) {
            return 8 * (d * d * d + d * d * (1 + eps / 6)) / eps2 * log_term;
        }
        return 8 * (std::pow(10.0, n) + std::pow(4.0, n) * eps / 6) / eps2 * log_term;
    }
    double log_term = std::log(4 * l * d / q.delta);
    if (q.frame == FrameKind::global) {
        double correction = q.variant == BoundVariant::theorem ? eps / (3 * l) : std::sqrt(d) * eps / (6 * l);
        return 8 * l * l * (d * d + d * (1 + correction)) / eps2 * log_term;
    }
    return 8 * l * l * (std::pow(5.0, n) + std::pow(2.0, n) * eps / 6) / eps2 * log_term;
}

std::uint64_t sample_size(const SampleSizeQuery &q) {
    double bound = sample_size_bound(q);
    if (!(bound < 1.8e19)) {
        throw std::overflow_error("sample_size: bound exceeds the 64-bit range");
    }
    return static_cast<std::uint64_t>(std::ceil(bound));
}

double guaranteed_epsilon(SampleSizeQuery q, std::uint64_t shots) {
    auto fits = [&](double eps) {
        q.epsilon = eps;
        return sample_size_bound(q) <= static_cast<double>(shots);
    };
    double hi = 1e6;
    if (!fits(hi)) {
        return std::numeric_limits<double>::infinity();
    }
    double lo = 0;
    for (int k = 0; k < 200 && hi - lo > 1e-12 * hi; k++) {
        double mid = 0.5 * (lo + hi);
        if (mid > 0 && fits(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

BernsteinDiagnostics bernstein_diagnostics(const Povm &povm, const ProbeEnsemble &ensemble,
                                           std::span<const std::size_t> subset) {
    require_matching_dims(povm, ensemble, "bernstein_diagnostics");
    if (ensemble.size() > kMaxEnumeratedStates) {
        throw std::invalid_argument("bernstein_diagnostics: ensemble too large to enumerate");
    }
    ComplexMatrix grouped = coarse_grain(povm.elements(), subset);
    auto n = static_cast<Eigen::Index>(povm.dim());
    double weight = 1.0 / static_cast<double>(ensemble.size());

    BernsteinDiagnostics out;
    ComplexMatrix second_moment = ComplexMatrix::Zero(n, n);
    for (std::uint64_t i = 0; i < ensemble.size(); i++) {
        ComplexMatrix nu = ensemble.frame_operator(i);
        out.k_emp = std::max(out.k_emp, matrix_norm(nu, NormKind::spectral));
        ComplexVector psi = ensemble.state(i);
        double p = weight * psi.dot(grouped * psi).real();
        second_moment += p * (nu * nu);
    }
    out.sigma2_emp = matrix_norm(hermitize(second_moment - grouped * grouped), NormKind::spectral);

    double d = static_cast<double>(povm.dim());
    if (ensemble.kind() == EnsembleKind::global_2design) {
        out.k_bound = d * d;
        out.sigma2_bound = d * d * d + d * d;
    } else {
        double nq = static_cast<double>(ensemble.n_qubits());
        out.k_bound = std::pow(4.0, nq);
        out.sigma2_bound = std::pow(10.0, nq);
    }
    constexpr double slack = 1e-9;
    out.within_bounds = out.k_emp <= out.k_bound * (1 + slack) && out.sigma2_emp <= out.sigma2_bound * (1 + slack);
    return out;
}

}  // namespace qmt
