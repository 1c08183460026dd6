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

#include "qmt/povm.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qmt/frames.h"
#include "qmt/packing_lab.h"
#include "qmt/rng.h"

namespace qmt {

namespace {

constexpr double kBornClip = 1e-12;
constexpr double kStateNormTol = 1e-6;

std::size_t common_dim(std::span<const ComplexMatrix> elements, const char *what) {
    if (elements.empty()) {
        throw std::invalid_argument(std::string(what) + ": no elements");
    }
    auto d = elements.front().rows();
    for (const auto &e : elements) {
        if (e.rows() != d || e.cols() != d) {
            throw std::invalid_argument(std::string(what) + ": elements are not square of a common dimension");
        }
        require_hermitian(e, what);
    }
    if (d == 0) {
        throw std::invalid_argument(std::string(what) + ": zero-dimensional elements");
    }
    return static_cast<std::size_t>(d);
}

ComplexMatrix identity(std::size_t d) {
    auto n = static_cast<Eigen::Index>(d);
    return ComplexMatrix::Identity(n, n);
}

void require_packing_params(std::size_t d, double epsilon) {
    if (d % 2 != 0) {
        throw std::invalid_argument("packing POVM: dimension must be even");
    }
    if (!(epsilon >= 0 && epsilon <= 0.5)) {
        throw std::invalid_argument("packing POVM: epsilon must lie in [0, 1/2]");
    }
}

// Clips to [0, 1] and renormalizes. Values below -(tol + 1e-12) mean the
// effects were not positive to begin with.
RealVector finish_probabilities(RealVector p, double tol) {
    for (Eigen::Index j = 0; j < p.size(); j++) {
        if (p[j] < -(tol + kBornClip)) {
            throw std::runtime_error("born: negative probability " + std::to_string(p[j]));
        }
        p[j] = std::clamp(p[j], 0.0, 1.0);
    }
    double total = p.sum();
    if (std::abs(total - 1) > kStateNormTol) {
        throw std::runtime_error("born: probabilities sum to " + std::to_string(total));
    }
    return p / total;
}

}  // namespace

ValidationReport validate(std::span<const ComplexMatrix> elements, double tol) {
    std::size_t d = common_dim(elements, "validate");
    ValidationReport report;
    report.min_eigenvalue = std::numeric_limits<double>::infinity();
    ComplexMatrix sum = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (const auto &e : elements) {
        report.min_eigenvalue = std::min(report.min_eigenvalue, herm_eig(e).eigenvalues.minCoeff());
        sum += e;
    }
    report.completeness_residual = (sum - identity(d)).norm();
    report.ok = report.min_eigenvalue >= -tol && report.completeness_residual <= tol;
    return report;
}

Povm::Povm(std::vector<ComplexMatrix> elements, double tol) : tol_(tol), elements_(std::move(elements)) {
    ValidationReport r = validate(elements_, tol);
    if (!r.ok) {
        throw std::invalid_argument(
            "Povm: not a valid POVM (min eigenvalue " + std::to_string(r.min_eigenvalue) + ", completeness residual " +
            std::to_string(r.completeness_residual) + ")");
    }
    dim_ = static_cast<std::size_t>(elements_.front().rows());
    for (auto &e : elements_) {
        e = hermitize(e);
    }
}

RawEstimate::RawEstimate(std::vector<ComplexMatrix> elements) : elements_(std::move(elements)) {
    dim_ = common_dim(elements_, "RawEstimate");
    for (auto &e : elements_) {
        e = hermitize(e);
    }
}

Povm computational_povm(std::size_t d) {
    if (d < 1) {
        throw std::invalid_argument("computational POVM: d must be positive");
    }
    std::vector<ComplexMatrix> out;
    for (std::size_t j = 0; j < d; j++) {
        ComplexMatrix e = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        e(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = 1;
        out.push_back(e);
    }
    return Povm(std::move(out));
}

Povm rotated_povm(const ComplexMatrix &u) {
    if (u.rows() != u.cols() || u.rows() == 0) {
        throw std::invalid_argument("rotated POVM: unitary must be square");
    }
    auto n = u.rows();
    if ((u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm() > 1e-9) {
        throw std::invalid_argument("rotated POVM: matrix is not unitary");
    }
    std::vector<ComplexMatrix> out;
    for (Eigen::Index j = 0; j < n; j++) {
        out.push_back(outer(u.col(j)));
    }
    return Povm(std::move(out));
}

Povm sic_qubit_povm() {
    std::vector<ComplexMatrix> out;
    for (const auto &s : sic_qubit_states()) {
        out.push_back(0.5 * outer(s));
    }
    return Povm(std::move(out));
}

Povm depolarize(const Povm &base, double p) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("depolarized POVM: p must lie in [0, 1]");
    }
    std::size_t d = base.dim();
    std::vector<ComplexMatrix> out;
    for (const auto &e : base.elements()) {
        out.push_back((1 - p) * e + p * e.trace().real() / static_cast<double>(d) * identity(d));
    }
    return Povm(std::move(out));
}

Povm random_povm(std::size_t d, std::size_t outcomes, std::uint64_t seed) {
    if (d < 1) {
        throw std::invalid_argument("random POVM: d must be positive");
    }
    if (outcomes < 2) {
        throw std::invalid_argument("random POVM: need at least 2 outcomes");
    }
    Rng rng(seed);
    ComplexMatrix u = haar_unitary(d * outcomes, rng);
    auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix v = u.leftCols(n);
    std::vector<ComplexMatrix> out;
    for (std::size_t j = 0; j < outcomes; j++) {
        auto block = v.middleRows(static_cast<Eigen::Index>(j) * n, n);
        out.push_back(hermitize(block.adjoint() * block));
    }
    return Povm(std::move(out));
}

ComplexMatrix leading_projector(std::size_t d) {
    if (d % 2 != 0 || d == 0) {
        throw std::invalid_argument("leading_projector: dimension must be even and positive");
    }
    auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n / 2; k++) {
        p(k, k) = 1;
    }
    return p;
}

Povm packing_op_povm(const ComplexMatrix &u, const ComplexMatrix &projector, double epsilon,
                     std::size_t flat_outcomes) {
    auto d = static_cast<std::size_t>(u.rows());
    require_packing_params(d, epsilon);
    if (flat_outcomes < 1) {
        throw std::invalid_argument("packing_op POVM: need at least one flat outcome");
    }
    if (projector.rows() != u.rows() || projector.cols() != u.cols()) {
        throw std::invalid_argument("packing_op POVM: projector and unitary dimensions differ");
    }
    ComplexMatrix q = hermitize(u * projector * u.adjoint());
    ComplexMatrix id = identity(d);
    std::vector<ComplexMatrix> out(flat_outcomes, id / (2.0 * static_cast<double>(flat_outcomes)));
    out.push_back((1 + epsilon) / 4 * id - epsilon / 2 * q);
    out.push_back((1 - epsilon) / 4 * id + epsilon / 2 * q);
    return Povm(std::move(out));
}

Povm packing_av_povm(std::span<const ComplexMatrix> unitaries, const ComplexMatrix &projector, double epsilon) {
    if (unitaries.empty()) {
        throw std::invalid_argument("packing_av POVM: need at least one unitary");
    }
    auto d = static_cast<std::size_t>(unitaries.front().rows());
    require_packing_params(d, epsilon);
    double l = 2.0 * static_cast<double>(unitaries.size());
    ComplexMatrix id = identity(d);
    std::vector<ComplexMatrix> lower;
    std::vector<ComplexMatrix> upper;
    for (const auto &u : unitaries) {
        if (u.rows() != projector.rows() || u.cols() != projector.cols()) {
            throw std::invalid_argument("packing_av POVM: projector and unitary dimensions differ");
        }
        ComplexMatrix q = hermitize(u * projector * u.adjoint());
        lower.push_back((1 - epsilon) / l * id + 2 * epsilon / l * q);
        upper.push_back((1 + epsilon) / l * id - 2 * epsilon / l * q);
    }
    lower.insert(lower.end(), upper.begin(), upper.end());
    return Povm(std::move(lower));
}

Povm build_povm(const PovmSpec &spec) {
    using K = PovmSpec::Kind;
    auto projector_for = [&](std::size_t d) {
        return spec.projector.size() == 0 ? leading_projector(d) : spec.projector;
    };
    switch (spec.kind) {
        case K::computational:
            return computational_povm(spec.dim);
        case K::rotated:
            if (spec.unitaries.empty()) {
                throw std::invalid_argument("rotated POVM: missing unitary");
            }
            return rotated_povm(spec.unitaries.front());
        case K::sic_qubit:
            return sic_qubit_povm();
        case K::depolarized:
            if (!spec.base) {
                throw std::invalid_argument("depolarized POVM: missing base");
            }
            return depolarize(build_povm(*spec.base), spec.p);
        case K::random:
            return random_povm(spec.dim, spec.outcomes, spec.seed);
        case K::packing_op: {
            if (spec.unitaries.empty()) {
                throw std::invalid_argument("packing_op POVM: missing unitary");
            }
            const auto &u = spec.unitaries.front();
            require_packing_params(static_cast<std::size_t>(u.rows()), spec.epsilon);
            return packing_op_povm(u, projector_for(static_cast<std::size_t>(u.rows())), spec.epsilon, spec.outcomes);
        }
        case K::packing_av: {
            if (spec.unitaries.empty()) {
                throw std::invalid_argument("packing_av POVM: missing unitaries");
            }
            auto d = static_cast<std::size_t>(spec.unitaries.front().rows());
            require_packing_params(d, spec.epsilon);
            return packing_av_povm(spec.unitaries, projector_for(d), spec.epsilon);
        }
    }
    throw std::invalid_argument("build_povm: unknown kind");
}

RealVector born(const Povm &povm, const ComplexVector &state) {
    if (static_cast<std::size_t>(state.size()) != povm.dim()) {
        throw std::invalid_argument("born: state dimension does not match POVM");
    }
    if (!state.allFinite() || std::abs(state.squaredNorm() - 1) > kStateNormTol) {
        throw std::invalid_argument("born: state is not normalized");
    }
    RealVector p(static_cast<Eigen::Index>(povm.outcomes()));
    for (std::size_t j = 0; j < povm.outcomes(); j++) {
        p[static_cast<Eigen::Index>(j)] = state.dot(povm[j] * state).real();
    }
    return finish_probabilities(std::move(p), povm.tol());
}

RealVector born(const Povm &povm, const ComplexMatrix &rho) {
    if (static_cast<std::size_t>(rho.rows()) != povm.dim()) {
        throw std::invalid_argument("born: density matrix dimension does not match POVM");
    }
    if (hermiticity_defect(rho) > kStateNormTol || std::abs(rho.trace() - Complex(1, 0)) > kStateNormTol ||
        herm_eig(hermitize(rho)).eigenvalues.minCoeff() < -kStateNormTol) {
        throw std::invalid_argument("born: density matrix is not normalized and positive");
    }
    RealVector p(static_cast<Eigen::Index>(povm.outcomes()));
    for (std::size_t j = 0; j < povm.outcomes(); j++) {
        p[static_cast<Eigen::Index>(j)] = hs_inner(povm[j], rho).real();
    }
    return finish_probabilities(std::move(p), povm.tol());
}

ComplexMatrix coarse_grain(std::span<const ComplexMatrix> elements, std::span<const std::size_t> subset) {
    if (elements.empty()) {
        throw std::invalid_argument("coarse_grain: no elements");
    }
    auto n = elements.front().rows();
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (std::size_t j : subset) {
        if (j >= elements.size()) {
            throw std::out_of_range("coarse_grain: outcome index " + std::to_string(j) + " out of range");
        }
        out += elements[j];
    }
    return out;
}

std::vector<ComplexMatrix> pauli_basis(std::size_t n_qubits) {
    ComplexMatrix paulis[4] = {ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 2),
                               ComplexMatrix::Zero(2, 2)};
    paulis[1] << 0, 1, 1, 0;
    paulis[2] << 0, Complex(0, -1), Complex(0, 1), 0;
    paulis[3] << 1, 0, 0, -1;
    std::vector<ComplexMatrix> out = {ComplexMatrix::Identity(1, 1)};
    for (std::size_t q = 0; q < n_qubits; q++) {
        std::vector<ComplexMatrix> next;
        for (const auto &prefix : out) {
            for (const auto &p : paulis) {
                next.push_back(kron(prefix, p));
            }
        }
        out = std::move(next);
    }
    double scale = 1 / std::sqrt(static_cast<double>(std::size_t{1} << n_qubits));
    for (auto &m : out) {
        m *= scale;
    }
    return out;
}

ComplexMatrix measurement_channel(const Povm &ideal, const Povm &estimated) {
    if (ideal.dim() != estimated.dim() || ideal.outcomes() != estimated.outcomes()) {
        throw std::invalid_argument("measurement_channel: POVM shapes differ");
    }
    std::size_t d = ideal.dim();
    std::size_t n = 0;
    while ((std::size_t{1} << n) < d) {
        n++;
    }
    if ((std::size_t{1} << n) != d) {
        throw std::invalid_argument("measurement_channel: dimension must be a power of two");
    }
    auto basis = pauli_basis(n);
    auto b = static_cast<Eigen::Index>(basis.size());
    auto l = static_cast<Eigen::Index>(ideal.outcomes());
    // Coefficients of every effect in the orthonormal Pauli basis.
    ComplexMatrix ideal_coeffs(b, l);
    ComplexMatrix est_coeffs(b, l);
    for (Eigen::Index a = 0; a < b; a++) {
        for (Eigen::Index j = 0; j < l; j++) {
            ideal_coeffs(a, j) = hs_inner(basis[a], ideal[j]);
            est_coeffs(a, j) = hs_inner(basis[a], estimated[j]);
        }
    }
    return ideal_coeffs * est_coeffs.adjoint();
}

}  // namespace qmt
