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

#include "qmt/frames.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qmt {

namespace {

constexpr double kUnitNormTol = 1e-9;
constexpr double kDesignTol = 1e-10;

ComplexVector basis_vector(std::size_t d, std::size_t k) {
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d));
    v[static_cast<Eigen::Index>(k)] = 1;
    return v;
}

ComplexVector qubit(Complex a, Complex b) {
    ComplexVector v(2);
    v << a, b;
    return v;
}

std::vector<ComplexVector> normalized(std::vector<ComplexVector> states) {
    if (states.empty()) {
        throw std::invalid_argument("probe ensemble: no states given");
    }
    auto d = states.front().size();
    if (d == 0) {
        throw std::invalid_argument("probe ensemble: zero-dimensional state");
    }
    for (auto &s : states) {
        if (s.size() != d) {
            throw std::invalid_argument("probe ensemble: states have different dimensions");
        }
        if (!s.allFinite() || std::abs(s.norm() - 1) > kUnitNormTol) {
            throw std::invalid_argument("probe ensemble: state is not a unit vector");
        }
        s.normalize();
    }
    return states;
}

}  // namespace

bool is_prime(std::size_t n) {
    if (n < 2) {
        return false;
    }
    for (std::size_t k = 2; k * k <= n; k++) {
        if (n % k == 0) {
            return false;
        }
    }
    return true;
}

std::vector<ComplexVector> pauli6_states() {
    double h = std::numbers::sqrt2 / 2;
    Complex i(0, 1);
    return {
        qubit(1, 0), qubit(0, 1), qubit(h, h), qubit(h, -h), qubit(h, h * i), qubit(h, -h * i),
    };
}

std::vector<ComplexVector> sic_qubit_states() {
    const double r = 1 / std::sqrt(3.0);
    const double bloch[4][3] = {{r, r, r}, {r, -r, -r}, {-r, r, -r}, {-r, -r, r}};
    std::vector<ComplexVector> out;
    for (const auto &b : bloch) {
        double theta = std::acos(b[2]);
        double phi = std::atan2(b[1], b[0]);
        out.push_back(qubit(std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)));
    }
    return out;
}

std::vector<ComplexVector> mub_states(std::size_t d) {
    if (!is_prime(d)) {
        throw std::invalid_argument("mub: dimension " + std::to_string(d) + " is not prime");
    }
    std::vector<ComplexVector> out;
    for (std::size_t k = 0; k < d; k++) {
        out.push_back(basis_vector(d, k));
    }
    if (d == 2) {
        double h = std::numbers::sqrt2 / 2;
        Complex i(0, 1);
        out.push_back(qubit(h, h));
        out.push_back(qubit(h, -h));
        out.push_back(qubit(h, h * i));
        out.push_back(qubit(h, -h * i));
        return out;
    }
    double amp = 1 / std::sqrt(static_cast<double>(d));
    for (std::size_t a = 0; a < d; a++) {
        for (std::size_t b = 0; b < d; b++) {
            ComplexVector v(static_cast<Eigen::Index>(d));
            for (std::size_t l = 0; l < d; l++) {
                // Reduce the exponent mod d before converting to an angle.
                std::size_t e = (a * l * l + b * l) % d;
                double angle = 2 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(d);
                v[static_cast<Eigen::Index>(l)] = std::polar(amp, angle);
            }
            out.push_back(v);
        }
    }
    return out;
}

std::vector<ComplexMatrix> gell_mann_basis(std::size_t d) {
    auto n = static_cast<Eigen::Index>(d);
    std::vector<ComplexMatrix> out;
    out.push_back(ComplexMatrix::Identity(n, n));
    for (Eigen::Index j = 0; j < n; j++) {
        for (Eigen::Index k = j + 1; k < n; k++) {
            ComplexMatrix s = ComplexMatrix::Zero(n, n);
            s(j, k) = 1;
            s(k, j) = 1;
            out.push_back(s);
            ComplexMatrix a = ComplexMatrix::Zero(n, n);
            a(j, k) = Complex(0, -1);
            a(k, j) = Complex(0, 1);
            out.push_back(a);
        }
    }
    for (Eigen::Index l = 1; l < n; l++) {
        ComplexMatrix g = ComplexMatrix::Zero(n, n);
        double c = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
        for (Eigen::Index m = 0; m < l; m++) {
            g(m, m) = c;
        }
        g(l, l) = -c * static_cast<double>(l);
        out.push_back(g);
    }
    return out;
}

double design_deviation(std::span<const ComplexVector> states) {
    if (states.empty()) {
        throw std::invalid_argument("design_deviation: no states");
    }
    auto d = static_cast<std::size_t>(states.front().size());
    auto n = static_cast<Eigen::Index>(d);
    double scale = 1.0 / static_cast<double>(d * (d + 1));
    double weight = 1.0 / static_cast<double>(states.size());
    double worst = 0;
    for (const auto &x : gell_mann_basis(d)) {
        ComplexMatrix acc = ComplexMatrix::Zero(n, n);
        for (const auto &psi : states) {
            Complex w = psi.dot(x * psi);
            acc += (weight * w.real()) * outer(psi);
        }
        ComplexMatrix expected = (x + x.trace() * ComplexMatrix::Identity(n, n)) * scale;
        worst = std::max(worst, (acc - expected).norm());
    }
    return worst;
}

double design_check(const ProbeEnsemble &ensemble) {
    return design_deviation(ensemble.base_states());
}

ProbeEnsemble ProbeEnsemble::global(std::vector<ComplexVector> states) {
    ProbeEnsemble e;
    e.states_ = normalized(std::move(states));
    e.kind_ = EnsembleKind::global_2design;
    e.dim_ = static_cast<std::size_t>(e.states_.front().size());
    e.size_ = e.states_.size();
    if (e.dim_ > kDefaultDimensionCap) {
        throw std::invalid_argument("probe ensemble: dimension exceeds cap");
    }
    double dev = design_deviation(e.states_);
    if (dev > kDesignTol) {
        throw std::invalid_argument(
            "probe ensemble: states do not form a 2-design (deviation " + std::to_string(dev) + ")");
    }
    return e;
}

ProbeEnsemble ProbeEnsemble::local(std::vector<ComplexVector> qubit_states, std::size_t n_qubits) {
    if (n_qubits < 1) {
        throw std::invalid_argument("probe ensemble: need at least one qubit");
    }
    if (n_qubits >= 64 || (std::size_t{1} << n_qubits) > kDefaultDimensionCap) {
        throw std::invalid_argument("probe ensemble: 2^n exceeds dimension cap");
    }
    ProbeEnsemble e;
    e.states_ = normalized(std::move(qubit_states));
    if (e.states_.front().size() != 2) {
        throw std::invalid_argument("probe ensemble: local base states must be qubit states");
    }
    double dev = design_deviation(e.states_);
    if (dev > kDesignTol) {
        throw std::invalid_argument(
            "probe ensemble: per-qubit states do not form a 2-design (deviation " + std::to_string(dev) + ")");
    }
    e.kind_ = EnsembleKind::local_product;
    e.n_qubits_ = n_qubits;
    e.dim_ = std::size_t{1} << n_qubits;
    e.size_ = 1;
    for (std::size_t k = 0; k < n_qubits; k++) {
        e.size_ *= e.states_.size();
    }
    for (const auto &s : e.states_) {
        e.qubit_frames_.push_back(6.0 * outer(s) - 2.0 * ComplexMatrix::Identity(2, 2));
    }
    return e;
}

void ProbeEnsemble::check_index(std::uint64_t index) const {
    if (index >= size_) {
        throw std::out_of_range(
            "probe ensemble: index " + std::to_string(index) + " out of range (M = " + std::to_string(size_) + ")");
    }
}

std::vector<std::size_t> ProbeEnsemble::multi_index(std::uint64_t index) const {
    check_index(index);
    if (kind_ == EnsembleKind::global_2design) {
        return {static_cast<std::size_t>(index)};
    }
    std::vector<std::size_t> digits(n_qubits_);
    std::uint64_t m = states_.size();
    for (std::size_t k = n_qubits_; k-- > 0;) {
        digits[k] = static_cast<std::size_t>(index % m);
        index /= m;
    }
    return digits;
}

ComplexVector ProbeEnsemble::state(std::uint64_t index) const {
    check_index(index);
    if (kind_ == EnsembleKind::global_2design) {
        return states_[index];
    }
    auto digits = multi_index(index);
    ComplexVector v = states_[digits[0]];
    for (std::size_t k = 1; k < digits.size(); k++) {
        const ComplexVector &q = states_[digits[k]];
        ComplexVector next(v.size() * 2);
        for (Eigen::Index a = 0; a < v.size(); a++) {
            next[2 * a] = v[a] * q[0];
            next[2 * a + 1] = v[a] * q[1];
        }
        v = std::move(next);
    }
    return v;
}

ComplexMatrix ProbeEnsemble::frame_operator(std::uint64_t index) const {
    check_index(index);
    if (kind_ == EnsembleKind::global_2design) {
        auto n = static_cast<Eigen::Index>(dim_);
        double d = static_cast<double>(dim_);
        return d * (d + 1) * outer(states_[index]) - d * ComplexMatrix::Identity(n, n);
    }
    auto digits = multi_index(index);
    ComplexMatrix out = qubit_frames_[digits[0]];
    for (std::size_t k = 1; k < digits.size(); k++) {
        out = kron(out, qubit_frames_[digits[k]]);
    }
    return out;
}

ProbeEnsemble build_ensemble(const EnsembleSpec &spec) {
    using K = EnsembleSpec::Kind;
    switch (spec.kind) {
        case K::pauli6_product:
            return ProbeEnsemble::local(pauli6_states(), spec.n_qubits);
        case K::sic_qubit_product:
            return ProbeEnsemble::local(sic_qubit_states(), spec.n_qubits);
        case K::sic_qubit:
            return ProbeEnsemble::global(sic_qubit_states());
        case K::mub:
            return ProbeEnsemble::global(mub_states(spec.dim));
        case K::explicit_states:
            return ProbeEnsemble::global(spec.states);
    }
    throw std::invalid_argument("build_ensemble: unknown ensemble kind");
}

}  // namespace qmt
