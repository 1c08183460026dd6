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

#include "qmt/distances.h"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qmt/rng.h"

namespace qmt {

namespace {

std::vector<ComplexMatrix> differences(std::span<const ComplexMatrix> e, std::span<const ComplexMatrix> f) {
    if (e.size() != f.size() || e.empty()) {
        throw std::invalid_argument("distance: POVMs have different outcome counts");
    }
    std::vector<ComplexMatrix> out;
    out.reserve(e.size());
    for (std::size_t k = 0; k < e.size(); k++) {
        if (e[k].rows() != f[k].rows() || e[k].cols() != f[k].cols() || e[k].rows() != e[0].rows()) {
            throw std::invalid_argument("distance: POVM dimensions differ");
        }
        out.push_back(hermitize(e[k] - f[k]));
    }
    return out;
}

std::vector<std::size_t> mask_to_subset(std::uint64_t mask) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; mask != 0; k++, mask >>= 1) {
        if (mask & 1) {
            out.push_back(k);
        }
    }
    return out;
}

struct Peak {
    double norm = 0;
    ComplexVector vector;
    double sign = 1;
};

// Eigenvalue of largest modulus and its eigenvector.
Peak spectral_peak(const ComplexMatrix &a) {
    HermitianEig eig = herm_eig(a);
    Eigen::Index last = eig.eigenvalues.size() - 1;
    double lo = eig.eigenvalues[0];
    double hi = eig.eigenvalues[last];
    if (std::abs(lo) > std::abs(hi)) {
        return {std::abs(lo), eig.eigenvectors.col(0), -1.0};
    }
    return {std::abs(hi), eig.eigenvectors.col(last), 1.0};
}

void attach_witness(DistanceReport &report, const std::vector<ComplexMatrix> &delta, std::uint64_t mask) {
    report.witness = mask_to_subset(mask);
    ComplexMatrix sum = ComplexMatrix::Zero(delta[0].rows(), delta[0].cols());
    for (std::size_t k : *report.witness) {
        sum += delta[k];
    }
    report.witness_state = spectral_peak(sum).vector;
}

}  // namespace

std::string_view distance_kind_name(DistanceKind kind) {
    switch (kind) {
        case DistanceKind::op_exact:
            return "op_exact";
        case DistanceKind::op_lower:
            return "op_lower";
        case DistanceKind::av:
            return "av";
        case DistanceKind::frob_sum:
            return "frob_sum";
        case DistanceKind::spec_sum:
            return "spec_sum";
    }
    return "unknown";
}

DistanceReport d_op_exact(std::span<const ComplexMatrix> e, std::span<const ComplexMatrix> f, bool complete) {
    auto delta = differences(e, f);
    std::size_t l = delta.size();
    if (l > kMaxEnumeratedOutcomes) {
        throw std::invalid_argument(
            "d_op_exact: " + std::to_string(l) + " outcomes exceed the enumeration cap of " +
            std::to_string(kMaxEnumeratedOutcomes) + "; use d_op_lower");
    }
    // Gray-code walk over subsets of the first `bits` outcomes; each step
    // toggles one outcome in the running sum.
    std::size_t bits = complete ? l - 1 : l;
    std::uint64_t count = std::uint64_t{1} << bits;
    ComplexMatrix running = ComplexMatrix::Zero(delta[0].rows(), delta[0].cols());
    double best = 0;
    std::uint64_t best_mask = 0;
    std::uint64_t gray = 0;
    for (std::uint64_t step = 1; step < count; step++) {
        auto flip = static_cast<std::size_t>(std::countr_zero(step));
        gray ^= std::uint64_t{1} << flip;
        if (gray & (std::uint64_t{1} << flip)) {
            running += delta[flip];
        } else {
            running -= delta[flip];
        }
        double norm = matrix_norm(hermitize(running), NormKind::spectral);
        if (norm > best) {
            best = norm;
            best_mask = gray;
        }
    }
    DistanceReport report;
    report.kind = DistanceKind::op_exact;
    report.value = best;
    if (best > 0) {
        attach_witness(report, delta, best_mask);
    } else {
        report.witness = std::vector<std::size_t>{};
    }
    return report;
}

DistanceReport d_op_exact(const Povm &e, const Povm &f) {
    return d_op_exact(e.elements(), f.elements(), true);
}

DistanceReport d_op_exact(const Povm &e, const RawEstimate &f) {
    return d_op_exact(e.elements(), f.elements(), false);
}

DistanceReport d_op_lower(std::span<const ComplexMatrix> e, std::span<const ComplexMatrix> f, std::size_t n_subsets,
                          std::uint64_t seed) {
    if (n_subsets < 1) {
        throw std::invalid_argument("d_op_lower: n_subsets must be positive");
    }
    auto delta = differences(e, f);
    std::size_t l = delta.size();
    auto n = delta[0].rows();

    double best = 0;
    std::vector<std::size_t> best_subset;
    auto consider = [&](const std::vector<std::size_t> &subset) {
        ComplexMatrix sum = ComplexMatrix::Zero(n, n);
        for (std::size_t k : subset) {
            sum += delta[k];
        }
        Peak peak = spectral_peak(sum);
        if (peak.norm > best) {
            best = peak.norm;
            best_subset = subset;
        }
        return peak;
    };

    for (std::size_t k = 0; k < l; k++) {
        consider({k});
    }

    Rng rng(seed);
    for (std::size_t s = 0; s < n_subsets; s++) {
        std::vector<std::size_t> subset;
        for (std::size_t k = 0; k < l; k++) {
            if (rng.next_u64() >> 63) {
                subset.push_back(k);
            }
        }
        consider(subset);
    }

    // Start from the outcomes whose difference has positive trace, then
    // repeatedly keep the outcomes aligned with the current peak direction.
    std::vector<std::size_t> greedy;
    for (std::size_t k = 0; k < l; k++) {
        if (delta[k].trace().real() > 0) {
            greedy.push_back(k);
        }
    }
    for (int round = 0; round < 2 * static_cast<int>(l) + 2; round++) {
        Peak peak = consider(greedy);
        if (peak.norm == 0) {
            break;
        }
        std::vector<std::size_t> next;
        for (std::size_t k = 0; k < l; k++) {
            if (peak.sign * peak.vector.dot(delta[k] * peak.vector).real() > 0) {
                next.push_back(k);
            }
        }
        if (next == greedy) {
            break;
        }
        greedy = std::move(next);
    }

    DistanceReport report;
    report.kind = DistanceKind::op_lower;
    report.value = best;
    report.witness = best_subset;
    if (best > 0) {
        ComplexMatrix sum = ComplexMatrix::Zero(n, n);
        for (std::size_t k : best_subset) {
            sum += delta[k];
        }
        report.witness_state = spectral_peak(sum).vector;
    }
    return report;
}

DistanceReport d_av(std::span<const ComplexMatrix> e, std::span<const ComplexMatrix> f) {
    auto delta = differences(e, f);
    double d = static_cast<double>(delta[0].rows());
    double total = 0;
    for (const auto &x : delta) {
        double tr = x.trace().real();
        total += x.squaredNorm() + tr * tr;
    }
    DistanceReport report;
    report.kind = DistanceKind::av;
    report.value = std::sqrt(total / (2 * d));
    return report;
}

DistanceReport d_av(const Povm &e, const Povm &f) {
    return d_av(e.elements(), f.elements());
}

UpperSurrogates upper_surrogates(std::span<const ComplexMatrix> e, std::span<const ComplexMatrix> f) {
    UpperSurrogates out;
    for (const auto &x : differences(e, f)) {
        out.frob_sum += x.norm();
        out.spec_sum += matrix_norm(x, NormKind::spectral);
    }
    return out;
}

}  // namespace qmt
