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

#include "qmt/packing_lab.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qmt/distances.h"

namespace qmt {

ComplexMatrix haar_unitary(std::size_t d, Rng &rng) {
    if (d < 1) {
        throw std::invalid_argument("haar_unitary: d must be positive");
    }
    auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix g(n, n);
    for (Eigen::Index j = 0; j < n; j++) {
        for (Eigen::Index i = 0; i < n; i++) {
            g(i, j) = rng.complex_normal();
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix &r = qr.matrixQR();
    for (Eigen::Index k = 0; k < n; k++) {
        Complex rkk = r(k, k);
        double mag = std::abs(rkk);
        q.col(k) *= mag > 0 ? rkk / mag : Complex(1, 0);
    }
    return q;
}

ComplexMatrix haar_unitary(std::size_t d, std::uint64_t seed) {
    Rng rng(seed);
    return haar_unitary(d, rng);
}

double projector_separation(const ComplexMatrix &u, const ComplexMatrix &v, const ComplexMatrix &projector) {
    ComplexMatrix diff = hermitize(u * projector * u.adjoint() - v * projector * v.adjoint());
    return matrix_norm(diff, NormKind::trace) / static_cast<double>(u.rows());
}

PackingFamily build_packing(PackingKind kind, std::size_t d, std::size_t outcomes, double epsilon,
                            std::size_t members, std::uint64_t seed) {
    if (d == 0 || d % 2 != 0) {
        throw std::invalid_argument("build_packing: dimension must be even");
    }
    if (!(epsilon > 0 && epsilon <= 0.5)) {
        throw std::invalid_argument("build_packing: epsilon must lie in (0, 1/2]");
    }
    if (members < 1) {
        throw std::invalid_argument("build_packing: need at least one member");
    }
    if (kind == PackingKind::av_family && (outcomes < 2 || outcomes % 2 != 0)) {
        throw std::invalid_argument("build_packing: av_family requires an even outcome count");
    }
    if (kind == PackingKind::op_family && outcomes < 1) {
        throw std::invalid_argument("build_packing: op_family requires at least one flat outcome");
    }

    PackingFamily family;
    family.kind = kind;
    family.dim = d;
    family.outcomes = outcomes;
    family.epsilon = epsilon;
    family.projector = leading_projector(d);

    Rng rng(seed);
    if (kind == PackingKind::av_family) {
        for (std::size_t m = 0; m < members; m++) {
            std::vector<ComplexMatrix> us;
            for (std::size_t k = 0; k < outcomes / 2; k++) {
                us.push_back(haar_unitary(d, rng));
                family.draws++;
            }
            family.members.push_back(packing_av_povm(us, family.projector, epsilon));
            family.unitaries.push_back(std::move(us));
        }
        return family;
    }

    std::size_t budget = 10 * members;
    while (family.members.size() < members) {
        if (family.draws >= budget) {
            throw std::runtime_error(
                "build_packing: only " + std::to_string(family.members.size()) + " of " + std::to_string(members) +
                " members accepted within " + std::to_string(budget) + " draws");
        }
        ComplexMatrix u = haar_unitary(d, rng);
        family.draws++;
        bool separated = std::all_of(family.unitaries.begin(), family.unitaries.end(), [&](const auto &accepted) {
            return projector_separation(u, accepted.front(), family.projector) >= 0.25;
        });
        if (!separated) {
            family.rejections++;
            continue;
        }
        family.members.push_back(packing_op_povm(u, family.projector, epsilon, outcomes));
        family.unitaries.push_back({std::move(u)});
    }
    return family;
}

SeparationReport verify_separation(const PackingFamily &family) {
    if (family.members.size() < 2) {
        throw std::invalid_argument("verify_separation: need at least two members");
    }
    SeparationReport report;
    report.min_pairwise = std::numeric_limits<double>::infinity();
    double root_d = std::sqrt(static_cast<double>(family.dim));
    for (std::size_t a = 0; a < family.members.size(); a++) {
        for (std::size_t b = a + 1; b < family.members.size(); b++) {
            double dist = family.kind == PackingKind::op_family
                              ? d_op_exact(family.members[a], family.members[b]).value
                              : root_d * d_av(family.members[a], family.members[b]).value;
            report.min_pairwise = std::min(report.min_pairwise, dist);
        }
    }
    report.threshold = family.kind == PackingKind::op_family ? family.epsilon / 8 : family.epsilon / 4;
    report.ok = report.min_pairwise >= report.threshold;
    return report;
}

HaarMomentReport haar_moment_check(std::size_t d, std::size_t trials, std::uint64_t seed) {
    if (d == 0 || d % 2 != 0) {
        throw std::invalid_argument("haar_moment_check: dimension must be even");
    }
    if (trials < 100) {
        throw std::invalid_argument("haar_moment_check: need at least 100 trials");
    }
    ComplexMatrix p = leading_projector(d);
    Rng rng(seed);
    double s2 = 0, s4 = 0, s8 = 0;
    for (std::size_t t = 0; t < trials; t++) {
        ComplexMatrix u = haar_unitary(d, rng);
        ComplexMatrix v = haar_unitary(d, rng);
        double f2 = (u * p * u.adjoint() - v * p * v.adjoint()).squaredNorm();
        double f4 = f2 * f2;
        s2 += f2;
        s4 += f4;
        s8 += f4 * f4;
    }
    double n = static_cast<double>(trials);
    double dd = static_cast<double>(d);
    HaarMomentReport r;
    r.f2_mean = s2 / n;
    r.f4_mean = s4 / n;
    // Sample variances of f^2 and f^4 (f^4 squared is f^8).
    double var2 = (s4 - n * r.f2_mean * r.f2_mean) / (n - 1);
    double var4 = (s8 - n * r.f4_mean * r.f4_mean) / (n - 1);
    r.f2_stderr = std::sqrt(std::max(var2, 0.0) / n);
    r.f4_stderr = std::sqrt(std::max(var4, 0.0) / n);
    r.f2_target = dd / 2;
    r.f4_target = dd * dd * dd * dd / (4 * (dd * dd - 1));
    r.z_f2 = (r.f2_mean - r.f2_target) / r.f2_stderr;
    r.z_f4 = (r.f4_mean - r.f4_target) / r.f4_stderr;
    return r;
}

}  // namespace qmt
