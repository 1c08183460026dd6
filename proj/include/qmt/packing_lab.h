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

#ifndef QMT_PACKING_LAB_H
#define QMT_PACKING_LAB_H

#include <cstdint>
#include <vector>

#include "qmt/linalg.h"
#include "qmt/povm.h"
#include "qmt/rng.h"

namespace qmt {

/// Haar-random d x d unitary: QR of a complex Gaussian matrix with the
/// phases of R's diagonal moved into Q.
ComplexMatrix haar_unitary(std::size_t d, Rng &rng);
ComplexMatrix haar_unitary(std::size_t d, std::uint64_t seed);

enum class PackingKind { op_family, av_family };

/// Well-separated POVMs built from Haar unitaries around the fixed
/// projector P = diag(1, ..., 1, 0, ..., 0) of rank d/2.
struct PackingFamily {
    PackingKind kind = PackingKind::op_family;
    std::size_t dim = 0;
    /// op_family: number of flat effects (members have L + 2 outcomes).
    /// av_family: number of outcomes.
    std::size_t outcomes = 0;
    double epsilon = 0;
    ComplexMatrix projector;
    /// Per member: one unitary (op_family) or L/2 unitaries (av_family).
    std::vector<std::vector<ComplexMatrix>> unitaries;
    std::vector<Povm> members;
    /// Unitaries drawn, including rejected ones.
    std::size_t draws = 0;
    std::size_t rejections = 0;
};

/// (1/d) ||U P U^dagger - V P V^dagger||_1.
double projector_separation(const ComplexMatrix &u, const ComplexMatrix &v, const ComplexMatrix &projector);

/// Draws `members` POVMs. For op_family each candidate unitary is rejected
/// if its projector separation from an accepted one is below 1/4; at most
/// 10 * members draws are made before std::runtime_error.
PackingFamily build_packing(PackingKind kind, std::size_t d, std::size_t outcomes, double epsilon,
                            std::size_t members, std::uint64_t seed);

struct SeparationReport {
    double min_pairwise = 0;
    double threshold = 0;
    bool ok = false;
};

/// op_family: min pairwise d_op against eps/8. av_family: min pairwise
/// sqrt(d) d_av against eps/4.
SeparationReport verify_separation(const PackingFamily &family);

struct HaarMomentReport {
    double f2_mean = 0;
    double f2_target = 0;
    double f2_stderr = 0;
    double f4_mean = 0;
    double f4_target = 0;
    double f4_stderr = 0;
    /// (mean - target) / stderr for f^2 and f^4.
    double z_f2 = 0;
    double z_f4 = 0;
};

/// Monte Carlo moments of f = ||U P U^dagger - V P V^dagger||_F over
/// independent Haar pairs; targets E f^2 = d/2 and E f^4 = d^4/(4(d^2-1)).
HaarMomentReport haar_moment_check(std::size_t d, std::size_t trials, std::uint64_t seed);

}  // namespace qmt

#endif
