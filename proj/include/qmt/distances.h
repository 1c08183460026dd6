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

#ifndef QMT_DISTANCES_H
#define QMT_DISTANCES_H

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qmt/linalg.h"
#include "qmt/povm.h"

namespace qmt {

/// Largest L for which `d_op_exact` enumerates subsets.
inline constexpr std::size_t kMaxEnumeratedOutcomes = 24;

enum class DistanceKind { op_exact, op_lower, av, frob_sum, spec_sum };

std::string_view distance_kind_name(DistanceKind kind);

struct DistanceReport {
    double value = 0;
    DistanceKind kind = DistanceKind::op_exact;
    /// Maximizing outcome subset (0-based, ascending) for the op kinds.
    std::optional<std::vector<std::size_t>> witness;
    /// Unit eigenvector of sum_{k in witness} (E_k - F_k) for its eigenvalue
    /// of largest modulus.
    std::optional<ComplexVector> witness_state;
};

/// Operational distance max_x ||sum_{k in x} (E_k - F_k)|| by enumeration of
/// the outcome power set. With `complete` set (both arguments sum to the same
/// operator) only subsets excluding the last outcome are visited, because a
/// subset and its complement then have equal norm.
DistanceReport d_op_exact(std::span<const ComplexMatrix> e, std::span<const ComplexMatrix> f, bool complete);
DistanceReport d_op_exact(const Povm &e, const Povm &f);
DistanceReport d_op_exact(const Povm &e, const RawEstimate &f);

/// Lower bound on the operational distance from a sampled family of
/// subsets: all singletons, `n_subsets` uniform random subsets, and a
/// sign-aligned greedy subset refined by alternating maximization.
DistanceReport d_op_lower(std::span<const ComplexMatrix> e, std::span<const ComplexMatrix> f, std::size_t n_subsets,
                          std::uint64_t seed);

/// sqrt((1/2d) sum_i (||E_i - F_i||_F^2 + tr(E_i - F_i)^2)).
DistanceReport d_av(std::span<const ComplexMatrix> e, std::span<const ComplexMatrix> f);
DistanceReport d_av(const Povm &e, const Povm &f);

struct UpperSurrogates {
    /// sum_i ||E_i - F_i||_F.
    double frob_sum = 0;
    /// sum_i ||E_i - F_i|| (spectral); bounds d_op from above.
    double spec_sum = 0;
};

UpperSurrogates upper_surrogates(std::span<const ComplexMatrix> e, std::span<const ComplexMatrix> f);

}  // namespace qmt

#endif
