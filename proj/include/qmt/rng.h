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

#ifndef QMT_RNG_H
#define QMT_RNG_H

#include <cstdint>
#include <random>

#include "qmt/linalg.h"

namespace qmt {

/// Mixes a base seed with a stream index (SplitMix64 finalizer applied to
/// seed + golden-ratio * (stream + 1)). Used to derive per-trial seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Portable random source.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The distributions are implemented here rather than taken from
/// <random> because the standard leaves those implementation-defined; this
/// keeps (seed -> counts) bit-identical across standard libraries.
class Rng {
   public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    /// Uniform integer in [0, n). Unbiased (rejection on the top range).
    std::uint64_t uniform_index(std::uint64_t n);

    /// Standard normal via Box-Muller (one draw per call; the pair's second
    /// value is cached).
    double normal();

    /// Complex Gaussian with independent N(0, 1) real and imaginary parts.
    Complex complex_normal();

   private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0;
};

}  // namespace qmt

#endif
