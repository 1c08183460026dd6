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

#include <gtest/gtest.h>

#include "qmt/distances.h"
#include "test_util.h"

using namespace qmt;

TEST(haar_unitary, unitary) {
    Rng rng(51);
    for (std::size_t d : {1, 2, 3, 8, 16}) {
        ComplexMatrix u = haar_unitary(d, rng);
        auto n = static_cast<Eigen::Index>(d);
        EXPECT_LE((u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm(), 1e-12);
    }
    ComplexMatrix scalar = haar_unitary(1, 7);
    EXPECT_NEAR(std::abs(scalar(0, 0)), 1, 1e-15);
    EXPECT_THROW(haar_unitary(0, 1), std::invalid_argument);
}

TEST(haar_unitary, first_moment) {
    Rng rng(52);
    const int trials = 10000;
    const double d = 4;
    double s = 0, s2 = 0;
    for (int t = 0; t < trials; t++) {
        double x = std::norm(haar_unitary(4, rng)(0, 0));
        s += x;
        s2 += x * x;
    }
    double mean = s / trials;
    double se = std::sqrt((s2 / trials - mean * mean) / trials);
    EXPECT_NEAR(mean, 1 / d, 3 * se);
}

TEST(haar_unitary, invariance) {
    // ||UPU^dagger - VPV^dagger||_F^2 has the same law when U -> WU.
    Rng rng(53);
    ComplexMatrix p = leading_projector(4);
    ComplexMatrix w = haar_unitary(4, rng);
    const int trials = 4000;
    double a = 0, b = 0, a2 = 0, b2 = 0;
    for (int t = 0; t < trials; t++) {
        ComplexMatrix u = haar_unitary(4, rng), v = haar_unitary(4, rng);
        double fa = (u * p * u.adjoint() - v * p * v.adjoint()).squaredNorm();
        ComplexMatrix wu = w * haar_unitary(4, rng);
        ComplexMatrix v2 = haar_unitary(4, rng);
        double fb = (wu * p * wu.adjoint() - v2 * p * v2.adjoint()).squaredNorm();
        a += fa;
        b += fb;
        a2 += fa * fa;
        b2 += fb * fb;
    }
    double ma = a / trials, mb = b / trials;
    double se = std::sqrt((a2 / trials - ma * ma + b2 / trials - mb * mb) / trials);
    EXPECT_NEAR(ma, mb, 3.5 * se);
}

TEST(build_packing, op_family_separated) {
    PackingFamily f = build_packing(PackingKind::op_family, 8, 2, 0.4, 20, 1);
    EXPECT_EQ(f.members.size(), 20u);
    EXPECT_EQ(f.unitaries.size(), 20u);
    for (const auto &m : f.members) {
        EXPECT_EQ(m.outcomes(), 4u);
        EXPECT_TRUE(validate(m.elements()).ok);
    }
    SeparationReport r = verify_separation(f);
    EXPECT_NEAR(r.threshold, 0.05, 1e-15);
    EXPECT_TRUE(r.ok) << r.min_pairwise;
    EXPECT_EQ(f.projector.trace().real(), 4);
}

TEST(build_packing, separation_chain) {
    // d_op = (eps/2) ||Delta|| >= (eps/2d) ||Delta||_1 >= eps/8 for accepted pairs.
    PackingFamily f = build_packing(PackingKind::op_family, 4, 1, 0.3, 8, 2);
    for (std::size_t a = 0; a < f.members.size(); a++) {
        for (std::size_t b = a + 1; b < f.members.size(); b++) {
            const ComplexMatrix &u = f.unitaries[a][0], &v = f.unitaries[b][0];
            ComplexMatrix delta = hermitize(u * f.projector * u.adjoint() - v * f.projector * v.adjoint());
            double op = d_op_exact(f.members[a], f.members[b]).value;
            EXPECT_NEAR(op, 0.15 * matrix_norm(delta, NormKind::spectral), 1e-9);
            EXPECT_GE(op, 0.15 * projector_separation(u, v, f.projector) - 1e-12);
            EXPECT_GE(projector_separation(u, v, f.projector), 0.25);
        }
    }
}

TEST(build_packing, errors) {
    EXPECT_THROW(build_packing(PackingKind::op_family, 3, 2, 0.4, 5, 1), std::invalid_argument);
    EXPECT_THROW(build_packing(PackingKind::op_family, 4, 2, 0.6, 5, 1), std::invalid_argument);
    EXPECT_THROW(build_packing(PackingKind::av_family, 4, 3, 0.4, 5, 1), std::invalid_argument);
    // A qubit cannot host this many well-separated projectors.
    EXPECT_THROW(build_packing(PackingKind::op_family, 2, 1, 0.4, 500, 1), std::runtime_error);
}

TEST(verify_separation, duplicated_member) {
    PackingFamily f = build_packing(PackingKind::op_family, 4, 2, 0.4, 1, 3);
    f.members.push_back(f.members[0]);
    f.unitaries.push_back(f.unitaries[0]);
    SeparationReport r = verify_separation(f);
    EXPECT_EQ(r.min_pairwise, 0);
    EXPECT_FALSE(r.ok);
    f.members.pop_back();
    EXPECT_THROW(verify_separation(f), std::invalid_argument);
}

TEST(build_packing, av_family_mostly_separated) {
    int ok = 0;
    for (std::uint64_t s = 0; s < 10; s++) {
        PackingFamily f = build_packing(PackingKind::av_family, 4, 4, 0.4, 10, derive_seed(77, s));
        for (const auto &m : f.members) {
            ComplexMatrix total = ComplexMatrix::Zero(4, 4);
            for (const auto &e : m.elements()) {
                total += e;
            }
            EXPECT_LE((total - ComplexMatrix::Identity(4, 4)).norm(), 1e-12);
        }
        ok += verify_separation(f).ok;
    }
    EXPECT_GE(ok, 9);
}

TEST(packing_members, born_marginals) {
    Rng rng(54);
    const std::size_t d = 4, flat = 3;
    const double eps = 0.4;
    ComplexMatrix p = leading_projector(d);
    ComplexVector rho = qmt::testing::random_state(d, rng);
    const int trials = 4000;
    double s = 0, s2 = 0, flat_sum = 0;
    for (int t = 0; t < trials; t++) {
        Povm m = packing_op_povm(haar_unitary(d, rng), p, eps, flat);
        RealVector probs = born(m, rho);
        double x = probs[flat];
        s += x;
        s2 += x * x;
        flat_sum += probs[0];
    }
    double mean = s / trials;
    double se = std::sqrt((s2 / trials - mean * mean) / trials);
    EXPECT_NEAR(mean, 0.25, 3 * se);
    EXPECT_NEAR(flat_sum / trials, 1.0 / (2 * flat), 1e-12);
}

TEST(haar_moment_check, targets) {
    HaarMomentReport r4 = haar_moment_check(4, 100, 1);
    EXPECT_EQ(r4.f2_target, 2.0);
    EXPECT_NEAR(r4.f4_target, 256.0 / 60, 1e-12);
    HaarMomentReport r2 = haar_moment_check(2, 10000, 2);
    EXPECT_EQ(r2.f2_target, 1.0);
    EXPECT_LE(std::abs(r2.z_f2), 3);
    EXPECT_LE(std::abs(r2.z_f4), 3);
    EXPECT_THROW(haar_moment_check(3, 1000, 1), std::invalid_argument);
    EXPECT_THROW(haar_moment_check(4, 99, 1), std::invalid_argument);
}
