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

#include <gtest/gtest.h>

#include "qmt/packing_lab.h"
#include "test_util.h"

using namespace qmt;

namespace {

// max over all 2^L subsets, spectral norms from Eigen's solver.
double brute_force_op(const std::vector<ComplexMatrix> &e, const std::vector<ComplexMatrix> &f) {
    double best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << e.size()); mask++) {
        ComplexMatrix acc = ComplexMatrix::Zero(e[0].rows(), e[0].cols());
        for (std::size_t k = 0; k < e.size(); k++) {
            if (mask >> k & 1) {
                acc += e[k] - f[k];
            }
        }
        best = std::max(best, qmt::testing::eigen_spectral(acc));
    }
    return best;
}

Povm x_basis() {
    ComplexMatrix h(2, 2);
    h << 1, 1, 1, -1;
    return rotated_povm(h / std::sqrt(2.0));
}

}  // namespace

TEST(d_op_exact, identical) {
    Povm e = random_povm(3, 4, 1);
    DistanceReport r = d_op_exact(e, e);
    EXPECT_EQ(r.value, 0);
    EXPECT_EQ(r.kind, DistanceKind::op_exact);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_TRUE(r.witness->empty());
}

TEST(d_op_exact, z_versus_x) {
    DistanceReport r = d_op_exact(computational_povm(2), x_basis());
    EXPECT_NEAR(r.value, 0.7071067811865476, 1e-12);
    UpperSurrogates s = upper_surrogates(computational_povm(2).elements(), x_basis().elements());
    EXPECT_NEAR(s.spec_sum, std::sqrt(2.0), 1e-12);
}

TEST(d_op_exact, depolarized_qubit) {
    for (double p : {0.05, 0.1, 0.3}) {
        Povm c = computational_povm(2);
        Povm n = depolarize(c, p);
        EXPECT_NEAR(d_op_exact(c, n).value, p / 2, 1e-12);
        EXPECT_NEAR(d_av(c, n).value, p / 2, 1e-12);
    }
}

TEST(d_op_exact, matches_brute_force) {
    Rng rng(41);
    for (int t = 0; t < 30; t++) {
        std::size_t d = 2 + rng.uniform_index(3);
        std::size_t l = 2 + rng.uniform_index(6);
        Povm e = random_povm(d, l, rng.next_u64());
        Povm f = random_povm(d, l, rng.next_u64());
        EXPECT_NEAR(d_op_exact(e, f).value, brute_force_op(e.elements(), f.elements()), 1e-10);

        // Raw second argument: full enumeration, no complement halving.
        std::vector<ComplexMatrix> raw;
        for (std::size_t j = 0; j < l; j++) {
            raw.push_back(f[j] + 0.1 * qmt::testing::random_hermitian(d, rng));
        }
        DistanceReport r = d_op_exact(e, RawEstimate(raw));
        EXPECT_NEAR(r.value, brute_force_op(e.elements(), raw), 1e-10);
    }
}

TEST(d_op_exact, witness_and_complement) {
    Rng rng(42);
    for (int t = 0; t < 20; t++) {
        Povm e = random_povm(3, 5, rng.next_u64());
        Povm f = random_povm(3, 5, rng.next_u64());
        DistanceReport r = d_op_exact(e, f);
        ASSERT_TRUE(r.witness && r.witness_state);
        std::vector<std::size_t> complement;
        for (std::size_t k = 0; k < 5; k++) {
            if (std::find(r.witness->begin(), r.witness->end(), k) == r.witness->end()) {
                complement.push_back(k);
            }
        }
        ComplexMatrix in = coarse_grain(e.elements(), *r.witness) - coarse_grain(f.elements(), *r.witness);
        ComplexMatrix out = coarse_grain(e.elements(), complement) - coarse_grain(f.elements(), complement);
        EXPECT_NEAR(matrix_norm(in, NormKind::spectral), r.value, 1e-12);
        EXPECT_NEAR(matrix_norm(out, NormKind::spectral), r.value, 1e-12);
        const ComplexVector &v = *r.witness_state;
        EXPECT_NEAR(std::abs(v.dot(in * v)), r.value, 1e-10);
    }
}

TEST(d_op_exact, errors) {
    EXPECT_THROW(d_op_exact(computational_povm(2), computational_povm(3)), std::invalid_argument);
    EXPECT_THROW(d_op_exact(computational_povm(2), sic_qubit_povm()), std::invalid_argument);
    Povm big = computational_povm(25);
    EXPECT_THROW(d_op_exact(big, big), std::invalid_argument);
}

// State form: total variation of outcome distributions for a state.
TEST(d_op_exact, state_form_is_a_lower_bound_attained_by_witness) {
    Rng rng(43);
    for (int t = 0; t < 20; t++) {
        Povm e = random_povm(2, 3, rng.next_u64());
        Povm f = random_povm(2, 3, rng.next_u64());
        DistanceReport r = d_op_exact(e, f);
        auto tv = [&](const ComplexMatrix &rho) {
            return 0.5 * (born(e, rho) - born(f, rho)).cwiseAbs().sum();
        };
        for (int k = 0; k < 50; k++) {
            EXPECT_LE(tv(qmt::testing::random_density(2, rng)), r.value + 1e-12);
        }
        ComplexMatrix top = outer(*r.witness_state);
        EXPECT_NEAR(tv(top), r.value, 1e-9);
    }
}

TEST(d_op_lower, dominated_by_exact) {
    Rng rng(44);
    for (int t = 0; t < 30; t++) {
        std::size_t l = 2 + rng.uniform_index(11);
        Povm e = random_povm(2, l, rng.next_u64());
        Povm f = random_povm(2, l, rng.next_u64());
        DistanceReport lower = d_op_lower(e.elements(), f.elements(), 16, rng.next_u64());
        DistanceReport exact = d_op_exact(e, f);
        EXPECT_EQ(lower.kind, DistanceKind::op_lower);
        EXPECT_LE(lower.value, exact.value + 1e-12);
        EXPECT_GE(lower.value, 0.5 * exact.value);
    }
    Povm e = random_povm(3, 4, 9);
    EXPECT_EQ(d_op_lower(e.elements(), e.elements(), 8, 1).value, 0);
    EXPECT_THROW(d_op_lower(e.elements(), e.elements(), 0, 1), std::invalid_argument);
}

TEST(d_op_lower, packing_pair_singleton_witness) {
    Rng rng(45);
    const double eps = 0.4;
    for (std::size_t d : {2, 4, 8}) {
        ComplexMatrix p = leading_projector(d);
        ComplexMatrix u = haar_unitary(d, rng), v = haar_unitary(d, rng);
        Povm eu = packing_op_povm(u, p, eps, 2);
        Povm ev = packing_op_povm(v, p, eps, 2);
        double target = eps / 2 * qmt::testing::eigen_spectral(u * p * u.adjoint() - v * p * v.adjoint());
        EXPECT_GE(d_op_lower(eu.elements(), ev.elements(), 1, 3).value, target - 1e-12);
    }
}

TEST(d_op_lower, large_outcome_count) {
    Povm e = random_povm(2, 40, 1);
    Povm f = random_povm(2, 40, 2);
    DistanceReport r = d_op_lower(e.elements(), f.elements(), 64, 5);
    EXPECT_GT(r.value, 0);
    EXPECT_LE(r.value, upper_surrogates(e.elements(), f.elements()).spec_sum);
}

TEST(d_av, packing_pair_closed_form) {
    Rng rng(46);
    const double eps = 0.3;
    for (std::size_t d : {2, 4, 6}) {
        ComplexMatrix p = leading_projector(d);
        ComplexMatrix u = haar_unitary(d, rng), v = haar_unitary(d, rng);
        double delta2 = (u * p * u.adjoint() - v * p * v.adjoint()).squaredNorm();
        double expected = std::sqrt(eps * eps / (4 * static_cast<double>(d)) * delta2);
        EXPECT_NEAR(d_av(packing_op_povm(u, p, eps, 3), packing_op_povm(v, p, eps, 3)).value, expected, 1e-12);
    }
}

TEST(upper_surrogates, identical_is_zero) {
    Povm e = random_povm(3, 3, 4);
    UpperSurrogates s = upper_surrogates(e.elements(), e.elements());
    EXPECT_EQ(s.frob_sum, 0);
    EXPECT_EQ(s.spec_sum, 0);
}

TEST(metric_properties, axioms_and_ordering) {
    Rng rng(47);
    for (int t = 0; t < 200; t++) {
        std::size_t d = 2 + rng.uniform_index(2);
        std::size_t l = 2 + rng.uniform_index(4);
        Povm a = random_povm(d, l, rng.next_u64());
        Povm b = random_povm(d, l, rng.next_u64());
        Povm c = random_povm(d, l, rng.next_u64());
        double ab = d_op_exact(a, b).value, bc = d_op_exact(b, c).value, ac = d_op_exact(a, c).value;
        EXPECT_LE(ac, ab + bc + 1e-10);
        EXPECT_NEAR(ab, d_op_exact(b, a).value, 1e-12);
        EXPECT_GE(ab, 0);
        EXPECT_LE(ab, 1 + 1e-12);
        double vab = d_av(a, b).value, vbc = d_av(b, c).value, vac = d_av(a, c).value;
        EXPECT_LE(vac, vab + vbc + 1e-10);
        EXPECT_NEAR(vab, d_av(b, a).value, 1e-12);
        UpperSurrogates s = upper_surrogates(a.elements(), b.elements());
        EXPECT_LE(ab, s.spec_sum + 1e-12);
        // tr(X)^2 <= d ||X||_F^2
        double dd = static_cast<double>(d);
        EXPECT_LE(vab, std::sqrt((1 + dd) / (2 * dd)) * s.frob_sum + 1e-12);
    }
}

TEST(metric_properties, av_can_exceed_op) {
    // E = (I, 0), F = ((1-c) I, c I): d_op = c, d_av = c sqrt(d + 1).
    const double c = 0.2;
    for (std::size_t d : {1, 2, 4}) {
        auto n = static_cast<Eigen::Index>(d);
        ComplexMatrix id = ComplexMatrix::Identity(n, n);
        Povm e({id, ComplexMatrix::Zero(n, n)});
        Povm f({(1 - c) * id, c * id});
        EXPECT_NEAR(d_op_exact(e, f).value, c, 1e-12);
        EXPECT_NEAR(d_av(e, f).value, c * std::sqrt(d + 1.0), 1e-12);
    }
}

TEST(distance_kind_name, names) {
    EXPECT_EQ(distance_kind_name(DistanceKind::op_exact), "op_exact");
    EXPECT_EQ(distance_kind_name(DistanceKind::spec_sum), "spec_sum");
}
