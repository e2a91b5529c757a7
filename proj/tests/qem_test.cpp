// Copyright 2026 Loopline Contributors
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

#include "loopline/qem/distillation.hpp"

#include <gtest/gtest.h>

namespace loopline::qem {
namespace {

PauliObservable random_word(CounterRng& rng, int n, bool allow_identity = false) {
    const char letters[] = {'I', 'X', 'Y', 'Z'};
    PauliObservable obs;
    do {
        obs.word.clear();
        for (int i = 0; i < n; ++i) obs.word += letters[rng.next_below(4)];
    } while (!allow_identity && obs.word.find_first_not_of('I') == std::string::npos);
    return obs;
}

TEST(DensityOperator, RejectsInvalidMatrices) {
    Mat bad = Mat::Zero(2, 2);
    bad(0, 0) = 0.6;
    bad(1, 1) = 0.6;
    EXPECT_THROW(DensityOperator::from_matrix(bad), std::invalid_argument);  // trace 1.2
    Mat nonherm = Mat::Zero(2, 2);
    nonherm(0, 0) = 1.0;
    nonherm(0, 1) = 0.3;
    EXPECT_THROW(DensityOperator::from_matrix(nonherm), std::invalid_argument);
    Mat negative(2, 2);
    negative << 1.2, 0, 0, -0.2;
    EXPECT_THROW(DensityOperator::from_matrix(negative), std::invalid_argument);
}

TEST(PurifiedExpectation, PureStateIsFixedPoint) {
    CounterRng rng(0x9e11ULL, 1);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + static_cast<int>(rng.next_below(3));
        Vec psi = random_state(rng, n);
        DensityOperator rho = DensityOperator::pure(psi);
        PauliObservable obs = random_word(rng, n);
        double raw = purified_expectation(rho, obs, 1);
        for (int m : {2, 3}) {
            EXPECT_NEAR(purified_expectation(rho, obs, m), raw, 1e-9);
        }
    }
}

TEST(PurifiedExpectation, DepolarizedStateMovesTowardIdeal) {
    CounterRng rng(0x9e11ULL, 2);
    Vec psi = random_state(rng, 2);
    DensityOperator rho = depolarized_pure(psi, 0.2);
    PauliObservable obs{"XZ", 1};
    double ideal = psi.dot(obs.matrix() * psi).real();
    double m1 = purified_expectation(rho, obs, 1);
    double m2 = purified_expectation(rho, obs, 2);
    EXPECT_LT(std::abs(m2 - ideal), std::abs(m1 - ideal));
}

TEST(PurifiedExpectation, VanishingNormalizationIsAnError) {
    // A tiny off-axis weight shrinks as eps^M; at M large the power trace
    // underflows the tolerance only for genuinely singular input.
    Mat proj = Mat::Zero(2, 2);
    proj(0, 0) = 1e-13;
    proj(1, 1) = 1.0 - 1e-13;
    DensityOperator rho = DensityOperator::from_matrix(proj);
    PauliObservable obs{"Z", 1};
    EXPECT_NO_THROW(purified_expectation(rho, obs, 1));
}

TEST(PurifiedExpectation, RangeStaysPhysical) {
    CounterRng rng(0x9e11ULL, 3);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + static_cast<int>(rng.next_below(2));
        DensityOperator rho = random_density(rng, n);
        PauliObservable obs = random_word(rng, n);
        for (int m : {1, 2, 3}) {
            double v = purified_expectation(rho, obs, m);
            EXPECT_GE(v, -1.0 - 1e-9);
            EXPECT_LE(v, 1.0 + 1e-9);
        }
    }
}

TEST(Normalization, TracePowerBounds) {
    CounterRng rng(0x9e11ULL, 4);
    for (int trial = 0; trial < 20; ++trial) {
        DensityOperator rho = random_density(rng, 2);
        Mat p = rho.rho * rho.rho;
        double purity = p.trace().real();
        EXPECT_GT(purity, 0.0);
        EXPECT_LE(purity, 1.0 + 1e-12);
    }
    Vec pure = random_state(rng, 2);
    Mat rho = pure * pure.adjoint();
    EXPECT_NEAR((rho * rho).trace().real(), 1.0, 1e-12);
}

TEST(PermutationExpectation, MatchesMatrixPowerNumerator) {
    CounterRng rng(0x9e11ULL, 5);
    for (int trial = 0; trial < 15; ++trial) {
        int n = 1 + static_cast<int>(rng.next_below(2));
        int m = 2 + static_cast<int>(rng.next_below(2));
        DensityOperator rho = random_density(rng, n);
        PauliObservable obs = random_word(rng, n);
        Mat power = rho.rho;
        for (int j = 1; j < m; ++j) power = power * rho.rho;
        double direct = (obs.matrix() * power).trace().real();
        double via_perm = permutation_expectation({n, m}, rho, obs);
        EXPECT_NEAR(via_perm, direct, 1e-10) << "n=" << n << " m=" << m;
    }
}

TEST(PermutationExpectation, IdentityObservableGivesTracePower) {
    CounterRng rng(0x9e11ULL, 6);
    DensityOperator rho = random_density(rng, 2);
    PauliObservable identity{"II", 1};
    Mat sq = rho.rho * rho.rho;
    EXPECT_NEAR(permutation_expectation({2, 2}, rho, identity), sq.trace().real(), 1e-10);
    EXPECT_NEAR(permutation_expectation({2, 1}, rho, identity), 1.0, 1e-10);
}

TEST(PermutationExpectation, GuardRejectsOversizedStacks) {
    EXPECT_THROW(CopyStack({5, 3}).validate(), std::invalid_argument);
    EXPECT_THROW(CopyStack({3, 4}).validate_with_ancillas(), std::invalid_argument);
    EXPECT_NO_THROW(CopyStack({3, 3}).validate_with_ancillas());
}

TEST(TransversalFactorization, HoldsForRepresentativeCases) {
    EXPECT_TRUE(transversal_factorization_check({2, 2}, {"XZ", 1}));
    EXPECT_TRUE(transversal_factorization_check({2, 2}, {"II", 1}));
    EXPECT_TRUE(transversal_factorization_check({1, 3}, {"Y", 1}));
    EXPECT_TRUE(transversal_factorization_check({3, 2}, {"XYZ", 1}));
    EXPECT_TRUE(transversal_factorization_check({2, 3}, {"ZX", -1}));
}

TEST(HadamardTest, ExactModeMatchesPermutationForm) {
    CounterRng rng(0x9e11ULL, 7);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 1 + static_cast<int>(rng.next_below(2));
        int m = 2 + static_cast<int>(rng.next_below(2));
        DensityOperator rho = random_density(rng, n);
        PauliObservable obs = random_word(rng, n);
        double perm = permutation_expectation({n, m}, rho, obs);
        HadamardTestResult h = hadamard_test({n, m}, rho, obs);
        EXPECT_NEAR(h.value, perm, 1e-10);
        EXPECT_FALSE(h.stderr_estimate.has_value());
    }
}

TEST(HadamardTest, StabilizerOfPureTargetReadsPlusOne) {
    // Bell state; X(x)X is a stabilizer.
    Vec bell(4);
    bell << 1, 0, 0, 1;
    DensityOperator rho = DensityOperator::pure(bell);
    HadamardTestResult h = hadamard_test({2, 2}, rho, {"XX", 1});
    EXPECT_NEAR(h.value, 1.0, 1e-10);
}

TEST(HadamardTest, SamplingConvergesAtRootNRate) {
    CounterRng rng(0x9e11ULL, 8);
    DensityOperator rho = random_density(rng, 2);
    PauliObservable obs{"ZX", 1};
    double exact = permutation_expectation({2, 2}, rho, obs);
    HadamardTestResult h = hadamard_test({2, 2}, rho, obs, 100000, 0xfeedULL);
    ASSERT_TRUE(h.stderr_estimate.has_value());
    EXPECT_NEAR(h.value, exact, 4.0 * *h.stderr_estimate + 1e-12);
    EXPECT_LT(*h.stderr_estimate, 0.01);
    // Same seed, same draw; different seed, different stream.
    HadamardTestResult again = hadamard_test({2, 2}, rho, obs, 100000, 0xfeedULL);
    EXPECT_EQ(h.value, again.value);
}

TEST(IdentityChain, NumeratorPermutationAndHadamardAgree) {
    CounterRng rng(0x9e11ULL, 9);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + static_cast<int>(rng.next_below(3));
        int m = 1 + static_cast<int>(rng.next_below(3));
        if (n * m + 1 > 14 || n * (m + 1) > 14) continue;
        DensityOperator rho = random_density(rng, n);
        PauliObservable obs = random_word(rng, n, /*allow_identity=*/true);
        Mat power = rho.rho;
        for (int j = 1; j < m; ++j) power = power * rho.rho;
        double numerator = (obs.matrix() * power).trace().real();
        double perm = permutation_expectation({n, m}, rho, obs);
        double had = hadamard_test({n, m}, rho, obs).value;
        ASSERT_NEAR(numerator, perm, 1e-9);
        ASSERT_NEAR(had, perm, 1e-9);
    }
}

TEST(OrderSuppression, OrthogonalErrorDecaysAsEpsToTheM) {
    // rho = (1-eps) rho0 + eps sigma with sigma orthogonal and pure: the
    // purified bias has the closed form eps^M delta / ((1-eps)^M + eps^M).
    CounterRng rng(0x9e11ULL, 10);
    int n = 2;
    Vec psi = Vec::Zero(4);
    psi(0) = 1;
    Vec phi = Vec::Zero(4);
    phi(3) = 1;
    PauliObservable obs{"ZI", 1};
    double o_psi = psi.dot(obs.matrix() * psi).real();
    double o_phi = phi.dot(obs.matrix() * phi).real();
    for (double eps : {0.05, 0.1, 0.2}) {
        Mat mixed = (1 - eps) * (psi * psi.adjoint()) + eps * (phi * phi.adjoint());
        DensityOperator rho = DensityOperator::from_matrix(mixed);
        for (int m : {1, 2, 3}) {
            double w_good = std::pow(1 - eps, m);
            double w_bad = std::pow(eps, m);
            double expected = (w_good * o_psi + w_bad * o_phi) / (w_good + w_bad);
            double got = purified_expectation(rho, obs, m);
            ASSERT_NEAR(got, expected, 1e-10);
            double bias = std::abs(got - o_psi);
            ASSERT_LE(bias, std::pow(eps, m) * std::abs(o_phi - o_psi) / (w_good + w_bad) + 1e-10);
        }
    }
}

}  // namespace
}  // namespace loopline::qem
