#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "crossbar/analysis.hpp"
#include "crossbar/matrixgen.hpp"

using namespace crossbar;

namespace {

// Full 2-D enumeration over every feasible (t_L, t_R); ties keep the
// smaller t_L, then the smaller t_R.
RepetitionChoice brute_force_repetitions(std::span<const double> s, Index m, Index n, Index k,
                                         const NoiseSpec& noise, double sigma_b_sq) {
    std::optional<RepetitionChoice> best;
    for (Index tl = 1; tl * m * k + n * k <= m * n; ++tl)
        for (Index tr = 1; tl * m * k + tr * n * k <= m * n; ++tr) {
            const auto e = two_step_error_analytic(s, m, n, k, {tl, tr}, noise.sigma_L_sq,
                                                   noise.sigma_R_sq, sigma_b_sq);
            if (!best || e.total < best->breakdown.total) best = RepetitionChoice{{tl, tr}, e};
        }
    return *best;
}

std::vector<double> random_profile(std::mt19937_64& gen, Index r) {
    std::uniform_real_distribution<double> u(0.1, 10.0);
    std::vector<double> s(static_cast<std::size_t>(r));
    for (auto& v : s) v = u(gen);
    std::sort(s.rbegin(), s.rend());
    return s;
}

}  // namespace

TEST(BaselineErrorAnalytic, Substitution) {
    EXPECT_EQ(baseline_error_analytic(1, 1, 1.0, 1.0), 1.0);
    EXPECT_NEAR(baseline_error_analytic(100, 100, 0.05, 3.0), 1500.0, 1e-9);
    EXPECT_NEAR(baseline_error_analytic(7, 20, 0.3, 2.0), 2.0 * baseline_error_analytic(7, 10, 0.3, 2.0), 1e-12);
    EXPECT_THROW(baseline_error_analytic(0, 3, 0.1, 1.0), DimensionError);
}

TEST(TwoStepErrorAnalytic, HandSubstitution4x4) {
    const std::vector<double> s{2.0};
    const auto e = two_step_error_analytic(s, 4, 4, 1, {2, 2}, 0.05, 0.05, 3.0);
    EXPECT_EQ(e.truncation, 0.0);
    EXPECT_NEAR(e.stage1_noise, 0.6, 1e-12);
    EXPECT_NEAR(e.stage2_noise, 0.6, 1e-12);
    EXPECT_NEAR(e.accumulated, 0.03, 1e-12);
    EXPECT_NEAR(e.total, 1.23, 1e-12);
    EXPECT_EQ(e.total, e.truncation + e.stage1_noise + e.stage2_noise + e.accumulated);
}

TEST(TwoStepErrorAnalytic, NoiselessIsPureTruncation) {
    const auto s = harmonic_singulars(10.0, 16);
    for (Index k = 1; k <= 16; ++k) {
        const auto e = two_step_error_analytic(s, 100, 100, k, {1, 1}, 0.0, 0.0, 3.0);
        EXPECT_EQ(e.total, e.truncation);
        EXPECT_NEAR(e.truncation, 3.0 * tail_sum_sq(s, k), 1e-12 * std::max(1.0, e.truncation));
    }
}

TEST(TwoStepErrorAnalytic, FullRankVanishesAsRepetitionsGrow) {
    const std::vector<double> s{3.0, 2.0, 1.0};
    double previous = std::numeric_limits<double>::infinity();
    for (Index t : {1, 2, 4, 8, 16, 64, 256, 4096}) {
        const double total = two_step_error_analytic(s, 8, 8, 3, {t, t}, 0.05, 0.05, 3.0).total;
        EXPECT_LT(total, previous);
        previous = total;
    }
    EXPECT_LT(previous, 1e-2);
}

TEST(TwoStepErrorAnalytic, StrictlyMonotoneInRepetitionsAndRank) {
    std::mt19937_64 gen(4);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = random_profile(gen, 6);
        for (Index t = 1; t < 6; ++t) {
            const auto a = two_step_error_analytic(s, 12, 9, 3, {t, 2}, 0.05, 0.07, 2.0);
            const auto b = two_step_error_analytic(s, 12, 9, 3, {t + 1, 2}, 0.05, 0.07, 2.0);
            const auto c = two_step_error_analytic(s, 12, 9, 3, {2, t + 1}, 0.05, 0.07, 2.0);
            const auto d = two_step_error_analytic(s, 12, 9, 3, {2, t}, 0.05, 0.07, 2.0);
            EXPECT_LT(b.total, a.total);
            EXPECT_LT(c.total, d.total);
        }
        for (Index k = 1; k < 6; ++k)
            EXPECT_LE(two_step_error_analytic(s, 12, 9, k + 1, {1, 1}, 0.05, 0.07, 2.0).truncation,
                      two_step_error_analytic(s, 12, 9, k, {1, 1}, 0.05, 0.07, 2.0).truncation);
    }
}

TEST(TwoStepErrorAnalytic, RejectsBadArguments) {
    const std::vector<double> s{1.0};
    EXPECT_THROW(two_step_error_analytic(s, 4, 4, 1, {0, 1}, 0.1, 0.1, 1.0), DomainError);
    EXPECT_THROW(two_step_error_analytic(s, 4, 4, 0, {1, 1}, 0.1, 0.1, 1.0), DomainError);
    EXPECT_THROW(two_step_error_analytic(s, 4, 4, 5, {1, 1}, 0.1, 0.1, 1.0), DomainError);
}

TEST(BudgetFeasible, Arithmetic) {
    EXPECT_TRUE(budget_feasible(100, 100, 16, 3, 3));
    EXPECT_FALSE(budget_feasible(100, 100, 16, 4, 4));
    for (Index n : {2, 5, 10, 64}) EXPECT_FALSE(budget_feasible(n, n, n, 1, 1));
}

TEST(OptimizeRepetitions, SymmetricSquareConfigsSplitEvenly) {
    const auto s = harmonic_singulars(10.0, 16);
    const NoiseSpec noise{0.05, 0.05, 0.05, Distribution::gaussian};
    for (Index k = 1; k <= 16; ++k) {
        const auto c = optimize_repetitions(s, 100, 100, k, noise, 3.0);
        EXPECT_LE(std::abs(c.reps.left - c.reps.right), 1) << "k=" << k;
        EXPECT_TRUE(budget_feasible(100, 100, k, c.reps.left, c.reps.right));
        const auto ref = brute_force_repetitions(s, 100, 100, k, noise, 3.0);
        EXPECT_EQ(c.reps, ref.reps);
    }
}

TEST(OptimizeRepetitions, BoundaryAndInfeasibleRanks) {
    const auto s = harmonic_singulars(10.0, 60);
    const NoiseSpec noise{0.05, 0.05, 0.05, Distribution::gaussian};
    const auto c = optimize_repetitions(s, 100, 100, 50, noise, 3.0);
    EXPECT_EQ(c.reps, (Repetitions{1, 1}));
    EXPECT_THROW(optimize_repetitions(s, 100, 100, 51, noise, 3.0), InfeasibleError);
}

TEST(OptimizeRepetitions, MatchesBruteForceOnRandomConfigs) {
    std::mt19937_64 gen(2718);
    std::uniform_int_distribution<Index> dim(4, 40);
    std::uniform_real_distribution<double> var(0.0, 0.2);
    int checked = 0;
    while (checked < 50) {
        const Index m = dim(gen), n = dim(gen);
        std::uniform_int_distribution<Index> kd(1, std::min(m, n));
        const Index k = kd(gen);
        if (!budget_feasible(m, n, k, 1, 1)) continue;
        const auto s = random_profile(gen, std::min(m, n));
        const NoiseSpec noise{0.0, var(gen), var(gen), Distribution::gaussian};
        const auto c = optimize_repetitions(s, m, n, k, noise, 1.5);
        const auto ref = brute_force_repetitions(s, m, n, k, noise, 1.5);
        EXPECT_EQ(c.reps, ref.reps) << m << "x" << n << " k=" << k;
        EXPECT_EQ(c.breakdown.total, ref.breakdown.total);
        ++checked;
    }
}

TEST(OptimizeRepetitions, ZeroStageTwoNoiseKeepsSingleRightArray) {
    const auto s = harmonic_singulars(2.0, 4);
    const NoiseSpec noise{0.0, 0.05, 0.0, Distribution::gaussian};
    const auto c = optimize_repetitions(s, 20, 20, 2, noise, 1.0);
    const auto ref = brute_force_repetitions(s, 20, 20, 2, noise, 1.0);
    EXPECT_EQ(c.reps, ref.reps);
    EXPECT_EQ(c.reps.right, 1);
}

TEST(OptimizeRank, NoiselessPicksLargestRank) {
    const auto s = harmonic_singulars(10.0, 16);
    const auto c = optimize_rank(s, 100, 100, NoiseSpec{}, 3.0, 16);
    EXPECT_EQ(c.k, 16);
}

TEST(OptimizeRank, FlatProfileUnderHeavyNoisePicksRankOne) {
    const std::vector<double> s(8, 1.0);
    const NoiseSpec noise{0.0, 50.0, 50.0, Distribution::gaussian};
    const auto c = optimize_rank(s, 32, 32, noise, 1.0, 8);
    EXPECT_EQ(c.k, 1);
    // exhaustive check over k
    for (Index k = 1; k <= 8; ++k)
        EXPECT_GE(optimize_repetitions(s, 32, 32, k, noise, 1.0).breakdown.total, c.breakdown.total);
}

TEST(OptimizeRank, DefaultComparisonHasInteriorOptimumBelowBaseline) {
    const auto s = harmonic_singulars(10.0, 16);
    const NoiseSpec noise{0.05, 0.05, 0.05, Distribution::gaussian};
    const auto c = optimize_rank(s, 100, 100, noise, 3.0, 16);
    EXPECT_GT(c.k, 1);
    EXPECT_LT(c.k, 16);
    EXPECT_LT(c.breakdown.total, baseline_error_analytic(100, 100, 0.05, 3.0));
    EXPECT_THROW(optimize_rank(s, 100, 100, noise, 3.0, 101), DomainError);
    EXPECT_THROW(optimize_rank(std::vector<double>{1}, 1, 1, noise, 3.0, 1), InfeasibleError);
}

TEST(HarmonicTrace, SmallCases) {
    const auto one = harmonic_trace(1.0, 1);
    EXPECT_EQ(one.exact, 1.0);
    EXPECT_NEAR(*one.bound, kEulerGamma + 0.5, 1e-15);
    const auto four = harmonic_trace(1.0, 4);
    EXPECT_NEAR(four.exact, 25.0 / 12.0, 1e-15);
    EXPECT_NEAR(*four.bound, std::log(4.0) + kEulerGamma + 0.125, 1e-15);
    EXPECT_NEAR(*four.bound, 2.0886, 1e-4);
    EXPECT_GE(*four.bound, four.exact);
    EXPECT_THROW(harmonic_trace(1.0, 0), DomainError);
}

TEST(HarmonicTrace, BoundDominatesOnPrefix) {
    for (Index k = 1; k <= 20000; ++k) {
        const auto p = harmonic_trace(2.5, k);
        ASSERT_GE(*p.bound, p.exact) << k;
    }
}

TEST(TailBound, SmallCases) {
    const auto a = tail_bound(1.0, 1, 2);
    EXPECT_EQ(a.exact, 0.25);
    EXPECT_EQ(*a.bound, 0.5);
    const auto z = tail_bound(3.0, 5, 5);
    EXPECT_EQ(z.exact, 0.0);
    EXPECT_EQ(*z.bound, 0.0);
    EXPECT_FALSE(tail_bound(1.0, 0, 5).bound.has_value());
    EXPECT_THROW(tail_bound(1.0, 6, 5), DomainError);

    double direct = 0.0;
    for (int i = 5; i <= 16; ++i) direct += 4.0 / (i * i);
    const auto c = tail_bound(2.0, 4, 16);
    EXPECT_NEAR(c.exact, direct, 1e-14);
    EXPECT_NEAR(*c.bound, 0.75, 1e-15);
    EXPECT_LE(c.exact, *c.bound);
}

TEST(TailBound, BoundDominatesOnGrid) {
    for (Index r = 1; r <= 300; ++r)
        for (Index k = 1; k <= r; ++k) {
            const auto p = tail_bound(1.7, k, r);
            ASSERT_LE(p.exact, *p.bound) << k << " " << r;
        }
}

TEST(AsymptoticBound, NoiselessReducesToTruncationTerm) {
    const AsymptoticParams p{1.0, 0.5, 0.5, 1.0, 3.0};
    const double n = 1024.0;
    const double expected = 2.0 * 9.0 * (1.0 / (0.5 * std::pow(n, 0.5)) - 1.0 / n);
    EXPECT_NEAR(asymptotic_bound(1024, p, 0.0, 0.0, 2.0), expected, 1e-12 * expected);
}

TEST(AsymptoticBound, DominatesExactErrorAtImplicitRepetitions) {
    for (double c1 : {0.5, 1.0})
        for (Index n : {256, 1024}) {
            const AsymptoticParams p{1.0, 0.5, c1, 1.0, lambda_max(n, n, {})};
            const auto cmp = compare_asymptotic_bound(n, p, 0.05, 0.05, 3.0);
            EXPECT_TRUE(cmp.dominates) << "n=" << n << " c1=" << c1 << " bound " << cmp.bound
                                       << " exact " << cmp.exact.total;
            EXPECT_TRUE(budget_feasible(n, n, cmp.layout.k, cmp.reps.left, cmp.reps.right));
        }
}

TEST(AsymptoticBound, FlooredRankCanBreakDominance) {
    // r = floor(256^0.3) = 5, k = floor(2.5) = 2 sits below the real-valued
    // k = 2.66 the bound assumes, so the truncation tail exceeds its bound.
    const Index n = 256;
    const AsymptoticParams p{0.3, 1.0, 0.5, 1.0, lambda_max(n, n, {})};
    const auto cmp = compare_asymptotic_bound(n, p, 0.05, 0.05, 3.0);
    EXPECT_EQ(cmp.layout.r, 5);
    EXPECT_EQ(cmp.layout.k, 2);
    EXPECT_EQ(cmp.dominates, cmp.bound >= cmp.exact.total);
    EXPECT_FALSE(cmp.dominates);
}

TEST(AsymptoticBound, GrowthFactorTracksThreeHalvesPower) {
    const AsymptoticParams base{1.0, 0.5, 0.5, 1.0, 1.0};
    for (Index n : {1024, 4096}) {
        AsymptoticParams p = base, q = base;
        p.lambda = lambda_max(n, n, {});
        q.lambda = lambda_max(4 * n, 4 * n, {});
        const double ratio = asymptotic_bound(4 * n, q, 0.05, 0.05, 3.0) /
                             asymptotic_bound(n, p, 0.05, 0.05, 3.0);
        EXPECT_NEAR(ratio, 8.0, 0.8) << n;
    }
}

TEST(OptimalBeta, BranchValues) {
    EXPECT_EQ(optimal_beta(1.0).beta_star, 0.5);
    EXPECT_EQ(optimal_beta(1.0).error_exponent, 1.5);
    EXPECT_EQ(optimal_beta(0.25).beta_star, 1.0);
    EXPECT_EQ(optimal_beta(0.25).error_exponent, 1.75);
    EXPECT_EQ(optimal_beta(0.5).beta_star, 1.0);
    EXPECT_EQ(optimal_beta(0.5).error_exponent, 1.5);
    EXPECT_THROW(optimal_beta(0.0), DomainError);
    EXPECT_THROW(optimal_beta(1.5), DomainError);
}

TEST(LambdaMax, Substitution) {
    EXPECT_NEAR(lambda_max(1, 1, {1.0, std::numbers::pi * std::numbers::pi / 6.0}), 1.0, 1e-15);
    EXPECT_NEAR(lambda_max(100, 100, {}), std::sqrt(60000.0) / std::numbers::pi, 1e-12);
    EXPECT_NEAR(lambda_max(100, 100, {}), 77.9697, 1e-4);
    EXPECT_NEAR(lambda_max(30, 40, {2.0, 1.5}), 0.5 * lambda_max(30, 40, {1.0, 1.5}), 1e-12);
}

TEST(LambdaMax, SaturatedHarmonicMatricesRespectBudget) {
    std::mt19937_64 gen(606);
    std::uniform_int_distribution<Index> dim(2, 40);
    std::uniform_real_distribution<double> param(0.2, 3.0);
    for (int trial = 0; trial < 10; ++trial) {
        const Index m = dim(gen), n = dim(gen);
        const DeviceParams dev{param(gen), param(gen)};
        RandomStream rng(static_cast<std::uint64_t>(trial));
        const DenseMatrix A = harmonic_matrix(m, n, std::min(m, n), lambda_max(m, n, dev), rng);
        EXPECT_TRUE(magnitude_check(A, dev).satisfied);
    }
}
