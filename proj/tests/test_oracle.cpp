#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "dualfit/fit.hpp"
#include "dualfit/oracle.hpp"
#include "support/oracles.hpp"

namespace dualfit::oracle {
namespace {

const SufficientStats& four_point() {
    static const auto s = compute_stats(testing::four_point_data());
    return s;
}

TEST(ProfileSse, PerfectFit) {
    const auto s = compute_stats(testing::two_point_data());
    for (double gamma : {0.0, 0.5, 1.0}) EXPECT_EQ(profile_sse(s, 1.0, gamma), 0.0);
}

TEST(ProfileSse, ReportedSlopeBeatsBounds) {
    const double at = profile_sse(four_point(), 0.6612, 0.9);
    EXPECT_LE(at, profile_sse(four_point(), 0.5, 0.9));
    EXPECT_LE(at, profile_sse(four_point(), 1.5, 0.9));
}

TEST(ProfileSse, MatchesPointwiseSum) {
    const auto expected = testing::raw_sse(testing::four_point_data(), 0.25 - 0.5, 1.0, 0.5);
    EXPECT_NEAR(profile_sse(four_point(), 1.0, 0.5), static_cast<double>(expected), 1e-15);
}

TEST(ProfileSse, SingularSlope) {
    try {
        profile_sse(four_point(), 0.0, 0.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SingularSlope);
    }
}

TEST(MinimizeProfile, WorkedExample) {
    const auto m = minimize_profile(four_point(), 0.9, 1e-9);
    EXPECT_NEAR(m.slope, 0.6612, 1e-4);
    EXPECT_NEAR(m.bracket_lower, 0.495, 1e-15);
    EXPECT_NEAR(m.bracket_upper, 1.515, 1e-15);
    EXPECT_LE(m.evaluations, kMaxProfileEvals);
}

TEST(MinimizeProfile, CollapsedBracketAtPerfectCorrelation) {
    const auto m = minimize_profile(testing::unit_collinear_stats(), 0.4, 1e-10);
    EXPECT_NEAR(m.slope, 1.0, 1e-7);
    EXPECT_NEAR(m.bracket_lower, 0.99, 1e-15);
    EXPECT_NEAR(m.bracket_upper, 1.01, 1e-15);
}

TEST(MinimizeProfile, AgreesWithQuarticPath) {
    FitConfig c;
    c.gamma = 0.5;
    const auto m = minimize_profile(four_point(), 0.5, 1e-9);
    EXPECT_NEAR(m.slope, fit(four_point(), c).beta1, 1e-6);
}

TEST(MinimizeProfile, DeterministicAndBudgeted) {
    testing::DatasetGenerator gen(8);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = compute_stats(gen.next());
        const auto a = minimize_profile(s, 0.3, 1e-9);
        const auto b = minimize_profile(s, 0.3, 1e-9);
        EXPECT_EQ(a.slope, b.slope);
        EXPECT_EQ(a.evaluations, b.evaluations);
        EXPECT_LE(a.evaluations, kMaxProfileEvals);
        EXPECT_LT(a.bracket_lower, a.bracket_upper);
    }
}

TEST(MinimizeProfile, BracketFailureWhenEndIsLowest) {
    // Inconsistent moments (S_xy^2 > S_xx S_yy) make the profile fall
    // monotonically through the bracket.
    SufficientStats s;
    s.n = 3;
    s.s_xx = 1.0;
    s.s_yy = 1.0;
    s.s_xy = 2.0;
    s.rho = 0.9;
    try {
        minimize_profile(s, 0.5, 1e-9);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BracketFailure);
    }
}

TEST(CheckGradient, PerfectFitPoint) {
    EXPECT_LE(check_gradient(compute_stats(testing::two_point_data()), 0.0, 1.0, 0.5, 1e-6), 1e-9);
}

TEST(CheckGradient, WorkedExamplePoint) { EXPECT_LE(check_gradient(four_point(), 0.1, 0.8, 0.5, 1e-6), 1e-6); }

TEST(CheckGradient, RandomPoints) {
    testing::DatasetGenerator gen(100);
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = compute_stats(gen.next());
        const double b1 = (unit(rng) < 0.5 ? -1 : 1) * std::pow(10.0, 3 * unit(rng) - 2);
        const double b0 = intercept(s, b1) + 4 * (unit(rng) - 0.5);
        const double gamma = unit(rng);
        EXPECT_LE(check_gradient(s, b0, b1, gamma, 1e-6), 1e-6) << "trial " << trial;
    }
}

TEST(CheckGradient, StencilAcrossZeroSlope) {
    try {
        check_gradient(four_point(), 0.0, 1e-7, 0.5, 1e-6);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SingularSlope);
    }
}

TEST(Verify, WorkedExamplePasses) {
    FitConfig c;
    c.gamma = 0.9;
    const auto r = verify(four_point(), c);
    EXPECT_EQ(r.abs_gap, std::abs(r.oracle_slope - r.quartic_slope));
    EXPECT_LE(r.abs_gap, 1e-6);
    EXPECT_TRUE(r.passed());
    EXPECT_FALSE(r.passed(1e-300));
}

TEST(Verify, ReflectedData) {
    const auto d = Dataset({{0, 3}, {1, 2.5}, {2, 1}, {3, 0.2}, {4, 0.5}});
    FitConfig c;
    c.gamma = 0.6;
    c.negative_correlation_policy = NegativeCorrelationPolicy::Reflect;
    const auto r = verify(compute_stats(d), c);
    EXPECT_LT(r.quartic_slope, 0.0);
    EXPECT_LT(r.bracket_lower, r.bracket_upper);
    EXPECT_LT(r.bracket_upper, 0.0);
    EXPECT_TRUE(r.passed());
}

}  // namespace
}  // namespace dualfit::oracle
