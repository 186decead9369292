#include <gtest/gtest.h>

#include <cmath>

#include "airy_oracle.hpp"
#include "wanderer/error.hpp"
#include "wanderer/fredholm.hpp"
#include "wanderer/kernel.hpp"
#include "wanderer/moments.hpp"

using namespace wanderer;

TEST(ScaledKernel, MatchesKernelChangeOfVariables) {
    const ParamSet p = pos_params({1.5}, {0.5});
    const Kernel k(p);
    for (double t : {0.5, 1.0, 2.0})
        for (double x : {-1.0, 0.0})
            for (double y : {-0.5, 0.3}) {
                const double ref = t * k(t, t * x + t * t, t, t * y + t * t).real();
                EXPECT_NEAR(scaled_kernel(x, y, t, p), ref, 1e-6 * std::max(1.0, std::abs(ref)));
            }
}

TEST(ScaledKernel, ZeroParametersReduceToAiry) {
    // equal-time diagonal is the Airy kernel at t x + t^2
    EXPECT_NEAR(scaled_kernel(0.0, 0.0, 1.0, zero_params()), oracle::airy_kernel(1.0, 1.0), 1e-9);
    EXPECT_NEAR(scaled_kernel(-1.5, -1.5, 2.0, zero_params()), 2.0 * oracle::airy_kernel(1.0, 1.0), 1e-9);
}

TEST(ScaledKernel, DiagonalNonnegative) {
    const ParamSet p = pos_params({1});
    for (double t : {1.0, 3.0})
        for (double x = -4.0; x <= 1.0; x += 0.5) EXPECT_GE(scaled_kernel(x, x, t, p), -1e-10) << "t=" << t << " x=" << x;
}

TEST(FirstMoment, WindowIndex) {
    const ParamSet p = pos_params({2, 1});
    EXPECT_EQ(window_index(-0.5, p), 0);
    EXPECT_EQ(window_index(-1.5, p), 1);
    EXPECT_EQ(window_index(-2.5, p), 2);
    EXPECT_FALSE(window_index(-2.0, p).has_value());
}

TEST(FirstMoment, ZeroParametersVanish) {
    const double v2 = first_moment(-1.0, 2.0, zero_params());
    const double v4 = first_moment(-1.0, 4.0, zero_params());
    EXPECT_GE(v4, -1e-12);
    EXPECT_LE(v4, 0.05);
    EXPECT_LT(v4, v2);
}

// a = (1): threshold above -2 captures no wanderer, below -2 captures one
TEST(FirstMoment, SingleWandererLimits) {
    const ParamSet p = pos_params({1});
    double prev0 = 1e9, prev1 = 1e9;
    for (double t : {2.0, 4.0, 6.0}) {
        const double above = first_moment(-1.0, t, p);
        const double below = first_moment(-3.0, t, p);
        EXPECT_LT(above, prev0);
        EXPECT_LT(std::abs(below - 1.0), prev1);
        prev0 = above;
        prev1 = std::abs(below - 1.0);
    }
    EXPECT_LT(prev0, 0.06);
    EXPECT_LT(prev1, 0.02);
}

TEST(FirstMoment, StepAcrossSecondSlope) {
    const ParamSet p = pos_params({2, 1});
    const double one = first_moment(-1.5, 6.0, p);
    const double two = first_moment(-2.5, 6.0, p);
    EXPECT_NEAR(one, 1.0, 0.1);
    EXPECT_NEAR(two, 2.0, 0.25);
    EXPECT_GT(two - one, 0.7);
}

TEST(FirstMoment, ExpandedAgreesWithOriginalContours) {
    const ParamSet p = pos_params({1});
    struct Case {
        double ah, t;
        int k;
    };
    for (const Case c : {Case{-1.0, 2.0, 0}, Case{-1.0, 4.0, 0}, Case{-1.0, 6.0, 0}, Case{-3.0, 2.0, 1}}) {
        const ExpandedMoment e = first_moment_expanded(c.ah, c.t, p, c.k);
        EXPECT_NEAR(e.value, first_moment_direct(c.ah, c.t, p, 0.5), 1e-6) << "ah=" << c.ah << " t=" << c.t;
        EXPECT_NEAR(e.value, first_moment(c.ah, c.t, p), 1e-6);
        EXPECT_EQ(e.A_j.size(), static_cast<std::size_t>(c.k));
    }
}

TEST(FirstMoment, ExpandedPiecesDecay) {
    const ParamSet p = pos_params({1});
    double prevA = 1e9, prevAj = 1e9;
    for (double t : {2.0, 4.0, 6.0}) {
        const ExpandedMoment e = first_moment_expanded(-3.0, t, p, 1);
        EXPECT_LT(std::abs(e.A), prevA);
        if (t > 2.0) EXPECT_LT(std::abs(e.A_j[0]), prevAj);
        EXPECT_GT(e.delta, 0.0);
        EXPECT_NEAR(e.v - e.u, e.delta, 1e-15);
        prevA = std::abs(e.A);
        if (t > 2.0) prevAj = std::abs(e.A_j[0]);
    }
    EXPECT_LT(prevAj, 0.02);
}

TEST(FirstMoment, ExpandedRejectsBadInput) {
    EXPECT_THROW(first_moment_expanded(-3.0, 2.0, pos_params({1, 1}), 1), Error);
    EXPECT_THROW(first_moment_expanded(-3.0, 2.0, pos_params({1}), 0), Error);
}

TEST(FirstMoment, NonincreasingInThreshold) {
    const ParamSet p = pos_params({1});
    double prev = 1e9;
    for (double ah : {-4.0, -3.0, -2.5, -1.5, -1.0, 0.0}) {
        const double v = first_moment(ah, 3.0, p);
        EXPECT_GE(v, -1e-10);
        EXPECT_LE(v, prev + 1e-10) << "ah=" << ah;
        prev = v;
    }
}

TEST(SecondMoment, VanishesInWindow) {
    const ParamSet p = pos_params({1});
    double prev = 1e9;
    for (double t : {2.0, 4.0, 6.0}) {
        const double v = second_factorial_moment(-3.0, -1.0, t, p).value;
        EXPECT_GE(v, -1e-8);
        EXPECT_LT(v, prev);
        prev = v;
    }
    EXPECT_LE(prev, 1e-6);
}

TEST(SecondMoment, ContourFormAgreesAtSmallTime) {
    const ParamSet p = pos_params({1});
    const double nys = second_factorial_moment(-3.0, -1.0, 2.0, p).value;
    const double con = second_factorial_moment_contour(-3.0, -1.0, 2.0, p).value;
    EXPECT_NEAR(nys, con, 1e-3);
}

TEST(SecondMoment, BPieceTendsToCount) {
    const ParamSet p = pos_params({1});
    const double b4 = b_piece(-3.0, -3.0, 4.0, p), b6 = b_piece(-3.0, -3.0, 6.0, p);
    EXPECT_NEAR(b4, 1.0, 0.05);
    EXPECT_NEAR(b6, 1.0, 0.05);
}

TEST(FlatMoment, ZeroParameters) {
    const double v2 = flat_first_moment(2.0, 5.0, zero_params());
    const double v3 = flat_first_moment(3.0, 5.0, zero_params());
    EXPECT_GT(v2, 0.0);
    EXPECT_LT(v2, 1e-3);
    EXPECT_LT(v3, v2);
}

TEST(FlatMoment, SingleWanderer) {
    const ParamSet p = pos_params({1});
    const double v5 = flat_first_moment(5.0, 5.0, p), v8 = flat_first_moment(5.0, 8.0, p);
    EXPECT_NEAR(v5, 1.0, 1e-3);
    EXPECT_NEAR(v8, 1.0, 1e-6);
    EXPECT_LE(std::abs(v8 - 1.0), std::abs(v5 - 1.0));
    EXPECT_LE(flat_first_moment(6.0, 5.0, p), v5 + 1e-10);
}

TEST(FlatMoment, ExpandedAgrees) {
    const ParamSet p = pos_params({1});
    EXPECT_NEAR(flat_first_moment_expanded(5.0, 5.0, p).value, flat_first_moment(5.0, 5.0, p), 1e-6);
}

TEST(GapProbability, ElementarySymmetric) {
    const auto e = elementary_symmetric(std::vector<double>{1.0, 2.0, 3.0});
    EXPECT_EQ(e, (std::vector<double>{1.0, 6.0, 11.0, 6.0}));
}

TEST(GapProbability, MonotoneAndBounded) {
    double prev = 1.0;
    for (double s : {-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0}) {
        const double v = gap_probability(0.0, s, zero_params()).probability;
        EXPECT_GE(v, -1e-8);
        EXPECT_LE(v, 1.0 + 1e-8);
        EXPECT_LE(v, prev + 1e-10) << "s=" << s;
        prev = v;
    }
    EXPECT_LT(gap_probability(0.0, 8.0, zero_params()).probability, 1e-10);
}

TEST(GapProbability, SelfConvergence) {
    const GapResult base = gap_probability(0.0, 0.0, zero_params());
    FredholmOptions fine;
    fine.nodes_per_unit *= 2;
    fine.min_nodes *= 2;
    fine.max_nodes *= 2;
    const GapResult refined = gap_probability(0.0, 0.0, zero_params(), 14, fine);
    EXPECT_NEAR(base.probability, refined.probability, 1e-4);
    EXPECT_NEAR(base.probability, base.full, 1e-8);
}

TEST(GapProbability, SeriesTermsAlternate) {
    const GapResult g = gap_probability(0.0, -1.0, zero_params());
    for (std::size_t m = 0; m + 1 < g.terms.size(); ++m)
        if (std::abs(g.terms[m + 1]) > 1e-14) EXPECT_LT(g.terms[m] * g.terms[m + 1], 0.0) << "m=" << m + 1;
}
