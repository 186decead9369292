#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "gen.hpp"
#include "wanderer/error.hpp"
#include "wanderer/fredholm.hpp"
#include "wanderer/scaling.hpp"
#include "wanderer/stats.hpp"

using namespace wanderer;

namespace {

LineEnsembleSample synthetic_raw(std::size_t N, std::size_t M, std::size_t curves,
                                 const std::function<double(std::size_t, double)>& f) {
    LineEnsembleSample e;
    e.curves = curves;
    for (std::size_t j = 1; j <= M; ++j) e.times.push_back(static_cast<double>(j) - static_cast<double>(N));
    e.values.resize(curves * M);
    for (std::size_t i = 0; i < curves; ++i)
        for (std::size_t j = 0; j < M; ++j) e.at(i, j) = f(i, e.times[j]);
    return e;
}

}  // namespace

TEST(Scaling, ConstantsAtHalf) {
    const ScalingConstants c = scaling_constants(0.5);
    EXPECT_NEAR(c.sigma_q, std::cbrt(0.5) * std::cbrt(1.5) / 0.5, 1e-15);
    EXPECT_NEAR(c.sigma_q, 1.81712, 1e-5);
    EXPECT_DOUBLE_EQ(c.p, 1.0);
    EXPECT_NEAR(c.sigma, std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(c.f_q, 0.30285, 1e-5);
    EXPECT_THROW(scaling_constants(1.0), Error);
}

TEST(Scaling, ConstantsLimitAndIdentity) {
    EXPECT_LT(scaling_constants(1e-12).sigma_q, 1e-3);
    gen::for_all(51, 100, [](gen::Gen& g, std::size_t c) {
        const double q = g.uniform(1e-6, 0.999);
        const ScalingConstants k = scaling_constants(q);
        EXPECT_NEAR(k.p * (1 + k.p), q / ((1 - q) * (1 - q)), 1e-12 * k.p * (1 + k.p)) << "case " << c;
    });
}

TEST(Scaling, ZeroParametersGiveFlatSequences) {
    const auto s = build_parameter_sequences(zero_params(), 0.5, 100);
    EXPECT_EQ(s.A_N, 0u);
    EXPECT_EQ(s.B_N, 0u);
    for (double x : s.X) EXPECT_EQ(x, 0.5);
    for (double y : s.Y) EXPECT_EQ(y, 0.5);
    EXPECT_EQ(s.M, default_M(100));
}

TEST(Scaling, SpikedEntry) {
    const auto s = build_parameter_sequences(pos_params({1}), 0.5, 1000);
    const double sq = scaling_constants(0.5).sigma_q;
    EXPECT_NEAR(s.Y[0], 1.0 - 1.0 / (10.0 * sq), 1e-12);
    EXPECT_NEAR(s.Y[0], 0.94497, 1e-5);
    EXPECT_EQ(s.A_N, 1u);
    EXPECT_EQ(s.Y[1], 0.5);
}

TEST(Scaling, TinySpikeIsNotAdmissible) {
    const auto s = build_parameter_sequences(pos_params({1e-3}), 0.5, 1000);
    EXPECT_EQ(s.A_N, 0u);
    for (double y : s.Y) EXPECT_EQ(y, 0.5);
}

TEST(Scaling, SpikeCountCapped) {
    // floor(N^{1/12}) = 1 below 4096
    const auto s = build_parameter_sequences(pos_params({3, 3, 3}), 0.5, 1000);
    EXPECT_EQ(s.A_N, 1u);
    EXPECT_EQ(twelfth_root_floor(4095), 1u);
    EXPECT_EQ(twelfth_root_floor(4096), 2u);
}

TEST(Scaling, RejectsShortM) {
    EXPECT_THROW(build_parameter_sequences(zero_params(), 0.5, 100, 110), Error);
}

TEST(Scaling, EmbedAnchorsAndExtension) {
    const std::size_t N = 3, M = 5;
    PartitionSequence seq{Partition{1}, Partition{2, 1}, Partition{4, 1}, Partition{5, 3}, Partition{6, 3}};
    const auto e = embed_line_ensemble(seq, N, M, 2);
    EXPECT_EQ(raw_value(e, 0, 1.0 - N), 1.0);
    EXPECT_EQ(raw_value(e, 0, -10.0), 1.0);
    EXPECT_EQ(raw_value(e, 1, 50.0), 3.0);
    EXPECT_DOUBLE_EQ(raw_value(e, 0, -0.5), 3.0);
    EXPECT_DOUBLE_EQ(raw_value(e, 1, 0.5), 2.0);
    EXPECT_THROW(embed_line_ensemble(seq, N, M, 4), Error);
}

TEST(Scaling, RescaleCentering) {
    const std::size_t N = 1000, M = default_M(N);
    const double p = 1.0;
    const auto raw = synthetic_raw(N, M, 1, [&](std::size_t, double s) { return 2 * p * N + p * s; });
    const auto r = rescale(raw, 0.5, N, {-1.0, 0.0, 0.5, 1.0});
    for (double v : r.values) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Scaling, RescaleDivisor) {
    const std::size_t N = 1000, M = default_M(N);
    const auto raw = synthetic_raw(N, M, 1, [&](std::size_t, double) { return 2.0 * N + 10.0 * std::sqrt(2.0); });
    const auto r = rescale(raw, 0.5, N, {0.0});
    EXPECT_NEAR(r.at(0, 0), 1.0, 1e-12);
}

TEST(Scaling, RescaleIsAffine) {
    const std::size_t N = 200, M = default_M(N);
    const std::vector<double> grid{-0.7, 0.0, 0.3};
    auto centered = [&](double s) { return 2.0 * N + s; };
    const auto r1 = rescale(synthetic_raw(N, M, 1, [&](std::size_t, double s) { return centered(s) + std::sin(s); }), 0.5, N, grid);
    const auto r2 = rescale(synthetic_raw(N, M, 1, [&](std::size_t, double s) { return centered(s) + s * s / 50; }), 0.5, N, grid);
    const auto r3 = rescale(
        synthetic_raw(N, M, 1, [&](std::size_t, double s) { return centered(s) + 2.0 * std::sin(s) - 3.0 * s * s / 50; }),
        0.5, N, grid);
    for (std::size_t j = 0; j < grid.size(); ++j) EXPECT_NEAR(r3.at(0, j), 2 * r1.at(0, j) - 3 * r2.at(0, j), 1e-10);
}

TEST(Scaling, AiryAtZeroAndParabola) {
    const std::size_t N = 1000, M = airy_window_M(N, 0.5, 1.0);
    const auto raw = synthetic_raw(N, M, 2, [&](std::size_t i, double s) { return 2.0 * N + s - 3.0 * i; });
    const auto air = airy_from_raw(raw, 0.5, N, {0.0, 0.5, 1.0});
    const double amp = std::sqrt(2.0 * scaling_constants(0.5).f_q);
    const double div = std::sqrt(2.0) * 10.0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const double s = air.times[j];
            EXPECT_NEAR(air.at(i, j), amp * (-3.0 * i) / div + s * s, 1e-9);
        }
}

TEST(Scaling, ToAiryRoundTrip) {
    const std::size_t N = 400, M = airy_window_M(N, 0.5, 1.5);
    const double f = scaling_constants(0.5).f_q;
    const auto raw = synthetic_raw(N, M, 1, [&](std::size_t, double s) { return 2.0 * N + s + 5.0 * std::cos(s / 30.0); });
    const std::vector<double> s_grid{-1.0, 0.0, 0.7, 1.5};
    std::vector<double> t_grid;
    for (double s : s_grid) t_grid.push_back(s / f);
    const auto two_step = to_airy(rescale(raw, 0.5, N, t_grid), 0.5, s_grid);
    const auto direct = airy_from_raw(raw, 0.5, N, s_grid);
    for (std::size_t j = 0; j < s_grid.size(); ++j) EXPECT_NEAR(two_step.at(0, j), direct.at(0, j), 1e-12);
}

TEST(Scaling, AiryOutsideWindow) {
    const std::size_t N = 100, M = default_M(N);
    const auto raw = synthetic_raw(N, M, 1, [](std::size_t, double) { return 0.0; });
    EXPECT_THROW(airy_from_raw(raw, 0.5, N, {5.0}), Error);
}

TEST(Scaling, SlopeStatistic) {
    LineEnsembleSample e;
    e.times = {1.0, 2.0, 3.0};
    e.curves = 2;
    e.coordinate = Coordinate::Airy;
    const double a = 1.5;
    for (double t : e.times) e.values.push_back(t * t);
    for (double t : e.times) e.values.push_back(t * t - 2.0 * t / a);
    EXPECT_NEAR(slope_statistic(e, 1, 2.0), 0.0, 1e-15);
    EXPECT_NEAR(slope_statistic(e, 2, 3.0), -2.0 / a, 1e-15);
    EXPECT_THROW(slope_statistic(e, 1, 4.0), Error);
}

TEST(ScalingProperty, OrderPreservedThroughCoordinates) {
    gen::for_all(52, 40, [](gen::Gen& g, std::size_t c) {
        const std::size_t N = static_cast<std::size_t>(g.integer(50, 150));
        const auto seq = build_parameter_sequences(pos_params(g.decreasing(2, 2.0), g.decreasing(2, 2.0)), 0.5, N,
                                                   airy_window_M(N, 0.5, 1.0));
        const auto top = sample_schur_top(seq.config(), NoiseField(c), 3);
        const auto raw = embed_line_ensemble(top, N, 3);
        const auto air = airy_from_raw(raw, 0.5, N, {-1.0, -0.5, 0.0, 0.5, 1.0});
        for (std::size_t j = 0; j < air.times.size(); ++j) {
            EXPECT_GE(air.at(0, j), air.at(1, j)) << "case " << c;
            EXPECT_GE(air.at(1, j), air.at(2, j)) << "case " << c;
        }
        // constant extension: raw values past the window are flat
        EXPECT_EQ(raw_value(raw, 0, raw.times.back() + 10.0), raw_value(raw, 0, raw.times.back()));
        EXPECT_EQ(raw_value(raw, 0, raw.times.front() - 10.0), raw_value(raw, 0, raw.times.front()));
    });
}

// top curve at Airy time 0 against the Fredholm one-point law, with a finite-N budget
TEST(ScalingStatistical, ZeroParametersMatchGapProbability) {
    const std::size_t N = 300, R = 1500;
    const auto seq = build_parameter_sequences(zero_params(), 0.5, N);
    std::vector<double> v;
    for (std::size_t r = 0; r < R; ++r) {
        const auto raw = embed_line_ensemble(sample_schur_top(seq.config(), NoiseField(replicate_seed(61, r)), 1), N, 1);
        v.push_back(airy_from_raw(raw, 0.5, N, {0.0}).at(0, 0));
    }
    for (double s : {-2.0, -1.0}) {
        double frac = 0.0;
        for (double x : v) frac += x >= s;
        frac /= static_cast<double>(R);
        const double exact = gap_probability(0.0, s, zero_params()).probability;
        const double se = std::sqrt(exact * (1 - exact) / R);
        EXPECT_NEAR(frac, exact, 3 * se + 0.06) << "s=" << s;
    }
}
