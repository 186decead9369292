#include <gtest/gtest.h>

#include <cmath>

#include "gen.hpp"
#include "wanderer/stats.hpp"

using namespace wanderer;

TEST(Stats, Moments) {
    const std::vector<double> v{1, 2, 3, 4};
    EXPECT_DOUBLE_EQ(mean(v), 2.5);
    EXPECT_DOUBLE_EQ(variance(v), 5.0 / 3.0);
    EXPECT_DOUBLE_EQ(median(v), 2.5);
    EXPECT_DOUBLE_EQ(quantile(v, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(quantile(v, 1.0), 4.0);
    EXPECT_DOUBLE_EQ(quantile(v, 0.25), 1.75);
}

TEST(Stats, KolmogorovSurvival) {
    EXPECT_NEAR(kolmogorov_survival(1.0), 0.26999967, 1e-7);
    EXPECT_NEAR(kolmogorov_survival(1.36), 0.0494, 1e-3);
    EXPECT_EQ(kolmogorov_survival(0.0), 1.0);
}

TEST(Stats, KsTwoSample) {
    const KsResult same = ks_two_sample({1, 2, 3, 4}, {1, 2, 3, 4});
    EXPECT_EQ(same.statistic, 0.0);
    EXPECT_EQ(same.p_value, 1.0);
    const KsResult apart = ks_two_sample({1, 2, 3, 4, 5, 6, 7, 8}, {11, 12, 13, 14, 15, 16, 17, 18});
    EXPECT_EQ(apart.statistic, 1.0);
    EXPECT_LT(apart.p_value, 0.01);
}

TEST(Stats, ChiSquarePoolsSmallCells) {
    const ChiSquareResult r = chi_square({10, 10, 1, 0}, {10, 10, 0.5, 0.5});
    EXPECT_EQ(r.dof, 2);
    EXPECT_NEAR(r.statistic, 0.0, 1e-12);
    EXPECT_NEAR(r.p_value, 1.0, 1e-12);
}

TEST(Stats, ChiSquareKnownTail) {
    // statistic 4 with 1 degree of freedom: p = erfc(1)
    const ChiSquareResult r = chi_square({60, 40}, {50, 50});
    EXPECT_EQ(r.dof, 1);
    EXPECT_NEAR(r.statistic, 4.0, 1e-12);
    EXPECT_NEAR(r.p_value, std::erfc(std::sqrt(2.0)), 1e-12);
}

TEST(Stats, TotalVariation) {
    std::map<int, double> p{{0, 0.5}, {1, 0.5}}, q{{1, 0.5}, {2, 0.5}};
    EXPECT_DOUBLE_EQ(total_variation(p, q), 0.5);
    EXPECT_DOUBLE_EQ(total_variation(p, p), 0.0);
}

TEST(Stats, DkwEpsilon) { EXPECT_NEAR(dkw_epsilon(10000, 0.05), std::sqrt(std::log(2.0 / 0.05) / 20000.0), 1e-15); }

TEST(Stats, LinearFitExact) {
    const LinearFit f = linear_fit({0, 1, 2, 3}, {1, 3, 5, 7});
    EXPECT_NEAR(f.slope, 2.0, 1e-14);
    EXPECT_NEAR(f.intercept, 1.0, 1e-14);
    EXPECT_NEAR(f.slope_se, 0.0, 1e-12);
}

TEST(Stats, BootstrapDeterministic) {
    std::vector<double> v;
    for (int i = 0; i < 200; ++i) v.push_back(std::sin(i * 1.3));
    const Interval a = bootstrap_ci(v, median, 500, 0.95, 9);
    const Interval b = bootstrap_ci(v, median, 500, 0.95, 9);
    EXPECT_EQ(a.lo, b.lo);
    EXPECT_EQ(a.hi, b.hi);
    EXPECT_TRUE(a.contains(median(v)));
}

TEST(StatsProperty, EmpiricalCdfMonotone) {
    gen::for_all(91, 100, [](gen::Gen& g, std::size_t c) {
        std::vector<double> v(static_cast<std::size_t>(g.integer(1, 50)));
        for (double& x : v) x = g.uniform(-3, 3);
        std::sort(v.begin(), v.end());
        double prev = 0.0;
        for (double x = -4; x <= 4; x += 0.1) {
            const double F = empirical_cdf(v, x);
            EXPECT_GE(F, prev) << "case " << c;
            prev = F;
        }
        EXPECT_EQ(empirical_cdf(v, 4.0), 1.0);
    });
}
