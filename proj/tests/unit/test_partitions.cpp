#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "gen.hpp"
#include "wanderer/error.hpp"
#include "wanderer/partition.hpp"

using namespace wanderer;

namespace {

// every partition nu with nu_i <= lam_i
std::vector<Partition> sub_partitions(const Partition& lam) {
    std::vector<Partition> out;
    std::vector<std::int64_t> cur;
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t cap) {
        out.emplace_back(cur);
        if (i >= lam.length()) return;
        for (std::int64_t v = 1; v <= std::min(cap, lam.part(i + 1)); ++v) {
            cur.push_back(v);
            rec(i + 1, v);
            cur.pop_back();
        }
    };
    rec(0, lam.part(1));
    return out;
}

// sum over chains mu = nu^0, nu^1, ..., nu^n = lam, each step interlacing
double chain_sum(const Partition& lam, const Partition& mu, const std::vector<double>& xs) {
    const auto subs = sub_partitions(lam);
    std::function<double(const Partition&, std::size_t)> rec = [&](const Partition& prev, std::size_t i) -> double {
        const double x = xs[i];
        if (i + 1 == xs.size()) {
            if (!interlaces(lam, prev)) return 0.0;
            return std::pow(x, static_cast<double>(lam.weight() - prev.weight()));
        }
        double s = 0.0;
        for (const auto& nu : subs)
            if (interlaces(nu, prev)) s += std::pow(x, static_cast<double>(nu.weight() - prev.weight())) * rec(nu, i + 1);
        return s;
    };
    return rec(mu, 0);
}

}  // namespace

TEST(Partitions, Interlacing) {
    EXPECT_TRUE(interlaces(Partition{2, 1}, Partition{1}));
    EXPECT_FALSE(interlaces(Partition{1}, Partition{2}));
    EXPECT_TRUE(interlaces(Partition{}, Partition{}));
    EXPECT_FALSE(interlaces(Partition{3, 1}, Partition{2, 2}));
}

TEST(Partitions, TrailingZerosIgnored) {
    EXPECT_EQ(Partition({2, 1, 0, 0}), Partition({2, 1}));
    EXPECT_EQ(to_string(Partition{3, 1}), "[3,1]");
    EXPECT_EQ(parse_partition("[3,1]"), Partition({3, 1}));
}

TEST(Partitions, SkewSchurOneVariable) {
    EXPECT_DOUBLE_EQ(skew_schur_one(Partition{3, 1}, Partition{2}, 0.5), 0.25);
    EXPECT_EQ(skew_schur_one(Partition{1}, Partition{2}, 0.5), 0.0);
    EXPECT_EQ(skew_schur_one(Partition{4, 2}, Partition{4, 2}, 0.0), 1.0);
}

TEST(Partitions, SkewSchurSeveralVariables) {
    EXPECT_DOUBLE_EQ(skew_schur_multi(Partition{1}, Partition{}, {0.7}), 0.7);
    const double x1 = 0.3, x2 = 0.8;
    EXPECT_NEAR(skew_schur_multi(Partition{2, 1}, Partition{}, {x1, x2}), x1 * x1 * x2 + x1 * x2 * x2, 1e-15);
    EXPECT_DOUBLE_EQ(skew_schur_multi(Partition{3, 2}, Partition{3, 2}, {0.2, 0.4, 0.9}), 1.0);
}

TEST(Partitions, ProcessWeightEmptySequence) {
    const std::vector<double> X{0.3, 0.4}, Y{0.2, 0.5};
    const double w = schur_process_weight({Partition{}, Partition{}}, X, Y);
    EXPECT_NEAR(w, (1 - 0.06) * (1 - 0.15) * (1 - 0.08) * (1 - 0.2), 1e-15);
}

TEST(Partitions, ProcessWeightGeometric) {
    for (std::int64_t k = 0; k < 6; ++k)
        EXPECT_NEAR(schur_process_weight({Partition{k}}, {0.5}, {0.6}), 0.7 * std::pow(0.3, k), 1e-15);
}

TEST(Partitions, ProcessWeightZeroOffSupport) {
    EXPECT_EQ(schur_process_weight({Partition{2}, Partition{1}}, {0.3, 0.4}, {0.5}), 0.0);
}

TEST(Partitions, ProcessWeightRejectsLargeProduct) {
    EXPECT_THROW(schur_process_weight({Partition{}}, {2.0}, {0.5}), Error);
}

TEST(Partitions, EnumerateGeometric) {
    const SupportEnumeration e = enumerate_support(1, {0.5}, {0.6}, 10);
    ASSERT_EQ(e.states.size(), 11u);
    for (const auto& [seq, prob] : e.states) {
        const std::int64_t k = seq.at(0).part(1);
        EXPECT_NEAR(prob, 0.7 * std::pow(0.3, k), 1e-15);
    }
    EXPECT_NEAR(e.tail, std::pow(0.3, 11), 1e-13);
}

TEST(Partitions, EnumerateBudget) {
    EXPECT_THROW(enumerate_support(3, {0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}, 30, 1000), Error);
}

TEST(PartitionsProperty, EnumerationNormalized) {
    gen::for_all(21, 30, [](gen::Gen& g, std::size_t c) {
        const std::size_t M = static_cast<std::size_t>(g.integer(1, 2));
        const std::size_t N = static_cast<std::size_t>(g.integer(1, 2));
        std::vector<double> X(M), Y(N);
        for (double& x : X) x = g.uniform(0.0, 0.7);
        for (double& y : Y) y = g.uniform(0.0, 0.7);
        const SupportEnumeration e = enumerate_support(M, X, Y, g.integer(2, 6));
        double total = e.tail;
        for (const auto& s : e.states) {
            EXPECT_GE(s.second, 0.0) << "case " << c;
            total += s.second;
        }
        EXPECT_GE(e.tail, -1e-12) << "case " << c;
        EXPECT_NEAR(total, 1.0, 1e-12) << "case " << c;
    });
}

// partition function: the enumerated mass tends to 1 as the cap grows, so the product
// prefactor normalizes the weights
TEST(PartitionsProperty, CauchyConsistency) {
    const std::vector<double> X{0.3, 0.4}, Y{0.2, 0.5};
    double prev_mass = 0.0;
    for (std::int64_t cap : {1, 2, 4, 8, 12}) {
        const SupportEnumeration e = enumerate_support(2, X, Y, cap);
        double mass = 0.0;
        for (const auto& s : e.states) mass += schur_process_weight(s.first, X, Y);
        EXPECT_GT(mass, prev_mass);
        EXPECT_LE(mass, 1.0 + 1e-12);
        prev_mass = mass;
    }
    EXPECT_NEAR(prev_mass, 1.0, 1e-6);
}

TEST(PartitionsProperty, SkewSchurSymmetric) {
    gen::for_all(22, 60, [](gen::Gen& g, std::size_t c) {
        const Partition lam = g.partition(3, 4);
        const Partition mu = g.partition(2, 3);
        std::vector<double> xs(static_cast<std::size_t>(g.integer(1, 4)));
        for (double& x : xs) x = g.uniform(0.0, 1.5);
        const double v = skew_schur_multi(lam, mu, xs);
        std::vector<double> ys = xs;
        std::shuffle(ys.begin(), ys.end(), g.engine());
        EXPECT_NEAR(skew_schur_multi(lam, mu, ys), v, 1e-12 * (1.0 + std::abs(v))) << "case " << c;
    });
}

TEST(PartitionsProperty, SkewSchurMatchesChainEnumeration) {
    gen::for_all(23, 60, [](gen::Gen& g, std::size_t c) {
        const Partition lam = g.partition(3, 4);
        const Partition mu = g.partition(2, 3);
        std::vector<double> xs(static_cast<std::size_t>(g.integer(1, 3)));
        for (double& x : xs) x = g.uniform(0.0, 1.5);
        const double v = chain_sum(lam, mu, xs);
        EXPECT_NEAR(skew_schur_multi(lam, mu, xs), v, 1e-12 * (1.0 + std::abs(v)))
            << "case " << c << " lam=" << to_string(lam) << " mu=" << to_string(mu);
    });
}
