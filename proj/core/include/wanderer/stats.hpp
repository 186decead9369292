#ifndef WANDERER_STATS_HPP
#define WANDERER_STATS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace wanderer {

double mean(const std::vector<double>& v);
double variance(const std::vector<double>& v);  // unbiased
double standard_error(const std::vector<double>& v);
// type-7 quantile, p in [0, 1]
double quantile(std::vector<double> v, double p);
double median(const std::vector<double>& v);

// P(sup |B| > lambda) for the Brownian bridge
double kolmogorov_survival(double lambda);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);
KsResult ks_one_sample(std::vector<double> a, const std::function<double(double)>& cdf);

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

// cells with expected count below min_expected are pooled into one
ChiSquareResult chi_square(const std::vector<double>& observed, const std::vector<double>& expected,
                           double min_expected = 5.0);

template <class K>
double total_variation(const std::map<K, double>& p, const std::map<K, double>& q) {
    double s = 0.0;
    for (const auto& [k, v] : p) {
        auto it = q.find(k);
        s += std::abs(v - (it == q.end() ? 0.0 : it->second));
    }
    for (const auto& [k, v] : q)
        if (!p.count(k)) s += std::abs(v);
    return 0.5 * s;
}

// half-width of the Dvoretzky-Kiefer-Wolfowitz band at confidence 1 - alpha
double dkw_epsilon(std::size_t n, double alpha);

double empirical_cdf(const std::vector<double>& sorted, double x);

struct Interval {
    double lo = 0.0, hi = 0.0;
    bool contains(double x) const { return lo <= x && x <= hi; }
};

// percentile bootstrap of a statistic, deterministic in seed
Interval bootstrap_ci(const std::vector<double>& sample, const std::function<double(const std::vector<double>&)>& stat,
                      std::size_t resamples, double level, std::uint64_t seed);

struct LinearFit {
    double slope = 0.0, intercept = 0.0;
    double slope_se = 0.0;
    Interval slope_ci(double z = 1.959963984540054) const { return {slope - z * slope_se, slope + z * slope_se}; }
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace wanderer

#endif
