#include "wanderer/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numeric>

#include "wanderer/error.hpp"
#include "wanderer/noise.hpp"

namespace wanderer {

double mean(const std::vector<double>& v) {
    if (v.empty()) throw Error(ErrorCode::InvalidParams, "mean of an empty sample");
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v) {
    if (v.size() < 2) throw Error(ErrorCode::InvalidParams, "variance needs two observations");
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

double standard_error(const std::vector<double>& v) { return std::sqrt(variance(v) / static_cast<double>(v.size())); }

double quantile(std::vector<double> v, double p) {
    if (v.empty()) throw Error(ErrorCode::InvalidParams, "quantile of an empty sample");
    std::sort(v.begin(), v.end());
    const double h = (static_cast<double>(v.size()) - 1.0) * std::clamp(p, 0.0, 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

double median(const std::vector<double>& v) { return quantile(v, 0.5); }

double kolmogorov_survival(double lambda) {
    if (lambda <= 0.0) return 1.0;
    if (lambda < 0.2) return 1.0;
    double s = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        s += (k % 2 == 1 ? term : -term);
        if (term < 1e-17) break;
    }
    return std::clamp(2.0 * s, 0.0, 1.0);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::InvalidParams, "KS test needs nonempty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    return {d, kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d)};
}

KsResult ks_one_sample(std::vector<double> a, const std::function<double(double)>& cdf) {
    if (a.empty()) throw Error(ErrorCode::InvalidParams, "KS test needs a nonempty sample");
    std::sort(a.begin(), a.end());
    const double n = static_cast<double>(a.size());
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double F = cdf(a[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - F, F - static_cast<double>(i) / n});
    }
    const double rn = std::sqrt(n);
    return {d, kolmogorov_survival((rn + 0.12 + 0.11 / rn) * d)};
}

ChiSquareResult chi_square(const std::vector<double>& observed, const std::vector<double>& expected, double min_expected) {
    if (observed.size() != expected.size()) throw Error(ErrorCode::InvalidParams, "chi-square size mismatch");
    ChiSquareResult r;
    double pool_o = 0.0, pool_e = 0.0;
    int cells = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] < min_expected) {
            pool_o += observed[i];
            pool_e += expected[i];
            continue;
        }
        r.statistic += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
        ++cells;
    }
    if (pool_e > 0.0) {
        r.statistic += (pool_o - pool_e) * (pool_o - pool_e) / pool_e;
        ++cells;
    }
    r.dof = cells - 1;
    r.p_value = r.dof > 0 ? boost::math::gamma_q(0.5 * r.dof, 0.5 * r.statistic) : 1.0;
    return r;
}

double dkw_epsilon(std::size_t n, double alpha) {
    if (n == 0 || !(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::InvalidParams, "DKW needs n > 0, alpha in (0,1)");
    return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

double empirical_cdf(const std::vector<double>& sorted, double x) {
    if (sorted.empty()) return 0.0;
    return static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin()) /
           static_cast<double>(sorted.size());
}

Interval bootstrap_ci(const std::vector<double>& sample, const std::function<double(const std::vector<double>&)>& stat,
                      std::size_t resamples, double level, std::uint64_t seed) {
    if (sample.empty() || resamples == 0) throw Error(ErrorCode::InvalidParams, "bootstrap needs data");
    const NoiseField f(seed);
    std::vector<double> stats(resamples), buf(sample.size());
    for (std::size_t r = 0; r < resamples; ++r) {
        for (std::size_t i = 0; i < sample.size(); ++i) {
            const auto idx = static_cast<std::size_t>(f(static_cast<std::int64_t>(r), static_cast<std::int64_t>(i), 0) *
                                                      static_cast<double>(sample.size()));
            buf[i] = sample[std::min(idx, sample.size() - 1)];
        }
        stats[r] = stat(buf);
    }
    const double a = 0.5 * (1.0 - level);
    return {quantile(stats, a), quantile(stats, 1.0 - a)};
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3) throw Error(ErrorCode::InvalidParams, "linear fit needs 3 points");
    const double mx = mean(x), my = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw Error(ErrorCode::InvalidParams, "linear fit needs distinct x");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - f.intercept - f.slope * x[i];
        rss += e * e;
    }
    f.slope_se = std::sqrt(rss / static_cast<double>(x.size() - 2) / sxx);
    return f;
}

}  // namespace wanderer
