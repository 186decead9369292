#ifndef WANDERER_TRUNC_GEOM_HPP
#define WANDERER_TRUNC_GEOM_HPP

#include <cmath>
#include <cstdint>
#include <optional>

namespace wanderer {

// Geometric(q) conditioned to [0, b-a] and shifted by a. An empty b means b = +infinity.
struct TruncGeom {
    std::int64_t a = 0;
    std::optional<std::int64_t> b;
    double q = 0.0;
};

double pmf(const TruncGeom& d, std::int64_t x);
double cdf(const TruncGeom& d, double x);
std::int64_t quantile(const TruncGeom& d, double u);
bool dominates(const TruncGeom& d1, const TruncGeom& d2);

namespace detail {

// cdf at an integer point, with log q supplied by the caller
inline double cdf_int(std::int64_t a, std::int64_t b, bool bounded, double q, double logq, std::int64_t x) {
    if (x < a) return 0.0;
    if (bounded && x >= b) return 1.0;
    if (q == 0.0) return 1.0;
    const double num = -std::expm1(static_cast<double>(x - a + 1) * logq);
    if (!bounded) return num;
    return num / -std::expm1(static_cast<double>(b - a + 1) * logq);
}

// Smallest x >= a with cdf(x) >= u. The log inversion gives a candidate; when the
// continuous solution sits close to an integer, or the upper tail is so thin that the
// cdf itself is rounding-limited, the candidate is settled by exact cdf comparisons.
inline std::int64_t quantile_impl(std::int64_t a, std::int64_t b, bool bounded, double q, double logq, double u) {
    if (q == 0.0 || (bounded && a == b)) return a;
    const double c = bounded ? -std::expm1(static_cast<double>(b - a + 1) * logq) : 1.0;
    const double s = 1.0 - u * c;  // q^k must drop to s
    const double r = std::log1p(-u * c) / logq;
    double k = std::ceil(r);
    if (k < 1.0) k = 1.0;
    const double hi = bounded ? static_cast<double>(b - a) : 9.0e18;
    std::int64_t x = a + static_cast<std::int64_t>(std::min(k - 1.0, hi));
    const double frac = r - std::floor(r);
    const double guard = 1e-9 + 1e-12 * r + 1e-13 / (s * -logq);
    if (frac < guard || frac > 1.0 - guard || !(s > 0.0) || k - 1.0 > hi) {
        while (cdf_int(a, b, bounded, q, logq, x) < u) ++x;
        while (x > a && cdf_int(a, b, bounded, q, logq, x - 1) >= u) --x;
    }
    return x;
}

}  // namespace detail

}  // namespace wanderer

#endif
