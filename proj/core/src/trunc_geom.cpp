#include "wanderer/trunc_geom.hpp"

#include <limits>

#include "wanderer/error.hpp"

namespace wanderer {

namespace {

void check(const TruncGeom& d) {
    if (!(d.q >= 0.0 && d.q < 1.0)) throw Error(ErrorCode::InvalidParams, "q must lie in [0,1)");
    if (d.b && *d.b < d.a) throw Error(ErrorCode::InvalidParams, "need a <= b");
}

double log_q(double q) { return q > 0.0 ? std::log(q) : -std::numeric_limits<double>::infinity(); }

}  // namespace

double pmf(const TruncGeom& d, std::int64_t x) {
    check(d);
    if (x < d.a || (d.b && x > *d.b)) return 0.0;
    if (d.q == 0.0) return x == d.a ? 1.0 : 0.0;
    const double lq = std::log(d.q);
    const double head = std::exp(static_cast<double>(x - d.a) * lq) * (1.0 - d.q);
    if (!d.b) return head;
    return head / -std::expm1(static_cast<double>(*d.b - d.a + 1) * lq);
}

double cdf(const TruncGeom& d, double x) {
    check(d);
    if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
    if (x < static_cast<double>(d.a)) return 0.0;
    if (d.b && x >= static_cast<double>(*d.b)) return 1.0;
    if (!std::isfinite(x)) return 1.0;
    const auto xi = static_cast<std::int64_t>(std::floor(x));
    return detail::cdf_int(d.a, d.b.value_or(0), d.b.has_value(), d.q, log_q(d.q), xi);
}

std::int64_t quantile(const TruncGeom& d, double u) {
    check(d);
    if (!(u > 0.0 && u < 1.0)) throw Error(ErrorCode::InvalidParams, "quantile needs u in (0,1)");
    return detail::quantile_impl(d.a, d.b.value_or(0), d.b.has_value(), d.q, log_q(d.q), u);
}

bool dominates(const TruncGeom& d1, const TruncGeom& d2) {
    if (d1.q > d2.q || d1.a > d2.a) return false;
    if (!d2.b) return true;
    return d1.b.has_value() && *d1.b <= *d2.b;
}

}  // namespace wanderer
