#include "wanderer/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "wanderer/error.hpp"

namespace wanderer {

namespace {

GaussLegendre compute_gl(int n) {
    GaussLegendre g;
    g.x.resize(static_cast<std::size_t>(n));
    g.w.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - (n == 1 ? 1.0 : p0)) / (x * x - 1.0);
        g.x[static_cast<std::size_t>(i)] = x;
        g.w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    std::reverse(g.x.begin(), g.x.end());
    std::reverse(g.w.begin(), g.w.end());
    return g;
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidParams, "Gauss-Legendre order must be positive");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GaussLegendre>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GaussLegendre>(compute_gl(n));
    return *slot;
}

double integrate(const std::function<double(double)>& f, double a, double b, int panels, int order) {
    const GaussLegendre& g = gauss_legendre(order);
    const double h = (b - a) / panels;
    double s = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        for (std::size_t k = 0; k < g.x.size(); ++k) s += g.w[k] * f(lo + 0.5 * h * (g.x[k] + 1.0));
    }
    return 0.5 * h * s;
}

void validate(const ContourSpec& s) {
    if (!(s.truncation_radius > 0.0) || s.panels_per_ray <= 0 || s.nodes_per_panel <= 0 || s.grading_levels < 0 ||
        !(s.grading_ratio > 0.0 && s.grading_ratio < 1.0))
        throw Error(ErrorCode::InvalidParams, "contour spec needs positive radius and node counts");
}

cplx ray_direction(Orientation o, bool upper) {
    const double c = std::numbers::sqrt2 / 2.0;
    if (o == Orientation::Plus) return upper ? cplx(c, c) : cplx(c, -c);
    return upper ? cplx(-c, c) : cplx(-c, -c);
}

std::vector<double> ray_breakpoints(const ContourSpec& s) {
    validate(s);
    const double R = s.truncation_radius;
    const double h = R / s.panels_per_ray;
    std::vector<double> pts;
    for (int p = 0; p <= s.panels_per_ray; ++p) pts.push_back(p * h);
    std::vector<double> sing{0.0};
    for (double r : s.singular_radii)
        if (r > 0.0 && r < R) sing.push_back(r);
    for (double r0 : sing) {
        double d = std::min(h, 0.5);
        for (int l = 0; l < s.grading_levels; ++l) {
            d *= s.grading_ratio;
            if (r0 - d > 0.0) pts.push_back(r0 - d);
            if (r0 + d < R) pts.push_back(r0 + d);
        }
        if (r0 > 0.0) pts.push_back(r0);
    }
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    for (double v : pts)
        if (out.empty() || v - out.back() > 1e-14) out.push_back(v);
    return out;
}

ContourNodes build_contour(const ContourSpec& s) {
    const std::vector<double> br = ray_breakpoints(s);
    const GaussLegendre& g = gauss_legendre(s.nodes_per_panel);
    ContourNodes out;
    // lower ray traversed toward the anchor, upper ray away from it
    for (int side = 0; side < 2; ++side) {
        const bool upper = side == 1;
        const cplx dir = ray_direction(s.orientation, upper);
        const double sign = upper ? 1.0 : -1.0;
        std::vector<cplx> zs, ws;
        for (std::size_t p = 0; p + 1 < br.size(); ++p) {
            const double lo = br[p], hi = br[p + 1], half = 0.5 * (hi - lo);
            for (std::size_t k = 0; k < g.x.size(); ++k) {
                const double r = lo + half * (g.x[k] + 1.0);
                zs.push_back(s.anchor + r * dir);
                ws.push_back(sign * half * g.w[k] * dir);
            }
        }
        if (!upper) {
            std::reverse(zs.begin(), zs.end());
            std::reverse(ws.begin(), ws.end());
        }
        out.z.insert(out.z.end(), zs.begin(), zs.end());
        out.dz.insert(out.dz.end(), ws.begin(), ws.end());
    }
    return out;
}

ContourSpec plan_contour(double anchor, Orientation o, const std::vector<LogFactor>& factors, const PlanOptions& opt) {
    const double step = 0.02;
    const double log_tol = std::log(opt.tol);
    double R = 1.0;
    double rate = 1.0;
    for (int side = 0; side < 2; ++side) {
        const cplx dir = ray_direction(o, side == 1);
        for (const LogFactor& f : factors) {
            double peak = -1e300;
            double last_big = 0.0;
            cplx prev = f(cplx(anchor, 0.0));
            peak = prev.real();
            double local_rate = 0.0;
            std::vector<double> rates;
            for (double r = step; r <= opt.max_radius; r += step) {
                const cplx cur = f(anchor + r * dir);
                double dim = cur.imag() - prev.imag();
                dim = std::remainder(dim, 2.0 * std::numbers::pi);
                const double d = std::hypot(cur.real() - prev.real(), dim) / step;
                prev = cur;
                if (!std::isfinite(cur.real())) continue;
                peak = std::max(peak, cur.real());
                if (cur.real() >= peak + log_tol) {
                    last_big = r;
                    local_rate = std::max(local_rate, d);
                }
                if (cur.real() < peak + log_tol - 60.0 && r > 1.0) break;
            }
            R = std::max(R, last_big + 0.25);
            rate = std::max(rate, local_rate);
        }
    }
    ContourSpec s;
    s.anchor = anchor;
    s.orientation = o;
    s.truncation_radius = R;
    s.nodes_per_panel = opt.nodes_per_panel;
    s.panels_per_ray = std::max(opt.min_panels, static_cast<int>(std::ceil(R * rate / opt.phase_budget)));
    return s;
}

}  // namespace wanderer
