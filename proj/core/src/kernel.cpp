#include "wanderer/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wanderer/error.hpp"

namespace wanderer {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void guard_pole(cplx z, double pole, double guard) {
    if (std::abs(z - pole) < guard * std::max(1.0, std::abs(pole)))
        throw Error(ErrorCode::PoleProximity, "evaluation point too close to a pole of Phi");
}

cplx log_f(cplx z, double t, double x, const ParamSet& p, double guard) {
    return z * z * z / 3.0 - x * z + log_phi(z + t, p, guard);
}

cplx log_g(cplx w, double t, double x, const ParamSet& p, double guard) {
    return -w * w * w / 3.0 + x * w - log_phi(w + t, p, guard);
}

// integral of dw/(z - w) along the straight segment from a to b
cplx cauchy_segment(cplx z, cplx a, cplx b) { return -std::log((z - b) / (z - a)); }

const cplx kPrefactor(-1.0 / (4.0 * std::numbers::pi * std::numbers::pi), 0.0);

}  // namespace

cplx log_phi(cplx z, const ParamSet& p, double guard) {
    const bool minus = !p.a_minus.empty() || !p.b_minus.empty() || p.c_minus != 0.0;
    if (minus && std::abs(z) < guard) throw Error(ErrorCode::PoleProximity, "Phi evaluated at 0");
    cplx s = p.c_plus * z;
    if (p.c_minus != 0.0) s += p.c_minus / z;
    for (double a : p.a_plus) {
        guard_pole(z, 1.0 / a, guard);
        s -= std::log(1.0 - a * z);
    }
    for (double a : p.a_minus) {
        guard_pole(z, a, guard);
        s -= std::log(1.0 - a / z);
    }
    for (double b : p.b_plus) s += std::log(1.0 + b * z);
    for (double b : p.b_minus) s += std::log(1.0 + b / z);
    return s;
}

cplx phi(cplx z, const ParamSet& p, double guard) {
    const bool trivial = p.a_plus.empty() && p.a_minus.empty() && p.b_plus.empty() && p.b_minus.empty() &&
                         p.c_plus == 0.0 && p.c_minus == 0.0;
    if (trivial) return 1.0;
    return std::exp(log_phi(z, p, guard));
}

std::optional<SegmentEnds> gamma_segment(double A, double B) {
    if (!(B > A)) return std::nullopt;
    const double c = 0.5 * (A + B), h = 0.5 * (B - A);
    return SegmentEnds{cplx(c, -h), cplx(c, h)};
}

AnchorWindow anchor_window(const ParamSet& p) {
    if (p.c_minus != 0.0) return {0.0, 0.0};
    double hi = p.a_plus.empty() ? kInf : 1.0 / p.a_plus.front();
    double lo = p.b_plus.empty() ? -kInf : -1.0 / p.b_plus.front();
    if (!p.a_minus.empty()) {
        hi = std::min(hi, p.a_minus.back());
        lo = std::max(lo, 0.0);
    }
    if (!p.b_minus.empty()) {
        lo = std::max(lo, -p.b_minus.back());
        hi = std::min(hi, 0.0);
    }
    return {lo, hi};
}

double K2(const KernelQuery& q) {
    if (!(q.t2 > q.t1)) return 0.0;
    const double d = q.t2 - q.t1, dx = q.x2 - q.x1;
    return -std::exp(-dx * dx / (4.0 * d) - d * (q.x2 + q.x1) / 2.0 + d * d * d / 12.0) /
           std::sqrt(4.0 * std::numbers::pi * d);
}

Kernel::Kernel(ParamSet p, KernelOptions opt) : p_(std::move(p)), opt_(opt), win_(anchor_window(p_)) {
    if (!p_.is_fin()) throw Error(ErrorCode::InvalidParams, "kernel evaluation needs P_fin parameters");
    if (!(opt_.tol > 0.0) || opt_.nodes_per_panel <= 0 || !(opt_.phase_budget > 0.0))
        throw Error(ErrorCode::InvalidParams, "kernel options must be positive");
}

bool Kernel::admissible(const KernelQuery& q) const {
    const DomainEdges e = domain_edges(p_);
    return q.alpha + q.t1 < e.underline_a && q.beta + q.t2 > e.underline_b;
}

cplx Kernel::K1(const KernelQuery& q) const {
    const auto seg = gamma_segment(q.alpha + q.t1, q.beta + q.t2);
    if (!seg) return 0.0;
    const double c = seg->u_plus.real(), h = seg->u_plus.imag();
    const double dt = q.t2 - q.t1;
    const double c1 = q.t1 * q.t1 - q.t2 * q.t2 + q.x2 - q.x1;
    const double c0 = q.x1 * q.t1 - q.x2 * q.t2 - q.t1 * q.t1 * q.t1 / 3.0 + q.t2 * q.t2 * q.t2 / 3.0;
    const double rate = 2.0 * std::abs(dt) * std::abs(seg->u_plus) + std::abs(c1);
    const int panels = 2 + static_cast<int>(std::ceil(2.0 * h * rate / opt_.phase_budget + 2.0 * h));
    const GaussLegendre& g = gauss_legendre(opt_.nodes_per_panel);
    const double width = 2.0 * h / panels;
    cplx s = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = -h + p * width;
        for (std::size_t k = 0; k < g.x.size(); ++k) {
            const cplx w(c, lo + 0.5 * width * (g.x[k] + 1.0));
            s += g.w[k] * std::exp(dt * w * w + c1 * w + c0);
        }
    }
    return s * (0.5 * width) / (2.0 * std::numbers::pi);
}

cplx Kernel::K3(const KernelQuery& q) const {
    if (!admissible(q)) throw Error(ErrorCode::Inadmissible, "anchors violate the domain edges");
    return K3_unchecked(q);
}

cplx Kernel::K3_unchecked(const KernelQuery& q) const {
    const double guard = opt_.pole_guard;
    const double A = q.alpha + q.t1, B = q.beta + q.t2;
    PlanOptions po;
    po.tol = opt_.tol;
    po.nodes_per_panel = opt_.nodes_per_panel;
    po.phase_budget = opt_.phase_budget;
    const ParamSet& p = p_;
    ContourSpec zs = plan_contour(q.alpha, Orientation::Plus,
                                  {[&](cplx z) { return log_f(z, q.t1, q.x1, p, guard); }}, po);
    ContourSpec ws = plan_contour(q.beta, Orientation::Minus,
                                  {[&](cplx w) { return log_g(w, q.t2, q.x2, p, guard); }}, po);
    if (B > A) zs.singular_radii.push_back((B - A) / std::numbers::sqrt2);
    const ContourNodes Z = build_contour(zs), W = build_contour(ws);

    std::vector<cplx> gw(W.size()), wshift(W.size());
    for (std::size_t j = 0; j < W.size(); ++j) {
        gw[j] = std::exp(log_g(W.z[j], q.t2, q.x2, p, guard)) * W.dz[j];
        wshift[j] = W.z[j] + q.t2;
    }
    const double R = ws.truncation_radius;
    const cplx far_lo = B + R * ray_direction(Orientation::Minus, false);
    const cplx far_hi = B + R * ray_direction(Orientation::Minus, true);

    cplx total = 0.0;
    for (std::size_t i = 0; i < Z.size(); ++i) {
        const cplx z = Z.z[i], zp = z + q.t1;
        cplx direct = 0.0, plain = 0.0;
        for (std::size_t j = 0; j < W.size(); ++j) {
            const cplx inv = 1.0 / (zp - wshift[j]);
            direct += gw[j] * inv;
            plain += W.dz[j] * inv;
        }
        const cplx exact = cauchy_segment(zp, far_lo, cplx(B, 0.0)) + cauchy_segment(zp, cplx(B, 0.0), far_hi);
        // f(z) g(z') has Phi cancelled, so only the exponentials remain
        const cplx ws_ = zp - q.t2;
        const cplx fg = std::exp(z * z * z / 3.0 - q.x1 * z - ws_ * ws_ * ws_ / 3.0 + q.x2 * ws_);
        const cplx fi = std::exp(log_f(z, q.t1, q.x1, p, guard));
        total += Z.dz[i] * (fi * direct + fg * (exact - plain));
    }
    return kPrefactor * total;
}

cplx Kernel::K(const KernelQuery& q) const { return K1(q) + K2(q) + K3(q); }

KernelQuery Kernel::default_query(double t1, double x1, double t2, double x2) const {
    KernelQuery q{t1, x1, t2, x2, 0.0, 0.0};
    const double A0 = std::sqrt(std::max(x1, 0.0)) + t1;
    const double B0 = -std::sqrt(std::max(x2, 0.0)) + t2;
    const double gap = win_.hi - win_.lo;
    const double m = std::isinf(gap) || gap <= 0.0 ? 0.5 : std::min(0.2 * gap, 0.5);
    double A = std::min(A0, win_.hi - m);
    double B = std::max(B0, win_.lo + m);
    if (gap > 0.0) {
        const double sep = std::isinf(gap) ? 1.0 : std::min(0.4 * gap, 1.0);
        if (A - B < sep) {
            // non-crossing contours, unless that moves them far from the saddles
            double c = 0.5 * (A + B);
            c = std::clamp(c, win_.lo + m + 0.5 * sep, win_.hi - m - 0.5 * sep);
            const double An = c + 0.5 * sep, Bn = c - 0.5 * sep;
            const double cost = std::abs(An * An * An - A0 * A0 * A0) + std::abs(Bn * Bn * Bn - B0 * B0 * B0);
            if (cost < 6.0 || !(std::abs(t1 - t2) > 0.0)) {
                A = An;
                B = Bn;
            }
        }
    }
    q.alpha = A - t1;
    q.beta = B - t2;
    return q;
}

cplx Kernel::operator()(double t1, double x1, double t2, double x2) const {
    const KernelQuery q = default_query(t1, x1, t2, x2);
    return K1(q) + K2(q) + K3_unchecked(q);
}

KernelEstimate Kernel::evaluate(double t1, double x1, double t2, double x2) const {
    const KernelQuery q = default_query(t1, x1, t2, x2);
    const cplx v = K1(q) + K2(q) + K3_unchecked(q);
    KernelOptions fine = opt_;
    fine.nodes_per_panel = opt_.nodes_per_panel + 8;
    fine.tol = opt_.tol * 1e-2;
    fine.phase_budget = opt_.phase_budget * 0.6;
    const Kernel refined(p_, fine);
    const cplx vf = refined.K1(q) + K2(q) + refined.K3_unchecked(q);
    return {v, std::abs(v - vf), q};
}

Eigen::MatrixXd Kernel::equal_time_matrix(double t, const std::vector<double>& xs,
                                          const std::vector<double>& ys) const {
    const std::size_t nx = xs.size(), ny = ys.size();
    Eigen::MatrixXd out(static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(ny));
    if (nx == 0 || ny == 0) return out;
    const auto [xlo, xhi] = std::minmax_element(xs.begin(), xs.end());
    const auto [ylo, yhi] = std::minmax_element(ys.begin(), ys.end());
    const KernelQuery q = default_query(t, *xlo, t, *ylo);
    if (!(q.alpha > q.beta)) {
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t j = 0; j < ny; ++j)
                out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(t, xs[i], t, ys[j]).real();
        return out;
    }
    const double guard = opt_.pole_guard;
    const ParamSet& p = p_;
    PlanOptions po;
    po.tol = opt_.tol;
    po.nodes_per_panel = opt_.nodes_per_panel;
    po.phase_budget = opt_.phase_budget;
    std::vector<LogFactor> fz, fw;
    for (double x : {*xlo, *xhi}) fz.push_back([&, x](cplx z) { return log_f(z, t, x, p, guard); });
    for (double y : {*ylo, *yhi}) fw.push_back([&, y](cplx w) { return log_g(w, t, y, p, guard); });
    const ContourNodes Z = build_contour(plan_contour(q.alpha, Orientation::Plus, fz, po));
    const ContourNodes W = build_contour(plan_contour(q.beta, Orientation::Minus, fw, po));

    const auto nz = static_cast<Eigen::Index>(Z.size()), nw = static_cast<Eigen::Index>(W.size());
    Eigen::MatrixXcd E1(static_cast<Eigen::Index>(nx), nz), D(nz, nw), E2(nw, static_cast<Eigen::Index>(ny));
    for (Eigen::Index a = 0; a < nz; ++a) {
        const cplx z = Z.z[static_cast<std::size_t>(a)];
        const cplx base = z * z * z / 3.0 + log_phi(z + t, p, guard);
        for (std::size_t i = 0; i < nx; ++i)
            E1(static_cast<Eigen::Index>(i), a) = std::exp(base - xs[i] * z) * Z.dz[static_cast<std::size_t>(a)];
        for (Eigen::Index b = 0; b < nw; ++b) D(a, b) = 1.0 / (z - W.z[static_cast<std::size_t>(b)]);
    }
    for (Eigen::Index b = 0; b < nw; ++b) {
        const cplx w = W.z[static_cast<std::size_t>(b)];
        const cplx base = -w * w * w / 3.0 - log_phi(w + t, p, guard);
        for (std::size_t j = 0; j < ny; ++j)
            E2(b, static_cast<Eigen::Index>(j)) = std::exp(base + ys[j] * w) * W.dz[static_cast<std::size_t>(b)];
    }
    const Eigen::MatrixXcd Kc = kPrefactor * (E1 * D * E2);
    return Kc.real();
}

}  // namespace wanderer
