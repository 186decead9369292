#include "wanderer/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wanderer/error.hpp"
#include "wanderer/kernel.hpp"

namespace wanderer {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
const cplx kC1(0.0, -1.0 / (2.0 * kPi));         // 1/(2 pi i)
const cplx kC2(-1.0 / (4.0 * kPi * kPi), 0.0);   // 1/(2 pi i)^2
const double kC4 = 1.0 / (16.0 * kPi * kPi * kPi * kPi);

void require_pos(const ParamSet& p) {
    if (!p.is_pos()) throw Error(ErrorCode::InvalidParams, "moment formulas need P_pos parameters");
}

bool strictly_decreasing(const std::vector<double>& a) {
    for (std::size_t i = 1; i < a.size(); ++i)
        if (!(a[i] < a[i - 1])) return false;
    return true;
}

struct Profile {
    MeasureKind kind;
    double t;

    cplx s(cplx z) const {
        if (kind == MeasureKind::Scaled) return z * z * z / 3.0 - t * z * z;
        const cplx d = z - t;
        return d * d * d / 3.0;
    }
    double kappa() const { return kind == MeasureKind::Scaled ? t : 1.0; }
    double gauge(double x) const { return kind == MeasureKind::Scaled ? t * t * x : t * x; }
    double factor() const { return kind == MeasureKind::Scaled ? t : 1.0; }
    double saddle(double x) const {
        if (kind == MeasureKind::Scaled) {
            const double r = t * t + t * x;
            return r > 0.0 ? t - std::sqrt(r) : t;
        }
        return t - std::sqrt(std::max(x, 0.0));
    }
    cplx Sz(cplx z, double x) const { return s(z) - kappa() * z * x; }
    cplx Sw(cplx w, double y) const { return -s(w) + kappa() * w * y; }
};

double phi_hat(const ParamSet& p, std::size_t j) {
    const double aj = p.a_plus[j];
    double v = 1.0 / aj;
    for (double b : p.b_plus) v *= 1.0 + b / aj;
    for (std::size_t i = 0; i < p.a_plus.size(); ++i)
        if (i != j) v /= 1.0 - p.a_plus[i] / aj;
    return v;
}

double lower_edge(const ParamSet& p) { return p.b_plus.empty() ? -kInf : -1.0 / p.b_plus.front(); }

double pole_radius(const ParamSet& p) {
    double rho = 0.15;
    for (std::size_t i = 0; i < p.a_plus.size(); ++i) {
        rho = std::min(rho, 0.3 / p.a_plus[i]);
        if (i > 0) rho = std::min(rho, 0.3 * (1.0 / p.a_plus[i] - 1.0 / p.a_plus[i - 1]));
    }
    return rho;
}

struct Anchors {
    double u, v;
};

// w-contour anchor u < z-contour anchor v near c, both kept away from the poles 1/a_i
Anchors place_anchors(double c, const ParamSet& p) {
    const double rho = pole_radius(p);
    const double s = std::max(rho, 0.05);
    const double lo = lower_edge(p);
    const double margin = std::isinf(lo) ? 0.0 : std::min(0.25, 0.25 * std::abs(lo));
    double v = c + s, u = c - s;
    for (int pass = 0; pass < 4; ++pass) {
        for (double a : p.a_plus) {
            const double P = 1.0 / a;
            if (std::abs(v - P) < rho) v = P + rho;
            if (std::abs(u - P) < rho) u = P - rho;
        }
        if (u < lo + margin) u = lo + margin;
        if (v < u + 0.05) v = u + 2.0 * s;
    }
    for (double a : p.a_plus)
        if (std::abs(u - 1.0 / a) < 0.5 * rho || std::abs(v - 1.0 / a) < 0.5 * rho)
            throw Error(ErrorCode::PoleProximity, "could not place contours away from the poles");
    return {u, v};
}

PlanOptions plan_options(const MomentOptions& opt) {
    PlanOptions po;
    po.tol = opt.tol;
    po.nodes_per_panel = opt.nodes_per_panel;
    po.phase_budget = opt.phase_budget;
    return po;
}

// crossed poles 1/a_j < v with their indices; throws when the crossed ones repeat
std::vector<std::size_t> crossed_poles(const ParamSet& p, double v) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < p.a_plus.size(); ++j)
        if (1.0 / p.a_plus[j] < v) out.push_back(j);
    for (std::size_t i = 1; i < out.size(); ++i)
        if (p.a_plus[out[i]] == p.a_plus[out[i - 1]])
            throw Error(ErrorCode::DegenerateParams, "repeated a-entries give higher order poles");
    return out;
}

struct MomentParts {
    double value = 0.0;
    double A = 0.0;
    std::vector<double> A_j;
    int unit_residues = 0;
};

// (2 pi i)^-2 int_{Gamma_v^+} int_{Gamma_u^-} e^{Sz(z) + Sw(w)} / (z - w)^2 Phi(z)/Phi(w), transported
// from the original contours: residues at the crossed poles of Phi(z), and a unit residue for each
// of those that the w-contour also crossed
MomentParts moment_value(const Profile& pr, double x, const ParamSet& p, double u, double v, const MomentOptions& opt) {
    if (!(u < v)) throw Error(ErrorCode::InvalidParams, "w-contour must lie left of the z-contour");
    const auto logF = [&](cplx z) { return pr.Sz(z, x) + log_phi(z, p); };
    const auto logG = [&](cplx w) { return pr.Sw(w, x) - log_phi(w, p); };
    const PlanOptions po = plan_options(opt);
    const ContourNodes Z = build_contour(plan_contour(v, Orientation::Plus, {logF}, po));
    const ContourNodes W = build_contour(plan_contour(u, Orientation::Minus, {logG}, po));
    const double shf = logF(cplx(v, 0.0)).real(), shg = logG(cplx(u, 0.0)).real();

    std::vector<cplx> g(W.size());
    for (std::size_t b = 0; b < W.size(); ++b) g[b] = std::exp(logG(W.z[b]) - shg) * W.dz[b];
    cplx I = 0.0;
    for (std::size_t a = 0; a < Z.size(); ++a) {
        const cplx z = Z.z[a];
        cplx inner = 0.0;
        for (std::size_t b = 0; b < W.size(); ++b) {
            const cplx d = 1.0 / (z - W.z[b]);
            inner += g[b] * d * d;
        }
        I += std::exp(logF(z) - shf) * Z.dz[a] * inner;
    }
    MomentParts out;
    out.A = (kC2 * I * std::exp(shf + shg)).real();
    out.value = out.A;
    for (std::size_t j : crossed_poles(p, v)) {
        const double P = 1.0 / p.a_plus[j];
        const cplx ez = pr.Sz(cplx(P, 0.0), x);
        cplx r = 0.0;
        for (std::size_t b = 0; b < W.size(); ++b) {
            const cplx d = 1.0 / (P - W.z[b]);
            r += std::exp(ez + logG(W.z[b])) * W.dz[b] * d * d;
        }
        const double Aj = (kC1 * r * phi_hat(p, j)).real();
        out.A_j.push_back(Aj);
        out.value += Aj;
        if (P < u) {
            ++out.unit_residues;
            out.value += 1.0;
        }
    }
    return out;
}

}  // namespace

std::optional<int> window_index(double alpha_hat, const ParamSet& p) {
    if (!(alpha_hat < 0.0)) return std::nullopt;
    int k = 0;
    for (double a : p.a_plus) {
        const double edge = -2.0 / a;
        if (alpha_hat == edge) return std::nullopt;
        if (alpha_hat < edge) ++k;
    }
    return k;
}

Eigen::MatrixXd measure_kernel_matrix(MeasureKind kind, double t, const std::vector<double>& xs,
                                      const std::vector<double>& ys, const ParamSet& p, const MomentOptions& opt) {
    require_pos(p);
    if (!(t > 0.0)) throw Error(ErrorCode::InvalidParams, "t must be positive");
    const auto nx = static_cast<Eigen::Index>(xs.size()), ny = static_cast<Eigen::Index>(ys.size());
    Eigen::MatrixXd out(nx, ny);
    if (nx == 0 || ny == 0) return out;
    const Profile pr{kind, t};
    const auto [xlo, xhi] = std::minmax_element(xs.begin(), xs.end());
    const auto [ylo, yhi] = std::minmax_element(ys.begin(), ys.end());
    const double c = 0.25 * (pr.saddle(*xlo) + pr.saddle(*xhi) + pr.saddle(*ylo) + pr.saddle(*yhi));
    const Anchors an = place_anchors(c, p);

    std::vector<LogFactor> fz, fw;
    for (double x : {*xlo, *xhi}) fz.push_back([&, x](cplx z) { return pr.Sz(z, x) + log_phi(z, p); });
    for (double y : {*ylo, *yhi}) fw.push_back([&, y](cplx w) { return pr.Sw(w, y) - log_phi(w, p); });
    const PlanOptions po = plan_options(opt);
    const ContourNodes Z = build_contour(plan_contour(an.v, Orientation::Plus, fz, po));
    const ContourNodes W = build_contour(plan_contour(an.u, Orientation::Minus, fw, po));
    const auto nz = static_cast<Eigen::Index>(Z.size()), nw = static_cast<Eigen::Index>(W.size());

    std::vector<double> sx(xs.size()), sy(ys.size());
    const cplx lpv = log_phi(cplx(an.v, 0.0), p), lpu = log_phi(cplx(an.u, 0.0), p);
    for (std::size_t i = 0; i < xs.size(); ++i) sx[i] = (pr.Sz(an.v, xs[i]) + lpv).real();
    for (std::size_t j = 0; j < ys.size(); ++j) sy[j] = (pr.Sw(an.u, ys[j]) - lpu).real();

    Eigen::MatrixXcd E1(nx, nz), D(nz, nw), E2(nw, ny);
    for (Eigen::Index a = 0; a < nz; ++a) {
        const cplx z = Z.z[static_cast<std::size_t>(a)];
        const cplx base = pr.s(z) + log_phi(z, p);
        for (Eigen::Index i = 0; i < nx; ++i)
            E1(i, a) = std::exp(base - pr.kappa() * z * xs[static_cast<std::size_t>(i)] - sx[static_cast<std::size_t>(i)]) *
                       Z.dz[static_cast<std::size_t>(a)];
        for (Eigen::Index b = 0; b < nw; ++b) D(a, b) = 1.0 / (z - W.z[static_cast<std::size_t>(b)]);
    }
    for (Eigen::Index b = 0; b < nw; ++b) {
        const cplx w = W.z[static_cast<std::size_t>(b)];
        const cplx base = -pr.s(w) - log_phi(w, p);
        for (Eigen::Index j = 0; j < ny; ++j)
            E2(b, j) = std::exp(base + pr.kappa() * w * ys[static_cast<std::size_t>(j)] - sy[static_cast<std::size_t>(j)]) *
                       W.dz[static_cast<std::size_t>(b)];
    }
    Eigen::MatrixXcd Kc = kC2 * (E1 * D * E2);
    const std::vector<std::size_t> poles = crossed_poles(p, an.v);
    if (!poles.empty()) {
        const auto np = static_cast<Eigen::Index>(poles.size());
        Eigen::MatrixXcd Rz(nx, np), Rw(np, ny);
        for (Eigen::Index k = 0; k < np; ++k) {
            const std::size_t j = poles[static_cast<std::size_t>(k)];
            const double P = 1.0 / p.a_plus[j];
            const double ph = phi_hat(p, j);
            for (Eigen::Index i = 0; i < nx; ++i)
                Rz(i, k) = ph * std::exp(pr.Sz(P, xs[static_cast<std::size_t>(i)]) - sx[static_cast<std::size_t>(i)]);
            for (Eigen::Index jj = 0; jj < ny; ++jj) {
                cplx r = 0.0;
                for (Eigen::Index b = 0; b < nw; ++b) r += E2(b, jj) / (P - W.z[static_cast<std::size_t>(b)]);
                Rw(k, jj) = kC1 * r;
            }
        }
        Kc += Rz * Rw;
    }
    for (Eigen::Index i = 0; i < nx; ++i)
        for (Eigen::Index j = 0; j < ny; ++j) {
            const double x = xs[static_cast<std::size_t>(i)], y = ys[static_cast<std::size_t>(j)];
            out(i, j) = pr.factor() * Kc(i, j).real() *
                        std::exp(sx[static_cast<std::size_t>(i)] + sy[static_cast<std::size_t>(j)] + pr.gauge(x) - pr.gauge(y));
        }
    return out;
}

double scaled_kernel(double x, double y, double t, const ParamSet& p, const MomentOptions& opt) {
    return measure_kernel_matrix(MeasureKind::Scaled, t, {x}, {y}, p, opt)(0, 0);
}

double first_moment(double alpha_hat, double t, const ParamSet& p, const MomentOptions& opt) {
    require_pos(p);
    if (!(t > 0.0)) throw Error(ErrorCode::InvalidParams, "t must be positive");
    const Profile pr{MeasureKind::Scaled, t};
    const Anchors an = place_anchors(pr.saddle(alpha_hat), p);
    return moment_value(pr, alpha_hat, p, an.u, an.v, opt).value;
}

double first_moment_direct(double alpha_hat, double t, const ParamSet& p, double alpha, const MomentOptions& opt) {
    require_pos(p);
    if (!(t > 0.0)) throw Error(ErrorCode::InvalidParams, "t must be positive");
    const double hi = p.a_plus.empty() ? kInf : 1.0 / p.a_plus.front();
    if (!(alpha > 0.0 && alpha < hi)) throw Error(ErrorCode::Inadmissible, "need 0 < alpha < 1/a_1");
    return moment_value(Profile{MeasureKind::Scaled, t}, alpha_hat, p, 0.0, alpha, opt).value;
}

ExpandedMoment first_moment_expanded(double alpha_hat, double t, const ParamSet& p, int k, const MomentOptions& opt) {
    require_pos(p);
    if (!strictly_decreasing(p.a_plus))
        throw Error(ErrorCode::DegenerateParams, "expanded moments need distinct a-entries");
    const auto kk = window_index(alpha_hat, p);
    if (!kk || *kk != k) throw Error(ErrorCode::HypothesisViolated, "alpha_hat is not in the k-th window");
    const double c = -0.5 * alpha_hat;
    double eps0 = std::abs(c);
    for (double a : p.a_plus) eps0 = std::min(eps0, std::abs(c - 1.0 / a));
    eps0 *= 0.5;
    ExpandedMoment e;
    e.k = k;
    e.delta = eps0 / 8.0;
    e.u = c + e.delta;
    e.v = c + 2.0 * e.delta;
    const MomentParts m = moment_value(Profile{MeasureKind::Scaled, t}, alpha_hat, p, e.u, e.v, opt);
    e.A = m.A;
    e.A_j = m.A_j;
    e.value = m.value;
    return e;
}

double flat_first_moment(double alpha_hat, double t, const ParamSet& p, const MomentOptions& opt) {
    require_pos(p);
    const Profile pr{MeasureKind::Flat, t};
    const Anchors an = place_anchors(pr.saddle(alpha_hat), p);
    return moment_value(pr, alpha_hat, p, an.u, an.v, opt).value;
}

double flat_first_moment_direct(double alpha_hat, double t, const ParamSet& p, double alpha, const MomentOptions& opt) {
    require_pos(p);
    const double hi = p.a_plus.empty() ? kInf : 1.0 / p.a_plus.front();
    if (!(alpha > 0.0 && alpha < hi)) throw Error(ErrorCode::Inadmissible, "need 0 < alpha < 1/a_1");
    return moment_value(Profile{MeasureKind::Flat, t}, alpha_hat, p, 0.0, alpha, opt).value;
}

ExpandedMoment flat_first_moment_expanded(double alpha_hat, double t, const ParamSet& p, const MomentOptions& opt) {
    require_pos(p);
    if (!strictly_decreasing(p.a_plus))
        throw Error(ErrorCode::DegenerateParams, "expanded moments need distinct a-entries");
    if (!p.a_plus.empty() && !(t > 1.0 + 1.0 / p.a_plus.back()))
        throw Error(ErrorCode::HypothesisViolated, "t must exceed 1 + 1/a_{J_a}");
    ExpandedMoment e;
    e.k = static_cast<int>(p.a_plus.size());
    e.u = t;
    e.v = t + 1.0;
    e.delta = 1.0;
    const MomentParts m = moment_value(Profile{MeasureKind::Flat, t}, alpha_hat, p, e.u, e.v, opt);
    e.A = m.A;
    e.A_j = m.A_j;
    e.value = m.value;
    return e;
}

namespace {

// B^t(x_a, x_b) for every ordered pair drawn from xs, on shared separated contours
Eigen::MatrixXd b_pieces(const std::vector<double>& xs, double t, const ParamSet& p, const MomentOptions& opt) {
    require_pos(p);
    if (!(t > 0.0)) throw Error(ErrorCode::InvalidParams, "t must be positive");
    const Profile pr{MeasureKind::Scaled, t};
    const double hi = p.a_plus.empty() ? kInf : 1.0 / p.a_plus.front();
    const double lo = lower_edge(p);
    const double rho = std::isinf(hi) ? 0.15 : std::min(0.15, 0.3 * hi);
    const double s = 0.1;
    double c = 0.0;
    for (double x : xs) c += pr.saddle(x);
    c /= static_cast<double>(xs.size());
    double v = std::min(c + s, hi - rho);
    double u = v - 2.0 * s;
    if (!std::isinf(lo) && u < lo + 0.25 * std::abs(lo)) u = lo + 0.25 * std::abs(lo);
    if (!(u < v)) throw Error(ErrorCode::PoleProximity, "no room for separated contours");

    std::vector<LogFactor> fz, fw;
    for (double x : xs) {
        fz.push_back([&, x](cplx z) { return pr.Sz(z, x) + log_phi(z, p); });
        fw.push_back([&, x](cplx w) { return pr.Sw(w, x) - log_phi(w, p); });
    }
    PlanOptions po;
    po.tol = opt.four_fold_tol;
    po.nodes_per_panel = opt.four_fold_nodes_per_panel;
    po.phase_budget = opt.four_fold_phase_budget;
    const ContourNodes Z = build_contour(plan_contour(v, Orientation::Plus, fz, po));
    const ContourNodes W = build_contour(plan_contour(u, Orientation::Minus, fw, po));
    const auto nz = static_cast<Eigen::Index>(Z.size()), nw = static_cast<Eigen::Index>(W.size());

    const double shf = (pr.s(v) + log_phi(v, p)).real(), shg = (-pr.s(u) - log_phi(u, p)).real();
    Eigen::VectorXcd F(nz), G(nw);
    Eigen::MatrixXcd D(nz, nw);
    for (Eigen::Index a = 0; a < nz; ++a) {
        const cplx z = Z.z[static_cast<std::size_t>(a)];
        F(a) = std::exp(pr.s(z) + log_phi(z, p) - shf) * Z.dz[static_cast<std::size_t>(a)];
        for (Eigen::Index b = 0; b < nw; ++b) D(a, b) = 1.0 / (z - W.z[static_cast<std::size_t>(b)]);
    }
    for (Eigen::Index b = 0; b < nw; ++b) {
        const cplx w = W.z[static_cast<std::size_t>(b)];
        G(b) = std::exp(-pr.s(w) - log_phi(w, p) - shg) * W.dz[static_cast<std::size_t>(b)];
    }
    // P_x(z, w) = e^{-(z - w) t x} / (z - w), scaled by its value at the anchors
    std::vector<Eigen::MatrixXcd> P;
    for (double x : xs) {
        Eigen::MatrixXcd m(nz, nw);
        for (Eigen::Index a = 0; a < nz; ++a)
            for (Eigen::Index b = 0; b < nw; ++b)
                m(a, b) = std::exp(-(Z.z[static_cast<std::size_t>(a)] - W.z[static_cast<std::size_t>(b)] - (v - u)) * t * x) *
                          D(a, b);
        P.push_back(std::move(m));
    }
    const Eigen::MatrixXcd DG = D * G.asDiagonal();
    const auto n = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index jb = 0; jb < n; ++jb) {
        const Eigen::MatrixXcd T = DG * ((P[static_cast<std::size_t>(jb)].transpose() * F.asDiagonal()) * D);
        for (Eigen::Index ja = 0; ja < n; ++ja) {
            const Eigen::MatrixXcd& Pa = P[static_cast<std::size_t>(ja)];
            cplx sum = 0.0;
            for (Eigen::Index b = 0; b < nw; ++b) {
                cplx col = 0.0;
                for (Eigen::Index a = 0; a < nz; ++a) col += F(a) * Pa(a, b) * T(a, b);
                sum += col * G(b);
            }
            const double scale = 2.0 * (shf + shg) - (v - u) * t * (xs[static_cast<std::size_t>(ja)] + xs[static_cast<std::size_t>(jb)]);
            out(ja, jb) = (kC4 * sum).real() * std::exp(scale);
        }
    }
    return out;
}

}  // namespace

double b_piece(double alpha_tilde, double beta_tilde, double t, const ParamSet& p, const MomentOptions& opt) {
    return b_pieces({alpha_tilde, beta_tilde}, t, p, opt)(0, 1);
}

SecondMoment second_factorial_moment_contour(double alpha_hat, double beta_hat, double t, const ParamSet& p,
                                             const MomentOptions& opt) {
    if (!(alpha_hat < beta_hat)) throw Error(ErrorCode::InvalidParams, "need alpha_hat < beta_hat");
    SecondMoment m;
    m.A1 = first_moment(alpha_hat, t, p, opt);
    m.A2 = first_moment(beta_hat, t, p, opt);
    m.A = (m.A1 - m.A2) * (m.A1 - m.A2);
    const Eigen::MatrixXd B = b_pieces({alpha_hat, beta_hat}, t, p, opt);
    m.B = B(0, 0) + B(1, 1) - B(0, 1) - B(1, 0);
    m.value = m.A - m.B;
    return m;
}

SecondMoment second_factorial_moment(double alpha_hat, double beta_hat, double t, const ParamSet& p,
                                     const MomentOptions& opt) {
    if (!(alpha_hat < beta_hat)) throw Error(ErrorCode::InvalidParams, "need alpha_hat < beta_hat");
    const GaussLegendre& g = gauss_legendre(opt.nystrom_nodes);
    const double half = 0.5 * (beta_hat - alpha_hat);
    std::vector<double> xs(g.x.size()), w(g.x.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = alpha_hat + half * (g.x[i] + 1.0);
        w[i] = half * g.w[i];
    }
    const Eigen::MatrixXd K = measure_kernel_matrix(MeasureKind::Scaled, t, xs, xs, p, opt);
    double tr = 0.0, cyc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        tr += w[i] * K(ii, ii);
        for (std::size_t j = 0; j < xs.size(); ++j)
            cyc += w[i] * w[j] * K(ii, static_cast<Eigen::Index>(j)) * K(static_cast<Eigen::Index>(j), ii);
    }
    SecondMoment m;
    m.A1 = first_moment(alpha_hat, t, p, opt);
    m.A2 = m.A1 - tr;
    m.A = tr * tr;
    m.B = cyc;
    m.value = m.A - m.B;
    return m;
}

}  // namespace wanderer
