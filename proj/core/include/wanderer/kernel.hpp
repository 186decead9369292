#ifndef WANDERER_KERNEL_HPP
#define WANDERER_KERNEL_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "wanderer/params.hpp"
#include "wanderer/quadrature.hpp"

namespace wanderer {

// log Phi_{a,b,c}(z), any branch; throws PoleProximity near a pole or near 0 when
// the minus sequences or c^- are present
cplx log_phi(cplx z, const ParamSet& p, double guard = 1e-8);
cplx phi(cplx z, const ParamSet& p, double guard = 1e-8);

struct SegmentEnds {
    cplx u_minus, u_plus;
};

std::optional<SegmentEnds> gamma_segment(double A, double B);

struct KernelQuery {
    double t1 = 0.0, x1 = 0.0, t2 = 0.0, x2 = 0.0;
    double alpha = 0.0, beta = 0.0;
};

struct KernelOptions {
    double tol = 1e-12;
    int nodes_per_panel = 24;
    double phase_budget = 6.0;
    double pole_guard = 1e-8;
};

// Interval (lo, hi) such that Phi(z') is analytic for Re z' < hi near the real axis and
// 1/Phi(w') for Re w' > lo. It can be wider than (underline_b, underline_a) when minus
// sequences are present, since those only contribute finitely many poles.
struct AnchorWindow {
    double lo, hi;
};
AnchorWindow anchor_window(const ParamSet& p);

double K2(const KernelQuery& q);

struct KernelEstimate {
    cplx value;
    double est_error;
    KernelQuery query;
};

class Kernel {
public:
    explicit Kernel(ParamSet p, KernelOptions opt = {});

    const ParamSet& params() const { return p_; }
    const KernelOptions& options() const { return opt_; }

    bool admissible(const KernelQuery& q) const;
    cplx K1(const KernelQuery& q) const;
    cplx K3(const KernelQuery& q) const;  // Inadmissible when the anchors violate the domain edges
    cplx K(const KernelQuery& q) const;

    // anchors near the saddle points, non-crossing when the window allows it
    KernelQuery default_query(double t1, double x1, double t2, double x2) const;
    cplx operator()(double t1, double x1, double t2, double x2) const;
    KernelEstimate evaluate(double t1, double x1, double t2, double x2) const;

    // K(t, x_i; t, y_j)
    Eigen::MatrixXd equal_time_matrix(double t, const std::vector<double>& xs, const std::vector<double>& ys) const;
    Eigen::MatrixXd equal_time_matrix(double t, const std::vector<double>& xs) const {
        return equal_time_matrix(t, xs, xs);
    }

    // K3 without the domain-edge check; anchors only need to avoid the actual poles
    cplx K3_unchecked(const KernelQuery& q) const;

private:
    ParamSet p_;
    KernelOptions opt_;
    AnchorWindow win_;
};

}  // namespace wanderer

#endif
