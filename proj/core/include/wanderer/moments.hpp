#ifndef WANDERER_MOMENTS_HPP
#define WANDERER_MOMENTS_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "wanderer/params.hpp"
#include "wanderer/quadrature.hpp"

namespace wanderer {

struct MomentOptions {
    double tol = 1e-13;
    int nodes_per_panel = 24;
    double phase_budget = 5.0;
    // coarser grid for the four-fold integral, whose cost grows like the cube of the node count
    double four_fold_tol = 1e-10;
    int four_fold_nodes_per_panel = 16;
    double four_fold_phase_budget = 8.0;
    int nystrom_nodes = 48;
};

// which random measure: points (A_i(t) - t^2)/t, or the raw values A_i(t)
enum class MeasureKind { Scaled, Flat };

// alpha-hat_i = -2/a_i; returns k with alpha_hat in (alpha-hat_{k+1}, alpha-hat_k), or
// nullopt when alpha_hat sits on one of the endpoints
std::optional<int> window_index(double alpha_hat, const ParamSet& p);

// t K(t, tx + t^2; t, ty + t^2)
double scaled_kernel(double x, double y, double t, const ParamSet& p, const MomentOptions& opt = {});
// correlation kernel of the chosen measure on a grid, computed with shared contours
Eigen::MatrixXd measure_kernel_matrix(MeasureKind kind, double t, const std::vector<double>& xs,
                                      const std::vector<double>& ys, const ParamSet& p,
                                      const MomentOptions& opt = {});

// E[M^t[alpha_hat, inf)]; contours are placed near the saddle point and the poles of Phi
// they cross contribute residues
double first_moment(double alpha_hat, double t, const ParamSet& p, const MomentOptions& opt = {});
// the same integral on the original contours Gamma_alpha^+ x Gamma_0^- (0 < alpha < 1/a_1)
double first_moment_direct(double alpha_hat, double t, const ParamSet& p, double alpha,
                           const MomentOptions& opt = {});

struct ExpandedMoment {
    double value = 0.0;
    int k = 0;
    double A = 0.0;               // remaining double integral
    std::vector<double> A_j;      // residue integrals, j = 1..k
    double delta = 0.0, u = 0.0, v = 0.0;
};

ExpandedMoment first_moment_expanded(double alpha_hat, double t, const ParamSet& p, int k,
                                     const MomentOptions& opt = {});

// E[M~^t[alpha_hat, inf)]
double flat_first_moment(double alpha_hat, double t, const ParamSet& p, const MomentOptions& opt = {});
double flat_first_moment_direct(double alpha_hat, double t, const ParamSet& p, double alpha,
                                const MomentOptions& opt = {});
// J_a + A~ + sum A~^j with u = t, v = t + 1; needs t > 1 + 1/a_{J_a}
ExpandedMoment flat_first_moment_expanded(double alpha_hat, double t, const ParamSet& p,
                                          const MomentOptions& opt = {});

struct SecondMoment {
    double value = 0.0;  // A - B
    double A = 0.0;      // (A_1 - A_2)^2
    double B = 0.0;
    double A1 = 0.0, A2 = 0.0;
};

// four-fold integral B^t(alpha~, beta~) on separated contours
double b_piece(double alpha_tilde, double beta_tilde, double t, const ParamSet& p, const MomentOptions& opt = {});
// Nystrom discretization of the 2x2 correlation determinant over [alpha_hat, beta_hat)^2, using the
// saddle-placed kernel; stays accurate where the four-fold form loses digits to cancellation
SecondMoment second_factorial_moment(double alpha_hat, double beta_hat, double t, const ParamSet& p,
                                     const MomentOptions& opt = {});
// (A_1 - A_2)^2 - [B(a,a) + B(b,b) - B(a,b) - B(b,a)] from the four-fold integrals
SecondMoment second_factorial_moment_contour(double alpha_hat, double beta_hat, double t, const ParamSet& p,
                                             const MomentOptions& opt = {});

}  // namespace wanderer

#endif
