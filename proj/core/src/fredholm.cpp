#include "wanderer/fredholm.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "wanderer/error.hpp"
#include "wanderer/quadrature.hpp"

namespace wanderer {

namespace {

// diagonal similarity equalizing off-diagonal row and column norms
Eigen::MatrixXd balanced(Eigen::MatrixXd A) {
    const Eigen::Index n = A.rows();
    for (int pass = 0; pass < 50; ++pass) {
        bool done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double c = A.col(i).norm() - std::abs(A(i, i)) + 1e-300;
            const double r = A.row(i).norm() - std::abs(A(i, i)) + 1e-300;
            const double f = std::sqrt(r / c);
            if (std::abs(f - 1.0) > 1e-3) done = false;
            A.col(i) *= f;
            A.row(i) /= f;
        }
        if (done) break;
    }
    return A;
}

}  // namespace

GapResult gap_probability(double t, double threshold, const ParamSet& p, int order, const FredholmOptions& opt,
                          const KernelOptions& kopt) {
    if (order < 1) throw Error(ErrorCode::InvalidParams, "series order must be at least 1");
    const Kernel K(p, kopt);
    GapResult r;

    // grow the interval until the one-point density is negligible
    double L = 1.0;
    while (L < opt.max_length) {
        const double d = K(t, threshold + L, t, threshold + L).real();
        if (std::abs(d) < opt.diagonal_cutoff) break;
        L += 1.0;
    }
    r.length = L;
    const int n = std::clamp(static_cast<int>(std::ceil(opt.nodes_per_unit * L)) + 12, opt.min_nodes, opt.max_nodes);
    r.nodes = n;
    const GaussLegendre& g = gauss_legendre(n);
    std::vector<double> xs(static_cast<std::size_t>(n)), sw(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = threshold + 0.5 * L * (g.x[i] + 1.0);
        sw[i] = std::sqrt(0.5 * L * g.w[i]);
    }
    Eigen::MatrixXd A = K.equal_time_matrix(t, xs);
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j) A(i, j) *= sw[static_cast<std::size_t>(i)] * sw[static_cast<std::size_t>(j)];

    const Eigen::MatrixXd IA = Eigen::MatrixXd::Identity(n, n) - A;
    r.full = 1.0 - IA.partialPivLu().determinant();

    Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
    std::vector<cplx> lam(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) lam[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    const std::vector<cplx> e = elementary_symmetric(lam);

    // Hadamard: a principal minor is at most the product of its column norms, or of its
    // diagonal entries when the discretized operator is symmetric positive semidefinite.
    // Column norms are not invariant under the kernel gauge, so balance first.
    std::vector<double> cn(static_cast<std::size_t>(n));
    bool psd = (A - A.transpose()).norm() <= 1e-10 * A.norm();
    if (psd) {
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sa(0.5 * (A + A.transpose()), Eigen::EigenvaluesOnly);
        psd = sa.eigenvalues().minCoeff() >= -1e-10;
    }
    if (psd) {
        for (Eigen::Index j = 0; j < n; ++j) cn[static_cast<std::size_t>(j)] = std::max(A(j, j), 0.0);
    } else {
        const Eigen::MatrixXd Bal = balanced(A);
        for (Eigen::Index j = 0; j < n; ++j) cn[static_cast<std::size_t>(j)] = Bal.col(j).norm();
    }
    const std::vector<double> h = elementary_symmetric(cn);

    const int m_max = std::min(order, n);
    double sum = 0.0;
    for (int m = 1; m <= m_max; ++m) {
        const double term = (m % 2 == 1 ? 1.0 : -1.0) * e[static_cast<std::size_t>(m)].real();
        r.terms.push_back(term);
        sum += term;
    }
    double tail = 0.0;
    for (int m = m_max + 1; m <= n; ++m) tail += h[static_cast<std::size_t>(m)];
    r.probability = sum;
    r.order_used = m_max;
    r.tail_bound = tail;
    if (tail > opt.tail_tol)
        throw Error(ErrorCode::SeriesNotConverged, "Hadamard tail bound " + std::to_string(tail) + " exceeds tolerance");
    return r;
}

}  // namespace wanderer
