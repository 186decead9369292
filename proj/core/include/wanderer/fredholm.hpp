#ifndef WANDERER_FREDHOLM_HPP
#define WANDERER_FREDHOLM_HPP

#include <vector>

#include "wanderer/kernel.hpp"
#include "wanderer/params.hpp"

namespace wanderer {

struct FredholmOptions {
    int nodes_per_unit = 6;      // Gauss-Legendre density on [s, s + L]
    int min_nodes = 24;
    int max_nodes = 160;
    double diagonal_cutoff = 1e-14;  // L ends where K(x, x) falls below this
    double max_length = 40.0;
    double tail_tol = 1e-4;      // Hadamard bound on the dropped series terms
};

struct GapResult {
    double probability = 0.0;    // P(A_1(t) >= threshold), truncated series
    double full = 0.0;           // 1 - det(I - K) on the same discretization
    int order_used = 0;
    double tail_bound = 0.0;
    double length = 0.0;
    int nodes = 0;
    std::vector<double> terms;   // m-th series term, m = 1..order
};

// (-1)^{m-1}/m! int_{(s,inf)^m} det[K(t, x_i; t, x_j)] summed for m <= order
GapResult gap_probability(double t, double threshold, const ParamSet& p, int order = 12,
                          const FredholmOptions& opt = {}, const KernelOptions& kopt = {});

// elementary symmetric polynomials e_0..e_n of the given values
template <class T>
std::vector<T> elementary_symmetric(const std::vector<T>& v) {
    std::vector<T> e(v.size() + 1, T(0));
    e[0] = T(1);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t m = i + 1; m >= 1; --m) e[m] += e[m - 1] * v[i];
    return e;
}

}  // namespace wanderer

#endif
