#ifndef WANDERER_GIBBS_HPP
#define WANDERER_GIBBS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "wanderer/noise.hpp"
#include "wanderer/scaling.hpp"
#include "wanderer/stats.hpp"

namespace wanderer {

// Empty means +inf (top) or -inf (bottom).
using Barrier = std::function<double(double)>;

struct BridgeSpec {
    double a = 0.0, b = 1.0;
    std::vector<double> x, y;  // strictly decreasing entrance / exit data
    Barrier top, bottom;
    int steps_per_unit = 128;
    double diffusion = 1.0;  // variance per unit time
    std::vector<double> times;  // explicit grid; overrides steps_per_unit when nonempty

    std::size_t curves() const { return x.size(); }
    std::vector<double> grid() const;
};

void validate(const BridgeSpec& spec);

std::vector<double> uniform_grid(double a, double b, std::size_t steps);

// standard normal from the (n, m, 2j) and (n, m, 2j+1) cells
double standard_normal(const NoiseField& f, std::int64_t n, std::int64_t m, std::int64_t j);

// exact bridge covariance on the grid: pinned cumulative increments
std::vector<double> sample_bridge(const std::vector<double>& times, double x, double y, const NoiseField& f,
                                  std::int64_t n = 0, std::int64_t m = 0, double diffusion = 1.0);
std::vector<double> sample_bridge(double a, double b, double x, double y, std::size_t steps, const NoiseField& f);

// Grid checks ordering at grid points only. BridgeCorrected additionally accepts each cell with the
// conditional probability that the pinned difference processes do not cross inside it.
enum class Monitoring { Grid, BridgeCorrected };

struct AvoidingSample {
    std::vector<double> times;
    std::vector<std::vector<double>> curves;
    std::size_t attempts = 0;
};

bool avoids(const BridgeSpec& spec, const std::vector<double>& times, const std::vector<std::vector<double>>& curves);

// draws attempts n = first_attempt, first_attempt + 1, ...
AvoidingSample sample_avoiding(const BridgeSpec& spec, const NoiseField& f, std::size_t max_attempts,
                               Monitoring mode = Monitoring::Grid);

struct AcceptanceEstimate {
    std::size_t trials = 0, accepted = 0;
    double rate = 0.0, standard_error = 0.0;
    std::size_t steps = 0;
};

AcceptanceEstimate acceptance_rate(const BridgeSpec& spec, const NoiseField& f, std::size_t trials,
                                   Monitoring mode = Monitoring::Grid);

// one bridge from x > 0 to y > 0 staying above the zero barrier
double barrier_noncrossing_probability(double a, double b, double x, double y, double diffusion = 1.0);
// two independent bridges with gaps d1 at a and d2 at b never meeting
double pair_noncrossing_probability(double a, double b, double d1, double d2, double diffusion = 1.0);

struct RefinementReport {
    AcceptanceEstimate coarse, fine;
    double drift = 0.0;
};

RefinementReport refinement_study(const BridgeSpec& spec, const NoiseField& f, std::size_t trials);

struct GibbsReport {
    std::size_t k1 = 0, k2 = 0;
    double window_a = 0.0, window_b = 0.0, midpoint = 0.0;
    std::size_t replicates = 0, attempts = 0;
    std::vector<KsResult> ks;  // one per resampled curve
    double min_p_value() const;
    double max_statistic() const;
};

// k1, k2 1-based; window endpoints snap to the sample grid; samples[r] is resampled with noise replicate r
GibbsReport gibbs_resample_check(const std::vector<LineEnsembleSample>& samples, std::size_t k1, std::size_t k2,
                                 double wa, double wb, std::uint64_t seed, std::size_t max_attempts,
                                 double diffusion = 1.0, std::vector<LineEnsembleSample>* resampled = nullptr);

struct DominationReport {
    std::size_t replicates = 0;
    double band = 0.0;        // eps_low + eps_high
    double max_excess = 0.0;  // max over time, index, x of F_high(x) - F_low(x)
    double min_mean_gap = 0.0;
    bool dominated() const { return max_excess <= band; }
};

DominationReport coupled_avoiding_domination(const BridgeSpec& low, const BridgeSpec& high, std::size_t replicates,
                                             std::uint64_t seed, std::size_t max_attempts, double alpha = 0.01,
                                             std::size_t time_points = 17);

}  // namespace wanderer

#endif
