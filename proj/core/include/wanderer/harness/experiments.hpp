#ifndef WANDERER_HARNESS_EXPERIMENTS_HPP
#define WANDERER_HARNESS_EXPERIMENTS_HPP

#include <cstddef>
#include <vector>

#include "wanderer/gibbs.hpp"
#include "wanderer/harness/config.hpp"
#include "wanderer/harness/report.hpp"
#include "wanderer/scaling.hpp"

namespace wanderer::harness {

// Top `curves` curves of one Schur sample in Airy coordinates on s_grid; replicate r
// of a run uses NoiseField(replicate_seed(seed, r)).
LineEnsembleSample sample_airy(const ParameterSequences& seq, double q, std::size_t curves,
                               const std::vector<double>& s_grid, std::uint64_t seed, std::size_t r);

// largest Airy time the raw window of (N, M) covers
double airy_horizon(std::size_t N, std::size_t M, double q);

struct SlopeRow {
    std::size_t N = 0, k = 0;
    double t = 0.0;  // signed Airy time
    double median = 0.0, ci_lo = 0.0, ci_hi = 0.0, target = 0.0;
};

struct DriftRow {
    std::size_t N = 0, k = 0;
    double slope = 0.0, ci_lo = 0.0, ci_hi = 0.0;
    bool contains_zero() const { return ci_lo <= 0.0 && 0.0 <= ci_hi; }
};

struct SlopeResult {
    std::vector<SlopeRow> slopes;
    std::vector<DriftRow> drifts;
    Report report;
};

// options: mirror (bool) samples at -t and targets the b parameters
SlopeResult run_slope_experiment(const ExperimentConfig& cfg);

struct CouplingRow {
    std::size_t A = 0, B = 0;
    bool swapped = false;  // params[1] plays the dominated role
    std::size_t replicates = 0, comparisons = 0, violations = 0;
};

struct CouplingResult {
    std::vector<CouplingRow> rows;
    std::size_t differing_replicates = 0;  // shared process differs between the first two couplings
    Report report;
};

// params[0], params[1]; options: shifts ([[A, B], ...], default [[0,0],[1,1]])
CouplingResult run_coupling_experiment(const ExperimentConfig& cfg);

struct ContinuityRow {
    std::size_t index = 0;
    double l1 = 0.0, ks_statistic = 0.0, ks_p = 1.0, kernel_diff = 0.0;
};

struct ContinuityResult {
    std::vector<ContinuityRow> rows;
    bool ks_nonincreasing = true, kernel_nonincreasing = true;
    Report report;
};

// params: ladder entries followed by the limit
ContinuityResult run_continuity_experiment(const ExperimentConfig& cfg);

struct CrosscheckRow {
    std::size_t N = 0;
    double t = 0.0, alpha_hat = 0.0;
    double mc_mean = 0.0, mc_se = 0.0, quadrature = 0.0;
    bool saturated = false;  // some replicate had every tracked curve above the threshold
    bool overlap() const;
};

struct CrosscheckResult {
    std::vector<CrosscheckRow> rows;
    Report report;
};

// options: alpha_hat (list)
CrosscheckResult run_crosscheck(const ExperimentConfig& cfg);

struct GibbsExperimentResult {
    GibbsReport synthetic;
    AcceptanceEstimate pair;
    double pair_analytic = 0.0;
    RefinementReport refinement;
    bool has_sampled = false;
    GibbsReport sampled;
    Report report;
};

// options: pair_trials, window ([a, b]); a nonempty N ladder adds the finite-N ensemble check
GibbsExperimentResult run_gibbs_experiment(const ExperimentConfig& cfg);

}  // namespace wanderer::harness

#endif
