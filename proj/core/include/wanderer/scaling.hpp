#ifndef WANDERER_SCALING_HPP
#define WANDERER_SCALING_HPP

#include <cstddef>
#include <vector>

#include "wanderer/params.hpp"
#include "wanderer/partition.hpp"
#include "wanderer/schur_sampler.hpp"

namespace wanderer {

struct ScalingConstants {
    double q, sigma_q, p, sigma, f_q;
};

ScalingConstants scaling_constants(double q);

struct ParameterSequences {
    std::vector<double> X;  // length M
    std::vector<double> Y;  // length N
    std::size_t A_N = 0, B_N = 0;
    std::size_t M = 0, N = 0;
    SamplerConfig config() const { return {M, N, X, Y}; }
};

// largest m with m^12 <= N
std::size_t twelfth_root_floor(std::size_t N);
std::size_t default_M(std::size_t N);
// smallest admissible M whose raw window reaches Airy time s_max
std::size_t airy_window_M(std::size_t N, double q, double s_max);

ParameterSequences build_parameter_sequences(const ParamSet& params, double q, std::size_t N, std::size_t M = 0);

enum class Coordinate { Raw, Rescaled, Airy };
const char* coordinate_name(Coordinate c);

struct LineEnsembleSample {
    std::vector<double> times;
    std::size_t curves = 0;
    std::vector<double> values;  // values[i * times.size() + j], curve i (0-based) at times[j]
    Coordinate coordinate = Coordinate::Raw;

    double& at(std::size_t i, std::size_t j) { return values[i * times.size() + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * times.size() + j]; }
    // linear interpolation; throws GridTooShort outside [times.front(), times.back()]
    double interpolate(std::size_t i, double t) const;
};

// Raw ensemble L_i(s) = lambda_i^{N+s} on the integer grid s = 1-N, ..., M-N.
LineEnsembleSample embed_line_ensemble(const PartitionSequence& seq, std::size_t N, std::size_t M,
                                       std::size_t max_curves);
LineEnsembleSample embed_line_ensemble(const TopParts& top, std::size_t N, std::size_t max_curves);

// L_i(s) for real s with constant extension beyond the integer window
double raw_value(const LineEnsembleSample& raw, std::size_t i, double s);

LineEnsembleSample rescale(const LineEnsembleSample& raw, double q, std::size_t N, const std::vector<double>& t_grid);
LineEnsembleSample to_airy(const LineEnsembleSample& rescaled, double q, const std::vector<double>& s_grid);
// rescale at t = s / f_q, then convert, so that no interpolation in t is needed
LineEnsembleSample airy_from_raw(const LineEnsembleSample& raw, double q, std::size_t N,
                                 const std::vector<double>& s_grid);

// (A_k(t) - t^2) / t, k 1-based
double slope_statistic(const LineEnsembleSample& airy, std::size_t k, double t);

}  // namespace wanderer

#endif
