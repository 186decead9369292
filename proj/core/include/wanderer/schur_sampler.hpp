#ifndef WANDERER_SCHUR_SAMPLER_HPP
#define WANDERER_SCHUR_SAMPLER_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "wanderer/noise.hpp"
#include "wanderer/partition.hpp"

namespace wanderer {

struct SamplerConfig {
    std::size_t M = 0, N = 0;
    std::vector<double> X;  // length M
    std::vector<double> Y;  // length N
};

void validate_config(const SamplerConfig& cfg);

// Runs the push-block dynamics and returns (lambda(N,1), ..., lambda(N,M)).
// max_parts > 0 keeps only the top max_parts parts; those evolve exactly, since part i
// of every update only reads parts i and i-1.
PartitionSequence sample_schur(const SamplerConfig& cfg, const NoiseField& f, std::size_t max_parts = 0);

// Top parts as a flat matrix: out[(j-1) * K + (i-1)] = lambda_i^j. Avoids Partition allocation.
struct TopParts {
    std::size_t M = 0, K = 0;
    std::vector<std::int64_t> values;
    std::int64_t at(std::size_t j, std::size_t i) const { return values[(j - 1) * K + (i - 1)]; }
};
TopParts sample_schur_top(const SamplerConfig& cfg, const NoiseField& f, std::size_t K);

// Whole grid lambda(n, m), 0 <= n <= N, 0 <= m <= M, for small instances.
std::vector<std::vector<Partition>> sample_schur_grid(const SamplerConfig& cfg, const NoiseField& f);

bool check_hypothesis(const std::vector<double>& XA, const std::vector<double>& YA, const std::vector<double>& XB,
                      const std::vector<double>& YB, std::size_t A, std::size_t B);

struct CoupledSample {
    TopParts first;   // driven by U, K + max(A,B) parts
    TopParts second;  // driven by U(n+A, m+B, k+max(A,B)), K parts
    std::size_t shift = 0;
};

CoupledSample sample_coupled(const SamplerConfig& cfgA, const SamplerConfig& cfgB, std::size_t A, std::size_t B,
                             const NoiseField& f, std::size_t K);

// Count of (j, k) with lambda_{k+shift}^j > tilde lambda_k^j, k <= K
std::size_t coupling_violations(const CoupledSample& s);

PartitionSequence to_sequence(const TopParts& t);

}  // namespace wanderer

#endif
