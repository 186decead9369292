#ifndef WANDERER_HARNESS_CONFIG_HPP
#define WANDERER_HARNESS_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "wanderer/fredholm.hpp"
#include "wanderer/kernel.hpp"
#include "wanderer/moments.hpp"
#include "wanderer/params.hpp"

namespace wanderer::harness {

using json = nlohmann::json;

struct QuadratureSettings {
    KernelOptions kernel;
    MomentOptions moment;
    FredholmOptions fredholm;
    int fredholm_order = 12;
};

struct ExperimentConfig {
    std::string experiment;
    std::vector<ParamSet> params;
    double q = 0.5;
    std::vector<std::size_t> N;
    std::size_t replicates = 100;
    std::uint64_t seed = 1;
    std::size_t threads = 1;
    std::string output_dir;
    std::size_t curves = 3;      // top curves tracked per sample
    std::vector<double> times;   // Airy times
    std::size_t bootstrap = 1000;
    QuadratureSettings quadrature;
    json options = json::object();  // experiment-specific extras

    template <class T>
    T option(const std::string& key, T fallback) const {
        return options.contains(key) ? options.at(key).get<T>() : fallback;
    }
};

ParamSet params_from_json(const json& j);
json params_to_json(const ParamSet& p);

// missing keys take the defaults above; unknown top-level keys are an InvalidConfig error
ExperimentConfig config_from_json(const json& j);
ExperimentConfig load_config(const std::string& path);
json to_json(const ExperimentConfig& c);

// the module preconditions every experiment needs before launch
void validate(const ExperimentConfig& c);

}  // namespace wanderer::harness

#endif
