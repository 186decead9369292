#include "wanderer/harness/config.hpp"

#include <fstream>
#include <set>

#include "wanderer/error.hpp"

namespace wanderer::harness {

namespace {

std::vector<double> seq(const json& j, const char* key) {
    if (!j.contains(key)) return {};
    return j.at(key).get<std::vector<double>>();
}

template <class T>
void read(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

ParamSet params_from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "parameter entry must be an object");
    static const std::set<std::string> keys{"a_plus", "a_minus", "b_plus", "b_minus", "c_plus", "c_minus"};
    for (const auto& [k, v] : j.items())
        if (!keys.count(k)) throw Error(ErrorCode::InvalidConfig, "unknown parameter key '" + k + "'");
    RawParams r;
    r.a_plus = seq(j, "a_plus");
    r.a_minus = seq(j, "a_minus");
    r.b_plus = seq(j, "b_plus");
    r.b_minus = seq(j, "b_minus");
    read(j, "c_plus", r.c_plus);
    read(j, "c_minus", r.c_minus);
    return validate(r);
}

json params_to_json(const ParamSet& p) {
    return json{{"a_plus", p.a_plus}, {"a_minus", p.a_minus}, {"b_plus", p.b_plus},
                {"b_minus", p.b_minus}, {"c_plus", p.c_plus}, {"c_minus", p.c_minus}};
}

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "config must be a JSON object");
    static const std::set<std::string> keys{"experiment", "params", "q", "N", "replicates", "seed", "threads",
                                            "output_dir", "curves", "times", "bootstrap", "quadrature", "options"};
    for (const auto& [k, v] : j.items())
        if (!keys.count(k)) throw Error(ErrorCode::InvalidConfig, "unknown config key '" + k + "'");
    ExperimentConfig c;
    try {
        read(j, "experiment", c.experiment);
        if (j.contains("params")) {
            const auto& ps = j.at("params");
            if (ps.is_object()) c.params.push_back(params_from_json(ps));
            else
                for (const auto& p : ps) c.params.push_back(params_from_json(p));
        }
        read(j, "q", c.q);
        if (j.contains("N")) {
            if (j.at("N").is_array()) c.N = j.at("N").get<std::vector<std::size_t>>();
            else c.N = {j.at("N").get<std::size_t>()};
        }
        read(j, "replicates", c.replicates);
        read(j, "seed", c.seed);
        read(j, "threads", c.threads);
        read(j, "output_dir", c.output_dir);
        read(j, "curves", c.curves);
        read(j, "times", c.times);
        read(j, "bootstrap", c.bootstrap);
        if (j.contains("quadrature")) {
            const auto& qj = j.at("quadrature");
            auto& q = c.quadrature;
            read(qj, "tol", q.kernel.tol);
            read(qj, "nodes_per_panel", q.kernel.nodes_per_panel);
            read(qj, "phase_budget", q.kernel.phase_budget);
            read(qj, "moment_tol", q.moment.tol);
            read(qj, "nystrom_nodes", q.moment.nystrom_nodes);
            read(qj, "fredholm_order", q.fredholm_order);
            read(qj, "fredholm_nodes_per_unit", q.fredholm.nodes_per_unit);
            read(qj, "fredholm_tail_tol", q.fredholm.tail_tol);
        }
        if (j.contains("options")) c.options = j.at("options");
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("malformed config: ") + e.what());
    }
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open config " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, path + ": " + e.what());
    }
    return config_from_json(j);
}

json to_json(const ExperimentConfig& c) {
    json ps = json::array();
    for (const auto& p : c.params) ps.push_back(params_to_json(p));
    const auto& q = c.quadrature;
    return json{{"experiment", c.experiment},
                {"params", ps},
                {"q", c.q},
                {"N", c.N},
                {"replicates", c.replicates},
                {"seed", c.seed},
                {"threads", c.threads},
                {"output_dir", c.output_dir},
                {"curves", c.curves},
                {"times", c.times},
                {"bootstrap", c.bootstrap},
                {"quadrature",
                 {{"tol", q.kernel.tol},
                  {"nodes_per_panel", q.kernel.nodes_per_panel},
                  {"phase_budget", q.kernel.phase_budget},
                  {"moment_tol", q.moment.tol},
                  {"nystrom_nodes", q.moment.nystrom_nodes},
                  {"fredholm_order", q.fredholm_order},
                  {"fredholm_nodes_per_unit", q.fredholm.nodes_per_unit},
                  {"fredholm_tail_tol", q.fredholm.tail_tol}}},
                {"options", c.options}};
}

void validate(const ExperimentConfig& c) {
    if (!(c.q > 0.0 && c.q < 1.0)) throw Error(ErrorCode::InvalidConfig, "q must lie in (0, 1)");
    for (std::size_t n : c.N)
        if (n == 0) throw Error(ErrorCode::InvalidConfig, "N ladder entries must be positive");
    if (c.replicates == 0) throw Error(ErrorCode::InvalidConfig, "replicates must be positive");
    if (c.curves == 0) throw Error(ErrorCode::InvalidConfig, "curves must be positive");
    if (c.quadrature.fredholm_order < 1) throw Error(ErrorCode::InvalidConfig, "fredholm_order must be positive");
}

}  // namespace wanderer::harness
