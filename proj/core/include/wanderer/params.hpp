#ifndef WANDERER_PARAMS_HPP
#define WANDERER_PARAMS_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace wanderer {

enum class ParamClass { General, Fin, Pos };

const char* class_name(ParamClass c);

struct RawParams {
    std::vector<double> a_plus, a_minus, b_plus, b_minus;
    double c_plus = 0.0;
    double c_minus = 0.0;
};

// Validated parameters. Sequences are stored without trailing zeros.
struct ParamSet {
    std::vector<double> a_plus, a_minus, b_plus, b_minus;
    double c_plus = 0.0;
    double c_minus = 0.0;
    ParamClass cls = ParamClass::Pos;

    bool is_fin() const { return cls != ParamClass::General; }
    bool is_pos() const { return cls == ParamClass::Pos; }
};

struct SupportInfo {
    std::size_t J_a_plus = 0, J_a_minus = 0, J_b_plus = 0, J_b_minus = 0;
};

struct DomainEdges {
    double underline_a;  // in [0, inf]
    double underline_b;  // in [-inf, 0]
};

struct NormalizedParams {
    ParamSet params;
    double delta;
};

ParamSet validate(const RawParams& raw);
ParamSet pos_params(std::vector<double> a_plus, std::vector<double> b_plus = {});
ParamSet zero_params();

SupportInfo support_indices(const ParamSet& p);
DomainEdges domain_edges(const ParamSet& p);
NormalizedParams normalize_to_pos(const ParamSet& p);

// (b, a, c): the parameters of the time-reflected ensemble
ParamSet swap_ab(const ParamSet& p);
ParamSet with_c_plus(const ParamSet& p, double c_plus);

RawParams to_raw(const ParamSet& p);
std::string to_string(const ParamSet& p);

}  // namespace wanderer

#endif
