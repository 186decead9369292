#include "wanderer/params.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "wanderer/error.hpp"

namespace wanderer {

namespace {

std::vector<double> checked(const std::vector<double>& seq, const char* name) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (!std::isfinite(seq[i]))
            throw Error(ErrorCode::InvalidParams, std::string(name) + " has a non-finite entry");
        if (seq[i] < 0.0) throw Error(ErrorCode::Negative, std::string(name) + " has a negative entry");
        if (i > 0 && seq[i] > seq[i - 1])
            throw Error(ErrorCode::NonMonotone, std::string(name) + " is not weakly decreasing");
    }
    std::vector<double> out = seq;
    while (!out.empty() && out.back() == 0.0) out.pop_back();
    return out;
}

std::vector<double> sorted_desc(std::vector<double> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

void print_seq(std::ostringstream& os, const char* name, const std::vector<double>& v) {
    os << name << "=(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
}

}  // namespace

const char* class_name(ParamClass c) {
    switch (c) {
        case ParamClass::General: return "general";
        case ParamClass::Fin: return "P_fin";
        case ParamClass::Pos: return "P_pos";
    }
    return "?";
}

ParamSet validate(const RawParams& raw) {
    ParamSet p;
    p.a_plus = checked(raw.a_plus, "a_plus");
    p.a_minus = checked(raw.a_minus, "a_minus");
    p.b_plus = checked(raw.b_plus, "b_plus");
    p.b_minus = checked(raw.b_minus, "b_minus");
    if (!std::isfinite(raw.c_plus) || !std::isfinite(raw.c_minus))
        throw Error(ErrorCode::InvalidParams, "c parameters must be finite");
    p.c_plus = raw.c_plus;
    p.c_minus = raw.c_minus;
    if (p.c_minus != 0.0)
        p.cls = ParamClass::General;
    else if (p.c_plus == 0.0 && p.a_minus.empty() && p.b_minus.empty())
        p.cls = ParamClass::Pos;
    else
        p.cls = ParamClass::Fin;
    return p;
}

ParamSet pos_params(std::vector<double> a_plus, std::vector<double> b_plus) {
    RawParams raw;
    raw.a_plus = std::move(a_plus);
    raw.b_plus = std::move(b_plus);
    return validate(raw);
}

ParamSet zero_params() { return validate(RawParams{}); }

SupportInfo support_indices(const ParamSet& p) {
    return {p.a_plus.size(), p.a_minus.size(), p.b_plus.size(), p.b_minus.size()};
}

DomainEdges domain_edges(const ParamSet& p) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double am = p.a_minus.empty() ? 0.0 : p.a_minus.front();
    const double bm = p.b_minus.empty() ? 0.0 : p.b_minus.front();
    if (am + bm > 0.0 || p.c_minus != 0.0) return {0.0, 0.0};
    DomainEdges e;
    e.underline_a = p.a_plus.empty() ? inf : 1.0 / p.a_plus.front();
    e.underline_b = p.b_plus.empty() ? -inf : -1.0 / p.b_plus.front();
    return e;
}

NormalizedParams normalize_to_pos(const ParamSet& p) {
    if (!p.is_fin()) throw Error(ErrorCode::InvalidParams, "normalize_to_pos needs P_fin input");
    std::vector<double> ah = p.a_plus, bh = p.b_plus;
    for (double v : p.a_minus) ah.push_back(1.0 / v);
    for (double v : p.b_minus) bh.push_back(1.0 / v);
    ah = sorted_desc(ah);
    bh = sorted_desc(bh);

    const std::size_t ja = p.a_minus.size(), jb = p.b_minus.size();
    double delta = 0.0;
    std::vector<double> at, bt;
    if (ja == jb) {
        at = ah;
        bt = bh;
    } else if (ja > jb) {
        delta = 0.5 * std::min(1.0 / ah.front(), 1.0);
        for (double v : ah) at.push_back(v / (1.0 - delta * v));
        for (double v : bh) bt.push_back(v / (1.0 + delta * v));
        bt.insert(bt.end(), ja - jb, 1.0 / delta);
    } else {
        delta = -0.5 * std::min(1.0 / bh.front(), 1.0);
        for (double v : ah) at.push_back(v / (1.0 - delta * v));
        at.insert(at.end(), jb - ja, -1.0 / delta);
        for (double v : bh) bt.push_back(v / (1.0 + delta * v));
    }
    RawParams raw;
    raw.a_plus = sorted_desc(at);
    raw.b_plus = sorted_desc(bt);
    return {validate(raw), delta};
}

ParamSet swap_ab(const ParamSet& p) {
    ParamSet q = p;
    std::swap(q.a_plus, q.b_plus);
    std::swap(q.a_minus, q.b_minus);
    return q;
}

ParamSet with_c_plus(const ParamSet& p, double c_plus) {
    RawParams raw = to_raw(p);
    raw.c_plus = c_plus;
    return validate(raw);
}

RawParams to_raw(const ParamSet& p) {
    return RawParams{p.a_plus, p.a_minus, p.b_plus, p.b_minus, p.c_plus, p.c_minus};
}

std::string to_string(const ParamSet& p) {
    std::ostringstream os;
    os.precision(10);
    print_seq(os, "a+", p.a_plus);
    os << " ";
    print_seq(os, "a-", p.a_minus);
    os << " ";
    print_seq(os, "b+", p.b_plus);
    os << " ";
    print_seq(os, "b-", p.b_minus);
    os << " c+=" << p.c_plus << " c-=" << p.c_minus << " [" << class_name(p.cls) << "]";
    return os.str();
}

}  // namespace wanderer
