#include "wanderer/scaling.hpp"

#include <algorithm>
#include <cmath>

#include "wanderer/error.hpp"

namespace wanderer {

ScalingConstants scaling_constants(double q) {
    if (!(q > 0.0 && q < 1.0)) throw Error(ErrorCode::InvalidParams, "q must lie in (0,1)");
    ScalingConstants c;
    c.q = q;
    c.sigma_q = std::cbrt(q) * std::cbrt(1.0 + q) / (1.0 - q);
    c.p = q / (1.0 - q);
    c.sigma = std::sqrt(c.p * (1.0 + c.p));
    c.f_q = std::cbrt(q) / (2.0 * std::pow(1.0 + q, 2.0 / 3.0));
    return c;
}

std::size_t twelfth_root_floor(std::size_t N) {
    std::size_t m = 1;
    auto pow12 = [](std::size_t k) {
        double v = 1.0;
        for (int i = 0; i < 12; ++i) v *= static_cast<double>(k);
        return v;
    };
    while (pow12(m + 1) <= static_cast<double>(N)) ++m;
    return N == 0 ? 0 : m;
}

std::size_t default_M(std::size_t N) {
    const double n = static_cast<double>(N);
    return static_cast<std::size_t>(std::ceil(n + std::pow(n, 0.75))) + 1;
}

std::size_t airy_window_M(std::size_t N, double q, double s_max) {
    const double f = scaling_constants(q).f_q;
    const double n = static_cast<double>(N);
    const auto need = N + static_cast<std::size_t>(std::ceil(std::max(0.0, s_max) / f * std::pow(n, 2.0 / 3.0))) + 2;
    return std::max(default_M(N), need);
}

namespace {

std::vector<double> spiked(const std::vector<double>& rates, double q, std::size_t N, std::size_t len,
                           std::size_t& count) {
    const ScalingConstants c = scaling_constants(q);
    const std::size_t cap = std::min(twelfth_root_floor(N), rates.size());
    std::vector<double> out(len, q);
    count = 0;
    const double n13 = std::cbrt(static_cast<double>(N));
    for (std::size_t i = 0; i < cap && i < len; ++i) {
        const double v = 1.0 - 1.0 / (n13 * rates[i] * c.sigma_q);
        if (v < q) break;
        out[i] = v;
        count = i + 1;
    }
    return out;
}

}  // namespace

ParameterSequences build_parameter_sequences(const ParamSet& params, double q, std::size_t N, std::size_t M) {
    if (!params.is_pos()) throw Error(ErrorCode::InvalidParams, "scaling needs P_pos parameters");
    if (N == 0) throw Error(ErrorCode::InvalidParams, "N must be positive");
    const double n = static_cast<double>(N);
    if (M == 0) M = default_M(N);
    if (static_cast<double>(M) < n + std::pow(n, 0.75) + 1.0)
        throw Error(ErrorCode::InvalidParams, "M_N must be at least N + N^{3/4} + 1");
    ParameterSequences s;
    s.M = M;
    s.N = N;
    s.X = spiked(params.b_plus, q, N, M, s.B_N);
    s.Y = spiked(params.a_plus, q, N, N, s.A_N);
    return s;
}

const char* coordinate_name(Coordinate c) {
    switch (c) {
        case Coordinate::Raw: return "raw";
        case Coordinate::Rescaled: return "rescaled";
        case Coordinate::Airy: return "airy";
    }
    return "?";
}

double LineEnsembleSample::interpolate(std::size_t i, double t) const {
    if (i >= curves) throw Error(ErrorCode::IndexOutOfRange, "curve index out of range");
    const double eps = 1e-12 * (1.0 + std::abs(t));
    if (times.empty() || t < times.front() - eps || t > times.back() + eps)
        throw Error(ErrorCode::GridTooShort, "time outside the sampled window");
    auto it = std::lower_bound(times.begin(), times.end(), t);
    if (it == times.end()) return at(i, times.size() - 1);
    const std::size_t j = static_cast<std::size_t>(it - times.begin());
    if (j == 0 || *it == t) return at(i, j);
    const double t0 = times[j - 1], t1 = times[j];
    const double w = (t - t0) / (t1 - t0);
    return (1.0 - w) * at(i, j - 1) + w * at(i, j);
}

LineEnsembleSample embed_line_ensemble(const PartitionSequence& seq, std::size_t N, std::size_t M,
                                       std::size_t max_curves) {
    if (seq.size() != M) throw Error(ErrorCode::InvalidParams, "sequence length must equal M");
    if (max_curves > std::min(M, N)) throw Error(ErrorCode::IndexOutOfRange, "more curves than available parts");
    LineEnsembleSample e;
    e.curves = max_curves;
    e.coordinate = Coordinate::Raw;
    for (std::size_t j = 1; j <= M; ++j) e.times.push_back(static_cast<double>(j) - static_cast<double>(N));
    e.values.resize(max_curves * M);
    for (std::size_t i = 0; i < max_curves; ++i)
        for (std::size_t j = 0; j < M; ++j) e.at(i, j) = static_cast<double>(seq[j].part(i + 1));
    return e;
}

LineEnsembleSample embed_line_ensemble(const TopParts& top, std::size_t N, std::size_t max_curves) {
    if (max_curves > top.K) throw Error(ErrorCode::IndexOutOfRange, "more curves than sampled parts");
    LineEnsembleSample e;
    e.curves = max_curves;
    e.coordinate = Coordinate::Raw;
    for (std::size_t j = 1; j <= top.M; ++j) e.times.push_back(static_cast<double>(j) - static_cast<double>(N));
    e.values.resize(max_curves * top.M);
    for (std::size_t i = 0; i < max_curves; ++i)
        for (std::size_t j = 1; j <= top.M; ++j) e.at(i, j - 1) = static_cast<double>(top.at(j, i + 1));
    return e;
}

double raw_value(const LineEnsembleSample& raw, std::size_t i, double s) {
    const double lo = raw.times.front(), hi = raw.times.back();
    return raw.interpolate(i, std::clamp(s, lo, hi));
}

LineEnsembleSample rescale(const LineEnsembleSample& raw, double q, std::size_t N, const std::vector<double>& t_grid) {
    if (raw.coordinate != Coordinate::Raw) throw Error(ErrorCode::InvalidParams, "rescale expects raw coordinates");
    const ScalingConstants c = scaling_constants(q);
    const double n = static_cast<double>(N);
    const double n23 = std::pow(n, 2.0 / 3.0), div = c.sigma * std::cbrt(n);
    LineEnsembleSample e;
    e.times = t_grid;
    e.curves = raw.curves;
    e.coordinate = Coordinate::Rescaled;
    e.values.resize(raw.curves * t_grid.size());
    for (std::size_t i = 0; i < raw.curves; ++i)
        for (std::size_t j = 0; j < t_grid.size(); ++j) {
            const double t = t_grid[j];
            e.at(i, j) = (raw_value(raw, i, t * n23) - c.p * t * n23 - 2.0 * c.p * n) / div;
        }
    return e;
}

LineEnsembleSample to_airy(const LineEnsembleSample& rescaled, double q, const std::vector<double>& s_grid) {
    if (rescaled.coordinate != Coordinate::Rescaled)
        throw Error(ErrorCode::InvalidParams, "to_airy expects rescaled coordinates");
    const ScalingConstants c = scaling_constants(q);
    const double amp = std::sqrt(2.0 * c.f_q);
    LineEnsembleSample e;
    e.times = s_grid;
    e.curves = rescaled.curves;
    e.coordinate = Coordinate::Airy;
    e.values.resize(rescaled.curves * s_grid.size());
    for (std::size_t i = 0; i < rescaled.curves; ++i)
        for (std::size_t j = 0; j < s_grid.size(); ++j) {
            const double s = s_grid[j];
            e.at(i, j) = amp * rescaled.interpolate(i, s / c.f_q) + s * s;
        }
    return e;
}

LineEnsembleSample airy_from_raw(const LineEnsembleSample& raw, double q, std::size_t N,
                                 const std::vector<double>& s_grid) {
    const double f = scaling_constants(q).f_q;
    const double n23 = std::pow(static_cast<double>(N), 2.0 / 3.0);
    std::vector<double> t_grid;
    for (double s : s_grid) {
        const double t = s / f;
        if (t * n23 < raw.times.front() - 1e-9 || t * n23 > raw.times.back() + 1e-9)
            throw Error(ErrorCode::GridTooShort, "Airy time outside the raw window");
        t_grid.push_back(t);
    }
    return to_airy(rescale(raw, q, N, t_grid), q, s_grid);
}

double slope_statistic(const LineEnsembleSample& airy, std::size_t k, double t) {
    if (k == 0) throw Error(ErrorCode::IndexOutOfRange, "curve index is 1-based");
    return (airy.interpolate(k - 1, t) - t * t) / t;
}

}  // namespace wanderer
