#include "wanderer/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wanderer/error.hpp"

namespace wanderer {

std::vector<double> uniform_grid(double a, double b, std::size_t steps) {
    if (steps == 0) throw Error(ErrorCode::InvalidParams, "grid needs at least one step");
    std::vector<double> t(steps + 1);
    for (std::size_t j = 0; j <= steps; ++j) t[j] = a + (b - a) * static_cast<double>(j) / static_cast<double>(steps);
    t.back() = b;
    return t;
}

std::vector<double> BridgeSpec::grid() const {
    if (!times.empty()) return times;
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) * steps_per_unit - 1e-9)));
    return uniform_grid(a, b, steps);
}

void validate(const BridgeSpec& s) {
    if (!(s.a < s.b)) throw Error(ErrorCode::InvalidParams, "bridge interval needs a < b");
    if (s.x.empty() || s.x.size() != s.y.size()) throw Error(ErrorCode::InvalidParams, "entrance and exit sizes differ");
    if (!(s.diffusion > 0.0)) throw Error(ErrorCode::InvalidParams, "diffusion must be positive");
    if (s.times.empty() && s.steps_per_unit < 1) throw Error(ErrorCode::InvalidParams, "grid resolution must be positive");
    if (!s.times.empty()) {
        if (s.times.size() < 2 || s.times.front() != s.a || s.times.back() != s.b)
            throw Error(ErrorCode::InvalidParams, "explicit grid must span [a, b]");
        for (std::size_t j = 1; j < s.times.size(); ++j)
            if (!(s.times[j] > s.times[j - 1])) throw Error(ErrorCode::NonMonotone, "grid times must increase");
    }
    for (std::size_t i = 1; i < s.x.size(); ++i)
        if (!(s.x[i - 1] > s.x[i]) || !(s.y[i - 1] > s.y[i]))
            throw Error(ErrorCode::NonMonotone, "entrance and exit data must be strictly decreasing");
    if (s.top && (!(s.top(s.a) > s.x.front()) || !(s.top(s.b) > s.y.front())))
        throw Error(ErrorCode::Inadmissible, "top barrier does not clear the first curve");
    if (s.bottom && (!(s.bottom(s.a) < s.x.back()) || !(s.bottom(s.b) < s.y.back())))
        throw Error(ErrorCode::Inadmissible, "bottom barrier does not clear the last curve");
}

double standard_normal(const NoiseField& f, std::int64_t n, std::int64_t m, std::int64_t j) {
    const double u1 = f(n, m, 2 * j), u2 = f(n, m, 2 * j + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> sample_bridge(const std::vector<double>& times, double x, double y, const NoiseField& f,
                                  std::int64_t n, std::int64_t m, double diffusion) {
    const std::size_t len = times.size();
    if (len < 2) throw Error(ErrorCode::InvalidParams, "bridge grid needs two points");
    std::vector<double> w(len, 0.0);
    for (std::size_t j = 1; j < len; ++j)
        w[j] = w[j - 1] + std::sqrt(diffusion * (times[j] - times[j - 1])) *
                              standard_normal(f, n, m, static_cast<std::int64_t>(j));
    const double a = times.front(), span = times.back() - a;
    const double pin = w.back() - (y - x);
    std::vector<double> out(len);
    for (std::size_t j = 0; j < len; ++j) out[j] = x + w[j] - (times[j] - a) / span * pin;
    out.front() = x;
    out.back() = y;
    return out;
}

std::vector<double> sample_bridge(double a, double b, double x, double y, std::size_t steps, const NoiseField& f) {
    if (!(a < b)) throw Error(ErrorCode::InvalidParams, "bridge interval needs a < b");
    return sample_bridge(uniform_grid(a, b, steps), x, y, f);
}

bool avoids(const BridgeSpec& s, const std::vector<double>& times, const std::vector<std::vector<double>>& c) {
    for (std::size_t j = 0; j < times.size(); ++j) {
        if (s.top && !(s.top(times[j]) > c.front()[j])) return false;
        if (s.bottom && !(c.back()[j] > s.bottom(times[j]))) return false;
        for (std::size_t i = 1; i < c.size(); ++i)
            if (!(c[i - 1][j] > c[i][j])) return false;
    }
    return true;
}

namespace {

// log of the probability that no pinned difference process crosses inside any cell
double log_cell_survival(const BridgeSpec& s, const std::vector<double>& t, const std::vector<std::vector<double>>& c) {
    double acc = 0.0;
    auto cell = [&](double g0, double g1, double var, double dt) {
        acc += std::log1p(-std::exp(-2.0 * g0 * g1 / (var * dt)));
    };
    for (std::size_t j = 0; j + 1 < t.size(); ++j) {
        const double dt = t[j + 1] - t[j];
        if (s.top) cell(s.top(t[j]) - c.front()[j], s.top(t[j + 1]) - c.front()[j + 1], s.diffusion, dt);
        if (s.bottom) cell(c.back()[j] - s.bottom(t[j]), c.back()[j + 1] - s.bottom(t[j + 1]), s.diffusion, dt);
        for (std::size_t i = 1; i < c.size(); ++i)
            cell(c[i - 1][j] - c[i][j], c[i - 1][j + 1] - c[i][j + 1], 2.0 * s.diffusion, dt);
    }
    return acc;
}

bool attempt(const BridgeSpec& s, const std::vector<double>& t, const NoiseField& f, std::int64_t n, Monitoring mode,
             std::vector<std::vector<double>>& c) {
    for (std::size_t i = 0; i < s.curves(); ++i)
        c[i] = sample_bridge(t, s.x[i], s.y[i], f, n, static_cast<std::int64_t>(i), s.diffusion);
    if (!avoids(s, t, c)) return false;
    if (mode == Monitoring::Grid) return true;
    return std::log(f(n, -1, 0)) < log_cell_survival(s, t, c);
}

}  // namespace

AvoidingSample sample_avoiding(const BridgeSpec& spec, const NoiseField& f, std::size_t max_attempts, Monitoring mode) {
    validate(spec);
    AvoidingSample out;
    out.times = spec.grid();
    out.curves.resize(spec.curves());
    for (std::size_t n = 0; n < max_attempts; ++n) {
        if (attempt(spec, out.times, f, static_cast<std::int64_t>(n), mode, out.curves)) {
            out.attempts = n + 1;
            return out;
        }
    }
    std::ostringstream msg;
    msg << "no acceptance in " << max_attempts << " attempts (acceptance rate < " << 1.0 / static_cast<double>(max_attempts)
        << ", " << spec.curves() << " curves on [" << spec.a << ", " << spec.b << "])";
    throw Error(ErrorCode::RejectionBudgetExceeded, msg.str());
}

AcceptanceEstimate acceptance_rate(const BridgeSpec& spec, const NoiseField& f, std::size_t trials, Monitoring mode) {
    validate(spec);
    if (trials == 0) throw Error(ErrorCode::InvalidParams, "acceptance estimate needs trials");
    const auto t = spec.grid();
    std::vector<std::vector<double>> c(spec.curves());
    AcceptanceEstimate e;
    e.trials = trials;
    e.steps = t.size() - 1;
    for (std::size_t n = 0; n < trials; ++n)
        if (attempt(spec, t, f, static_cast<std::int64_t>(n), mode, c)) ++e.accepted;
    e.rate = static_cast<double>(e.accepted) / static_cast<double>(trials);
    e.standard_error = std::sqrt(std::max(e.rate * (1.0 - e.rate), 1e-300) / static_cast<double>(trials));
    return e;
}

double barrier_noncrossing_probability(double a, double b, double x, double y, double diffusion) {
    if (!(a < b) || x <= 0.0 || y <= 0.0) return 0.0;
    return -std::expm1(-2.0 * x * y / (diffusion * (b - a)));
}

double pair_noncrossing_probability(double a, double b, double d1, double d2, double diffusion) {
    return barrier_noncrossing_probability(a, b, d1, d2, 2.0 * diffusion);
}

RefinementReport refinement_study(const BridgeSpec& spec, const NoiseField& f, std::size_t trials) {
    RefinementReport r;
    BridgeSpec s = spec;
    s.times.clear();
    r.coarse = acceptance_rate(s, f, trials);
    s.steps_per_unit *= 2;
    r.fine = acceptance_rate(s, f, trials);
    r.drift = r.fine.rate - r.coarse.rate;
    return r;
}

double GibbsReport::min_p_value() const {
    double p = 1.0;
    for (const auto& k : ks) p = std::min(p, k.p_value);
    return p;
}

double GibbsReport::max_statistic() const {
    double d = 0.0;
    for (const auto& k : ks) d = std::max(d, k.statistic);
    return d;
}

namespace {

std::size_t nearest_index(const std::vector<double>& t, double x) {
    const auto it = std::lower_bound(t.begin(), t.end(), x);
    if (it == t.begin()) return 0;
    if (it == t.end()) return t.size() - 1;
    const auto j = static_cast<std::size_t>(it - t.begin());
    return (x - t[j - 1] <= t[j] - x) ? j - 1 : j;
}

}  // namespace

GibbsReport gibbs_resample_check(const std::vector<LineEnsembleSample>& samples, std::size_t k1, std::size_t k2,
                                 double wa, double wb, std::uint64_t seed, std::size_t max_attempts, double diffusion,
                                 std::vector<LineEnsembleSample>* resampled) {
    if (samples.empty()) throw Error(ErrorCode::InvalidParams, "gibbs check needs samples");
    if (k1 < 1 || k2 < k1 || k2 > samples.front().curves)
        throw Error(ErrorCode::IndexOutOfRange, "curve range outside the sample");
    if (!(wa <= wb)) throw Error(ErrorCode::InvalidParams, "window needs a <= b");
    const auto& t = samples.front().times;
    const std::size_t ja = nearest_index(t, wa), jb = nearest_index(t, wb), jm = (ja + jb) / 2;
    const std::size_t k = k2 - k1 + 1;

    GibbsReport rep;
    rep.k1 = k1;
    rep.k2 = k2;
    rep.window_a = t[ja];
    rep.window_b = t[jb];
    rep.midpoint = t[jm];
    rep.replicates = samples.size();
    std::vector<std::vector<double>> before(k), after(k);
    if (resampled) *resampled = samples;

    const std::vector<double> sub(t.begin() + static_cast<std::ptrdiff_t>(ja), t.begin() + static_cast<std::ptrdiff_t>(jb) + 1);
    for (std::size_t r = 0; r < samples.size(); ++r) {
        const auto& s = samples[r];
        if (s.times != t || s.curves < k2) throw Error(ErrorCode::InvalidParams, "samples must share one grid");
        for (std::size_t i = 0; i < k; ++i) before[i].push_back(s.at(k1 - 1 + i, jm));
        if (jb < ja + 2) {
            for (std::size_t i = 0; i < k; ++i) after[i].push_back(s.at(k1 - 1 + i, jm));
            continue;
        }
        BridgeSpec spec;
        spec.a = t[ja];
        spec.b = t[jb];
        spec.times = sub;
        spec.diffusion = diffusion;
        for (std::size_t i = 0; i < k; ++i) {
            spec.x.push_back(s.at(k1 - 1 + i, ja));
            spec.y.push_back(s.at(k1 - 1 + i, jb));
        }
        if (k1 > 1) spec.top = [&s, k1](double u) { return s.interpolate(k1 - 2, u); };
        if (k2 < s.curves) spec.bottom = [&s, k2](double u) { return s.interpolate(k2, u); };
        const auto acc = sample_avoiding(spec, NoiseField(replicate_seed(seed, r)), max_attempts);
        rep.attempts += acc.attempts;
        for (std::size_t i = 0; i < k; ++i) after[i].push_back(acc.curves[i][jm - ja]);
        if (resampled)
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = ja; j <= jb; ++j) (*resampled)[r].at(k1 - 1 + i, j) = acc.curves[i][j - ja];
    }
    for (std::size_t i = 0; i < k; ++i) rep.ks.push_back(ks_two_sample(before[i], after[i]));
    return rep;
}

DominationReport coupled_avoiding_domination(const BridgeSpec& low, const BridgeSpec& high, std::size_t replicates,
                                             std::uint64_t seed, std::size_t max_attempts, double alpha,
                                             std::size_t time_points) {
    validate(low);
    validate(high);
    if (low.curves() != high.curves()) throw Error(ErrorCode::InvalidParams, "ensembles differ in size");
    const auto t = low.grid();
    if (t != high.grid()) throw Error(ErrorCode::InvalidParams, "ensembles must share one grid");
    if (replicates == 0 || time_points < 2) throw Error(ErrorCode::InvalidParams, "domination check needs data");

    std::vector<std::size_t> cols;
    for (std::size_t p = 0; p < time_points; ++p)
        cols.push_back(static_cast<std::size_t>(std::llround(static_cast<double>(p) * static_cast<double>(t.size() - 1) /
                                                             static_cast<double>(time_points - 1))));
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());

    const std::size_t k = low.curves();
    std::vector<std::vector<double>> lo(k * cols.size()), hi(k * cols.size());
    for (std::size_t r = 0; r < replicates; ++r) {
        const auto a = sample_avoiding(low, NoiseField(replicate_seed(seed, 2 * r)), max_attempts);
        const auto b = sample_avoiding(high, NoiseField(replicate_seed(seed, 2 * r + 1)), max_attempts);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t c = 0; c < cols.size(); ++c) {
                lo[i * cols.size() + c].push_back(a.curves[i][cols[c]]);
                hi[i * cols.size() + c].push_back(b.curves[i][cols[c]]);
            }
    }
    DominationReport rep;
    rep.replicates = replicates;
    rep.band = 2.0 * dkw_epsilon(replicates, alpha);
    rep.max_excess = -1.0;
    rep.min_mean_gap = INFINITY;
    for (std::size_t q = 0; q < lo.size(); ++q) {
        auto& l = lo[q];
        auto& h = hi[q];
        std::sort(l.begin(), l.end());
        std::sort(h.begin(), h.end());
        for (double x : l) rep.max_excess = std::max(rep.max_excess, empirical_cdf(h, x) - empirical_cdf(l, x));
        for (double x : h) rep.max_excess = std::max(rep.max_excess, empirical_cdf(h, x) - empirical_cdf(l, x));
        rep.min_mean_gap = std::min(rep.min_mean_gap, mean(h) - mean(l));
    }
    return rep;
}

}  // namespace wanderer
