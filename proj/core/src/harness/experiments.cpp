#include "wanderer/harness/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wanderer/error.hpp"
#include "wanderer/harness/parallel.hpp"
#include "wanderer/kernel.hpp"
#include "wanderer/moments.hpp"
#include "wanderer/noise.hpp"
#include "wanderer/schur_sampler.hpp"
#include "wanderer/stats.hpp"

namespace wanderer::harness {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

const char* color(std::size_t i) { return kPalette[i % (sizeof kPalette / sizeof kPalette[0])]; }

std::uint64_t stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    return replicate_seed(replicate_seed(replicate_seed(seed, a), b), c);
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

void need(bool ok, const std::string& msg) {
    if (!ok) throw Error(ErrorCode::InvalidConfig, msg);
}

double l1_distance(const ParamSet& a, const ParamSet& b) {
    auto d = [](const std::vector<double>& x, const std::vector<double>& y) {
        double s = 0.0;
        for (std::size_t i = 0; i < std::max(x.size(), y.size()); ++i)
            s += std::abs((i < x.size() ? x[i] : 0.0) - (i < y.size() ? y[i] : 0.0));
        return s;
    };
    return d(a.a_plus, b.a_plus) + d(a.a_minus, b.a_minus) + d(a.b_plus, b.b_plus) + d(a.b_minus, b.b_minus) +
           std::abs(a.c_plus - b.c_plus) + std::abs(a.c_minus - b.c_minus);
}

std::string flag(bool b) { return b ? "1" : "0"; }

}  // namespace

LineEnsembleSample sample_airy(const ParameterSequences& seq, double q, std::size_t curves,
                               const std::vector<double>& s_grid, std::uint64_t seed, std::size_t r) {
    const auto top = sample_schur_top(seq.config(), NoiseField(replicate_seed(seed, r)), curves);
    return airy_from_raw(embed_line_ensemble(top, seq.N, curves), q, seq.N, s_grid);
}

double airy_horizon(std::size_t N, std::size_t M, double q) {
    return (static_cast<double>(M) - static_cast<double>(N)) * scaling_constants(q).f_q /
           std::pow(static_cast<double>(N), 2.0 / 3.0);
}

SlopeResult run_slope_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    need(!cfg.params.empty() && !cfg.N.empty() && !cfg.times.empty(), "slope experiment needs params, N and times");
    for (double t : cfg.times) need(t > 0.0, "slope times must be positive");
    const ParamSet& p = cfg.params.front();
    if (!p.is_pos()) throw Error(ErrorCode::InvalidParams, "slope experiment needs P_pos parameters");
    const bool mirror = cfg.option("mirror", false);
    const std::vector<double>& rates = mirror ? p.b_plus : p.a_plus;
    const std::size_t J = rates.size();
    const std::size_t T = cfg.times.size(), K = cfg.curves;

    std::vector<double> abs_t = cfg.times;
    std::sort(abs_t.begin(), abs_t.end());
    std::vector<double> s_grid = abs_t;
    if (mirror) {
        for (double& s : s_grid) s = -s;
        std::reverse(s_grid.begin(), s_grid.end());
    }
    auto col = [&](std::size_t ti) { return mirror ? T - 1 - ti : ti; };  // |t| index -> grid column

    SlopeResult res{{}, {}, Report("slope", to_json(cfg))};
    CsvTable slope_csv({"N", "k", "t", "median", "ci_lo", "ci_hi", "target"});
    CsvTable drift_csv({"N", "k", "drift", "ci_lo", "ci_hi", "contains_zero"});
    CsvTable value_csv({"N", "replicate", "k", "t", "value"});

    for (std::size_t n_idx = 0; n_idx < cfg.N.size(); ++n_idx) {
        const std::size_t N = cfg.N[n_idx];
        const auto seq = build_parameter_sequences(p, cfg.q, N, airy_window_M(N, cfg.q, abs_t.back() + 0.25));
        if (mirror && abs_t.back() / scaling_constants(cfg.q).f_q * std::pow(double(N), 2.0 / 3.0) > double(N) - 1.0)
            throw Error(ErrorCode::GridTooShort, "mirrored times exceed the raw window");
        const auto vals = parallel_map<std::vector<double>>(cfg.replicates, cfg.threads, [&](std::size_t r) {
            const auto a = sample_airy(seq, cfg.q, K, s_grid, stream(cfg.seed, 0, N), r);
            std::vector<double> v(K * T);
            for (std::size_t k = 0; k < K; ++k)
                for (std::size_t ti = 0; ti < T; ++ti) v[k * T + ti] = a.at(k, col(ti));
            return v;
        });
        for (std::size_t r = 0; r < vals.size(); ++r)
            for (std::size_t k = 0; k < K; ++k)
                for (std::size_t ti = 0; ti < T; ++ti)
                    value_csv.add_row({double(N), double(r), double(k + 1), s_grid[col(ti)], vals[r][k * T + ti]});

        for (std::size_t k = 1; k <= std::min(J, K); ++k)
            for (std::size_t ti = 0; ti < T; ++ti) {
                const double t = abs_t[ti];
                std::vector<double> stat;
                for (const auto& v : vals) stat.push_back((v[(k - 1) * T + ti] - t * t) / t);
                SlopeRow row{N, k, s_grid[col(ti)], median(stat), 0.0, 0.0, -2.0 / rates[k - 1]};
                const auto ci = bootstrap_ci(stat, [](const std::vector<double>& s) { return median(s); }, cfg.bootstrap,
                                             0.95, stream(cfg.seed, 1, N, k * 1000 + ti));
                row.ci_lo = ci.lo;
                row.ci_hi = ci.hi;
                res.slopes.push_back(row);
                slope_csv.add_row({double(N), double(k), row.t, row.median, row.ci_lo, row.ci_hi, row.target});
            }

        if (T >= 2)
            for (std::size_t k = J + 1; k <= K; ++k) {
                auto fit_on = [&](const std::vector<std::size_t>& reps) {
                    std::vector<double> x, y;
                    for (std::size_t r : reps)
                        for (std::size_t ti = 0; ti < T; ++ti) {
                            x.push_back(abs_t[ti]);
                            y.push_back(vals[r][(k - 1) * T + ti]);
                        }
                    return linear_fit(x, y).slope;
                };
                std::vector<std::size_t> all(vals.size());
                for (std::size_t r = 0; r < all.size(); ++r) all[r] = r;
                DriftRow row{N, k, fit_on(all), 0.0, 0.0};
                const NoiseField f(stream(cfg.seed, 2, N, k));
                std::vector<double> boot;
                std::vector<std::size_t> pick(all.size());
                for (std::size_t b = 0; b < cfg.bootstrap; ++b) {
                    for (std::size_t i = 0; i < pick.size(); ++i)
                        pick[i] = std::min(pick.size() - 1,
                                           static_cast<std::size_t>(f(std::int64_t(b), std::int64_t(i), 0) * double(pick.size())));
                    boot.push_back(fit_on(pick));
                }
                row.ci_lo = quantile(boot, 0.025);
                row.ci_hi = quantile(boot, 0.975);
                res.drifts.push_back(row);
                drift_csv.add_row({format_number(double(N)), format_number(double(k)), format_number(row.slope),
                                   format_number(row.ci_lo), format_number(row.ci_hi), flag(row.contains_zero())});
            }
    }

    PlotSpec plot{mirror ? "slope statistic at -t vs N" : "slope statistic vs N", "N", "median slope", {}, {}};
    for (std::size_t k = 1; k <= std::min(J, K); ++k) {
        PlotSeries s;
        s.label = "k=" + std::to_string(k) + " t=" + format_number(abs_t.back());
        s.color = color(k - 1);
        for (const auto& r : res.slopes)
            if (r.k == k && std::abs(r.t) == abs_t.back()) {
                s.x.push_back(double(r.N));
                s.y.push_back(r.median);
                s.lo.push_back(r.ci_lo);
                s.hi.push_back(r.ci_hi);
            }
        plot.series.push_back(s);
        plot.hlines.emplace_back(-2.0 / rates[k - 1], "target k=" + std::to_string(k));
    }
    res.report.add_file("slope.csv", slope_csv.str());
    res.report.add_file("drift.csv", drift_csv.str());
    res.report.add_file("values.csv", value_csv.str());
    res.report.add_file("slope.svg", svg_plot(plot));

    json js = json::array();
    for (const auto& r : res.slopes)
        js.push_back({{"N", r.N}, {"k", r.k}, {"t", r.t}, {"median", r.median}, {"ci", {r.ci_lo, r.ci_hi}}, {"target", r.target}});
    json jd = json::array();
    for (const auto& r : res.drifts)
        jd.push_back({{"N", r.N}, {"k", r.k}, {"drift", r.slope}, {"ci", {r.ci_lo, r.ci_hi}}, {"contains_zero", r.contains_zero()}});
    res.report.results() = {{"slopes", js}, {"drifts", jd}, {"mirror", mirror}};
    return res;
}

CouplingResult run_coupling_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    need(cfg.params.size() >= 2 && !cfg.N.empty(), "coupling experiment needs two parameter sets and N");
    const std::size_t N = cfg.N.front(), K = cfg.curves;
    const std::size_t M = cfg.option<std::size_t>("M", default_M(N));
    const auto s0 = build_parameter_sequences(cfg.params[0], cfg.q, N, M);
    const auto s1 = build_parameter_sequences(cfg.params[1], cfg.q, N, M);
    std::vector<std::pair<std::size_t, std::size_t>> shifts{{0, 0}, {1, 1}};
    if (cfg.options.contains("shifts")) shifts = cfg.options.at("shifts").get<std::vector<std::pair<std::size_t, std::size_t>>>();

    CouplingResult res{{}, 0, Report("coupling", to_json(cfg))};
    CsvTable csv({"A", "B", "dominated", "dominating", "replicates", "comparisons", "violations"});
    std::vector<std::vector<std::uint64_t>> digests;
    const double horizon = std::min(2.0, airy_horizon(N, M, cfg.q) - 1e-9);
    const double start = std::max(-2.0, airy_horizon(N, 1, cfg.q) + 1e-9);
    const auto s_grid = linspace(start, horizon, 41);

    for (const auto& [A, B] : shifts) {
        CouplingRow row{A, B, false, cfg.replicates, 0, 0};
        if (check_hypothesis(s0.X, s0.Y, s1.X, s1.Y, A, B)) row.swapped = false;
        else if (check_hypothesis(s1.X, s1.Y, s0.X, s0.Y, A, B)) row.swapped = true;
        else
            throw Error(ErrorCode::HypothesisViolated, "neither ordering satisfies the coupling hypothesis for A=" +
                                                           std::to_string(A) + ", B=" + std::to_string(B));
        const auto& lo = row.swapped ? s1 : s0;
        const auto& hi = row.swapped ? s0 : s1;
        struct Out {
            std::size_t violations = 0;
            std::uint64_t digest = 0;
        };
        const auto outs = parallel_map<Out>(cfg.replicates, cfg.threads, [&](std::size_t r) {
            const auto cs = sample_coupled(lo.config(), hi.config(), A, B, NoiseField(replicate_seed(cfg.seed, r)), K);
            // the params[1] process, top K parts
            const TopParts& shared = row.swapped ? cs.first : cs.second;
            std::uint64_t h = 0x84222325cbf29ce4ULL;
            for (std::size_t j = 1; j <= shared.M; ++j)
                for (std::size_t k = 1; k <= K; ++k) h = mix64(h ^ static_cast<std::uint64_t>(shared.at(j, k)));
            return Out{coupling_violations(cs), h};
        });
        std::vector<std::uint64_t> dig;
        for (const auto& o : outs) {
            row.violations += o.violations;
            dig.push_back(o.digest);
        }
        digests.push_back(std::move(dig));
        row.comparisons = cfg.replicates * M * K;
        res.rows.push_back(row);
        csv.add_row({std::to_string(A), std::to_string(B), row.swapped ? "params[1]" : "params[0]",
                     row.swapped ? "params[0]" : "params[1]", std::to_string(row.replicates),
                     std::to_string(row.comparisons), std::to_string(row.violations)});

        // one coupled replicate in Airy coordinates
        const auto cs = sample_coupled(lo.config(), hi.config(), A, B, NoiseField(replicate_seed(cfg.seed, 0)), K);
        const auto al = airy_from_raw(embed_line_ensemble(cs.first, N, K + cs.shift), cfg.q, N, s_grid);
        const auto ah = airy_from_raw(embed_line_ensemble(cs.second, N, K), cfg.q, N, s_grid);
        PlotSpec plot{"coupled sample A=" + std::to_string(A) + " B=" + std::to_string(B), "Airy time", "curve", {}, {}};
        for (std::size_t k = 0; k < K + cs.shift; ++k) {
            PlotSeries s{"dominated k=" + std::to_string(k + 1), s_grid, {}, {}, {}, "#d62728", false};
            for (std::size_t j = 0; j < s_grid.size(); ++j) s.y.push_back(al.at(k, j));
            plot.series.push_back(s);
        }
        for (std::size_t k = 0; k < K; ++k) {
            PlotSeries s{"dominating k=" + std::to_string(k + 1), s_grid, {}, {}, {}, "#1f77b4", false};
            for (std::size_t j = 0; j < s_grid.size(); ++j) s.y.push_back(ah.at(k, j));
            plot.series.push_back(s);
        }
        res.report.add_file("coupling_A" + std::to_string(A) + "_B" + std::to_string(B) + ".svg", svg_plot(plot));
    }
    if (digests.size() >= 2)
        for (std::size_t r = 0; r < cfg.replicates; ++r) res.differing_replicates += digests[0][r] != digests[1][r];

    res.report.add_file("coupling.csv", csv.str());
    json rows = json::array();
    for (const auto& r : res.rows)
        rows.push_back({{"A", r.A}, {"B", r.B}, {"swapped", r.swapped}, {"comparisons", r.comparisons}, {"violations", r.violations}});
    res.report.results() = {{"N", N}, {"M", M}, {"curves", K}, {"couplings", rows}, {"differing_replicates", res.differing_replicates}};
    return res;
}

ContinuityResult run_continuity_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    need(cfg.params.size() >= 2 && !cfg.N.empty(), "continuity experiment needs a ladder and a limit");
    const std::size_t N = cfg.N.front(), L = cfg.params.size() - 1;
    const double t0 = cfg.times.empty() ? 0.0 : cfg.times.front();
    const ParamSet& limit = cfg.params.back();

    auto marginal = [&](const ParamSet& p, std::size_t idx) {
        const auto seq = build_parameter_sequences(p, cfg.q, N, airy_window_M(N, cfg.q, std::max(t0, 0.0) + 0.25));
        return parallel_map<double>(cfg.replicates, cfg.threads, [&](std::size_t r) {
            return sample_airy(seq, cfg.q, 1, {t0}, stream(cfg.seed, 3, idx), r).at(0, 0);
        });
    };
    const auto ref = marginal(limit, L);
    const Kernel k_lim(limit, cfg.quadrature.kernel);
    const std::vector<double> grid{-1.0, -0.5, 0.0, 0.5, 1.0};

    ContinuityResult res{{}, true, true, Report("continuity", to_json(cfg))};
    CsvTable csv({"index", "l1", "ks_statistic", "ks_p", "kernel_diff"});
    for (std::size_t i = 0; i < L; ++i) {
        ContinuityRow row;
        row.index = i;
        row.l1 = l1_distance(cfg.params[i], limit);
        const auto ks = ks_two_sample(marginal(cfg.params[i], i), ref);
        row.ks_statistic = ks.statistic;
        row.ks_p = ks.p_value;
        const Kernel k(cfg.params[i], cfg.quadrature.kernel);
        for (double x : grid)
            for (double y : grid) row.kernel_diff = std::max(row.kernel_diff, std::abs(k(0.0, x, 0.0, y) - k_lim(0.0, x, 0.0, y)));
        if (!res.rows.empty()) {
            res.ks_nonincreasing = res.ks_nonincreasing && row.ks_statistic <= res.rows.back().ks_statistic;
            res.kernel_nonincreasing = res.kernel_nonincreasing && row.kernel_diff <= res.rows.back().kernel_diff;
        }
        res.rows.push_back(row);
        csv.add_row({double(i), row.l1, row.ks_statistic, row.ks_p, row.kernel_diff});
    }
    PlotSpec plot{"continuity along the ladder", "ladder index", "distance", {}, {}};
    PlotSeries ks_s{"KS statistic", {}, {}, {}, {}, color(0), true}, kd_s{"kernel diff", {}, {}, {}, {}, color(1), true};
    for (const auto& r : res.rows) {
        ks_s.x.push_back(double(r.index));
        ks_s.y.push_back(r.ks_statistic);
        kd_s.x.push_back(double(r.index));
        kd_s.y.push_back(r.kernel_diff);
    }
    plot.series = {ks_s, kd_s};
    plot.hlines.emplace_back(1.36 * std::sqrt(2.0 / double(cfg.replicates)), "KS 5% level");
    res.report.add_file("continuity.csv", csv.str());
    res.report.add_file("continuity.svg", svg_plot(plot));
    json rows = json::array();
    for (const auto& r : res.rows)
        rows.push_back({{"index", r.index}, {"l1", r.l1}, {"ks", r.ks_statistic}, {"ks_p", r.ks_p}, {"kernel_diff", r.kernel_diff}});
    res.report.results() = {{"rows", rows},
                            {"t", t0},
                            {"ks_nonincreasing", res.ks_nonincreasing},
                            {"kernel_nonincreasing", res.kernel_nonincreasing}};
    return res;
}

bool CrosscheckRow::overlap() const { return std::abs(mc_mean - quadrature) <= 1.959963984540054 * mc_se + 1e-6; }

CrosscheckResult run_crosscheck(const ExperimentConfig& cfg) {
    validate(cfg);
    need(!cfg.params.empty() && !cfg.N.empty(), "crosscheck needs params and N");
    const ParamSet& p = cfg.params.front();
    const auto alphas = cfg.option<std::vector<double>>("alpha_hat", {-1.0});
    std::vector<double> times = cfg.times.empty() ? std::vector<double>{2.0} : cfg.times;
    std::sort(times.begin(), times.end());
    need(times.front() > 0.0, "crosscheck times must be positive");

    std::vector<double> quad;
    for (double t : times)
        for (double a : alphas) quad.push_back(first_moment(a, t, p, cfg.quadrature.moment));

    CrosscheckResult res{{}, Report("crosscheck", to_json(cfg))};
    CsvTable csv({"N", "t", "alpha_hat", "mc_mean", "mc_se", "quadrature", "overlap", "saturated"});
    for (std::size_t N : cfg.N) {
        const auto seq = build_parameter_sequences(p, cfg.q, N, airy_window_M(N, cfg.q, times.back() + 0.25));
        const auto vals = parallel_map<LineEnsembleSample>(cfg.replicates, cfg.threads, [&](std::size_t r) {
            return sample_airy(seq, cfg.q, cfg.curves, times, stream(cfg.seed, 4, N), r);
        });
        for (std::size_t ti = 0; ti < times.size(); ++ti)
            for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
                const double t = times[ti], thr = t * alphas[ai] + t * t;
                CrosscheckRow row{N, t, alphas[ai], 0.0, 0.0, quad[ti * alphas.size() + ai], false};
                std::vector<double> counts;
                for (const auto& v : vals) {
                    std::size_t c = 0;
                    for (std::size_t k = 0; k < cfg.curves; ++k) c += v.at(k, ti) >= thr;
                    row.saturated = row.saturated || c == cfg.curves;
                    counts.push_back(double(c));
                }
                row.mc_mean = mean(counts);
                row.mc_se = counts.size() > 1 ? standard_error(counts) : 0.0;
                res.rows.push_back(row);
                csv.add_row({format_number(double(N)), format_number(t), format_number(row.alpha_hat),
                             format_number(row.mc_mean), format_number(row.mc_se), format_number(row.quadrature),
                             flag(row.overlap()), flag(row.saturated)});
            }
    }
    res.report.add_file("crosscheck.csv", csv.str());
    json rows = json::array();
    for (const auto& r : res.rows)
        rows.push_back({{"N", r.N}, {"t", r.t}, {"alpha_hat", r.alpha_hat}, {"mc_mean", r.mc_mean}, {"mc_se", r.mc_se},
                        {"quadrature", r.quadrature}, {"overlap", r.overlap()}, {"finite_N_drift", !r.overlap()},
                        {"saturated", r.saturated}});
    res.report.results() = {{"rows", rows}};
    return res;
}

GibbsExperimentResult run_gibbs_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    GibbsExperimentResult res{{}, {}, 0.0, {}, false, {}, Report("gibbs", to_json(cfg))};
    const auto max_attempts = cfg.option<std::size_t>("max_attempts", 1000000);

    // synthetic avoiding ensemble as its own fixed point
    BridgeSpec syn;
    syn.x = {2.0, 1.0, 0.0};
    syn.y = {2.0, 1.0, 0.0};
    syn.steps_per_unit = cfg.option("synthetic_steps", 32);
    const auto samples = parallel_map<LineEnsembleSample>(cfg.replicates, cfg.threads, [&](std::size_t r) {
        const auto a = sample_avoiding(syn, NoiseField(stream(cfg.seed, 5, r)), max_attempts);
        LineEnsembleSample e;
        e.times = a.times;
        e.curves = a.curves.size();
        e.coordinate = Coordinate::Rescaled;
        for (const auto& c : a.curves) e.values.insert(e.values.end(), c.begin(), c.end());
        return e;
    });
    res.synthetic = gibbs_resample_check(samples, 1, 2, 0.25, 0.75, stream(cfg.seed, 6), max_attempts);

    // two bridges: acceptance rate vs the reflection formula
    const double gap = cfg.option("gap", 1.0);
    const auto trials = cfg.option<std::size_t>("pair_trials", 100000);
    BridgeSpec pair;
    pair.x = {gap, 0.0};
    pair.y = {gap, 0.0};
    res.pair = acceptance_rate(pair, NoiseField(stream(cfg.seed, 7)), trials, Monitoring::BridgeCorrected);
    res.pair_analytic = pair_noncrossing_probability(pair.a, pair.b, gap, gap, pair.diffusion);
    res.refinement = refinement_study(pair, NoiseField(stream(cfg.seed, 8)), std::max<std::size_t>(trials / 10, 100));

    CsvTable gcsv({"check", "curve", "statistic", "p_value"});
    for (std::size_t i = 0; i < res.synthetic.ks.size(); ++i)
        gcsv.add_row({"synthetic", std::to_string(i + 1), format_number(res.synthetic.ks[i].statistic),
                      format_number(res.synthetic.ks[i].p_value)});

    json sampled = nullptr;
    if (!cfg.params.empty() && !cfg.N.empty()) {
        const auto window = cfg.option<std::vector<double>>("window", {-0.5, 0.5});
        need(window.size() == 2 && window[0] < window[1], "window must be [a, b] with a < b");
        const std::size_t N = cfg.N.front(), K = std::max<std::size_t>(cfg.curves, 2);
        const auto seq = build_parameter_sequences(cfg.params.front(), cfg.q, N,
                                                   airy_window_M(N, cfg.q, window[1] + 0.5));
        const auto s_grid = linspace(window[0] - 0.5, window[1] + 0.5, cfg.option<std::size_t>("grid_points", 41));
        const auto ens = parallel_map<LineEnsembleSample>(cfg.replicates, cfg.threads, [&](std::size_t r) {
            auto a = sample_airy(seq, cfg.q, K, s_grid, stream(cfg.seed, 9, N), r);
            for (std::size_t i = 0; i < a.curves; ++i)
                for (std::size_t j = 0; j < a.times.size(); ++j)
                    a.at(i, j) = (a.at(i, j) - a.times[j] * a.times[j]) / std::sqrt(2.0);
            return a;
        });
        try {
            res.sampled = gibbs_resample_check(ens, 1, 1, window[0], window[1], stream(cfg.seed, 10), max_attempts);
            res.has_sampled = true;
            gcsv.add_row({"sampled", "1", format_number(res.sampled.ks[0].statistic), format_number(res.sampled.ks[0].p_value)});
            sampled = {{"N", N}, {"ks", res.sampled.ks[0].statistic}, {"p_value", res.sampled.ks[0].p_value},
                       {"window", {res.sampled.window_a, res.sampled.window_b}}};
        } catch (const Error& e) {
            sampled = {{"N", N}, {"error", e.what()}};
        }
    }

    CsvTable pcsv({"monitoring", "steps", "trials", "accepted", "rate", "standard_error", "analytic"});
    auto prow = [&](const std::string& m, const AcceptanceEstimate& e) {
        pcsv.add_row({m, std::to_string(e.steps), std::to_string(e.trials), std::to_string(e.accepted), format_number(e.rate),
                      format_number(e.standard_error), format_number(res.pair_analytic)});
    };
    prow("bridge_corrected", res.pair);
    prow("grid", res.refinement.coarse);
    prow("grid", res.refinement.fine);
    res.report.add_file("gibbs.csv", gcsv.str());
    res.report.add_file("pair.csv", pcsv.str());
    res.report.results() = {
        {"synthetic", {{"min_p_value", res.synthetic.min_p_value()}, {"max_ks", res.synthetic.max_statistic()}, {"attempts", res.synthetic.attempts}}},
        {"pair", {{"rate", res.pair.rate}, {"standard_error", res.pair.standard_error}, {"analytic", res.pair_analytic},
                  {"z", (res.pair.rate - res.pair_analytic) / res.pair.standard_error}}},
        {"grid_refinement", {{"coarse", res.refinement.coarse.rate}, {"fine", res.refinement.fine.rate}, {"drift", res.refinement.drift}}},
        {"sampled", sampled}};
    return res;
}

}  // namespace wanderer::harness
