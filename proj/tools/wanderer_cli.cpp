// wanderer: command line front end for the samplers, quadratures and experiments.
//
// Every subcommand reads a JSON config (--config), writes CSV/SVG plus report.json
// into --out, and prints a short summary. CSV schemas:
//   sample       samples.csv      replicate,k,t,value          (Airy coordinates)
//   couple       coupling.csv     A,B,dominated,dominating,replicates,comparisons,violations
//   kernel-eval  kernel.csv       t1,x1,t2,x2,re,im,est_error
//   moment       moment.csv       kind,t,alpha_hat,beta_hat,value
//   gap-prob     gap.csv          t,threshold,probability,full,order,tail_bound,length,nodes
//   slope-exp    slope.csv        N,k,t,median,ci_lo,ci_hi,target
//                drift.csv        N,k,drift,ci_lo,ci_hi,contains_zero
//                values.csv       N,replicate,k,t,value
//   continuity-exp continuity.csv index,l1,ks_statistic,ks_p,kernel_diff
//   gibbs-check  gibbs.csv        check,curve,statistic,p_value
//                pair.csv         monitoring,steps,trials,accepted,rate,standard_error,analytic
//   crosscheck   crosscheck.csv   N,t,alpha_hat,mc_mean,mc_se,quadrature,overlap,saturated

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "wanderer/error.hpp"
#include "wanderer/fredholm.hpp"
#include "wanderer/harness/config.hpp"
#include "wanderer/harness/experiments.hpp"
#include "wanderer/harness/parallel.hpp"
#include "wanderer/harness/report.hpp"
#include "wanderer/kernel.hpp"
#include "wanderer/moments.hpp"
#include "wanderer/scaling.hpp"

using namespace wanderer;
using namespace wanderer::harness;

namespace {

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::optional<std::size_t> threads;
};

ExperimentConfig resolve(const Common& c, const std::string& name) {
    ExperimentConfig cfg = c.config.empty() ? ExperimentConfig{} : load_config(c.config);
    if (cfg.experiment.empty()) cfg.experiment = name;
    if (c.seed) cfg.seed = *c.seed;
    if (c.threads) cfg.threads = *c.threads;
    if (!c.out.empty()) cfg.output_dir = c.out;
    if (cfg.output_dir.empty()) cfg.output_dir = "out/" + name;
    validate(cfg);
    return cfg;
}

const ParamSet& first_params(const ExperimentConfig& cfg) {
    if (cfg.params.empty()) throw Error(ErrorCode::InvalidConfig, "config needs at least one parameter set");
    return cfg.params.front();
}

void finish(const Report& r, const ExperimentConfig& cfg) {
    r.write(cfg.output_dir);
    std::cout << r.to_json()["results"].dump(2) << "\nwrote " << cfg.output_dir << "/report.json\n";
}

void cmd_sample(const ExperimentConfig& cfg) {
    const ParamSet& p = first_params(cfg);
    if (cfg.N.empty()) throw Error(ErrorCode::InvalidConfig, "sample needs N");
    const std::size_t N = cfg.N.front();
    std::vector<double> times = cfg.times.empty() ? std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0} : cfg.times;
    double hi = 0.0;
    for (double t : times) hi = std::max(hi, t);
    const auto seq = build_parameter_sequences(p, cfg.q, N, airy_window_M(N, cfg.q, hi + 0.25));
    const auto samples = parallel_map<LineEnsembleSample>(cfg.replicates, cfg.threads, [&](std::size_t r) {
        return sample_airy(seq, cfg.q, cfg.curves, times, cfg.seed, r);
    });
    CsvTable csv({"replicate", "k", "t", "value"});
    for (std::size_t r = 0; r < samples.size(); ++r)
        for (std::size_t k = 0; k < cfg.curves; ++k)
            for (std::size_t j = 0; j < times.size(); ++j)
                csv.add_row({double(r), double(k + 1), times[j], samples[r].at(k, j)});
    Report rep("sample", to_json(cfg));
    rep.add_file("samples.csv", csv.str());
    rep.results() = {{"N", N}, {"M", seq.M}, {"A_N", seq.A_N}, {"B_N", seq.B_N}, {"rows", csv.rows()}};
    finish(rep, cfg);
}

void cmd_kernel(const ExperimentConfig& cfg) {
    const Kernel k(first_params(cfg), cfg.quadrature.kernel);
    const auto queries = cfg.option<std::vector<std::vector<double>>>("queries", {{0.0, 0.0, 0.0, 0.0}});
    CsvTable csv({"t1", "x1", "t2", "x2", "re", "im", "est_error"});
    for (const auto& q : queries) {
        if (q.size() != 4) throw Error(ErrorCode::InvalidConfig, "kernel queries are [t1, x1, t2, x2]");
        const auto e = k.evaluate(q[0], q[1], q[2], q[3]);
        csv.add_row({q[0], q[1], q[2], q[3], e.value.real(), e.value.imag(), e.est_error});
    }
    Report rep("kernel-eval", to_json(cfg));
    rep.add_file("kernel.csv", csv.str());
    rep.results() = {{"queries", queries.size()}};
    finish(rep, cfg);
}

void cmd_moment(const ExperimentConfig& cfg) {
    const ParamSet& p = first_params(cfg);
    const auto kind = cfg.option<std::string>("kind", "first");
    const auto alphas = cfg.option<std::vector<double>>("alpha_hat", {-1.0});
    const auto betas = cfg.option<std::vector<double>>("beta_hat", {});
    const std::vector<double> times = cfg.times.empty() ? std::vector<double>{2.0} : cfg.times;
    CsvTable csv({"kind", "t", "alpha_hat", "beta_hat", "value"});
    json vals = json::array();
    for (double t : times)
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            double v = 0.0, beta = 0.0;
            if (kind == "first") v = first_moment(alphas[i], t, p, cfg.quadrature.moment);
            else if (kind == "flat") v = flat_first_moment(alphas[i], t, p, cfg.quadrature.moment);
            else if (kind == "second") {
                if (i >= betas.size()) throw Error(ErrorCode::InvalidConfig, "second moment needs beta_hat per alpha_hat");
                beta = betas[i];
                v = second_factorial_moment(alphas[i], beta, t, p, cfg.quadrature.moment).value;
            } else
                throw Error(ErrorCode::InvalidConfig, "moment kind must be first, flat or second");
            csv.add_row({kind, format_number(t), format_number(alphas[i]), format_number(beta), format_number(v)});
            vals.push_back({{"t", t}, {"alpha_hat", alphas[i]}, {"value", v}});
        }
    Report rep("moment", to_json(cfg));
    rep.add_file("moment.csv", csv.str());
    rep.results() = {{"kind", kind}, {"values", vals}};
    finish(rep, cfg);
}

void cmd_gap(const ExperimentConfig& cfg) {
    const ParamSet& p = first_params(cfg);
    const auto thresholds = cfg.option<std::vector<double>>("thresholds", {0.0});
    const std::vector<double> times = cfg.times.empty() ? std::vector<double>{0.0} : cfg.times;
    CsvTable csv({"t", "threshold", "probability", "full", "order", "tail_bound", "length", "nodes"});
    for (double t : times)
        for (double s : thresholds) {
            const auto g = gap_probability(t, s, p, cfg.quadrature.fredholm_order, cfg.quadrature.fredholm,
                                           cfg.quadrature.kernel);
            csv.add_row({t, s, g.probability, g.full, double(g.order_used), g.tail_bound, g.length, double(g.nodes)});
        }
    Report rep("gap-prob", to_json(cfg));
    rep.add_file("gap.csv", csv.str());
    rep.results() = {{"rows", csv.rows()}};
    finish(rep, cfg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Airy wanderer line ensembles: sampling, kernels, moments and experiments"};
    app.require_subcommand(1);
    Common common;
    struct Sub {
        const char* name;
        const char* help;
    };
    const Sub subs[] = {{"sample", "sample scaled Schur line ensembles"},
                        {"couple", "monotone coupling experiment"},
                        {"kernel-eval", "evaluate the correlation kernel"},
                        {"moment", "first, flat or second factorial moments"},
                        {"gap-prob", "top-curve gap probability via the Fredholm series"},
                        {"slope-exp", "asymptotic slope experiment"},
                        {"continuity-exp", "continuity in the parameters"},
                        {"gibbs-check", "Brownian Gibbs and bridge checks"},
                        {"crosscheck", "Monte Carlo counts against moment quadrature"}};
    for (const auto& s : subs) {
        auto* sc = app.add_subcommand(s.name, s.help);
        sc->add_option("--config", common.config, "JSON config file")->check(CLI::ExistingFile);
        sc->add_option("--seed", common.seed, "base seed (overrides the config)");
        sc->add_option("--out", common.out, "output directory");
        sc->add_option("--threads", common.threads, "worker threads, 0 for all cores");
    }
    CLI11_PARSE(app, argc, argv);

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        const ExperimentConfig cfg = resolve(common, name);
        if (name == "sample") cmd_sample(cfg);
        else if (name == "couple") finish(run_coupling_experiment(cfg).report, cfg);
        else if (name == "kernel-eval") cmd_kernel(cfg);
        else if (name == "moment") cmd_moment(cfg);
        else if (name == "gap-prob") cmd_gap(cfg);
        else if (name == "slope-exp") finish(run_slope_experiment(cfg).report, cfg);
        else if (name == "continuity-exp") finish(run_continuity_experiment(cfg).report, cfg);
        else if (name == "gibbs-check") finish(run_gibbs_experiment(cfg).report, cfg);
        else if (name == "crosscheck") finish(run_crosscheck(cfg).report, cfg);
    } catch (const Error& e) {
        std::cerr << "error [" << error_name(e.code()) << "]: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
