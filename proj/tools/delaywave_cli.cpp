// Command-line front end: run, sweep, validate.

#include "delaywave/experiment.hpp"
#include "delaywave/io.hpp"
#include "delaywave/validate.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <thread>

using namespace delaywave;

namespace {

enum Exit { ok = 0, config_error = 1, blow_up = 2, validation_failed = 3 };

struct CommonOptions {
    std::string case_name = "boundary";
    std::string stepper = "explicit";
    std::string snapshot_times;
    std::string source_sign = "negative";
    std::string out;
    RunConfig cfg;
};

void add_common(CLI::App* app, CommonOptions& o)
{
    app->add_option("--case", o.case_name, "boundary | internal | pointwise")->capture_default_str();
    app->add_option("--n", o.cfg.n_cells, "number of cells N")->capture_default_str();
    app->add_option("--cfl", o.cfg.cfl, "requested dt/dx (snapped so that T = K dt)")->capture_default_str();
    app->add_option("--periods", o.cfg.periods, "T_f in units of the delay T = 2 ell")->capture_default_str();
    app->add_option("--ell", o.cfg.ell, "domain length")->capture_default_str();
    app->add_option("--stepper", o.stepper, "explicit | implicit")->capture_default_str();
    app->add_option("--ic", o.cfg.ic, "default | parabola | bubble")->capture_default_str();
    app->add_option("--snapshot-times", o.snapshot_times, "profile times t1,t2,... (default 0 and T_f)");
    app->add_option("--damp-lo", o.cfg.damp_lo, "internal case: damping interval start / ell")->capture_default_str();
    app->add_option("--damp-hi", o.cfg.damp_hi, "internal case: damping interval end / ell")->capture_default_str();
    app->add_option("--source-sign", o.source_sign, "pointwise feedback sign: negative | positive")
        ->capture_default_str();
    app->add_option("--out", o.out, "output directory");
}

RunConfig finish(CommonOptions& o)
{
    RunConfig cfg = o.cfg;
    cfg.case_kind = parse_case(o.case_name);
    cfg.stepper = parse_stepper(o.stepper);
    cfg.source_sign = parse_source_sign(o.source_sign);
    cfg.snapshot_times = parse_time_list(o.snapshot_times);
    cfg.out_dir = o.out;
    return cfg;
}

void print_fit(const RunResult& r)
{
    const auto& p = r.params;
    std::printf("case=%s N=%zu dt=%s K=%zu M=%zu mu=%s\n", std::string(to_string(p.case_kind)).c_str(), p.n_cells,
                format_double(p.dt).c_str(), p.k_delay, p.m_total, format_double(p.mu).c_str());
    if (!r.trace.empty())
        std::printf("E0=%s E_final=%s\n", format_double(r.trace.front().total).c_str(),
                    format_double(r.trace.back().total).c_str());
    if (r.fit)
        std::printf("omega=%s residual=%s window=[%s,%s]\n", format_double(r.fit->omega).c_str(),
                    format_double(r.fit->residual).c_str(), format_double(r.fit->window.t_lo).c_str(),
                    format_double(r.fit->window.t_hi).c_str());
}

int do_run(CommonOptions& o)
{
    const RunConfig cfg = finish(o);
    const RunResult r = run_single(cfg);
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
    print_fit(r);
    if (r.blow_up_step) {
        std::cerr << "numerical blow-up at step " << *r.blow_up_step << '\n';
        return blow_up;
    }
    return ok;
}

int do_sweep(CommonOptions& o, const std::string& mu_list, unsigned jobs)
{
    const RunConfig cfg = finish(o);
    const auto mus = parse_mu_list(mu_list);
    const auto rows = run_sweep(cfg, mus, jobs);
    std::cout << summary_csv(rows);
    for (const auto& row : rows)
        if (!row.error.empty()) std::cerr << "mu=" << format_double(row.mu) << ": " << row.error << '\n';
    return ok;
}

int do_validate(bool inject)
{
    ValidateOptions opt;
    if (inject) opt.boundary_hook = neumann_sign_mutation();
    const auto checks = run_validation(opt);
    bool all = true;
    for (const auto& c : checks) {
        std::printf("%s  %s: %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
        all = all && c.passed;
    }
    return all ? ok : validation_failed;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Delayed-feedback wave equation simulator"};
    app.require_subcommand(1);

    CommonOptions run_opts;
    auto* run = app.add_subcommand("run", "simulate one configuration");
    add_common(run, run_opts);
    run->add_option("--mu", run_opts.cfg.mu, "feedback coefficient")->capture_default_str();

    CommonOptions sweep_opts;
    std::string mu_list;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    auto* sweep = app.add_subcommand("sweep", "one run per mu; writes summary.csv");
    add_common(sweep, sweep_opts);
    sweep->add_option("--mu-list", mu_list, "A:B:STEP or m1,m2,...")->required();
    sweep->add_option("--jobs", jobs, "worker threads")->capture_default_str();

    bool inject = false;
    auto* validate = app.add_subcommand("validate", "run the invariant checks");
    validate->add_flag("--inject-neumann-sign-error", inject, "flip a sign in the Neumann row (self-test)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    try {
        if (*run) return do_run(run_opts);
        if (*sweep) return do_sweep(sweep_opts, mu_list, jobs);
        if (*validate) return do_validate(inject);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const IncompatibleData& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return config_error;
    }
    return ok;
}
