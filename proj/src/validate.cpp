#include "delaywave/validate.hpp"

#include "delaywave/io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

namespace delaywave {

Eigen::VectorXd stack_state(const WaveState& st, const DelayLine<double>& delay, std::size_t history)
{
    const std::size_t dof = st.size();
    Eigen::VectorXd z = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(2 * dof + history));
    for (std::size_t j = 0; j < dof; ++j) {
        z(j) = st.u_next[j];
        z(dof + j) = st.u_curr[j];
    }
    for (std::size_t k = 0; k < history && k < delay.size(); ++k) z(2 * dof + k) = delay.read(k + 1);
    return z;
}

Eigen::VectorXd stack_state(const WaveState& st, const DelayLine<std::vector<double>>& delay, std::size_t history,
                            std::size_t sample_dof)
{
    const std::size_t dof = st.size();
    Eigen::VectorXd z = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(2 * dof + history * sample_dof));
    for (std::size_t j = 0; j < dof; ++j) {
        z(j) = st.u_next[j];
        z(dof + j) = st.u_curr[j];
    }
    for (std::size_t k = 0; k < history && k < delay.size(); ++k) {
        const auto& v = delay.read(k + 1);
        for (std::size_t i = 0; i < sample_dof; ++i) z(2 * dof + k * sample_dof + i) = v[i];
    }
    return z;
}

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

void accumulate(OracleComparison& c, const Eigen::VectorXd& z, const std::vector<double>& u, std::size_t v_begin,
                std::span<const double> v)
{
    for (std::size_t j = 0; j < u.size(); ++j) {
        c.max_abs = std::max(c.max_abs, std::abs(u[j] - z(static_cast<Eigen::Index>(j))));
        c.max_ref = std::max(c.max_ref, std::abs(z(static_cast<Eigen::Index>(j))));
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double ref = z(static_cast<Eigen::Index>(v_begin + i));
        c.max_abs = std::max(c.max_abs, std::abs(v[i] - ref));
        c.max_ref = std::max(c.max_ref, std::abs(ref));
    }
}

SimParams oracle_params(Case c, std::size_t n, double mu, std::size_t steps, Stepper stepper)
{
    const double cfl = stepper == Stepper::implicit_averaged ? 2.0 : 1.0;
    std::optional<DampingInterval> damping;
    if (c == Case::internal) damping = DampingInterval{n / 4, 3 * n / 4};
    auto p = build_params(c, 1.0, n, cfl, 1, mu, damping);
    const std::size_t periods = (steps + 1) / p.k_delay + 1;
    return build_params(c, 1.0, n, cfl, periods, mu, damping);
}

}  // namespace

OracleComparison compare_with_oracle(Case c, Stepper stepper, std::size_t n_cells, double mu, std::size_t steps,
                                     std::uint64_t seed, PointSourceSign sign)
{
    std::mt19937_64 rng(seed);
    const SimParams p = oracle_params(c, n_cells, mu, steps, stepper);
    OracleSetup setup{p, stepper, {}, sign};
    OracleComparison cmp;
    cmp.steps = steps;

    if (c == Case::boundary) {
        auto u0 = random_vector(rng, n_cells + 1);
        u0[0] = 0.0;
        const auto u1 = random_vector(rng, n_cells + 1);
        auto sch = BoundaryScheme::from_initial_data(p, u0, u1, stepper);
        const auto traj = oracle_trajectory(setup, stack_state(sch.state(), sch.delay(), p.k_delay), 1, steps);
        for (std::size_t i = 1; i <= steps; ++i) {
            sch.step();
            const double v = sch.delay().read(1);
            accumulate(cmp, traj[i], sch.state().u_next, 2 * (n_cells + 1), std::span<const double>(&v, 1));
        }
    } else if (c == Case::internal) {
        auto u0 = random_vector(rng, n_cells + 1);
        u0[0] = u0[n_cells] = 0.0;
        const auto u1 = random_vector(rng, n_cells + 1);
        std::uniform_real_distribution<double> dd(0.5, 1.5);
        std::vector<double> d(p.i1 - p.i0 + 1);
        for (auto& x : d) x = dd(rng);
        setup.damping = d;
        auto sch = InternalScheme::from_initial_data(p, u0, u1, d, stepper);
        const std::size_t m = d.size();
        const auto traj = oracle_trajectory(setup, stack_state(sch.state(), sch.delay(), p.k_delay, m), 1, steps);
        for (std::size_t i = 1; i <= steps; ++i) {
            sch.step();
            accumulate(cmp, traj[i], sch.state().u_next, 2 * (n_cells + 1), sch.delay().read(1));
        }
    } else {
        const auto u0 = random_vector(rng, n_cells);
        const auto u1 = random_vector(rng, n_cells);
        const double v0 = random_vector(rng, 1)[0];
        auto sch = PointwiseScheme::from_initial_data(p, u0, u1, v0, sign);
        const auto traj = oracle_trajectory(setup, stack_state(sch.state(), sch.delay(), p.k_delay + 1), 1, steps);
        for (std::size_t i = 1; i <= steps; ++i) {
            sch.step();
            const double v = sch.delay().read(1);
            accumulate(cmp, traj[i], sch.state().u_next, 2 * n_cells, std::span<const double>(&v, 1));
        }
    }
    return cmp;
}

StepHook neumann_sign_mutation()
{
    return [](AnyScheme& s) {
        auto& b = std::get<BoundaryScheme>(s);
        b.step();
        WaveState st = b.state();
        const std::size_t n = b.params().n_cells;
        const double sq = b.params().s;
        st.u_next[n] = 2.0 * (1.0 - sq) * st.u_curr[n] - 2.0 * sq * st.u_curr[n - 1] - st.u_prev[n];
        BoundaryScheme mutated(b.params(), std::move(st), b.delay(), b.stepper());
        s = std::move(mutated);
    };
}

double energy_growth(const RunResult& r, double t_hi)
{
    if (r.blow_up_step && static_cast<double>(*r.blow_up_step) * r.params.dt <= t_hi)
        return std::numeric_limits<double>::infinity();
    const double e0 = r.trace.front().total;
    double worst = 0.0;
    for (const auto& rec : r.trace.records()) {
        if (rec.t > t_hi) break;
        worst = std::max(worst, std::abs(rec.total) / e0);
    }
    return worst;
}

namespace {

std::string sci(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

CheckResult conservation_check(Case c, std::size_t n, double cfl, const StepHook& hook)
{
    RunConfig cfg;
    cfg.case_kind = c;
    cfg.n_cells = n;
    cfg.cfl = cfl;
    cfg.periods = 1;
    cfg.mu = 0.7;
    const RunResult r = simulate(cfg, hook);
    const double step = r.trace.max_step_drift(r.params.final_time());
    const double cum = r.trace.max_relative_drift(r.params.final_time());
    return {"free-phase conservation " + std::string(to_string(c)) + " N=" + std::to_string(n) + " CFL=" +
                format_double(cfl),
            step <= 1e-12 && cum <= 1e-10, "per-step " + sci(step) + ", cumulative " + sci(cum)};
}

CheckResult long_conservation_check(Case c)
{
    RunConfig cfg;
    cfg.case_kind = c;
    cfg.n_cells = 16;
    cfg.periods = 5;
    cfg.mu = 0.0;
    const RunResult r = simulate(cfg);
    const double cum = r.trace.max_relative_drift(r.params.final_time());
    return {"mu=0 delayed-phase conservation " + std::string(to_string(c)), cum <= 1e-10, "cumulative " + sci(cum)};
}

CheckResult oracle_check(Case c, Stepper st, double mu)
{
    // relative to the solution scale: the CFL-2 delayed runs grow
    const auto cmp = compare_with_oracle(c, st, 8, mu, 200, 20261014);
    return {"oracle equivalence " + std::string(to_string(c)) + " " + std::string(to_string(st)),
            cmp.max_abs <= 1e-12 * std::max(1.0, cmp.max_ref),
            "sup |diff| " + sci(cmp.max_abs) + " (scale " + sci(cmp.max_ref) + ")"};
}

CheckResult flux_identity_check()
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    const FvMesh mesh(1.0, 16);
    double worst_transmission = 0.0, worst_value = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> u(16);
        for (auto& x : u) x = dist(rng);
        const double mu = dist(rng), v = dist(rng);
        for (auto sign : {PointSourceSign::positive, PointSourceSign::negative}) {
            const auto f = interface_fluxes(mesh, u, 8, mu, v, sign);
            const double jump = -f.minus + f.plus + sign_factor(sign) * mu * v;
            worst_transmission = std::max(worst_transmission, std::abs(jump));
            const double a = interface_value_from_minus(mesh, u, 8, f.minus);
            const double b = interface_value_from_plus(mesh, u, 8, f.plus);
            const double c = interface_value(mesh, u, 8, mu, v, sign);
            worst_value = std::max({worst_value, std::abs(a - b), std::abs(a - c)});
        }
    }
    return {"interface flux identities", worst_transmission <= 1e-13 && worst_value <= 1e-14,
            "transmission " + sci(worst_transmission) + ", interface value " + sci(worst_value)};
}

CheckResult cfl_check(Case c)
{
    RunConfig cfg;
    cfg.case_kind = c;
    cfg.cfl = 1.05;
    cfg.periods = 10;
    cfg.mu = 0.0;
    cfg.snapshot_times = {0.0};
    const RunResult r = simulate(cfg);
    const double g = energy_growth(r, 20.0);
    return {"CFL 1.05 instability " + std::string(to_string(c)), g > 10.0, "max |E|/E0 before t=20: " + sci(g)};
}

CheckResult implicit_check(Case c)
{
    RunConfig cfg;
    cfg.case_kind = c;
    cfg.cfl = 2.0;
    cfg.stepper = Stepper::implicit_averaged;
    cfg.mu = 0.0;
    cfg.periods = 6;
    const RunResult r = simulate(cfg);
    const auto& rec = r.trace.records();
    const double e0 = rec.front().total;
    double worst_rise = 0.0, min_e = rec.front().total;
    for (std::size_t i = 1; i < rec.size() && i <= 500; ++i) {
        worst_rise = std::max(worst_rise, (rec[i].total - rec[i - 1].total) / e0);
        min_e = std::min(min_e, rec[i].total);
    }
    return {"implicit energy " + std::string(to_string(c)), min_e >= 0.0 && worst_rise <= 1e-12,
            "min " + sci(min_e) + ", largest rise " + sci(worst_rise)};
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidateOptions& options)
{
    std::vector<CheckResult> out;
    for (double cfl : {0.5, 1.0}) {
        out.push_back(conservation_check(Case::boundary, 16, cfl, options.boundary_hook));
        out.push_back(conservation_check(Case::internal, 16, cfl, nullptr));
        out.push_back(conservation_check(Case::pointwise, 16, cfl, nullptr));
    }
    for (Case c : {Case::boundary, Case::internal, Case::pointwise}) out.push_back(long_conservation_check(c));
    out.push_back(oracle_check(Case::boundary, Stepper::explicit_leapfrog, 0.5));
    out.push_back(oracle_check(Case::internal, Stepper::explicit_leapfrog, 1.0));
    out.push_back(oracle_check(Case::pointwise, Stepper::explicit_leapfrog, 2.0));
    out.push_back(oracle_check(Case::boundary, Stepper::implicit_averaged, 0.5));
    out.push_back(oracle_check(Case::internal, Stepper::implicit_averaged, 1.0));
    out.push_back(flux_identity_check());
    for (Case c : {Case::boundary, Case::internal, Case::pointwise}) out.push_back(cfl_check(c));
    out.push_back(implicit_check(Case::boundary));
    out.push_back(implicit_check(Case::internal));
    return out;
}

}  // namespace delaywave
