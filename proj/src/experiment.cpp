#include "delaywave/experiment.hpp"

#include "delaywave/io.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace delaywave {

InitialData named_initial_data(std::string_view name, Case c, double ell)
{
    std::string resolved(name);
    if (resolved == "default") resolved = c == Case::internal ? "bubble" : "parabola";
    if (resolved == "parabola") {
        auto u0 = [ell](double x) { return x * x - 2.0 * ell * x; };
        return {resolved, u0, [u0](double x) { return -u0(x); }};
    }
    if (resolved == "bubble") {
        auto u0 = [ell](double x) { return x * (x - ell); };
        return {resolved, u0, [u0](double x) { return -u0(x); }};
    }
    throw ConfigError("unknown initial condition '" + std::string(name) + "' (expected default, parabola or bubble)");
}

SimParams resolve_params(const RunConfig& cfg)
{
    if (cfg.case_kind == Case::pointwise && cfg.stepper == Stepper::implicit_averaged)
        throw ConfigError("the pointwise scheme has no implicit variant");
    std::optional<DampingInterval> damping;
    if (cfg.case_kind == Case::internal)
        damping = DampingInterval{mesh_index(cfg.damp_lo * cfg.ell, cfg.ell, cfg.n_cells),
                                  mesh_index(cfg.damp_hi * cfg.ell, cfg.ell, cfg.n_cells)};
    return build_params(cfg.case_kind, cfg.ell, cfg.n_cells, cfg.cfl, cfg.periods, cfg.mu, damping);
}

AnyScheme make_scheme(const RunConfig& cfg, const SimParams& p)
{
    const auto ic = named_initial_data(cfg.ic, p.case_kind, p.ell);
    switch (p.case_kind) {
        case Case::boundary: return BoundaryScheme::from_profiles(p, ic.u0, ic.u1, cfg.stepper);
        case Case::internal: return InternalScheme::from_profiles(p, ic.u0, ic.u1, nullptr, cfg.stepper);
        case Case::pointwise: return PointwiseScheme::from_profiles(p, ic.u0, ic.u1, cfg.source_sign);
    }
    throw ConfigError("unknown case");
}

const WaveState& state_of(const AnyScheme& s)
{
    return std::visit([](const auto& x) -> const WaveState& { return x.state(); }, s);
}

void step(AnyScheme& s)
{
    std::visit([](auto& x) { x.step(); }, s);
}

EnergyParts energy_of(const AnyScheme& s)
{
    if (const auto* b = std::get_if<BoundaryScheme>(&s))
        return b->stepper() == Stepper::implicit_averaged ? energy_implicit_variant(b->state(), b->params())
                                                          : energy_boundary(b->state(), b->params());
    if (const auto* i = std::get_if<InternalScheme>(&s))
        return i->stepper() == Stepper::implicit_averaged ? energy_implicit_variant(i->state(), i->params())
                                                          : energy_internal(i->state(), i->params());
    const auto& pw = std::get<PointwiseScheme>(s);
    return energy_pointwise(pw.state(), pw.mesh(), pw.params());
}

std::vector<double> positions_of(const AnyScheme& s)
{
    return std::visit([](const auto& x) { return x.positions(); }, s);
}

const Snapshot* RunResult::snapshot_at(double t) const
{
    for (const auto& s : snapshots)
        if (std::abs(s.t - t) <= 1e-9 * std::max(1.0, std::abs(t))) return &s;
    return nullptr;
}

namespace {

bool all_finite(const std::vector<double>& u)
{
    return std::all_of(u.begin(), u.end(), [](double x) { return std::isfinite(x); });
}

std::size_t snapshot_index(double t, const SimParams& p)
{
    if (!(t >= 0.0)) throw ConfigError("snapshot times must be non-negative");
    const double q = t / p.dt;
    const double n = std::round(q);
    if (std::abs(q - n) > 1e-6) throw ConfigError("snapshot time " + format_double(t) + " is not on the time grid");
    if (n > static_cast<double>(p.m_total))
        throw ConfigError("snapshot time " + format_double(t) + " is past T_f = " + format_double(p.final_time()));
    return static_cast<std::size_t>(n);
}

}  // namespace

RunResult simulate(const RunConfig& cfg, const StepHook& hook)
{
    RunResult res;
    res.config = cfg;
    res.params = resolve_params(cfg);
    const SimParams& p = res.params;
    if (cfg.stepper == Stepper::explicit_leapfrog && !p.explicit_stable())
        res.warnings.push_back("explicit stepper with CFL " + format_double(p.cfl) + " > 1 is unstable");

    std::vector<double> times = cfg.snapshot_times;
    if (times.empty()) times = {0.0, p.final_time()};
    std::vector<std::pair<std::size_t, double>> wanted;
    for (double t : times) wanted.emplace_back(snapshot_index(t, p), t);
    std::sort(wanted.begin(), wanted.end());
    auto take = [&](std::size_t level, const std::vector<double>& u) {
        for (const auto& [n, t] : wanted)
            if (n == level) res.snapshots.push_back({t, n, u});
    };

    AnyScheme scheme = make_scheme(cfg, p);
    res.positions = positions_of(scheme);
    take(0, state_of(scheme).u_curr);
    take(1, state_of(scheme).u_next);
    res.trace.append(0, 0.0, energy_of(scheme));

    while (!std::visit([](const auto& x) { return x.finished(); }, scheme)) {
        if (hook) {
            hook(scheme);
        } else {
            step(scheme);
        }
        const WaveState& st = state_of(scheme);
        const std::size_t n = st.step;
        if (!all_finite(st.u_next)) {
            res.blow_up_step = n + 1;
            break;
        }
        const EnergyParts e = energy_of(scheme);
        if (!std::isfinite(e.total)) {
            res.blow_up_step = n + 1;
            break;
        }
        res.trace.append(n, static_cast<double>(n) * p.dt, e);
        take(n + 1, st.u_next);
    }

    try {
        res.fit = fit_decay_rate(res.trace, default_fit_window(p));
    } catch (const std::exception&) {
        res.fit.reset();
    }
    return res;
}

std::string profile_file_name(double t) { return "profile_t" + format_double(t) + ".csv"; }

nlohmann::json manifest_json(const RunResult& r)
{
    const SimParams& p = r.params;
    nlohmann::json params = {
        {"case", std::string(to_string(p.case_kind))},
        {"ell", p.ell},
        {"n_cells", p.n_cells},
        {"dx", p.dx},
        {"cfl_requested", p.cfl_requested},
        {"cfl", p.cfl},
        {"dt", p.dt},
        {"s", p.s},
        {"delay", p.delay},
        {"k_delay", p.k_delay},
        {"m_total", p.m_total},
        {"final_time", p.final_time()},
        {"mu", p.mu},
    };
    if (p.case_kind == Case::internal) {
        params["i0"] = p.i0;
        params["i1"] = p.i1;
    }
    if (p.case_kind == Case::pointwise) params["j0"] = p.j0;

    nlohmann::json m;
    m["params"] = params;
    m["stepper"] = std::string(to_string(r.config.stepper));
    m["initial_condition"] = named_initial_data(r.config.ic, p.case_kind, p.ell).name;
    if (p.case_kind == Case::pointwise) m["source_sign"] = std::string(to_string(r.config.source_sign));
    nlohmann::json snaps = nlohmann::json::array();
    for (const auto& s : r.snapshots) snaps.push_back({{"t", s.t}, {"step", s.step}, {"file", profile_file_name(s.t)}});
    m["snapshots"] = snaps;
    m["energy_file"] = "energy.csv";
    m["blow_up_step"] = r.blow_up_step ? nlohmann::json(*r.blow_up_step) : nlohmann::json(nullptr);
    if (r.fit)
        m["fit"] = {{"omega", r.fit->omega},
                    {"intercept", r.fit->intercept},
                    {"t_lo", r.fit->window.t_lo},
                    {"t_hi", r.fit->window.t_hi},
                    {"residual", r.fit->residual},
                    {"samples", r.fit->samples}};
    m["warnings"] = r.warnings;
    return m;
}

RunResult run_single(const RunConfig& cfg)
{
    RunResult res = simulate(cfg);
    if (cfg.out_dir.empty()) return res;
    std::ostringstream energy;
    write_energy_csv(energy, res.trace);
    write_text_file(cfg.out_dir / "energy.csv", energy.str());
    for (const auto& s : res.snapshots) {
        std::ostringstream prof;
        write_profile_csv(prof, res.positions, s.u);
        write_text_file(cfg.out_dir / profile_file_name(s.t), prof.str());
    }
    write_text_file(cfg.out_dir / "manifest.json", manifest_json(res).dump(2) + "\n");
    return res;
}

std::string summary_csv(const std::vector<SweepRow>& rows)
{
    std::ostringstream out;
    out << "mu,omega,residual,final_energy,blow_up_step\n";
    for (const auto& r : rows) {
        out << format_double(r.mu) << ',' << (r.omega ? format_double(*r.omega) : "") << ','
            << (r.residual ? format_double(*r.residual) : "") << ',' << format_double(r.final_energy) << ',';
        if (r.blow_up_step) out << *r.blow_up_step;
        out << '\n';
    }
    return out.str();
}

std::vector<SweepRow> run_sweep(const RunConfig& base, const std::vector<double>& mus, unsigned jobs)
{
    if (mus.empty()) throw ConfigError("sweep needs a non-empty mu list");
    std::vector<SweepRow> rows(mus.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < mus.size(); i = next++) {
            RunConfig cfg = base;
            cfg.mu = mus[i];
            if (!base.out_dir.empty()) cfg.out_dir = base.out_dir / ("mu_" + format_double(mus[i]));
            SweepRow& row = rows[i];
            row.mu = mus[i];
            try {
                const RunResult r = run_single(cfg);
                if (r.fit) {
                    row.omega = r.fit->omega;
                    row.residual = r.fit->residual;
                }
                row.final_energy = r.trace.empty() ? 0.0 : r.trace.back().total;
                row.blow_up_step = r.blow_up_step;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(mus.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (!base.out_dir.empty()) write_text_file(base.out_dir / "summary.csv", summary_csv(rows));
    return rows;
}

namespace {

double config_number(std::string_view field)
{
    try {
        return parse_double(field);
    } catch (const CsvError&) {
        throw ConfigError("not a number: '" + std::string(field) + "'");
    }
}

}  // namespace

std::vector<double> parse_mu_list(std::string_view text)
{
    std::vector<double> out;
    if (text.find(':') != std::string_view::npos) {
        std::vector<double> f;
        std::size_t start = 0;
        while (true) {
            const auto c = text.find(':', start);
            f.push_back(config_number(text.substr(start, c - start)));
            if (c == std::string_view::npos) break;
            start = c + 1;
        }
        if (f.size() != 3) throw ConfigError("mu range must be A:B:STEP");
        const double a = f[0], b = f[1], h = f[2];
        if (!(h > 0.0) || b < a) throw ConfigError("mu range needs STEP > 0 and B >= A");
        const auto count = static_cast<std::size_t>(std::floor((b - a) / h + 1e-9));
        for (std::size_t k = 0; k <= count; ++k) {
            const double v = a + static_cast<double>(k) * h;
            out.push_back(std::round(v * 1e12) / 1e12);
        }
    } else {
        out = parse_time_list(text);
    }
    if (out.empty()) throw ConfigError("empty mu list");
    return out;
}

std::vector<double> parse_time_list(std::string_view text)
{
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto c = text.find(',', start);
        const auto field = text.substr(start, c == std::string_view::npos ? std::string_view::npos : c - start);
        if (!field.empty()) out.push_back(config_number(field));
        if (c == std::string_view::npos) break;
        start = c + 1;
    }
    return out;
}

}  // namespace delaywave
