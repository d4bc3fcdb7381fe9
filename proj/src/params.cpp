#include "delaywave/params.hpp"

#include <cmath>
#include <string>

namespace delaywave {

std::string_view to_string(Case c)
{
    switch (c) {
        case Case::boundary: return "boundary";
        case Case::internal: return "internal";
        case Case::pointwise: return "pointwise";
    }
    return "unknown";
}

std::string_view to_string(Stepper s)
{
    return s == Stepper::explicit_leapfrog ? "explicit" : "implicit";
}

Case parse_case(std::string_view name)
{
    if (name == "boundary") return Case::boundary;
    if (name == "internal") return Case::internal;
    if (name == "pointwise") return Case::pointwise;
    throw ConfigError("unknown case '" + std::string(name) + "'");
}

Stepper parse_stepper(std::string_view name)
{
    if (name == "explicit") return Stepper::explicit_leapfrog;
    if (name == "implicit") return Stepper::implicit_averaged;
    throw ConfigError("unknown stepper '" + std::string(name) + "'");
}

namespace {

// K = ceil(T / (cfl dx)), except that a quotient within float noise of an
// integer is taken as that integer (CFL 0.8 on N = 100 must give K = 250).
std::size_t steps_per_delay(double delay, double dt_requested)
{
    const double q = delay / dt_requested;
    const double nearest = std::round(q);
    if (std::abs(q - nearest) <= 1e-9 * q) return static_cast<std::size_t>(nearest);
    return static_cast<std::size_t>(std::ceil(q));
}

}  // namespace

SimParams build_params(Case c, double ell, std::size_t n_cells, double cfl, std::size_t periods, double mu,
                       std::optional<DampingInterval> damping)
{
    if (!(ell > 0.0) || !std::isfinite(ell)) throw ConfigError("domain length must be positive");
    if (n_cells < 4) throw ConfigError("n_cells must be at least 4");
    if (!(cfl > 0.0) || !std::isfinite(cfl)) throw ConfigError("cfl must be positive");
    if (periods < 1) throw ConfigError("periods must be at least 1");
    if (!std::isfinite(mu)) throw ConfigError("mu must be finite");

    SimParams p;
    p.case_kind = c;
    p.ell = ell;
    p.n_cells = n_cells;
    p.dx = ell / static_cast<double>(n_cells);
    p.cfl_requested = cfl;
    p.delay = 2.0 * ell;
    p.k_delay = steps_per_delay(p.delay, cfl * p.dx);
    p.dt = p.delay / static_cast<double>(p.k_delay);
    p.cfl = p.dt / p.dx;
    p.s = p.cfl * p.cfl;
    p.m_total = periods * p.k_delay;
    p.mu = mu;

    switch (c) {
        case Case::internal: {
            if (!damping) throw ConfigError("internal case requires a damping interval");
            if (damping->i0 == 0 || damping->i0 >= damping->i1 || damping->i1 >= n_cells)
                throw ConfigError("damping interval must satisfy 0 < i0 < i1 < n_cells");
            p.i0 = damping->i0;
            p.i1 = damping->i1;
            break;
        }
        case Case::pointwise:
            if (n_cells % 2 != 0) throw ConfigError("pointwise case requires an even number of cells");
            p.j0 = n_cells / 2;
            break;
        case Case::boundary: break;
    }
    return p;
}

std::size_t mesh_index(double x, double ell, std::size_t n_cells)
{
    const double q = x / ell * static_cast<double>(n_cells);
    const double nearest = std::round(q);
    if (std::abs(q - nearest) > 1e-9 * std::max(1.0, std::abs(q)))
        throw ConfigError("position " + std::to_string(x) + " is not a mesh point");
    if (nearest < 0.0 || nearest > static_cast<double>(n_cells))
        throw ConfigError("position " + std::to_string(x) + " lies outside the domain");
    return static_cast<std::size_t>(nearest);
}

}  // namespace delaywave
