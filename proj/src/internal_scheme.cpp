#include "delaywave/internal_scheme.hpp"

#include "delaywave/boundary_scheme.hpp"
#include "fd_stencil.hpp"

#include <cmath>
#include <utility>

namespace delaywave {

InternalScheme::InternalScheme(SimParams params, WaveState state, DelayLine<std::vector<double>> delay,
                               std::vector<double> damping, Stepper stepper)
    : m_params(std::move(params)),
      m_state(std::move(state)),
      m_delay(std::move(delay)),
      m_damping(std::move(damping)),
      m_stepper(stepper)
{
    if (m_params.case_kind != Case::internal) throw ConfigError("internal scheme needs internal-case parameters");
    if (m_state.size() != m_params.n_cells + 1) throw ConfigError("internal state must have N+1 nodes");
    if (m_delay.k_delay() != m_params.k_delay) throw ConfigError("delay line length does not match K");
    if (m_damping.size() != m_params.i1 - m_params.i0 + 1)
        throw ConfigError("damping must have one value per node of [x_i0, x_i1]");
    for (double d : m_damping)
        if (!(d >= 0.0) || !std::isfinite(d)) throw ConfigError("damping coefficient must be finite and non-negative");
}

InternalScheme InternalScheme::from_initial_data(const SimParams& p, std::span<const double> u0,
                                                 std::span<const double> u1, std::vector<double> damping,
                                                 Stepper stepper)
{
    const std::size_t n = p.n_cells;
    if (u0.size() != n + 1 || u1.size() != n + 1) throw ConfigError("initial data must have N+1 nodal values");
    const double scale = fd::sup_norm(u0);
    fd::require_dirichlet(u0[0], scale, "x = 0");
    fd::require_dirichlet(u0[n], scale, "x = ell");

    WaveState st(n + 1);
    st.u_curr.assign(u0.begin(), u0.end());
    st.u_curr[0] = st.u_curr[n] = 0.0;
    std::vector<double> vel(u1.begin(), u1.end());
    vel[0] = vel[n] = 0.0;
    const double s = p.s;

    if (stepper == Stepper::explicit_leapfrog) {
        const auto& a = st.u_curr;
        for (std::size_t j = 1; j < n; ++j)
            st.u_next[j] = 0.5 * s * (a[j + 1] + a[j - 1]) + (1.0 - s) * a[j] + p.dt * vel[j];
    } else {
        std::vector<double> rhs(n - 1);
        for (std::size_t j = 1; j < n; ++j)
            rhs[j - 1] = st.u_curr[j] + p.dt * vel[j] - 0.5 * s * p.dt * fd::second_difference(vel, j);
        const auto sol = solve(fd::averaged_operator(n - 1, s, false), rhs);
        for (std::size_t j = 1; j < n; ++j) st.u_next[j] = sol[j - 1];
    }
    for (std::size_t j = 0; j <= n; ++j) st.u_prev[j] = st.u_next[j] - 2.0 * p.dt * vel[j];

    DelayLine<std::vector<double>> delay(p.k_delay);
    std::vector<double> v0(damping.size());
    for (std::size_t j = p.i0; j <= p.i1; ++j) v0[j - p.i0] = damping.at(j - p.i0) * vel[j];
    delay.push(v0);
    return InternalScheme(p, std::move(st), std::move(delay), std::move(damping), stepper);
}

InternalScheme InternalScheme::from_profiles(const SimParams& p, const Profile& u0, const Profile& u1,
                                             const Profile& damping, Stepper stepper)
{
    const auto x = fd_nodes(p);
    std::vector<double> d;
    for (std::size_t j = p.i0; j <= p.i1; ++j) d.push_back(damping ? damping(x[j]) : 1.0);
    return from_initial_data(p, sample(u0, x), sample(u1, x), std::move(d), stepper);
}

std::vector<double> InternalScheme::positions() const { return fd_nodes(m_params); }

void InternalScheme::check_phase(Phase expected) const { fd::check_window(m_params, next_index(), expected); }

void InternalScheme::step()
{
    if (m_stepper == Stepper::implicit_averaged) {
        step_implicit(next_phase());
    } else if (next_phase() == Phase::free) {
        step_free();
    } else {
        step_delayed();
    }
}

std::vector<double> InternalScheme::delayed_source() const
{
    // -mu dt^2 v_j^{n-K} on the damping interval
    const auto& v = m_delay.read(m_params.k_delay);
    std::vector<double> src(v.size());
    const double c = m_params.mu * m_params.dt * m_params.dt;
    for (std::size_t k = 0; k < v.size(); ++k) src[k] = c * v[k];
    return src;
}

void InternalScheme::step_free()
{
    check_phase(Phase::free);
    m_state.rotate();
    explicit_update(nullptr);
    push_velocity();
}

void InternalScheme::step_delayed()
{
    check_phase(Phase::delayed);
    const auto src = delayed_source();
    m_state.rotate();
    explicit_update(&src);
    push_velocity();
}

void InternalScheme::step_implicit(Phase phase)
{
    check_phase(phase);
    std::vector<double> src;
    if (phase == Phase::delayed) src = delayed_source();
    m_state.rotate();
    implicit_update(phase == Phase::delayed ? &src : nullptr);
    push_velocity();
}

void InternalScheme::explicit_update(const std::vector<double>* source)
{
    const std::size_t n = m_params.n_cells;
    auto& un = m_state.u_next;
    fd::leapfrog(m_state.u_prev, m_state.u_curr, un, m_params.s, 1, n - 1);
    if (source)
        for (std::size_t j = m_params.i0; j <= m_params.i1; ++j) un[j] -= (*source)[j - m_params.i0];
    un[0] = un[n] = 0.0;
}

void InternalScheme::implicit_update(const std::vector<double>* source)
{
    const std::size_t n = m_params.n_cells;
    const double s = m_params.s;
    const auto& up = m_state.u_prev;
    const auto& uc = m_state.u_curr;
    std::vector<double> rhs(n - 1);
    for (std::size_t j = 1; j < n; ++j) rhs[j - 1] = 2.0 * uc[j] - up[j] + 0.5 * s * fd::second_difference(up, j);
    if (source)
        for (std::size_t j = m_params.i0; j <= m_params.i1; ++j) rhs[j - 1] -= (*source)[j - m_params.i0];
    const auto sol = solve(fd::averaged_operator(n - 1, s, false), rhs);
    auto& un = m_state.u_next;
    for (std::size_t j = 1; j < n; ++j) un[j] = sol[j - 1];
    un[0] = un[n] = 0.0;
}

void InternalScheme::push_velocity()
{
    std::vector<double> v(m_damping.size());
    const double inv = 1.0 / (2.0 * m_params.dt);
    for (std::size_t j = m_params.i0; j <= m_params.i1; ++j)
        v[j - m_params.i0] = m_damping[j - m_params.i0] * (m_state.u_next[j] - m_state.u_prev[j]) * inv;
    m_delay.push(v);
}

}  // namespace delaywave
