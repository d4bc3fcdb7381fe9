#include "delaywave/boundary_scheme.hpp"

#include "fd_stencil.hpp"

#include <utility>

namespace delaywave {

std::vector<double> fd_nodes(const SimParams& params)
{
    std::vector<double> x(params.n_cells + 1);
    for (std::size_t j = 0; j <= params.n_cells; ++j) x[j] = static_cast<double>(j) * params.dx;
    x[params.n_cells] = params.ell;
    return x;
}

BoundaryScheme::BoundaryScheme(SimParams params, WaveState state, DelayLine<double> delay, Stepper stepper)
    : m_params(std::move(params)), m_state(std::move(state)), m_delay(std::move(delay)), m_stepper(stepper)
{
    if (m_params.case_kind != Case::boundary) throw ConfigError("boundary scheme needs boundary-case parameters");
    if (m_state.size() != m_params.n_cells + 1) throw ConfigError("boundary state must have N+1 nodes");
    if (m_delay.k_delay() != m_params.k_delay) throw ConfigError("delay line length does not match K");
}

BoundaryScheme BoundaryScheme::from_initial_data(const SimParams& p, std::span<const double> u0,
                                                 std::span<const double> u1, Stepper stepper)
{
    const std::size_t n = p.n_cells;
    if (u0.size() != n + 1 || u1.size() != n + 1) throw ConfigError("initial data must have N+1 nodal values");
    fd::require_dirichlet(u0[0], fd::sup_norm(u0), "x = 0");

    WaveState st(n + 1);
    st.u_curr.assign(u0.begin(), u0.end());
    st.u_curr[0] = 0.0;
    std::vector<double> vel(u1.begin(), u1.end());
    vel[0] = 0.0;
    const double s = p.s;

    if (stepper == Stepper::explicit_leapfrog) {
        const auto& a = st.u_curr;
        for (std::size_t j = 1; j < n; ++j)
            st.u_next[j] = 0.5 * s * (a[j + 1] + a[j - 1]) + (1.0 - s) * a[j] + p.dt * vel[j];
        st.u_next[n] = s * a[n - 1] + (1.0 - s) * a[n] + p.dt * vel[n];
    } else {
        // Same ghost level u^{-1} = u^1 - 2 dt u_1, inserted into the averaged scheme.
        std::vector<double> rhs(n);
        for (std::size_t j = 1; j <= n; ++j) {
            const double d2 = j < n ? fd::second_difference(vel, j) : 2.0 * (vel[n - 1] - vel[n]);
            rhs[j - 1] = st.u_curr[j] + p.dt * vel[j] - 0.5 * s * p.dt * d2;
        }
        const auto sol = solve(fd::averaged_operator(n, s, true), rhs);
        for (std::size_t j = 1; j <= n; ++j) st.u_next[j] = sol[j - 1];
    }
    st.u_next[0] = 0.0;
    for (std::size_t j = 0; j <= n; ++j) st.u_prev[j] = st.u_next[j] - 2.0 * p.dt * vel[j];
    st.u_prev[0] = 0.0;

    DelayLine<double> delay(p.k_delay);
    delay.push(vel[n]);
    return BoundaryScheme(p, std::move(st), std::move(delay), stepper);
}

BoundaryScheme BoundaryScheme::from_profiles(const SimParams& p, const Profile& u0, const Profile& u1, Stepper stepper)
{
    const auto x = fd_nodes(p);
    return from_initial_data(p, sample(u0, x), sample(u1, x), stepper);
}

std::vector<double> BoundaryScheme::positions() const { return fd_nodes(m_params); }

void BoundaryScheme::check_phase(Phase expected) const { fd::check_window(m_params, next_index(), expected); }

void BoundaryScheme::step()
{
    if (m_stepper == Stepper::implicit_averaged) {
        step_implicit(next_phase());
    } else if (next_phase() == Phase::free) {
        step_free();
    } else {
        step_delayed();
    }
}

void BoundaryScheme::step_free()
{
    check_phase(Phase::free);
    m_state.rotate();
    explicit_update(0.0);
    push_velocity();
}

void BoundaryScheme::step_delayed()
{
    check_phase(Phase::delayed);
    const double v = m_delay.read(m_params.k_delay);
    m_state.rotate();
    explicit_update(2.0 * m_params.s * m_params.dx * m_params.mu * v);
    push_velocity();
}

void BoundaryScheme::step_implicit(Phase phase)
{
    check_phase(phase);
    const double source =
        phase == Phase::delayed ? 2.0 * m_params.s * m_params.dx * m_params.mu * m_delay.read(m_params.k_delay) : 0.0;
    m_state.rotate();
    implicit_update(source);
    push_velocity();
}

void BoundaryScheme::explicit_update(double boundary_source)
{
    const std::size_t n = m_params.n_cells;
    const double s = m_params.s;
    const auto& up = m_state.u_prev;
    const auto& uc = m_state.u_curr;
    auto& un = m_state.u_next;
    un[0] = 0.0;
    fd::leapfrog(up, uc, un, s, 1, n - 1);
    un[n] = 2.0 * (1.0 - s) * uc[n] + 2.0 * s * uc[n - 1] - up[n] + boundary_source;
}

void BoundaryScheme::implicit_update(double boundary_source)
{
    const std::size_t n = m_params.n_cells;
    const double s = m_params.s;
    const auto& up = m_state.u_prev;
    const auto& uc = m_state.u_curr;
    std::vector<double> rhs(n);
    for (std::size_t j = 1; j < n; ++j) rhs[j - 1] = 2.0 * uc[j] - up[j] + 0.5 * s * fd::second_difference(up, j);
    rhs[n - 1] = 2.0 * uc[n] - up[n] + 0.5 * s * 2.0 * (up[n - 1] - up[n]) + boundary_source;
    const auto sol = solve(fd::averaged_operator(n, s, true), rhs);
    auto& un = m_state.u_next;
    un[0] = 0.0;
    for (std::size_t j = 1; j <= n; ++j) un[j] = sol[j - 1];
}

void BoundaryScheme::push_velocity()
{
    const std::size_t n = m_params.n_cells;
    m_delay.push((m_state.u_next[n] - m_state.u_prev[n]) / (2.0 * m_params.dt));
}

}  // namespace delaywave
