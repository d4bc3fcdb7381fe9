#include "delaywave/pointwise_scheme.hpp"

#include "fd_stencil.hpp"

#include <string>
#include <utility>

namespace delaywave {

PointSourceSign parse_source_sign(std::string_view name)
{
    if (name == "positive") return PointSourceSign::positive;
    if (name == "negative") return PointSourceSign::negative;
    throw ConfigError("unknown source sign '" + std::string(name) + "'");
}

std::string_view to_string(PointSourceSign sign)
{
    return sign == PointSourceSign::positive ? "positive" : "negative";
}

double free_flux(const FvMesh& mesh, std::span<const double> u, std::size_t j)
{
    const std::size_t n = mesh.n_cells;
    if (j > n) throw std::out_of_range("flux index " + std::to_string(j) + " outside 0..N");
    if (j == n) return 0.0;
    const double left = j == 0 ? 0.0 : u[j - 1];
    return -mesh.alpha[j] * (u[j] - left);
}

InterfaceFluxes interface_fluxes(const FvMesh& mesh, std::span<const double> u, std::size_t j0, double mu,
                                 double v_delayed, PointSourceSign sign)
{
    const double f = free_flux(mesh, u, j0);
    const double half = 0.5 * sign_factor(sign) * mu * v_delayed;
    return {half + f, -half + f};
}

double interface_value(const FvMesh& mesh, std::span<const double> u, std::size_t j0, double mu, double v_delayed,
                       PointSourceSign sign)
{
    return -sign_factor(sign) * 0.25 * mesh.dx * mu * v_delayed + 0.5 * (u[j0 - 1] + u[j0]);
}

double interface_value_from_minus(const FvMesh& mesh, std::span<const double> u, std::size_t j0, double f_minus)
{
    return u[j0 - 1] - 0.5 * mesh.dx * f_minus;
}

double interface_value_from_plus(const FvMesh& mesh, std::span<const double> u, std::size_t j0, double f_plus)
{
    return u[j0] + 0.5 * mesh.dx * f_plus;
}

PointwiseScheme::PointwiseScheme(SimParams params, WaveState state, DelayLine<double> delay, PointSourceSign sign)
    : m_params(std::move(params)),
      m_mesh(m_params.ell, m_params.n_cells),
      m_state(std::move(state)),
      m_delay(std::move(delay)),
      m_sign(sign)
{
    if (m_params.case_kind != Case::pointwise) throw ConfigError("pointwise scheme needs pointwise-case parameters");
    if (m_state.size() != m_params.n_cells) throw ConfigError("pointwise state must have N cells");
    if (m_delay.k_delay() != m_params.k_delay) throw ConfigError("delay line length does not match K");
    // the v^n recursion reads v^{n+1-K}, which must already be in the past
    if (m_params.k_delay < 2) throw ConfigError("pointwise scheme needs K >= 2");
}

PointwiseScheme PointwiseScheme::from_initial_data(const SimParams& p, std::span<const double> u0,
                                                   std::span<const double> u1, double v0, PointSourceSign sign)
{
    const std::size_t n = p.n_cells;
    if (u0.size() != n || u1.size() != n) throw ConfigError("initial data must have N cell values");
    const FvMesh mesh(p.ell, n);
    WaveState st(n);
    st.u_curr.assign(u0.begin(), u0.end());
    const double half_dt2 = 0.5 * p.dt * p.dt;
    for (std::size_t j = 1; j <= n; ++j) {
        const double div = free_flux(mesh, u0, j) - free_flux(mesh, u0, j - 1);
        st.u_next[j - 1] = u0[j - 1] - half_dt2 / mesh.h[j - 1] * div + p.dt * u1[j - 1];
    }
    for (std::size_t c = 0; c < n; ++c) st.u_prev[c] = st.u_next[c] - 2.0 * p.dt * u1[c];
    DelayLine<double> delay(p.k_delay);
    delay.push(v0);
    return PointwiseScheme(p, std::move(st), std::move(delay), sign);
}

PointwiseScheme PointwiseScheme::from_profiles(const SimParams& p, const Profile& u0, const Profile& u1,
                                               PointSourceSign sign)
{
    const FvMesh mesh(p.ell, p.n_cells);
    return from_initial_data(p, sample(u0, mesh.centers), sample(u1, mesh.centers), u1(0.5 * p.ell), sign);
}

void PointwiseScheme::step()
{
    if (next_phase() == Phase::free) {
        step_free();
    } else {
        step_delayed();
    }
}

void PointwiseScheme::step_free()
{
    fd::check_window(m_params, next_index(), Phase::free);
    advance(false);
}

void PointwiseScheme::step_delayed()
{
    fd::check_window(m_params, next_index(), Phase::delayed);
    advance(true);
}

InterfaceFluxes PointwiseScheme::current_interface_fluxes() const
{
    const double v = next_phase() == Phase::delayed ? m_delay.read(m_params.k_delay) : 0.0;
    return interface_fluxes(m_mesh, m_state.u_next, m_params.j0, m_params.mu, v, m_sign);
}

void PointwiseScheme::advance(bool delayed)
{
    const std::size_t n = m_params.n_cells;
    const std::size_t j0 = m_params.j0;
    const std::size_t k = m_params.k_delay;
    const double mu = m_params.mu;
    const double dt2 = m_params.dt * m_params.dt;

    double v_ahead = 0.0, v_delayed = 0.0, v_behind = 0.0;
    if (delayed) {
        v_ahead = m_delay.read(k - 1);   // v^{n+1-K}
        v_delayed = m_delay.read(k);     // v^{n-K}
        v_behind = m_delay.read(k + 1);  // v^{n-1-K}, the ghost at n = K
    }

    m_state.rotate();
    const auto& up = m_state.u_prev;
    const auto& uc = m_state.u_curr;
    auto& un = m_state.u_next;

    InterfaceFluxes iface{};
    if (delayed) iface = interface_fluxes(m_mesh, uc, j0, mu, v_delayed, m_sign);
    double left = free_flux(m_mesh, uc, 0);
    for (std::size_t j = 1; j <= n; ++j) {
        double right = free_flux(m_mesh, uc, j);
        double left_used = left;
        if (delayed && j == j0) right = iface.minus;
        if (delayed && j == j0 + 1) left_used = iface.plus;
        un[j - 1] = 2.0 * uc[j - 1] - up[j - 1] - dt2 / m_mesh.h[j - 1] * (right - left_used);
        left = free_flux(m_mesh, uc, j);
    }

    const double avg_next = 0.5 * (un[j0 - 1] + un[j0]);
    const double avg_prev = 0.5 * (up[j0 - 1] + up[j0]);
    double v = 0.0;
    if (delayed) {
        const double corr = -sign_factor(m_sign) * 0.25 * m_mesh.dx * mu * (v_ahead - v_behind);
        v = (corr + (avg_next - avg_prev)) / (2.0 * m_params.dt);
    } else {
        v = (avg_next - avg_prev) / (2.0 * m_params.dt);
    }
    m_delay.push(v);
    if (m_state.step == 1) m_delay.set_ghost(2.0 * m_delay.read(2) - m_delay.read(1));
}

}  // namespace delaywave
