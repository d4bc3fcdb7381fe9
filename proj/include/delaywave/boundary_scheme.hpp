#pragma once

#include "delaywave/delay_line.hpp"
#include "delaywave/params.hpp"
#include "delaywave/scheme_common.hpp"
#include "delaywave/wave_state.hpp"

#include <span>
#include <vector>

namespace delaywave {

/// Finite-difference stepper for u_tt = u_xx on (0, ell) with u(0,t) = 0,
/// u_x(ell,t) = 0 for t < T and u_x(ell,t) = mu u_t(ell, t - T) afterwards.
///
/// Nodes x_j = j dx, j = 0..N. The Neumann condition is imposed through a
/// ghost node u_{N+1} = u_{N-1} + 2 dx mu v^{n-K}, where v^n approximates
/// u_t(ell, t^n) by a centered difference and is stored in the delay line.
class BoundaryScheme {
public:
    BoundaryScheme(SimParams params, WaveState state, DelayLine<double> delay,
                   Stepper stepper = Stepper::explicit_leapfrog);

    /// Builds u^0, u^1 (and the ghost level u^{-1}) from nodal samples of the
    /// initial displacement and velocity; pushes v^0 = u_1(ell).
    static BoundaryScheme from_initial_data(const SimParams& params, std::span<const double> u0,
                                            std::span<const double> u1,
                                            Stepper stepper = Stepper::explicit_leapfrog);
    static BoundaryScheme from_profiles(const SimParams& params, const Profile& u0, const Profile& u1,
                                        Stepper stepper = Stepper::explicit_leapfrog);

    /// Advances one dt with the configured stepper and the current phase.
    void step();
    void step_free();
    void step_delayed();
    void step_implicit(Phase phase);

    /// Time index n of the next stencil application.
    [[nodiscard]] std::size_t next_index() const { return m_state.step + 1; }
    [[nodiscard]] Phase next_phase() const { return m_params.phase_at(next_index()); }
    /// True once u^M is available.
    [[nodiscard]] bool finished() const { return next_index() >= m_params.m_total; }

    [[nodiscard]] const SimParams& params() const { return m_params; }
    [[nodiscard]] const WaveState& state() const { return m_state; }
    [[nodiscard]] const DelayLine<double>& delay() const { return m_delay; }
    [[nodiscard]] Stepper stepper() const { return m_stepper; }
    [[nodiscard]] std::vector<double> positions() const;

private:
    void check_phase(Phase expected) const;
    void explicit_update(double boundary_source);
    void implicit_update(double boundary_source);
    void push_velocity();

    SimParams m_params;
    WaveState m_state;
    DelayLine<double> m_delay;
    Stepper m_stepper;
};

std::vector<double> fd_nodes(const SimParams& params);

}  // namespace delaywave
