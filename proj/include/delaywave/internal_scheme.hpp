#pragma once

#include "delaywave/delay_line.hpp"
#include "delaywave/params.hpp"
#include "delaywave/scheme_common.hpp"
#include "delaywave/wave_state.hpp"

#include <span>
#include <vector>

namespace delaywave {

/// Finite-difference stepper for u_tt - u_xx + mu d(x) u_t(x, t - T) = 0 on
/// (0, ell), Dirichlet at both ends, delayed damping switched on at t = T.
///
/// The delay line stores v_j^n = d(x_j) (u_j^{n+1} - u_j^{n-1}) / (2 dt) for
/// j = i0..i1, one vector per step.
class InternalScheme {
public:
    /// `damping` holds d(x_j) for j = i0..i1 and must be non-negative.
    InternalScheme(SimParams params, WaveState state, DelayLine<std::vector<double>> delay,
                   std::vector<double> damping, Stepper stepper = Stepper::explicit_leapfrog);

    static InternalScheme from_initial_data(const SimParams& params, std::span<const double> u0,
                                            std::span<const double> u1, std::vector<double> damping,
                                            Stepper stepper = Stepper::explicit_leapfrog);
    /// A null `damping` profile means d = 1 on the interval.
    static InternalScheme from_profiles(const SimParams& params, const Profile& u0, const Profile& u1,
                                        const Profile& damping = nullptr,
                                        Stepper stepper = Stepper::explicit_leapfrog);

    void step();
    void step_free();
    void step_delayed();
    void step_implicit(Phase phase);

    [[nodiscard]] std::size_t next_index() const { return m_state.step + 1; }
    [[nodiscard]] Phase next_phase() const { return m_params.phase_at(next_index()); }
    [[nodiscard]] bool finished() const { return next_index() >= m_params.m_total; }

    [[nodiscard]] const SimParams& params() const { return m_params; }
    [[nodiscard]] const WaveState& state() const { return m_state; }
    [[nodiscard]] const DelayLine<std::vector<double>>& delay() const { return m_delay; }
    [[nodiscard]] const std::vector<double>& damping() const { return m_damping; }
    [[nodiscard]] Stepper stepper() const { return m_stepper; }
    [[nodiscard]] std::vector<double> positions() const;

private:
    void check_phase(Phase expected) const;
    std::vector<double> delayed_source() const;
    void explicit_update(const std::vector<double>* source);
    void implicit_update(const std::vector<double>* source);
    void push_velocity();

    SimParams m_params;
    WaveState m_state;
    DelayLine<std::vector<double>> m_delay;
    std::vector<double> m_damping;
    Stepper m_stepper;
};

}  // namespace delaywave
