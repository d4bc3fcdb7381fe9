#pragma once

#include "delaywave/delay_line.hpp"
#include "delaywave/fv_mesh.hpp"
#include "delaywave/params.hpp"
#include "delaywave/scheme_common.hpp"
#include "delaywave/wave_state.hpp"

#include <span>
#include <vector>

namespace delaywave {

/// Sign of the point feedback in u_tt - u_xx + sign * mu u_t(xi, t - T) delta_xi = 0.
///
/// `positive` is the stencil set as usually displayed (transmission
/// -F^- + F^+ = -mu v). With T = 2 ell that sign anti-damps for mu > 0, so
/// the default is `negative`, which gives decay for mu in (0, 2).
enum class PointSourceSign { positive, negative };

PointSourceSign parse_source_sign(std::string_view name);
std::string_view to_string(PointSourceSign sign);
inline double sign_factor(PointSourceSign s) { return s == PointSourceSign::positive ? 1.0 : -1.0; }

/// Numerical flux F_{j+1/2} = -alpha_{j+1/2} (u_{j+1} - u_j) for j = 0..N with
/// the Dirichlet ghost u_0 = 0. `u` holds cells 1..N at indices 0..N-1.
double free_flux(const FvMesh& mesh, std::span<const double> u, std::size_t j);

struct InterfaceFluxes {
    double minus;  ///< F^-_{j0+1/2}, seen from cell j0
    double plus;   ///< F^+_{j0+1/2}, seen from cell j0+1
};

InterfaceFluxes interface_fluxes(const FvMesh& mesh, std::span<const double> u, std::size_t j0, double mu,
                                 double v_delayed, PointSourceSign sign = PointSourceSign::negative);

/// Auxiliary interface value u_{j0+1/2} = -sign (dx/4) mu v + (u_{j0} + u_{j0+1}) / 2.
double interface_value(const FvMesh& mesh, std::span<const double> u, std::size_t j0, double mu, double v_delayed,
                       PointSourceSign sign = PointSourceSign::negative);

/// The interface value recovered from the one-sided relations
/// F^- = -(u_{1/2} - u_{j0}) / (dx/2) and F^+ = -(u_{j0+1} - u_{1/2}) / (dx/2).
double interface_value_from_minus(const FvMesh& mesh, std::span<const double> u, std::size_t j0, double f_minus);
double interface_value_from_plus(const FvMesh& mesh, std::span<const double> u, std::size_t j0, double f_plus);

/// Finite-volume stepper for the delayed point damping at xi = x_{j0+1/2} = ell/2.
///
/// Cell averages u_j, j = 1..N. v^n approximates u_t(xi, t^n) through a
/// centered difference of the auxiliary interface value; the first delayed
/// step needs v^{-1}, taken as the ghost 2 v^0 - v^1.
class PointwiseScheme {
public:
    PointwiseScheme(SimParams params, WaveState state, DelayLine<double> delay,
                    PointSourceSign sign = PointSourceSign::negative);

    /// `v0` stands for u_1(xi).
    static PointwiseScheme from_initial_data(const SimParams& params, std::span<const double> u0,
                                             std::span<const double> u1, double v0,
                                             PointSourceSign sign = PointSourceSign::negative);
    static PointwiseScheme from_profiles(const SimParams& params, const Profile& u0, const Profile& u1,
                                         PointSourceSign sign = PointSourceSign::negative);

    void step();
    void step_free();
    void step_delayed();

    [[nodiscard]] std::size_t next_index() const { return m_state.step + 1; }
    [[nodiscard]] Phase next_phase() const { return m_params.phase_at(next_index()); }
    [[nodiscard]] bool finished() const { return next_index() >= m_params.m_total; }

    /// Fluxes of the current level at the interface, with the delayed sample
    /// the next step would use.
    [[nodiscard]] InterfaceFluxes current_interface_fluxes() const;

    [[nodiscard]] const SimParams& params() const { return m_params; }
    [[nodiscard]] const FvMesh& mesh() const { return m_mesh; }
    [[nodiscard]] const WaveState& state() const { return m_state; }
    [[nodiscard]] const DelayLine<double>& delay() const { return m_delay; }
    [[nodiscard]] PointSourceSign source_sign() const { return m_sign; }
    [[nodiscard]] std::vector<double> positions() const { return m_mesh.centers; }

private:
    void advance(bool delayed);

    SimParams m_params;
    FvMesh m_mesh;
    WaveState m_state;
    DelayLine<double> m_delay;
    PointSourceSign m_sign;
};

}  // namespace delaywave
