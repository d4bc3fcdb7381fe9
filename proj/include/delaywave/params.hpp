#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace delaywave {

/// Which delayed-feedback problem a run discretizes.
enum class Case {
    boundary,   ///< delayed Neumann condition at x = ell
    internal,   ///< delayed damping d(x) on an interval [x_i0, x_i1]
    pointwise,  ///< delayed point damping at xi = ell/2 (finite volumes)
};

enum class Phase {
    free,     ///< t in [0, T): no feedback
    delayed,  ///< t >= T: feedback uses samples from one delay earlier
};

enum class Stepper { explicit_leapfrog, implicit_averaged };

std::string_view to_string(Case c);
std::string_view to_string(Stepper s);
Case parse_case(std::string_view name);
Stepper parse_stepper(std::string_view name);

/// Raised for inconsistent or out-of-range run parameters.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// All scalar parameters of one run.
///
/// The delay is fixed to T = 2 ell and the time step is snapped so that
/// T = K dt holds exactly; the effective CFL number `cfl` may therefore be
/// slightly below the requested one.
struct SimParams {
    Case case_kind = Case::boundary;
    double ell = 1.0;
    std::size_t n_cells = 0;  ///< N
    double dx = 0.0;          ///< ell / N
    double cfl_requested = 0.0;
    double cfl = 0.0;         ///< dt / dx after snapping
    double dt = 0.0;
    double s = 0.0;           ///< (dt/dx)^2
    double delay = 0.0;       ///< T = 2 ell
    std::size_t k_delay = 0;  ///< K, steps per delay window
    std::size_t m_total = 0;  ///< M, total steps, T_f = M dt
    double mu = 0.0;

    // internal case: damping interval endpoints as node indices
    std::size_t i0 = 0;
    std::size_t i1 = 0;
    // pointwise case: interface cell index, x_{j0+1/2} = ell/2
    std::size_t j0 = 0;

    [[nodiscard]] double final_time() const { return static_cast<double>(m_total) * dt; }
    /// Explicit leapfrog is von Neumann stable iff dt <= dx.
    [[nodiscard]] bool explicit_stable() const { return dt <= dx * (1.0 + 1e-12); }
    [[nodiscard]] Phase phase_at(std::size_t n) const { return n < k_delay ? Phase::free : Phase::delayed; }
};

struct DampingInterval {
    std::size_t i0;
    std::size_t i1;
};

/// Builds and validates the parameters of a run with T_f = periods * T.
/// `damping` is required for (and only used by) the internal case.
SimParams build_params(Case c, double ell, std::size_t n_cells, double cfl, std::size_t periods, double mu,
                       std::optional<DampingInterval> damping = std::nullopt);

/// Node index of a position that must coincide with a mesh point.
std::size_t mesh_index(double x, double ell, std::size_t n_cells);

}  // namespace delaywave
