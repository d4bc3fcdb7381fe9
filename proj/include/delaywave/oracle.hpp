#pragma once

#include "delaywave/params.hpp"
#include "delaywave/pointwise_scheme.hpp"

#include <Eigen/Dense>

#include <vector>

namespace delaywave {

/// Phase of one oracle step. `delayed_entry` is the first delayed step of the
/// pointwise scheme (n = K), where v^{-1} is replaced by 2 v^0 - v^1.
enum class OraclePhase { free, delayed_entry, delayed };

struct OracleSetup {
    SimParams params;
    Stepper stepper = Stepper::explicit_leapfrog;
    std::vector<double> damping;  ///< internal case, d_j on i0..i1
    PointSourceSign sign = PointSourceSign::negative;
};

/// One scheme step as a dense matrix acting on the stacked vector
/// z^n = (u^n, u^{n-1}, v^{n-1}, v^{n-2}, ..., v^{n-H}): state block first,
/// then the previous level, then H velocity samples, newest first.
/// H = K for the finite-difference cases and K + 1 for the pointwise one.
struct DenseRecurrence {
    Eigen::MatrixXd matrix;
    std::size_t dof = 0;          ///< unknowns per time level
    std::size_t sample_dof = 0;   ///< entries per velocity sample
    std::size_t history = 0;      ///< H
    OraclePhase phase = OraclePhase::free;

    [[nodiscard]] std::size_t dimension() const { return 2 * dof + history * sample_dof; }
    [[nodiscard]] std::size_t u_index(std::size_t j) const { return j; }
    [[nodiscard]] std::size_t prev_index(std::size_t j) const { return dof + j; }
    /// Column of sample v^{n-1-k}, entry i.
    [[nodiscard]] std::size_t history_index(std::size_t k, std::size_t i = 0) const
    {
        return 2 * dof + k * sample_dof + i;
    }
};

class OracleTooLarge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t oracle_max_cells = 32;

/// Throws OracleTooLarge for N > 32.
DenseRecurrence build_recurrence(const OracleSetup& setup, OraclePhase phase);

/// z, A z, A^2 z, ... (steps + 1 vectors).
std::vector<Eigen::VectorXd> oracle_run(const DenseRecurrence& rec, const Eigen::VectorXd& initial, std::size_t steps);

/// Oracle phase of the stencil at time index n.
OraclePhase oracle_phase_at(const SimParams& p, std::size_t n);

/// Trajectory starting from z^{n_first}, switching matrices by phase.
/// Element i is z^{n_first + i}.
std::vector<Eigen::VectorXd> oracle_trajectory(const OracleSetup& setup, const Eigen::VectorXd& initial,
                                               std::size_t n_first, std::size_t steps);

}  // namespace delaywave
