#pragma once

#include "delaywave/experiment.hpp"
#include "delaywave/oracle.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace delaywave {

/// Stacks a scheme state after stencil n-1 into the oracle vector z^n.
/// Samples older than the delay line holds are zero.
Eigen::VectorXd stack_state(const WaveState& st, const DelayLine<double>& delay, std::size_t history);
Eigen::VectorXd stack_state(const WaveState& st, const DelayLine<std::vector<double>>& delay, std::size_t history,
                            std::size_t sample_dof);

struct OracleComparison {
    double max_abs = 0.0;  ///< sup over steps of |scheme - oracle| on u^{n+1} and v^n
    double max_ref = 0.0;  ///< sup of |oracle| over the same entries
    std::size_t steps = 0;
};

/// Steps a scheme with random initial data (seeded) and the dense oracle side
/// by side from n = 1.
OracleComparison compare_with_oracle(Case c, Stepper stepper, std::size_t n_cells, double mu, std::size_t steps,
                                     std::uint64_t seed, PointSourceSign sign = PointSourceSign::negative);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidateOptions {
    /// Replaces the step of the boundary conservation runs (fault injection).
    StepHook boundary_hook;
};

/// Conservation, oracle equivalence, flux identities, CFL instability and
/// implicit-energy checks on small meshes.
std::vector<CheckResult> run_validation(const ValidateOptions& options = {});

/// A boundary step whose Neumann row uses -2 s u_{N-1} instead of +2 s u_{N-1}.
StepHook neumann_sign_mutation();

/// Largest |E^n| / E^0 reached before t_hi (or infinity on blow-up).
double energy_growth(const RunResult& r, double t_hi);

}  // namespace delaywave
