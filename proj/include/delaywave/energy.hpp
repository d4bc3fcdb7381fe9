#pragma once

#include "delaywave/fv_mesh.hpp"
#include "delaywave/params.hpp"
#include "delaywave/wave_state.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace delaywave {

/// Discrete energy of the level pair (n, n+1); indexed by n.
struct EnergyParts {
    double kinetic = 0.0;
    double potential = 0.0;
    double total = 0.0;
};

// Each functional reads u^n from `un` and u^{n+1} from `un1`. The WaveState
// overloads use (u_curr, u_next). The potential terms are products of
// gradients at the two levels, so they can be negative for unrelated pairs.
EnergyParts energy_boundary(std::span<const double> un, std::span<const double> un1, const SimParams& p);
EnergyParts energy_internal(std::span<const double> un, std::span<const double> un1, const SimParams& p);
EnergyParts energy_pointwise(std::span<const double> un, std::span<const double> un1, const FvMesh& mesh,
                             const SimParams& p);
EnergyParts energy_boundary(const WaveState& st, const SimParams& p);
EnergyParts energy_internal(const WaveState& st, const SimParams& p);
EnergyParts energy_pointwise(const WaveState& st, const FvMesh& mesh, const SimParams& p);

/// Energy for the averaged-operator stepper: the product potential term is
/// replaced by the mean of the squared gradients of levels n and n+1.
/// Non-negative for every input; throws std::invalid_argument for the
/// pointwise case.
EnergyParts energy_implicit_variant(std::span<const double> un, std::span<const double> un1, const SimParams& p);
EnergyParts energy_implicit_variant(const WaveState& st, const SimParams& p);

struct EnergyRecord {
    std::size_t step = 0;
    double t = 0.0;
    double kinetic = 0.0;
    double potential = 0.0;
    double total = 0.0;
};

class EnergyTrace {
public:
    /// Throws std::invalid_argument unless `r.step` exceeds the last step.
    void append(const EnergyRecord& r);
    void append(std::size_t step, double t, const EnergyParts& e);

    [[nodiscard]] const std::vector<EnergyRecord>& records() const { return m_records; }
    [[nodiscard]] std::size_t size() const { return m_records.size(); }
    [[nodiscard]] bool empty() const { return m_records.empty(); }
    [[nodiscard]] const EnergyRecord& front() const { return m_records.front(); }
    [[nodiscard]] const EnergyRecord& back() const { return m_records.back(); }

    /// -ln E(t) per record; throws if some energy is not positive.
    [[nodiscard]] std::vector<double> neg_log() const;
    /// -ln E(t) / t for records with t > 0.
    [[nodiscard]] std::vector<double> rate() const;

    /// max |E^n - E^0| / E^0 over records with t <= t_hi.
    [[nodiscard]] double max_relative_drift(double t_hi) const;
    /// max |E^{n+1} - E^n| / max(E^0, 1) over consecutive records with t <= t_hi.
    [[nodiscard]] double max_step_drift(double t_hi) const;

private:
    std::vector<EnergyRecord> m_records;
};

class EnergyNotPositive : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct FitWindow {
    double t_lo = 0.0;
    double t_hi = 0.0;
};

/// The delayed phase [T, T_f].
FitWindow default_fit_window(const SimParams& p);

struct DecayFit {
    double omega = 0.0;      ///< slope of -ln E against t; > 0 means decay
    double intercept = 0.0;  ///< so that E(t) ~ exp(-intercept) exp(-omega t)
    FitWindow window;        ///< the window actually spanned by the samples used
    double residual = 0.0;   ///< RMS residual of -ln E about the line
    std::size_t samples = 0;
};

/// Least-squares line through (t, -ln E) over the records inside `window`
/// (clipped to the available data). Throws EnergyNotPositive on E <= 0 in
/// the window and std::invalid_argument with fewer than two samples.
DecayFit fit_decay_rate(const EnergyTrace& trace, FitWindow window);

/// ||a - sign * b||_inf / max(||b||_inf, eps).
double periodicity_check(std::span<const double> a, std::span<const double> b, double sign);

}  // namespace delaywave
