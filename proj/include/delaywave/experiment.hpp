#pragma once

#include "delaywave/boundary_scheme.hpp"
#include "delaywave/energy.hpp"
#include "delaywave/internal_scheme.hpp"
#include "delaywave/pointwise_scheme.hpp"

#include "json.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace delaywave {

/// Named initial data on (0, ell); u1 = -u0 for both.
///   parabola: u0 = x^2 - 2 ell x (Dirichlet at 0, u0'(ell) = 0)
///   bubble:   u0 = x (x - ell)   (Dirichlet at both ends)
/// "default" is bubble for the internal case and parabola otherwise.
struct InitialData {
    std::string name;
    Profile u0;
    Profile u1;
};

InitialData named_initial_data(std::string_view name, Case c, double ell);

struct RunConfig {
    Case case_kind = Case::boundary;
    double mu = 0.0;
    double ell = 1.0;
    std::size_t n_cells = 100;
    double cfl = 1.0;
    std::size_t periods = 200;
    Stepper stepper = Stepper::explicit_leapfrog;
    std::string ic = "default";
    std::vector<double> snapshot_times;  ///< empty means {0, T_f}
    double damp_lo = 0.25;               ///< internal case, as a fraction of ell
    double damp_hi = 0.75;
    PointSourceSign source_sign = PointSourceSign::negative;
    std::filesystem::path out_dir;       ///< empty: keep results in memory only
};

/// Resolves the run parameters; throws ConfigError.
SimParams resolve_params(const RunConfig& cfg);

using AnyScheme = std::variant<BoundaryScheme, InternalScheme, PointwiseScheme>;

AnyScheme make_scheme(const RunConfig& cfg, const SimParams& p);
const WaveState& state_of(const AnyScheme& s);
void step(AnyScheme& s);
/// Energy of the current pair: the product functional of the case, or the
/// implicit variant for the averaged-operator stepper.
EnergyParts energy_of(const AnyScheme& s);
std::vector<double> positions_of(const AnyScheme& s);

struct Snapshot {
    double t = 0.0;
    std::size_t step = 0;
    std::vector<double> u;
};

struct RunResult {
    SimParams params;
    RunConfig config;
    EnergyTrace trace;
    std::vector<double> positions;
    std::vector<Snapshot> snapshots;
    std::optional<std::size_t> blow_up_step;  ///< first level with a non-finite value
    std::optional<DecayFit> fit;              ///< over the delayed phase, when computable
    std::vector<std::string> warnings;

    [[nodiscard]] const Snapshot* snapshot_at(double t) const;
};

/// Hook replacing the scheme step, for fault injection in validation.
using StepHook = std::function<void(AnyScheme&)>;

/// Runs in memory: records E^n for n = 0..M-1 and the requested profiles.
RunResult simulate(const RunConfig& cfg, const StepHook& hook = nullptr);

/// simulate() plus energy.csv, profile_t<t>.csv and manifest.json in
/// cfg.out_dir when it is set. Blow-up is reported through the result.
RunResult run_single(const RunConfig& cfg);

struct SweepRow {
    double mu = 0.0;
    std::optional<double> omega;
    std::optional<double> residual;
    double final_energy = 0.0;
    std::optional<std::size_t> blow_up_step;
    std::string error;
};

/// One run per mu on up to `jobs` threads. Each run writes into
/// out_dir/mu_<mu>/ and the table goes to out_dir/summary.csv. Rows follow
/// the order of `mus` regardless of scheduling.
std::vector<SweepRow> run_sweep(const RunConfig& base, const std::vector<double>& mus, unsigned jobs = 1);

/// "A:B:STEP" (inclusive, values snapped to 1e-12) or "m1,m2,...".
std::vector<double> parse_mu_list(std::string_view text);
std::vector<double> parse_time_list(std::string_view text);

nlohmann::json manifest_json(const RunResult& r);
std::string summary_csv(const std::vector<SweepRow>& rows);
/// File name of a profile snapshot, e.g. profile_t20.csv.
std::string profile_file_name(double t);

}  // namespace delaywave
