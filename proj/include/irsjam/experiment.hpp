#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "irsjam/bcd.hpp"
#include "irsjam/channel.hpp"
#include "irsjam/config.hpp"

namespace irsjam::harness {

/// 10 log10(signal / (noise + jam)); DomainError unless noise > 0.
double sinr_db(double p_signal_w, double p_noise_w, double p_jam_w);

/// Power received from a conventional jammer co-located with the surface:
/// P_a * gain(irs-lr) * |g|^2 with one Rayleigh draw g ~ CN(0, 1) from `rng`.
double active_jammer_received_power(double p_a_w, const channel::Geometry& geom,
                                    const channel::PathLossModel& model, numerics::SeededRng& rng);

/// Outcome of one Monte Carlo trial at one operating point.
struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;  ///< seed of the trial's random stream
  bool ok = true;
  std::string error;

  double no_jam_signal_w = 0.0;    ///< |h_d^H omega|^2
  double proposed_signal_w = 0.0;  ///< optimized received power
  int iterations = 0;              ///< BCD outer iterations
  int monotonicity_violations = 0;
  bool switched_off = false;       ///< beta = 0 beat the optimizer
  std::vector<double> active_jam_w;  ///< one per configured active power
  std::optional<bcd::BcdResult> detail;  ///< kept only when requested
};

/// One trial of `cfg`: channel draw, the three schemes, and the optimizer.
/// Errors are captured in the record (ok = false), never thrown.
TrialRecord run_point(const ScenarioConfig& cfg, int trial_index, bool keep_detail = false);

enum class SweepVariable { kNone, kTransmitPower, kElements, kDistanceLtIrs, kDistanceIrsLr };

std::string_view to_string(SweepVariable var);
/// Accepts P_T, N, dist_lt_irs, dist_irs_lr (case-insensitive); ConfigError otherwise.
SweepVariable sweep_variable_from_string(std::string_view name);

/// Copy of `cfg` with the swept quantity set to `value`. Distance sweeps move
/// the surface (upper half-plane) so that the named distance equals `value`
/// and the other surface distance stays at cfg.fixed_distance_m.
ScenarioConfig apply_sweep_value(const ScenarioConfig& cfg, SweepVariable var, double value);

struct SweepPoint {
  double value = 0.0;
  ScenarioConfig config;
  std::vector<TrialRecord> trials;
};

struct SweepResult {
  SweepVariable variable = SweepVariable::kNone;
  std::vector<SweepPoint> points;

  int failed_trials() const;
};

/// Runs cfg.trials trials at every value. Trial t uses the stream
/// (seed, t) at every point, so points share small-scale fading.
/// Work is spread over cfg.threads workers; the result does not depend on
/// the schedule.
SweepResult run_sweep(const ScenarioConfig& cfg, SweepVariable var, const std::vector<double>& values);

/// A single operating point, reported with sweep_var "none".
SweepResult run_single(const ScenarioConfig& cfg);

/// One CSV line. trial is the trial index or "mean".
struct CsvRow {
  std::string sweep_var;
  double sweep_value = 0.0;
  std::string scheme;
  std::string trial;
  std::uint64_t seed = 0;
  double sinr_db = 0.0;
  double signal_power_dbm = 0.0;
  double jam_power_dbm = 0.0;
  std::string iterations;
};

inline constexpr const char* kCsvHeader =
    "sweep_var,sweep_value,scheme,trial,seed,sinr_db,signal_power_dbm,jam_power_dbm,iterations";

inline constexpr const char* kSchemeNoJamming = "no_jamming";
inline constexpr const char* kSchemeIrs = "irs_jamming";
std::string active_scheme_label(double p_a_dbm);

/// Per-trial rows for every scheme followed by one "mean" row per scheme,
/// point by point. Failed trials appear with NaN SINR and iterations
/// "error" and are excluded from the means.
std::vector<CsvRow> build_rows(const SweepResult& result, const ScenarioConfig& cfg);

std::string format_number(double v);
std::string to_csv(const std::vector<CsvRow>& rows);

/// Run metadata: modelling assumptions, averaging mode, resolved config.
nlohmann::json run_metadata(const SweepResult& result, const ScenarioConfig& cfg);

}  // namespace irsjam::harness
