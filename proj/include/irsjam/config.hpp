#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "irsjam/bcd.hpp"
#include "irsjam/channel.hpp"

namespace irsjam::harness {

/// How per-trial SINR values are combined into a point estimate.
enum class Averaging {
  kLinear,  ///< mean of linear SINR, then dB
  kDb,      ///< mean of per-trial dB values
};

std::string_view to_string(Averaging mode);

/// Everything a run depends on. Defaults reproduce the reference setup:
/// P_T = 30 dBm, M = 8, N = 150, 5-bit phases, noise -60 dBm, LT (0,0),
/// LR (10,0), surface (5,2), A = -30 dB at 1 m, exponents 3.5 / 2.8 / 2.8.
struct ScenarioConfig {
  double p_t_dbm = 30.0;
  int antennas = 8;
  int elements = 150;
  int bits = 5;
  double sigma2_dbm = -60.0;
  channel::Geometry geometry;
  channel::PathLossModel path_loss;
  channel::BeamformerKind beamformer = channel::BeamformerKind::kUniform;

  int trials = 100;
  std::uint64_t seed = 1;
  int threads = 0;  ///< 0: one per hardware thread
  Averaging averaging = Averaging::kLinear;
  std::vector<double> active_jammer_dbm{15.0, 35.0};
  double fixed_distance_m = 5.0;  ///< the distance held constant in distance sweeps

  int randomizations = 1000;
  bool eigen_candidate = true;
  bcd::BcdConfig bcd = [] {
    bcd::BcdConfig c;
    c.single_pass = true;
    return c;
  }();

  /// Throws ConfigError describing the first violated constraint.
  void validate() const;
};

/// Reads the JSON layout documented in README.md. Unknown keys are errors;
/// missing keys keep their defaults, so `{}` is the reference scenario.
ScenarioConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ScenarioConfig& cfg);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Applies IRSJAM_SEED when set in the environment.
void apply_env_overrides(ScenarioConfig& cfg);

inline constexpr const char* kSeedEnvVar = "IRSJAM_SEED";

}  // namespace irsjam::harness
