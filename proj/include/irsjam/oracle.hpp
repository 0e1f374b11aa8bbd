#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "irsjam/channel.hpp"
#include "irsjam/config.hpp"
#include "irsjam/jammer.hpp"

namespace irsjam::harness {

struct OracleResult {
  RealVec beta;
  jammer::PhaseLevels levels;
  double gamma_min = 0.0;
  std::uint64_t candidates = 0;
};

inline constexpr std::uint64_t kOracleBudget = 10'000'000;

/// Exhaustive minimum of the received power over every phase tuple of the
/// 2^bits grid and every magnitude vector on {0, step, 2 step, ..., 1}.
/// Refuses (DomainError naming the required count) when L^N * G^N exceeds
/// `budget`, G being the number of magnitude grid points.
OracleResult brute_force_oracle(const channel::ChannelRealization& ch, const channel::Beamformer& bf, int bits,
                                double beta_step, std::uint64_t budget = kOracleBudget);

struct OracleCase {
  int instance = 0;
  std::uint64_t seed = 0;
  int elements = 0;
  int bits = 0;
  int antennas = 0;
  double optimizer_w = 0.0;
  double oracle_w = 0.0;
  std::uint64_t candidates = 0;
  bool pass = false;
};

struct OracleSuiteOptions {
  int instances = 50;
  double beta_step = 0.05;
  double rel_slack = 1.05;
  double abs_slack_w = 1e-15;
  // Unset: cycle N over {1,2,3}, bits over {1,2}, M over {1,2}.
  std::optional<int> elements, bits, antennas;
};

/// Random small instances drawn from `base` (geometry, power, beamformer,
/// seed). Each one runs the full BCD loop, keeps the better of its result and
/// beta = 0, and compares against brute_force_oracle.
/// pass: optimizer <= rel_slack * oracle + abs_slack_w.
std::vector<OracleCase> run_oracle_suite(const ScenarioConfig& base, const OracleSuiteOptions& opts);

}  // namespace irsjam::harness
