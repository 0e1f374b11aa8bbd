#pragma once

#include <optional>
#include <vector>

#include "irsjam/beta_solver.hpp"
#include "irsjam/channel.hpp"
#include "irsjam/jammer.hpp"
#include "irsjam/phase_recovery.hpp"
#include "irsjam/sdp.hpp"

namespace irsjam::bcd {

struct BcdConfig {
  int max_outer_iters = 20;
  double rel_tol = 1e-4;
  bool single_pass = false;            ///< one phase solve and one magnitude solve
  std::optional<RealVec> beta_init;    ///< unset: all ones
  sdp::SdpOptions sdp;
  beta::BetaOptions beta;

  void validate() const;
};

enum class Block { kInitial, kPhase, kMagnitude };

struct BcdStep {
  int iteration = 0;  ///< outer iteration, 0 for the initial entry
  Block block = Block::kInitial;
  double objective = 0.0;  ///< received power after this step
  double candidate = 0.0;  ///< received power the block proposed
  bool accepted = true;
  RealVec beta;
  jammer::PhaseLevels levels;
  // Solver diagnostics (phase block: relaxation; magnitude block: sweeps).
  double sdp_objective = 0.0;
  double sdp_diag_residual = 0.0;
  double sdp_min_eigenvalue = 0.0;
  int solver_iterations = 0;
};

struct BcdTrace {
  std::vector<BcdStep> steps;
  int outer_iterations = 0;

  /// Number of consecutive steps whose objective went up.
  int monotonicity_violations() const;
};

struct BcdResult {
  jammer::JammerState state;
  BcdTrace trace;
  double objective = 0.0;
};

/// Alternates the phase block (relaxation + randomization) and the magnitude
/// block (box-constrained least squares) starting from (beta_init, theta = 0).
/// A block update that would raise the received power is rejected, so the
/// trace is non-increasing. Iteration i draws its randomization from
/// rand_cfg.rng.split(i).
BcdResult optimize_jammer(const channel::ChannelRealization& ch, const channel::Beamformer& bf, int bits,
                          const BcdConfig& cfg, const recovery::RandomizationConfig& rand_cfg);

}  // namespace irsjam::bcd
