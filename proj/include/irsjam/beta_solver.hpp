#pragma once

#include "irsjam/channel.hpp"
#include "irsjam/jammer.hpp"
#include "irsjam/numerics.hpp"

namespace irsjam::beta {

/// min_beta |beta^T c + psi|^2 over the box [0, 1]^N.
struct BetaProblem {
  ComplexVec c;
  Complex psi;

  Eigen::Index size() const { return c.size(); }
  double objective(const RealVec& beta) const;
  /// d/d beta_n of the objective: 2 Re(conj(c_n) (beta^T c + psi)).
  RealVec gradient(const RealVec& beta) const;
};

struct BetaOptions {
  double tol = 1e-9;   ///< stop when no coordinate moves by more than this in a sweep
  int max_sweeps = 0;  ///< 0 means max(10 * N, 200)
};

struct BetaResult {
  RealVec beta;
  double value = 0.0;
  int sweeps = 0;
};

/// c_n = conj(h_r[n]) e^{j theta_n} (G omega)_n for fixed phases.
BetaProblem make_beta_problem(const channel::ChannelRealization& ch, const channel::Beamformer& bf,
                              const jammer::JammerState& state);

/// Cyclic coordinate descent with the exact clamped minimizer per coordinate.
/// Starts from `start` (must lie in the box); coordinates with c_n = 0 are
/// left where they are. After each sweep an exact line search along the
/// sweep displacement (clipped to the box) speeds up flat valleys. Throws
/// ConvergenceError after max_sweeps.
BetaResult solve_beta(const BetaProblem& prob, const RealVec& start, const BetaOptions& options = {});
BetaResult solve_beta(const BetaProblem& prob, const BetaOptions& options = {});

/// Per-coordinate violation of the box KKT conditions: |g_n| for interior
/// points, max(-g_n, 0) at 0 and max(g_n, 0) at 1.
RealVec kkt_violation(const BetaProblem& prob, const RealVec& beta);

}  // namespace irsjam::beta
