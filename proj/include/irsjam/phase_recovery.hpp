#pragma once

#include "irsjam/jammer.hpp"
#include "irsjam/numerics.hpp"
#include "irsjam/sdp.hpp"

namespace irsjam::recovery {

/// Candidates whose last entry is smaller than this in magnitude are skipped.
inline constexpr double kDegenerateScale = 1e-12;

struct RandomizationConfig {
  int draws = 1000;
  numerics::SeededRng rng{0};
  /// Also try the (quantized) dominant eigenvector of V.
  bool eigen_candidate = true;
};

struct Selection {
  jammer::PhaseLevels levels;
  double gamma = 0.0;
  int evaluated = 0;  ///< candidates scored
  int skipped = 0;    ///< degenerate candidates
};

/// theta_n = -arg(mu[n] / mu[N]) wrapped into [0, 2*pi), n < N.
/// Throws DomainError when |mu[N]| < kDegenerateScale.
RealVec recover_theta(const ComplexVec& mu_bar);

/// Gaussian randomization over the relaxation solution.
///
/// All draws r ~ CN(0, I) come sequentially from a copy of cfg.rng, so the
/// first k draws are shared between runs with different draw counts. Each
/// candidate mu = sqrt(V) r is mapped back to phases, quantized to the
/// 2^bits grid and scored with the reduced objective at the current
/// magnitudes; the lowest score wins (first one on ties).
Selection randomize_and_select(const sdp::SdpSolution& sol, const jammer::ReducedPhaseProblem& p,
                               const RandomizationConfig& cfg, int bits);

}  // namespace irsjam::recovery
