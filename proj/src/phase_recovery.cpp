#include "irsjam/phase_recovery.hpp"

#include <cmath>
#include <limits>

namespace irsjam::recovery {

RealVec recover_theta(const ComplexVec& mu_bar) {
  const Eigen::Index n = mu_bar.size() - 1;
  if (n < 1) throw DimensionError("candidate vector needs at least two entries");
  const Complex anchor = mu_bar[n];
  if (!(std::abs(anchor) >= kDegenerateScale)) {
    throw DomainError("degenerate candidate: last entry is (numerically) zero");
  }
  RealVec theta(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double t = -std::arg(mu_bar[i] / anchor);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t -= kTwoPi;
    theta[i] = t;
  }
  return theta;
}

Selection randomize_and_select(const sdp::SdpSolution& sol, const jammer::ReducedPhaseProblem& p,
                               const RandomizationConfig& cfg, int bits) {
  const Eigen::Index n = p.size();
  numerics::require_size("relaxation solution", sol.v.rows(), n + 1);
  if (cfg.draws < 1) throw DomainError("randomization needs at least one draw");

  const auto eig = numerics::hermitian_eig(sol.v);
  const ComplexMat root = numerics::psd_sqrt(eig);

  Selection best;
  best.gamma = std::numeric_limits<double>::infinity();

  auto consider = [&](const ComplexVec& mu) {
    if (!(std::abs(mu[n]) >= kDegenerateScale)) {
      ++best.skipped;
      return;
    }
    auto levels = jammer::quantize_phase(recover_theta(mu), bits);
    const double gamma = p.objective(levels, bits);
    ++best.evaluated;
    if (gamma < best.gamma) {
      best.gamma = gamma;
      best.levels = std::move(levels);
    }
  };

  if (cfg.eigen_candidate) consider(eig.vectors.col(0));

  // Draw every r up front so the result does not depend on evaluation order.
  auto rng = cfg.rng;
  ComplexMat draws(n + 1, cfg.draws);
  for (int d = 0; d < cfg.draws; ++d) draws.col(d) = numerics::sample_complex_gaussian(rng, n + 1);
  const ComplexMat candidates = root * draws;
  for (int d = 0; d < cfg.draws; ++d) consider(candidates.col(d));

  if (best.evaluated == 0) {
    throw DomainError("every randomized candidate was degenerate (zero last entry)");
  }
  return best;
}

}  // namespace irsjam::recovery
