#include "irsjam/beta_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace irsjam::beta {

double BetaProblem::objective(const RealVec& beta) const {
  numerics::require_size("beta", beta.size(), c.size());
  return std::norm(c.cwiseProduct(beta.cast<Complex>()).sum() + psi);
}

RealVec BetaProblem::gradient(const RealVec& beta) const {
  numerics::require_size("beta", beta.size(), c.size());
  const Complex residual = c.cwiseProduct(beta.cast<Complex>()).sum() + psi;
  RealVec g(c.size());
  for (Eigen::Index n = 0; n < c.size(); ++n) g[n] = 2.0 * (std::conj(c[n]) * residual).real();
  return g;
}

BetaProblem make_beta_problem(const channel::ChannelRealization& ch, const channel::Beamformer& bf,
                              const jammer::JammerState& state) {
  jammer::check_dimensions(ch, bf, state.size());
  const ComplexVec gw = ch.g * bf.omega;
  const ComplexVec phasors = state.phasors();
  BetaProblem prob;
  prob.c.resize(state.size());
  for (Eigen::Index n = 0; n < state.size(); ++n) prob.c[n] = std::conj(ch.h_r[n]) * phasors[n] * gw[n];
  prob.psi = ch.h_d.dot(bf.omega);
  return prob;
}

BetaResult solve_beta(const BetaProblem& prob, const RealVec& start, const BetaOptions& options) {
  const Eigen::Index n = prob.size();
  if (n < 1) throw DimensionError("magnitude problem needs at least one element");
  numerics::require_size("initial beta", start.size(), n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(start[i] >= 0.0 && start[i] <= 1.0)) throw DomainError("initial beta outside [0, 1]");
  }
  const int max_sweeps = options.max_sweeps > 0 ? options.max_sweeps : static_cast<int>(std::max<Eigen::Index>(10 * n, 200));

  BetaResult out;
  out.beta = start;
  Complex residual = prob.c.cwiseProduct(start.cast<Complex>()).sum() + prob.psi;

  double largest_move = 0.0;
  RealVec before(n);
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    largest_move = 0.0;
    before = out.beta;
    const Complex residual_before = residual;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double curvature = std::norm(prob.c[i]);
      if (curvature == 0.0) continue;
      const double slope = (std::conj(prob.c[i]) * residual).real();
      const double next = std::clamp(out.beta[i] - slope / curvature, 0.0, 1.0);
      const double move = next - out.beta[i];
      if (move != 0.0) {
        out.beta[i] = next;
        residual += move * prob.c[i];
        largest_move = std::max(largest_move, std::abs(move));
      }
    }
    if (largest_move < options.tol) {
      out.sweeps = sweep;
      out.value = prob.objective(out.beta);
      return out;
    }

    // Exact line search along the sweep's displacement, kept inside the box.
    // Cuts the zigzag of plain coordinate descent in flat valleys (the
    // Hessian has rank at most 2).
    const Complex shift = residual - residual_before;
    const double shift_sq = std::norm(shift);
    if (shift_sq == 0.0) continue;
    double reach = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double d = out.beta[i] - before[i];
      if (d > 0.0) reach = std::min(reach, (1.0 - out.beta[i]) / d);
      if (d < 0.0) reach = std::min(reach, -out.beta[i] / d);
    }
    const double step = std::clamp(-(std::conj(shift) * residual).real() / shift_sq, 0.0, reach);
    if (step > 0.0) {
      for (Eigen::Index i = 0; i < n; ++i) {
        out.beta[i] = std::clamp(out.beta[i] + step * (out.beta[i] - before[i]), 0.0, 1.0);
      }
      residual = prob.c.cwiseProduct(out.beta.cast<Complex>()).sum() + prob.psi;
    }
  }
  throw ConvergenceError("magnitude solver did not settle in " + std::to_string(max_sweeps) +
                             " sweeps (last move " + std::to_string(largest_move) + ")",
                         largest_move, max_sweeps);
}

BetaResult solve_beta(const BetaProblem& prob, const BetaOptions& options) {
  return solve_beta(prob, RealVec::Zero(prob.size()), options);
}

RealVec kkt_violation(const BetaProblem& prob, const RealVec& beta) {
  const RealVec g = prob.gradient(beta);
  RealVec out(beta.size());
  for (Eigen::Index i = 0; i < beta.size(); ++i) {
    if (beta[i] <= 0.0) {
      out[i] = std::max(-g[i], 0.0);
    } else if (beta[i] >= 1.0) {
      out[i] = std::max(g[i], 0.0);
    } else {
      out[i] = std::abs(g[i]);
    }
  }
  return out;
}

}  // namespace irsjam::beta
