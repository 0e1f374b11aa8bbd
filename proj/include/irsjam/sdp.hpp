#pragma once

#include "irsjam/jammer.hpp"
#include "irsjam/numerics.hpp"

namespace irsjam::sdp {

/// min Tr(R V) + const_term  s.t.  V_nn = 1, V >= 0.
///
/// R is (N+1)x(N+1): [[alpha alpha^H, alpha conj(psi)], [psi alpha^H, 0]],
/// const_term = |psi|^2.
struct SdpProblem {
  ComplexMat r;
  double const_term = 0.0;

  Eigen::Index size() const { return r.rows(); }
};

struct SdpOptions {
  double tol = 1e-7;  ///< duality gap, relative to ||R||_F
  int max_iter = 500;
};

struct SdpSolution {
  ComplexMat v;
  double objective = 0.0;   ///< Tr(R V) + const_term at the returned (feasible) V
  double dual_bound = 0.0;  ///< certified lower bound on the relaxation optimum
  double diag_residual = 0.0;
  double min_eigenvalue = 0.0;
  int iterations = 0;
};

SdpProblem build_sdp(const jammer::ReducedPhaseProblem& p);

/// Primal-dual path-following interior-point method (HKM search direction)
/// on the pair
///
///   primal: min <C, X>  s.t. diag(X) = 1, X >= 0
///   dual:   max 1^T y   s.t. Z = C - Diag(y) >= 0
///
/// with C = R / ||R||_F. The primal iterate keeps a unit diagonal and stays
/// strictly positive definite, so every returned V is feasible. Stops once
/// <X, Z> <= tol * max(1, |<C, X>|); throws ConvergenceError (carrying the
/// gap) after max_iter iterations or if the iterates lose definiteness.
/// Deterministic: no internal randomness.
SdpSolution solve_unit_diag_sdp(const SdpProblem& prob, const SdpOptions& options = {});

}  // namespace irsjam::sdp
