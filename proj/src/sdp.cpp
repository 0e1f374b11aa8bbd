#include "irsjam/sdp.hpp"

#include <cmath>
#include <string>

namespace irsjam::sdp {

namespace {

double inner(const ComplexMat& a, const ComplexMat& b) { return a.cwiseProduct(b.conjugate()).sum().real(); }

bool is_positive_definite(const ComplexMat& a) {
  Eigen::LLT<ComplexMat> llt(a);
  return llt.info() == Eigen::Success;
}

/// Largest step in (0, 1] keeping `base + step * dir` positive definite,
/// backed off from the boundary.
double step_length(const ComplexMat& base, const ComplexMat& dir) {
  double step = 1.0;
  int tries = 0;
  while (!is_positive_definite(base + step * dir)) {
    step *= 0.8;
    if (++tries > 200) return 0.0;
  }
  if (step < 1.0) step *= 0.95;
  return step;
}

double max_diag_residual(const ComplexMat& v) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < v.rows(); ++i) worst = std::max(worst, std::abs(v(i, i) - 1.0));
  return worst;
}

SdpSolution finish(const SdpProblem& prob, ComplexMat v, double dual_bound, int iterations) {
  SdpSolution sol;
  sol.v = numerics::hermitian_part(v);
  sol.objective = inner(prob.r, sol.v) + prob.const_term;
  sol.dual_bound = dual_bound;
  sol.diag_residual = max_diag_residual(sol.v);
  Eigen::SelfAdjointEigenSolver<ComplexMat> eig(sol.v, Eigen::EigenvaluesOnly);
  sol.min_eigenvalue = eig.eigenvalues().minCoeff();
  sol.iterations = iterations;
  return sol;
}

}  // namespace

SdpProblem build_sdp(const jammer::ReducedPhaseProblem& p) {
  const Eigen::Index n = p.size();
  if (n < 1) throw DimensionError("relaxation needs at least one element");
  SdpProblem prob;
  prob.r = ComplexMat::Zero(n + 1, n + 1);
  prob.r.topLeftCorner(n, n) = p.alpha * p.alpha.adjoint();
  prob.r.topRightCorner(n, 1) = p.alpha * std::conj(p.psi);
  prob.r.bottomLeftCorner(1, n) = p.psi * p.alpha.adjoint();
  prob.const_term = std::norm(p.psi);
  return prob;
}

SdpSolution solve_unit_diag_sdp(const SdpProblem& prob, const SdpOptions& options) {
  const Eigen::Index n = prob.size();
  if (n < 1 || prob.r.cols() != n) throw DimensionError("relaxation matrix must be square and non-empty");

  const ComplexMat r = numerics::hermitian_part(prob.r);
  const double scale = r.norm();
  if (scale == 0.0) {
    // Constant objective: every feasible point is optimal.
    return finish(prob, ComplexMat::Ones(n, n), prob.const_term, 0);
  }
  const ComplexMat c = r / scale;

  // Strictly feasible start: X = I and a diagonally dominant slack.
  ComplexMat x = ComplexMat::Identity(n, n);
  RealVec y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    y[i] = c(i, i).real() - (c.row(i).cwiseAbs().sum() - std::abs(c(i, i))) - 1.0;
  }
  ComplexMat z = c;
  z.diagonal() -= y.cast<Complex>();

  const double two_n = 2.0 * static_cast<double>(n);
  double mu = inner(x, z) / two_n;
  double gap = inner(x, z);

  for (int iter = 0; iter < options.max_iter; ++iter) {
    const double primal = inner(c, x);
    gap = primal - y.sum();
    if (gap <= options.tol * std::max(1.0, std::abs(primal))) {
      return finish(prob, x, scale * y.sum() + prob.const_term, iter);
    }

    Eigen::LLT<ComplexMat> z_chol(z);
    if (z_chol.info() != Eigen::Success) {
      throw ConvergenceError("relaxation solver lost dual definiteness", scale * gap, iter);
    }
    ComplexMat z_inv = z_chol.solve(ComplexMat::Identity(n, n));
    z_inv = numerics::hermitian_part(z_inv);

    // Schur complement of the diagonal constraints: Re(Z^-1 o X^T).
    const Eigen::MatrixXd schur = z_inv.cwiseProduct(x.transpose()).real();
    const RealVec rhs = RealVec::Ones(n) - mu * z_inv.diagonal().real();
    Eigen::LLT<Eigen::MatrixXd> schur_chol(schur);
    if (schur_chol.info() != Eigen::Success) {
      throw ConvergenceError("relaxation solver: singular Schur complement", scale * gap, iter);
    }
    const RealVec dy = schur_chol.solve(rhs);

    ComplexMat dx = mu * z_inv - x + (z_inv * dy.cast<Complex>().asDiagonal()) * x;
    dx = numerics::hermitian_part(dx);
    ComplexMat dz = ComplexMat::Zero(n, n);
    dz.diagonal() = -dy.cast<Complex>();

    const double step_p = step_length(x, dx);
    const double step_d = step_length(z, dz);
    if (step_p == 0.0 && step_d == 0.0) {
      throw ConvergenceError("relaxation solver stalled", scale * gap, iter);
    }

    x += step_p * dx;
    y += step_d * dy;
    z = c;
    z.diagonal() -= y.cast<Complex>();

    mu = inner(x, z) / two_n;
    if (step_p + step_d > 1.6) mu *= 0.5;
    if (step_p + step_d > 1.9) mu /= 5.0;
  }
  throw ConvergenceError("relaxation solver did not reach tolerance in " + std::to_string(options.max_iter) +
                             " iterations (gap " + std::to_string(scale * gap) + ")",
                         scale * gap, options.max_iter);
}

}  // namespace irsjam::sdp
