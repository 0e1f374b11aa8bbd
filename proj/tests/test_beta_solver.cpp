#include <doctest.h>

#include <cmath>
#include <limits>

#include "irsjam/beta_solver.hpp"
#include "irsjam/errors.hpp"
#include "support.hpp"

using namespace irsjam;
using namespace irsjam::beta;
using numerics::SeededRng;

namespace {

BetaProblem scalar(double c, double psi) { return {ComplexVec::Constant(1, c), Complex(psi, 0.0)}; }

}  // namespace

TEST_CASE("closed-form clamp cases") {
  SUBCASE("interior") {
    const auto r = solve_beta(scalar(2.0, -1.0));
    CHECK(r.beta[0] == 0.5);
    CHECK(r.value == 0.0);
  }
  SUBCASE("lower edge") {
    const auto r = solve_beta(scalar(1.0, 1.0));
    CHECK(r.beta[0] == 0.0);
    CHECK(r.value == 1.0);
  }
  SUBCASE("upper edge") {
    const auto r = solve_beta(scalar(1.0, -2.0));
    CHECK(r.beta[0] == 1.0);
    CHECK(r.value == 1.0);
  }
}

TEST_CASE("three elements against a grid search") {
  SeededRng rng(5);
  BetaProblem p{numerics::sample_complex_gaussian(rng, 3), numerics::complex_gaussian(rng)};
  const auto r = solve_beta(p);
  double best = std::numeric_limits<double>::infinity();
  RealVec b(3);
  for (int i = 0; i <= 100; ++i)
    for (int j = 0; j <= 100; ++j)
      for (int k = 0; k <= 100; ++k) {
        b << i / 100.0, j / 100.0, k / 100.0;
        best = std::min(best, p.objective(b));
      }
  CHECK(std::abs(r.value - best) <= 1e-3);
  CHECK(r.value <= best + 1e-12);
  CHECK(kkt_violation(p, r.beta).maxCoeff() <= 1e-6);
}

TEST_CASE("objective and gradient") {
  SeededRng rng(6);
  BetaProblem p{numerics::sample_complex_gaussian(rng, 4), numerics::complex_gaussian(rng)};
  RealVec b(4);
  b << 0.1, 0.7, 0.3, 0.9;
  Complex sum = p.psi;
  for (int n = 0; n < 4; ++n) sum += b[n] * p.c[n];
  CHECK(p.objective(b) == doctest::Approx(std::norm(sum)));

  const RealVec g = p.gradient(b);
  const double h = 1e-6;
  for (int n = 0; n < 4; ++n) {
    RealVec up = b, down = b;
    up[n] += h;
    down[n] -= h;
    CHECK(g[n] == doctest::Approx((p.objective(up) - p.objective(down)) / (2 * h)).epsilon(1e-6));
  }
}

TEST_CASE("real-valued formulation agrees") {
  // |beta^T c + psi|^2 = beta^T Q beta + 2 q^T beta + |psi|^2 with
  // Q = Re(c conj(c)^T), q = Re(conj(c) psi).
  SeededRng rng(7);
  BetaProblem p{numerics::sample_complex_gaussian(rng, 6), numerics::complex_gaussian(rng)};
  Eigen::MatrixXd q_mat(6, 6);
  RealVec q(6);
  for (int i = 0; i < 6; ++i) {
    q[i] = (std::conj(p.c[i]) * p.psi).real();
    for (int j = 0; j < 6; ++j) q_mat(i, j) = (p.c[i] * std::conj(p.c[j])).real();
  }
  const auto r = solve_beta(p);
  const double quad = r.beta.dot(q_mat * r.beta) + 2 * q.dot(r.beta) + std::norm(p.psi);
  CHECK(quad == doctest::Approx(r.value).epsilon(1e-10));
  CHECK(kkt_violation(p, r.beta).maxCoeff() <= 1e-6);
}

TEST_CASE("random instances satisfy KKT and never increase the start value") {
  SeededRng rng(8);
  for (int t = 0; t < 30; ++t) {
    const Eigen::Index n = 1 + t;
    BetaProblem p{numerics::sample_complex_gaussian(rng, n), 0.5 * static_cast<double>(n) * numerics::complex_gaussian(rng)};
    RealVec start(n);
    for (Eigen::Index i = 0; i < n; ++i) start[i] = rng.uniform();
    const auto r = solve_beta(p, start);
    CHECK(r.value <= p.objective(start) + 1e-12);
    CHECK(kkt_violation(p, r.beta).maxCoeff() <= 1e-5 * std::max(1.0, std::abs(p.psi)));
    CHECK(r.beta.minCoeff() >= 0.0);
    CHECK(r.beta.maxCoeff() <= 1.0);
  }
}

TEST_CASE("zero coefficients keep their start value") {
  BetaProblem p{ComplexVec::Zero(2), Complex(1.0, 0.0)};
  const auto r = solve_beta(p, RealVec::Constant(2, 0.25));
  CHECK(r.beta == RealVec::Constant(2, 0.25));
  CHECK(r.value == 1.0);
}

TEST_CASE("bad starts are rejected") {
  CHECK_THROWS_AS(solve_beta(scalar(1.0, 1.0), RealVec::Constant(1, 1.5)), DomainError);
  CHECK_THROWS_AS(solve_beta(scalar(1.0, 1.0), RealVec::Zero(2)), DimensionError);
}

TEST_CASE("make_beta_problem matches the received power") {
  SeededRng rng(9);
  const auto ch = testing::unit_scale_channel(rng, 3, 5);
  const auto bf = channel::uniform_beamformer(3, 1.0);
  const jammer::JammerState s(RealVec::Constant(5, 0.5), jammer::PhaseLevels{0, 1, 2, 3, 1}, 2);
  const auto p = make_beta_problem(ch, bf, s);
  CHECK(p.objective(s.beta()) == doctest::Approx(testing::direct_received_power(ch, bf, s.beta(), s.theta())));
}
