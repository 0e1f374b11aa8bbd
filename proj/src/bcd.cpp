#include "irsjam/bcd.hpp"

#include <string>

namespace irsjam::bcd {

void BcdConfig::validate() const {
  if (max_outer_iters < 1) throw DomainError("max_outer_iters must be at least 1");
  if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
  if (!(sdp.tol > 0.0) || sdp.max_iter < 1) throw DomainError("invalid relaxation solver settings");
  if (!(beta.tol > 0.0) || beta.max_sweeps < 0) throw DomainError("invalid magnitude solver settings");
  if (beta_init) {
    for (Eigen::Index i = 0; i < beta_init->size(); ++i) {
      const double b = (*beta_init)[i];
      if (!(b >= 0.0 && b <= 1.0)) throw DomainError("beta_init entries must lie in [0, 1]");
    }
  }
}

int BcdTrace::monotonicity_violations() const {
  int count = 0;
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (steps[i].objective > steps[i - 1].objective) ++count;
  }
  return count;
}

namespace {

[[noreturn]] void rethrow_with_context(const ConvergenceError& e, int iteration, const char* block) {
  throw ConvergenceError("BCD iteration " + std::to_string(iteration) + ", " + block + " block: " + e.what(),
                         e.residual(), e.iterations());
}

}  // namespace

BcdResult optimize_jammer(const channel::ChannelRealization& ch, const channel::Beamformer& bf, int bits,
                          const BcdConfig& cfg, const recovery::RandomizationConfig& rand_cfg) {
  cfg.validate();
  const Eigen::Index n = ch.elements();
  jammer::check_dimensions(ch, bf, n);
  RealVec beta0 = cfg.beta_init ? *cfg.beta_init : RealVec::Ones(n);
  numerics::require_size("beta_init", beta0.size(), n);

  jammer::JammerState state(std::move(beta0), jammer::PhaseLevels(static_cast<std::size_t>(n), 0), bits);
  double objective = jammer::received_power(ch, bf, state);

  BcdTrace trace;
  trace.steps.push_back({0, Block::kInitial, objective, objective, true, state.beta(), state.levels()});

  for (int iter = 1; iter <= cfg.max_outer_iters; ++iter) {
    const double before = objective;

    // Phase block.
    {
      const auto reduced = jammer::reduce_phase_problem(ch, bf, state.beta());
      sdp::SdpSolution relaxed;
      try {
        relaxed = sdp::solve_unit_diag_sdp(sdp::build_sdp(reduced), cfg.sdp);
      } catch (const ConvergenceError& e) {
        rethrow_with_context(e, iter, "phase");
      }
      recovery::RandomizationConfig round_cfg = rand_cfg;
      round_cfg.rng = rand_cfg.rng.split(static_cast<std::uint64_t>(iter - 1));
      const auto pick = recovery::randomize_and_select(relaxed, reduced, round_cfg, bits);

      auto candidate = state.with_levels(pick.levels);
      const double value = jammer::received_power(ch, bf, candidate);
      BcdStep step{iter, Block::kPhase, objective, value, value <= objective};
      if (step.accepted) {
        state = std::move(candidate);
        objective = value;
        step.objective = value;
      }
      step.beta = state.beta();
      step.levels = state.levels();
      step.sdp_objective = relaxed.objective;
      step.sdp_diag_residual = relaxed.diag_residual;
      step.sdp_min_eigenvalue = relaxed.min_eigenvalue;
      step.solver_iterations = relaxed.iterations;
      trace.steps.push_back(std::move(step));
    }

    // Magnitude block.
    {
      const auto prob = beta::make_beta_problem(ch, bf, state);
      beta::BetaResult solved;
      try {
        solved = beta::solve_beta(prob, state.beta(), cfg.beta);
      } catch (const ConvergenceError& e) {
        rethrow_with_context(e, iter, "magnitude");
      }
      auto candidate = state.with_beta(solved.beta);
      const double value = jammer::received_power(ch, bf, candidate);
      BcdStep step{iter, Block::kMagnitude, objective, value, value <= objective};
      if (step.accepted) {
        state = std::move(candidate);
        objective = value;
        step.objective = value;
      }
      step.beta = state.beta();
      step.levels = state.levels();
      step.solver_iterations = solved.sweeps;
      trace.steps.push_back(std::move(step));
    }

    trace.outer_iterations = iter;
    if (cfg.single_pass) break;
    if (before <= 0.0 || (before - objective) / before < cfg.rel_tol) break;
  }

  return {std::move(state), std::move(trace), objective};
}

}  // namespace irsjam::bcd
