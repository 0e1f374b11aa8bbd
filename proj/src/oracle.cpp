#include "irsjam/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "irsjam/bcd.hpp"
#include "irsjam/phase_recovery.hpp"

namespace irsjam::harness {

OracleResult brute_force_oracle(const channel::ChannelRealization& ch, const channel::Beamformer& bf, int bits,
                                double beta_step, std::uint64_t budget) {
  const Eigen::Index n = ch.elements();
  jammer::check_dimensions(ch, bf, n);
  if (!(beta_step > 0.0 && beta_step <= 1.0)) throw DomainError("beta_step must lie in (0, 1]");

  // Grid {0, step, ..., 1}; 1 is always included.
  std::vector<double> grid;
  const auto steps = static_cast<long>(std::floor(1.0 / beta_step + 1e-9));
  for (long k = 0; k <= steps; ++k) grid.push_back(std::min(1.0, static_cast<double>(k) * beta_step));
  if (grid.back() < 1.0 - 1e-12) grid.push_back(1.0);

  const auto levels = static_cast<std::uint64_t>(jammer::level_count(bits));
  const auto points = static_cast<std::uint64_t>(grid.size());
  long double required = 1.0L;
  for (Eigen::Index i = 0; i < n; ++i) required *= static_cast<long double>(levels * points);
  if (required > static_cast<long double>(budget)) {
    throw DomainError("brute-force oracle needs " + std::to_string(static_cast<double>(required)) +
                      " evaluations, budget is " + std::to_string(budget));
  }

  // Received signal = sum_n beta_n e^{j theta_n} conj(h_r[n]) (G w)_n + h_d^H w.
  const ComplexVec gw = ch.g * bf.omega;
  const Complex direct = (ch.h_d.adjoint() * bf.omega)(0, 0);
  ComplexVec path(n);
  for (Eigen::Index i = 0; i < n; ++i) path[i] = std::conj(ch.h_r[i]) * gw[i];

  OracleResult best;
  best.gamma_min = std::numeric_limits<double>::infinity();
  const auto un = static_cast<std::size_t>(n);
  jammer::PhaseLevels phase(un, 0);
  std::vector<std::size_t> mag(un, 0);
  ComplexVec rotated(n);

  while (true) {
    for (Eigen::Index i = 0; i < n; ++i) {
      rotated[i] = path[i] * std::polar(1.0, jammer::level_angle(phase[static_cast<std::size_t>(i)], bits));
    }
    std::fill(mag.begin(), mag.end(), 0);
    while (true) {
      Complex total = direct;
      for (std::size_t i = 0; i < un; ++i) total += grid[mag[i]] * rotated[static_cast<Eigen::Index>(i)];
      const double gamma = std::norm(total);
      ++best.candidates;
      if (gamma < best.gamma_min) {
        best.gamma_min = gamma;
        best.levels = phase;
        best.beta.resize(n);
        for (std::size_t i = 0; i < un; ++i) best.beta[static_cast<Eigen::Index>(i)] = grid[mag[i]];
      }
      std::size_t k = 0;
      while (k < un && ++mag[k] == grid.size()) mag[k++] = 0;
      if (k == un) break;
    }
    std::size_t k = 0;
    while (k < un && ++phase[k] == static_cast<int>(levels)) phase[k++] = 0;
    if (k == un) break;
  }
  return best;
}

std::vector<OracleCase> run_oracle_suite(const ScenarioConfig& base, const OracleSuiteOptions& opts) {
  if (opts.instances < 1) throw ConfigError("oracle suite needs at least one instance");
  std::vector<OracleCase> cases;
  const numerics::SeededRng root(base.seed);
  for (int i = 0; i < opts.instances; ++i) {
    OracleCase c;
    c.instance = i;
    c.elements = opts.elements.value_or(1 + i % 3);
    c.bits = opts.bits.value_or(1 + (i / 3) % 2);
    c.antennas = opts.antennas.value_or(1 + (i / 6) % 2);
    const auto rng = root.split(static_cast<std::uint64_t>(i));
    c.seed = rng.seed();

    const auto ch = channel::realize_channels(base.geometry, base.path_loss, c.antennas, c.elements, rng.split(0));
    const auto bf = channel::make_beamformer(base.beamformer, ch, numerics::dbm_to_watts(base.p_t_dbm));

    bcd::BcdConfig cfg = base.bcd;
    cfg.single_pass = false;
    cfg.beta_init.reset();
    recovery::RandomizationConfig rand_cfg{base.randomizations, rng.split(1), base.eigen_candidate};
    const auto result = bcd::optimize_jammer(ch, bf, c.bits, cfg, rand_cfg);
    const double off = jammer::received_power(ch, bf, jammer::JammerState::switched_off(c.elements, c.bits));
    c.optimizer_w = std::min(result.objective, off);

    const auto oracle = brute_force_oracle(ch, bf, c.bits, opts.beta_step);
    c.oracle_w = oracle.gamma_min;
    c.candidates = oracle.candidates;
    c.pass = c.optimizer_w <= opts.rel_slack * c.oracle_w + opts.abs_slack_w;
    cases.push_back(c);
  }
  return cases;
}

}  // namespace irsjam::harness
