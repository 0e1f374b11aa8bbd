// irsjam: command-line front end for the IRS jamming simulator.
//
//   irsjam run      [--config F] [--seed S] [--trials T] [--out F]
//   irsjam sweep    --var N --values 50,100,150,200 [...]
//   irsjam oracle   [--instances K] [--beta-step s] [...]
//   irsjam validate --config F

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "irsjam/config.hpp"
#include "irsjam/errors.hpp"
#include "irsjam/experiment.hpp"
#include "irsjam/oracle.hpp"

namespace {

using namespace irsjam;
using harness::ScenarioConfig;

struct CommonArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> threads;
  std::optional<int> elements;
  std::string out;
  bool full_bcd = false;
  std::string averaging;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_output) {
  cmd->add_option("-c,--config", args.config, "JSON config file (defaults apply when omitted)")
      ->check(CLI::ExistingFile);
  cmd->add_option("-s,--seed", args.seed, "base seed (overrides config and IRSJAM_SEED)");
  if (!with_output) return;
  cmd->add_option("-t,--trials", args.trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);
  cmd->add_option("-j,--threads", args.threads, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
  cmd->add_option("-n,--elements", args.elements, "reflecting elements N")->check(CLI::PositiveNumber);
  cmd->add_option("-o,--out", args.out, "CSV output path (stdout when omitted); metadata goes to <out>.meta.json");
  cmd->add_flag("--full-bcd", args.full_bcd, "iterate BCD to convergence instead of a single pass");
  cmd->add_option("--averaging", args.averaging, "linear or db")->check(CLI::IsMember({"linear", "db"}));
}

ScenarioConfig resolve_config(const CommonArgs& args) {
  ScenarioConfig cfg = args.config.empty() ? ScenarioConfig{} : harness::load_config(args.config);
  harness::apply_env_overrides(cfg);
  if (args.seed) cfg.seed = *args.seed;
  if (args.trials) cfg.trials = *args.trials;
  if (args.threads) cfg.threads = *args.threads;
  if (args.elements) {
    cfg.elements = *args.elements;
    if (cfg.bcd.beta_init && cfg.bcd.beta_init->size() != cfg.elements) {
      throw ConfigError("--elements conflicts with the per-element beta_init in the config");
    }
  }
  if (args.full_bcd) cfg.bcd.single_pass = false;
  if (!args.averaging.empty()) {
    cfg.averaging = args.averaging == "db" ? harness::Averaging::kDb : harness::Averaging::kLinear;
  }
  cfg.validate();
  return cfg;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

int emit(const harness::SweepResult& result, const ScenarioConfig& cfg, const std::string& out) {
  const std::string csv = harness::to_csv(harness::build_rows(result, cfg));
  if (out.empty()) {
    std::cout << csv;
  } else {
    write_file(out, csv);
    write_file(out + ".meta.json", harness::run_metadata(result, cfg).dump(2) + "\n");
  }
  const int failed = result.failed_trials();
  if (failed == 0) return 0;
  std::cerr << "irsjam: " << failed << " trial(s) failed:\n";
  for (const auto& point : result.points) {
    for (const auto& t : point.trials) {
      if (t.ok) continue;
      std::cerr << "  value " << harness::format_number(point.value) << " trial " << t.trial << ": " << t.error << "\n";
    }
  }
  return 3;
}

std::vector<double> parse_values(const std::vector<std::string>& raw) {
  std::vector<double> values;
  for (const auto& item : raw) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty()) throw ConfigError("not a number in --values: '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw ConfigError("--values needs at least one value");
  return values;
}

int run_oracle(const CommonArgs& args, harness::OracleSuiteOptions opts) {
  const ScenarioConfig cfg = resolve_config(args);
  const auto cases = harness::run_oracle_suite(cfg, opts);
  std::printf("%4s %20s %2s %2s %2s %14s %14s %10s %s\n", "inst", "seed", "N", "b", "M", "optimizer_w", "oracle_w",
              "candidates", "result");
  int failures = 0;
  for (const auto& c : cases) {
    std::printf("%4d %20llu %2d %2d %2d %14.6e %14.6e %10llu %s\n", c.instance,
                static_cast<unsigned long long>(c.seed), c.elements, c.bits, c.antennas, c.optimizer_w, c.oracle_w,
                static_cast<unsigned long long>(c.candidates), c.pass ? "ok" : "FAIL");
    if (!c.pass) ++failures;
  }
  std::printf("%d/%zu instances within %.2f x oracle + %.0e W\n", static_cast<int>(cases.size()) - failures,
              cases.size(), opts.rel_slack, opts.abs_slack_w);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IRS passive jamming optimizer and Monte Carlo simulator"};
  app.require_subcommand(1);

  CommonArgs run_args;
  auto* run = app.add_subcommand("run", "simulate one operating point");
  add_common(run, run_args, true);

  CommonArgs sweep_args;
  std::string sweep_var;
  std::vector<std::string> sweep_values;
  auto* sweep = app.add_subcommand("sweep", "simulate a list of values of one variable");
  add_common(sweep, sweep_args, true);
  sweep->add_option("--var", sweep_var, "P_T, N, dist_lt_irs or dist_irs_lr")->required();
  sweep->add_option("--values", sweep_values, "comma-separated values")->required()->delimiter(',');

  CommonArgs oracle_args;
  harness::OracleSuiteOptions oracle_opts;
  auto* oracle = app.add_subcommand("oracle", "compare the optimizer with exhaustive search on small instances");
  add_common(oracle, oracle_args, false);
  oracle->add_option("--instances", oracle_opts.instances, "number of random instances")->check(CLI::PositiveNumber);
  oracle->add_option("--beta-step", oracle_opts.beta_step, "magnitude grid step")->check(CLI::Range(1e-3, 1.0));
  oracle->add_option("--elements", oracle_opts.elements, "fix N (default cycles 1..3)")->check(CLI::Range(1, 6));
  oracle->add_option("--bits", oracle_opts.bits, "fix b (default cycles 1..2)")->check(CLI::Range(1, 4));
  oracle->add_option("--antennas", oracle_opts.antennas, "fix M (default cycles 1..2)")->check(CLI::PositiveNumber);

  CommonArgs validate_args;
  auto* validate = app.add_subcommand("validate", "check a config file and print the resolved settings");
  add_common(validate, validate_args, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      const ScenarioConfig cfg = resolve_config(run_args);
      return emit(harness::run_single(cfg), cfg, run_args.out);
    }
    if (*sweep) {
      const ScenarioConfig cfg = resolve_config(sweep_args);
      const auto var = harness::sweep_variable_from_string(sweep_var);
      const auto values = parse_values(sweep_values);
      for (double v : values) harness::apply_sweep_value(cfg, var, v).validate();
      return emit(harness::run_sweep(cfg, var, values), cfg, sweep_args.out);
    }
    if (*oracle) return run_oracle(oracle_args, oracle_opts);
    if (*validate) {
      const ScenarioConfig cfg = resolve_config(validate_args);
      std::cout << harness::config_to_json(cfg).dump(2) << "\n";
      for (const auto& w : cfg.path_loss.warnings()) std::cerr << "warning: " << w << "\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "irsjam: config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "irsjam: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
