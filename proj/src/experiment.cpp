#include "irsjam/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "irsjam/jammer.hpp"
#include "irsjam/phase_recovery.hpp"

namespace irsjam::harness {

double sinr_db(double p_signal_w, double p_noise_w, double p_jam_w) {
  if (!(p_noise_w > 0.0)) throw DomainError("noise power must be positive");
  if (!(p_signal_w >= 0.0) || !(p_jam_w >= 0.0)) throw DomainError("signal and jamming power must be non-negative");
  return numerics::linear_to_db(p_signal_w / (p_noise_w + p_jam_w));
}

double active_jammer_received_power(double p_a_w, const channel::Geometry& geom,
                                    const channel::PathLossModel& model, numerics::SeededRng& rng) {
  if (!(p_a_w >= 0.0)) throw DomainError("active jamming power must be non-negative");
  const double gain = channel::path_gain_linear(geom.irs_lr(), model.exp_irs_lr, model);
  const double fading = std::norm(numerics::complex_gaussian(rng));
  return p_a_w * gain * fading;
}

TrialRecord run_point(const ScenarioConfig& cfg, int trial_index, bool keep_detail) {
  TrialRecord rec;
  rec.trial = trial_index;
  const auto trial_rng = numerics::SeededRng(cfg.seed).split(static_cast<std::uint64_t>(trial_index));
  rec.seed = trial_rng.seed();
  try {
    const auto ch = channel::realize_channels(cfg.geometry, cfg.path_loss, cfg.antennas, cfg.elements,
                                              trial_rng.split(0));
    const auto bf = channel::make_beamformer(cfg.beamformer, ch, numerics::dbm_to_watts(cfg.p_t_dbm));
    const auto off = jammer::JammerState::switched_off(cfg.elements, cfg.bits);
    rec.no_jam_signal_w = jammer::received_power(ch, bf, off);

    recovery::RandomizationConfig rand_cfg{cfg.randomizations, trial_rng.split(1), cfg.eigen_candidate};
    auto result = bcd::optimize_jammer(ch, bf, cfg.bits, cfg.bcd, rand_cfg);
    rec.iterations = result.trace.outer_iterations;
    rec.monotonicity_violations = result.trace.monotonicity_violations();
    rec.proposed_signal_w = result.objective;
    if (rec.no_jam_signal_w < rec.proposed_signal_w) {
      // Turning the surface off is always feasible.
      rec.proposed_signal_w = rec.no_jam_signal_w;
      rec.switched_off = true;
    }

    for (double p_dbm : cfg.active_jammer_dbm) {
      auto fading_rng = trial_rng.split(2);  // same fading draw for every jammer power
      rec.active_jam_w.push_back(
          active_jammer_received_power(numerics::dbm_to_watts(p_dbm), cfg.geometry, cfg.path_loss, fading_rng));
    }
    if (keep_detail) rec.detail = std::move(result);
  } catch (const std::exception& e) {
    rec.ok = false;
    rec.error = e.what();
  }
  return rec;
}

std::string_view to_string(SweepVariable var) {
  switch (var) {
    case SweepVariable::kNone: return "none";
    case SweepVariable::kTransmitPower: return "P_T";
    case SweepVariable::kElements: return "N";
    case SweepVariable::kDistanceLtIrs: return "dist_lt_irs";
    case SweepVariable::kDistanceIrsLr: return "dist_irs_lr";
  }
  return "none";
}

SweepVariable sweep_variable_from_string(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (lower == "p_t") return SweepVariable::kTransmitPower;
  if (lower == "n") return SweepVariable::kElements;
  if (lower == "dist_lt_irs") return SweepVariable::kDistanceLtIrs;
  if (lower == "dist_irs_lr") return SweepVariable::kDistanceIrsLr;
  throw ConfigError("unknown sweep variable '" + std::string(name) +
                    "' (expected P_T, N, dist_lt_irs or dist_irs_lr)");
}

namespace {

/// Surface position at distance d_lt from LT and d_lr from LR, upper half-plane.
channel::Point place_surface(const channel::Geometry& geom, double d_lt, double d_lr) {
  const double dx = geom.lr.x - geom.lt.x;
  const double dy = geom.lr.y - geom.lt.y;
  const double base = std::hypot(dx, dy);
  if (!(base > 0.0)) throw ConfigError("LT and LR coincide");
  const double along = (d_lt * d_lt - d_lr * d_lr + base * base) / (2.0 * base);
  const double h2 = d_lt * d_lt - along * along;
  if (h2 < -1e-9 * d_lt * d_lt) {
    throw ConfigError("no surface position is " + format_number(d_lt) + " m from LT and " + format_number(d_lr) +
                      " m from LR");
  }
  const double h = std::sqrt(std::max(h2, 0.0));
  const double ux = dx / base;
  const double uy = dy / base;
  return {geom.lt.x + along * ux - h * uy, geom.lt.y + along * uy + h * ux};
}

}  // namespace

ScenarioConfig apply_sweep_value(const ScenarioConfig& cfg, SweepVariable var, double value) {
  ScenarioConfig out = cfg;
  if (!std::isfinite(value)) throw ConfigError("sweep values must be finite");
  switch (var) {
    case SweepVariable::kNone:
      break;
    case SweepVariable::kTransmitPower:
      out.p_t_dbm = value;
      break;
    case SweepVariable::kElements: {
      if (value < 1.0 || value != std::floor(value)) throw ConfigError("N sweep values must be positive integers");
      out.elements = static_cast<int>(value);
      if (out.bcd.beta_init) {
        const RealVec& b = *out.bcd.beta_init;
        if (b.size() > 0 && (b.array() == b[0]).all()) {
          out.bcd.beta_init = RealVec::Constant(out.elements, b[0]);
        } else {
          throw ConfigError("a per-element beta_init cannot be used in an N sweep");
        }
      }
      break;
    }
    case SweepVariable::kDistanceLtIrs:
      if (!(value > 0.0)) throw ConfigError("distances must be positive");
      out.geometry.irs = place_surface(cfg.geometry, value, cfg.fixed_distance_m);
      break;
    case SweepVariable::kDistanceIrsLr:
      if (!(value > 0.0)) throw ConfigError("distances must be positive");
      out.geometry.irs = place_surface(cfg.geometry, cfg.fixed_distance_m, value);
      break;
  }
  out.validate();
  return out;
}

int SweepResult::failed_trials() const {
  int count = 0;
  for (const auto& p : points) {
    for (const auto& t : p.trials) count += t.ok ? 0 : 1;
  }
  return count;
}

SweepResult run_sweep(const ScenarioConfig& cfg, SweepVariable var, const std::vector<double>& values) {
  cfg.validate();
  if (values.empty()) throw ConfigError("sweep needs at least one value");

  SweepResult result;
  result.variable = var;
  for (double v : values) {
    SweepPoint point;
    point.value = v;
    point.config = apply_sweep_value(cfg, var, v);
    point.trials.resize(static_cast<std::size_t>(cfg.trials));
    result.points.push_back(std::move(point));
  }

  const std::size_t per_point = static_cast<std::size_t>(cfg.trials);
  const std::size_t total = per_point * result.points.size();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t item = next++; item < total; item = next++) {
      auto& point = result.points[item / per_point];
      const int trial = static_cast<int>(item % per_point);
      point.trials[static_cast<std::size_t>(trial)] = run_point(point.config, trial);
    }
  };

  unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(total)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  return result;
}

SweepResult run_single(const ScenarioConfig& cfg) { return run_sweep(cfg, SweepVariable::kNone, {0.0}); }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string active_scheme_label(double p_a_dbm) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "active_%gdBm", p_a_dbm);
  return buf;
}

namespace {

struct SchemeSample {
  double signal_w;
  double jam_w;
  int iterations;
};

class Accumulator {
 public:
  void add(double sinr_db_value, double sinr_linear, const SchemeSample& s) {
    sum_db_ += sinr_db_value;
    sum_linear_ += sinr_linear;
    sum_signal_ += s.signal_w;
    sum_jam_ += s.jam_w;
    sum_iter_ += s.iterations;
    ++count_;
  }

  CsvRow mean_row(CsvRow row, Averaging mode) const {
    const double n = static_cast<double>(count_);
    row.trial = "mean";
    if (count_ == 0) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.sinr_db = row.signal_power_dbm = row.jam_power_dbm = nan;
      row.iterations = "nan";
      return row;
    }
    row.sinr_db = mode == Averaging::kLinear ? numerics::linear_to_db(sum_linear_ / n) : sum_db_ / n;
    row.signal_power_dbm = numerics::watts_to_dbm(sum_signal_ / n);
    row.jam_power_dbm = numerics::watts_to_dbm(sum_jam_ / n);
    row.iterations = format_number(sum_iter_ / n);
    return row;
  }

 private:
  double sum_db_ = 0.0;
  double sum_linear_ = 0.0;
  double sum_signal_ = 0.0;
  double sum_jam_ = 0.0;
  double sum_iter_ = 0.0;
  int count_ = 0;
};

}  // namespace

std::vector<CsvRow> build_rows(const SweepResult& result, const ScenarioConfig& cfg) {
  std::vector<CsvRow> rows;
  const std::string var(to_string(result.variable));

  std::vector<std::string> schemes{kSchemeNoJamming, kSchemeIrs};
  for (double p : cfg.active_jammer_dbm) schemes.push_back(active_scheme_label(p));

  for (const auto& point : result.points) {
    const double noise_w = numerics::dbm_to_watts(point.config.sigma2_dbm);
    std::vector<Accumulator> acc(schemes.size());
    std::vector<CsvRow> means;

    for (std::size_t s = 0; s < schemes.size(); ++s) {
      for (const auto& t : point.trials) {
        CsvRow row{var, point.value, schemes[s], std::to_string(t.trial), t.seed};
        if (!t.ok) {
          row.sinr_db = row.signal_power_dbm = row.jam_power_dbm = std::numeric_limits<double>::quiet_NaN();
          row.iterations = "error";
          rows.push_back(std::move(row));
          continue;
        }
        SchemeSample sample{t.no_jam_signal_w, 0.0, 0};
        if (s == 1) sample = {t.proposed_signal_w, 0.0, t.iterations};
        if (s >= 2) sample.jam_w = t.active_jam_w[s - 2];

        const double linear = sample.signal_w / (noise_w + sample.jam_w);
        row.sinr_db = sinr_db(sample.signal_w, noise_w, sample.jam_w);
        row.signal_power_dbm = numerics::watts_to_dbm(sample.signal_w);
        row.jam_power_dbm = numerics::watts_to_dbm(sample.jam_w);
        row.iterations = std::to_string(sample.iterations);
        acc[s].add(row.sinr_db, linear, sample);
        rows.push_back(std::move(row));
      }
    }
    for (std::size_t s = 0; s < schemes.size(); ++s) {
      rows.push_back(acc[s].mean_row(CsvRow{var, point.value, schemes[s], "mean", point.config.seed},
                                     point.config.averaging));
    }
  }
  return rows;
}

std::string to_csv(const std::vector<CsvRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.sweep_var << ',' << format_number(r.sweep_value) << ',' << r.scheme << ',' << r.trial << ',' << r.seed
        << ',' << format_number(r.sinr_db) << ',' << format_number(r.signal_power_dbm) << ','
        << format_number(r.jam_power_dbm) << ',' << r.iterations << '\n';
  }
  return out.str();
}

nlohmann::json run_metadata(const SweepResult& result, const ScenarioConfig& cfg) {
  nlohmann::json errors = nlohmann::json::array();
  for (const auto& p : result.points) {
    for (const auto& t : p.trials) {
      if (!t.ok) errors.push_back({{"sweep_value", p.value}, {"trial", t.trial}, {"error", t.error}});
    }
  }
  int switched_off = 0;
  for (const auto& p : result.points) {
    for (const auto& t : p.trials) switched_off += t.switched_off ? 1 : 0;
  }
  return {
      {"sweep_var", std::string(to_string(result.variable))},
      {"assumptions",
       {{"beamformer", std::string(channel::to_string(cfg.beamformer))},
        {"beamformer_note",
         "the transmitter beamformer is not optimized; uniform = equal-gain co-phased weights, "
         "mrt = maximum-ratio toward the direct link"},
        {"active_jammer_fading",
         "Rayleigh CN(0,1) per trial, path loss of the surface-to-receiver link (co-located with the surface)"},
        {"sinr_averaging", std::string(to_string(cfg.averaging))},
        {"rng_streams", "trial t uses stream (seed, t) at every sweep point"}}},
      {"failed_trials", errors},
      {"switched_off_trials", switched_off},
      {"config", config_to_json(cfg)},
  };
}

}  // namespace irsjam::harness
