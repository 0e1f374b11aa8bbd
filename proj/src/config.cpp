#include "irsjam/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>

namespace irsjam::harness {

using nlohmann::json;

std::string_view to_string(Averaging mode) { return mode == Averaging::kLinear ? "linear" : "db"; }

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

void require_finite(double v, const char* name) {
  require(std::isfinite(v), std::string(name) + " must be finite");
}

const json& section(const json& doc, const char* name, std::initializer_list<const char*> keys) {
  static const json kEmpty = json::object();
  if (!doc.contains(name)) return kEmpty;
  const json& sec = doc.at(name);
  require(sec.is_object(), std::string("section '") + name + "' must be an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, value] : sec.items()) {
    require(allowed.count(key) > 0, std::string("unknown key '") + name + "." + key + "'");
  }
  return sec;
}

template <typename T>
void read(const json& sec, const char* key, T& out) {
  if (!sec.contains(key)) return;
  try {
    out = sec.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

void read_number(const json& sec, const char* key, double& out) {
  if (!sec.contains(key)) return;
  require(sec.at(key).is_number(), std::string("'") + key + "' must be a number");
  out = sec.at(key).get<double>();
}

void read_int(const json& sec, const char* key, int& out) {
  if (!sec.contains(key)) return;
  require(sec.at(key).is_number_integer(), std::string("'") + key + "' must be an integer");
  out = sec.at(key).get<int>();
}

}  // namespace

void ScenarioConfig::validate() const {
  require_finite(p_t_dbm, "p_t_dbm");
  require_finite(sigma2_dbm, "sigma2_dbm");
  require(antennas >= 1, "antennas must be at least 1");
  require(elements >= 1, "elements must be at least 1");
  require(bits >= 1 && bits <= jammer::kMaxBits,
          "bits must be between 1 and " + std::to_string(jammer::kMaxBits));
  require(trials >= 1, "trials must be at least 1");
  require(threads >= 0, "threads must be non-negative");
  require(randomizations >= 1, "randomizations must be at least 1");
  require(fixed_distance_m > 0.0 && std::isfinite(fixed_distance_m), "fixed_distance_m must be positive");
  for (double p : active_jammer_dbm) require_finite(p, "active_jammer_dbm entry");
  try {
    geometry.validate();
    path_loss.validate();
    bcd.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (bcd.beta_init) {
    require(bcd.beta_init->size() == elements, "beta_init must have one entry per element");
  }
}

ScenarioConfig config_from_json(const json& doc) {
  require(doc.is_object(), "config root must be an object");
  for (const auto& [key, value] : doc.items()) {
    require(key == "scenario" || key == "experiment" || key == "optimizer", "unknown section '" + key + "'");
  }
  ScenarioConfig cfg;

  const json& sc = section(doc, "scenario",
                           {"p_t_dbm", "antennas", "elements", "bits", "sigma2_dbm", "beamformer", "geometry",
                            "path_loss"});
  read_number(sc, "p_t_dbm", cfg.p_t_dbm);
  read_int(sc, "antennas", cfg.antennas);
  read_int(sc, "elements", cfg.elements);
  read_int(sc, "bits", cfg.bits);
  read_number(sc, "sigma2_dbm", cfg.sigma2_dbm);
  if (sc.contains("beamformer")) {
    std::string name;
    read(sc, "beamformer", name);
    try {
      cfg.beamformer = channel::beamformer_kind_from_string(name);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  const json& geo = section(sc, "geometry", {"x_t", "x_r", "x_i", "y_i"});
  read_number(geo, "x_t", cfg.geometry.lt.x);
  read_number(geo, "x_r", cfg.geometry.lr.x);
  read_number(geo, "x_i", cfg.geometry.irs.x);
  read_number(geo, "y_i", cfg.geometry.irs.y);
  const json& pl = section(sc, "path_loss", {"ref_loss_db", "ref_distance_m", "exp_direct", "exp_lt_irs", "exp_irs_lr"});
  read_number(pl, "ref_loss_db", cfg.path_loss.ref_loss_db);
  read_number(pl, "ref_distance_m", cfg.path_loss.ref_distance_m);
  read_number(pl, "exp_direct", cfg.path_loss.exp_direct);
  read_number(pl, "exp_lt_irs", cfg.path_loss.exp_lt_irs);
  read_number(pl, "exp_irs_lr", cfg.path_loss.exp_irs_lr);

  const json& ex = section(doc, "experiment",
                           {"trials", "seed", "threads", "averaging", "active_jammer_dbm", "fixed_distance_m"});
  read_int(ex, "trials", cfg.trials);
  if (ex.contains("seed")) {
    const json& s = ex.at("seed");
    require(s.is_number_unsigned() || (s.is_number_integer() && s.get<long long>() >= 0),
            "'seed' must be a non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  read_int(ex, "threads", cfg.threads);
  if (ex.contains("averaging")) {
    std::string mode;
    read(ex, "averaging", mode);
    require(mode == "linear" || mode == "db", "averaging must be 'linear' or 'db'");
    cfg.averaging = mode == "linear" ? Averaging::kLinear : Averaging::kDb;
  }
  if (ex.contains("active_jammer_dbm")) {
    require(ex.at("active_jammer_dbm").is_array(), "'active_jammer_dbm' must be an array");
    cfg.active_jammer_dbm.clear();
    for (const auto& v : ex.at("active_jammer_dbm")) {
      require(v.is_number(), "'active_jammer_dbm' entries must be numbers");
      cfg.active_jammer_dbm.push_back(v.get<double>());
    }
  }
  read_number(ex, "fixed_distance_m", cfg.fixed_distance_m);

  const json& op = section(doc, "optimizer",
                           {"randomizations", "eigen_candidate", "single_pass", "max_outer_iters", "rel_tol",
                            "beta_init", "sdp_tol", "sdp_max_iter", "beta_tol", "beta_max_sweeps"});
  read_int(op, "randomizations", cfg.randomizations);
  read(op, "eigen_candidate", cfg.eigen_candidate);
  read(op, "single_pass", cfg.bcd.single_pass);
  read_int(op, "max_outer_iters", cfg.bcd.max_outer_iters);
  read_number(op, "rel_tol", cfg.bcd.rel_tol);
  read_number(op, "sdp_tol", cfg.bcd.sdp.tol);
  read_int(op, "sdp_max_iter", cfg.bcd.sdp.max_iter);
  read_number(op, "beta_tol", cfg.bcd.beta.tol);
  read_int(op, "beta_max_sweeps", cfg.bcd.beta.max_sweeps);
  if (op.contains("beta_init")) {
    const json& b = op.at("beta_init");
    if (b.is_string()) {
      require(b.get<std::string>() == "ones", "beta_init must be \"ones\", a number or an array");
      cfg.bcd.beta_init.reset();
    } else if (b.is_number()) {
      cfg.bcd.beta_init = RealVec::Constant(cfg.elements, b.get<double>());
    } else if (b.is_array()) {
      RealVec v(static_cast<Eigen::Index>(b.size()));
      for (std::size_t i = 0; i < b.size(); ++i) {
        require(b[i].is_number(), "beta_init entries must be numbers");
        v[static_cast<Eigen::Index>(i)] = b[i].get<double>();
      }
      cfg.bcd.beta_init = std::move(v);
    } else {
      throw ConfigError("beta_init must be \"ones\", a number or an array");
    }
  }

  cfg.validate();
  return cfg;
}

json config_to_json(const ScenarioConfig& cfg) {
  json beta_init = "ones";
  if (cfg.bcd.beta_init) {
    beta_init = json::array();
    for (Eigen::Index i = 0; i < cfg.bcd.beta_init->size(); ++i) beta_init.push_back((*cfg.bcd.beta_init)[i]);
  }
  return {
      {"scenario",
       {{"p_t_dbm", cfg.p_t_dbm},
        {"antennas", cfg.antennas},
        {"elements", cfg.elements},
        {"bits", cfg.bits},
        {"sigma2_dbm", cfg.sigma2_dbm},
        {"beamformer", std::string(channel::to_string(cfg.beamformer))},
        {"geometry",
         {{"x_t", cfg.geometry.lt.x}, {"x_r", cfg.geometry.lr.x}, {"x_i", cfg.geometry.irs.x}, {"y_i", cfg.geometry.irs.y}}},
        {"path_loss",
         {{"ref_loss_db", cfg.path_loss.ref_loss_db},
          {"ref_distance_m", cfg.path_loss.ref_distance_m},
          {"exp_direct", cfg.path_loss.exp_direct},
          {"exp_lt_irs", cfg.path_loss.exp_lt_irs},
          {"exp_irs_lr", cfg.path_loss.exp_irs_lr}}}}},
      {"experiment",
       {{"trials", cfg.trials},
        {"seed", cfg.seed},
        {"threads", cfg.threads},
        {"averaging", std::string(to_string(cfg.averaging))},
        {"active_jammer_dbm", cfg.active_jammer_dbm},
        {"fixed_distance_m", cfg.fixed_distance_m}}},
      {"optimizer",
       {{"randomizations", cfg.randomizations},
        {"eigen_candidate", cfg.eigen_candidate},
        {"single_pass", cfg.bcd.single_pass},
        {"max_outer_iters", cfg.bcd.max_outer_iters},
        {"rel_tol", cfg.bcd.rel_tol},
        {"beta_init", beta_init},
        {"sdp_tol", cfg.bcd.sdp.tol},
        {"sdp_max_iter", cfg.bcd.sdp.max_iter},
        {"beta_tol", cfg.bcd.beta.tol},
        {"beta_max_sweeps", cfg.bcd.beta.max_sweeps}}},
  };
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("cannot parse " + path.string() + ": " + e.what());
  }
  return config_from_json(doc);
}

void apply_env_overrides(ScenarioConfig& cfg) {
  const char* raw = std::getenv(kSeedEnvVar);
  if (raw == nullptr || *raw == '\0') return;
  char* end = nullptr;
  errno = 0;
  const unsigned long long value = std::strtoull(raw, &end, 10);
  if (errno != 0 || end == raw || *end != '\0' || raw[0] == '-') {
    throw ConfigError(std::string(kSeedEnvVar) + " must be a non-negative integer, got '" + raw + "'");
  }
  cfg.seed = value;
}

}  // namespace irsjam::harness
