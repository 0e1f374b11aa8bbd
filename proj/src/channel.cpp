#include "irsjam/channel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace irsjam::channel {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

void Geometry::validate() const {
  if (!(lt_lr() > 0.0) || !(lt_irs() > 0.0) || !(irs_lr() > 0.0)) {
    throw DomainError("degenerate geometry: two nodes share a position");
  }
}

void PathLossModel::validate() const {
  if (!(ref_distance_m > 0.0)) throw DomainError("path loss reference distance must be positive");
  if (!std::isfinite(ref_loss_db)) throw DomainError("path loss reference loss must be finite");
  for (double e : {exp_direct, exp_lt_irs, exp_irs_lr}) {
    if (!(e >= 0.0) || !std::isfinite(e)) {
      throw DomainError("path loss exponent must be a finite non-negative number");
    }
  }
}

std::vector<std::string> PathLossModel::warnings() const {
  std::vector<std::string> out;
  auto check = [&](const char* name, double e) {
    if (e < 2.0) out.push_back(std::string(name) + " exponent " + std::to_string(e) + " is below free-space (2)");
  };
  check("direct", exp_direct);
  check("lt_irs", exp_lt_irs);
  check("irs_lr", exp_irs_lr);
  return out;
}

std::string_view to_string(BeamformerKind kind) {
  switch (kind) {
    case BeamformerKind::kUniform: return "uniform";
    case BeamformerKind::kMrt: return "mrt";
  }
  return "unknown";
}

BeamformerKind beamformer_kind_from_string(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (lower == "uniform") return BeamformerKind::kUniform;
  if (lower == "mrt") return BeamformerKind::kMrt;
  throw DomainError("unknown beamformer '" + std::string(name) + "' (expected uniform or mrt)");
}

double path_gain_linear(double d_m, double exponent, const PathLossModel& model) {
  if (!(d_m > 0.0)) throw DomainError("path gain needs a positive distance, got " + std::to_string(d_m));
  return numerics::db_to_linear(model.ref_loss_db) * std::pow(d_m / model.ref_distance_m, -exponent);
}

ChannelRealization realize_channels(const Geometry& geom, const PathLossModel& model,
                                    Eigen::Index antennas, Eigen::Index elements,
                                    const numerics::SeededRng& rng) {
  if (antennas < 1 || elements < 1) throw DomainError("need at least one antenna and one element");
  geom.validate();
  model.validate();

  const double amp_d = std::sqrt(path_gain_linear(geom.lt_lr(), model.exp_direct, model));
  const double amp_r = std::sqrt(path_gain_linear(geom.irs_lr(), model.exp_irs_lr, model));
  const double amp_g = std::sqrt(path_gain_linear(geom.lt_irs(), model.exp_lt_irs, model));

  auto rng_d = rng.split(0);
  auto rng_r = rng.split(1);
  auto rng_g = rng.split(2);

  ChannelRealization ch;
  ch.h_d = amp_d * numerics::sample_complex_gaussian(rng_d, antennas);
  ch.h_r = amp_r * numerics::sample_complex_gaussian(rng_r, elements);
  ch.g.resize(elements, antennas);
  for (Eigen::Index n = 0; n < elements; ++n) {
    for (Eigen::Index m = 0; m < antennas; ++m) ch.g(n, m) = amp_g * numerics::complex_gaussian(rng_g);
  }
  return ch;
}

Beamformer mrt_beamformer(const ComplexVec& h_d, double power_w) {
  const double norm = h_d.norm();
  if (!(norm > 0.0)) throw DomainError("MRT beamformer needs a nonzero direct channel");
  if (!(power_w >= 0.0)) throw DomainError("transmit power must be non-negative");
  return {std::sqrt(power_w) / norm * h_d, power_w};
}

Beamformer uniform_beamformer(Eigen::Index antennas, double power_w) {
  if (antennas < 1) throw DomainError("uniform beamformer needs at least one antenna");
  if (!(power_w >= 0.0)) throw DomainError("transmit power must be non-negative");
  const double w = std::sqrt(power_w / static_cast<double>(antennas));
  return {ComplexVec::Constant(antennas, Complex(w, 0.0)), power_w};
}

Beamformer make_beamformer(BeamformerKind kind, const ChannelRealization& ch, double power_w) {
  switch (kind) {
    case BeamformerKind::kMrt: return mrt_beamformer(ch.h_d, power_w);
    case BeamformerKind::kUniform: return uniform_beamformer(ch.antennas(), power_w);
  }
  throw DomainError("unknown beamformer kind");
}

}  // namespace irsjam::channel
