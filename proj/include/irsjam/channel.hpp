#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "irsjam/numerics.hpp"

namespace irsjam::channel {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b);

/// Planar node placement, meters. Defaults: LT (0,0), LR (10,0), surface (5,2).
struct Geometry {
  Point lt{0.0, 0.0};
  Point lr{10.0, 0.0};
  Point irs{5.0, 2.0};

  double lt_lr() const { return distance(lt, lr); }
  double lt_irs() const { return distance(lt, irs); }
  double irs_lr() const { return distance(irs, lr); }

  /// Throws DomainError if any two nodes coincide.
  void validate() const;
};

/// Large-scale loss A * (d / d0)^(-exponent), one exponent per link.
struct PathLossModel {
  double ref_loss_db = -30.0;
  double ref_distance_m = 1.0;
  double exp_direct = 3.5;
  double exp_lt_irs = 2.8;
  double exp_irs_lr = 2.8;

  /// Throws DomainError on a non-positive reference distance or a negative exponent.
  void validate() const;
  /// Human-readable notes for exponents below free-space (2).
  std::vector<std::string> warnings() const;
};

/// One small-scale draw with path loss folded in.
///   h_d : length M, the direct link enters the receiver as h_d^H
///   h_r : length N, surface-to-receiver, enters as h_r^H
///   g   : N x M, transmitter-to-surface
struct ChannelRealization {
  ComplexVec h_d;
  ComplexVec h_r;
  ComplexMat g;

  Eigen::Index antennas() const { return h_d.size(); }
  Eigen::Index elements() const { return h_r.size(); }
};

struct Beamformer {
  ComplexVec omega;
  double power_w = 0.0;
};

enum class BeamformerKind { kUniform, kMrt };

std::string_view to_string(BeamformerKind kind);
BeamformerKind beamformer_kind_from_string(std::string_view name);

/// Linear power gain of a link of length d_m.
double path_gain_linear(double d_m, double exponent, const PathLossModel& model);

/// Draws every entry as sqrt(link gain) * CN(0, 1).
///
/// h_d, h_r and g use the sub-streams 0, 1, 2 of `rng`. Entries are drawn
/// element by element (g row-major), so realizations with more elements
/// extend, rather than replace, those with fewer.
ChannelRealization realize_channels(const Geometry& geom, const PathLossModel& model,
                                    Eigen::Index antennas, Eigen::Index elements,
                                    const numerics::SeededRng& rng);

/// Maximum-ratio transmission toward the direct link: sqrt(P) h_d / ||h_d||.
Beamformer mrt_beamformer(const ComplexVec& h_d, double power_w);

/// Equal-gain, co-phased weights sqrt(P / M) * (1, ..., 1).
Beamformer uniform_beamformer(Eigen::Index antennas, double power_w);

Beamformer make_beamformer(BeamformerKind kind, const ChannelRealization& ch, double power_w);

}  // namespace irsjam::channel
