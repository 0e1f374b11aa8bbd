#pragma once

#include <vector>

#include "irsjam/channel.hpp"
#include "irsjam/numerics.hpp"

namespace irsjam::jammer {

/// Phase level indices k_n; element n applies the shift 2*pi*k_n / L.
using PhaseLevels = std::vector<int>;

inline constexpr int kMaxBits = 24;

int level_count(int bits);
double level_angle(int level, int bits);

/// Surface configuration: magnitudes in [0, 1] and phases on the uniform
/// grid of L = 2^bits levels. Phases are held as integer levels so the
/// grid is represented exactly.
class JammerState {
 public:
  JammerState(RealVec beta, PhaseLevels levels, int bits);

  /// beta = 1, every phase at level 0.
  static JammerState full_reflection(Eigen::Index elements, int bits);
  /// beta = 0, every phase at level 0.
  static JammerState switched_off(Eigen::Index elements, int bits);

  Eigen::Index size() const { return beta_.size(); }
  int bits() const { return bits_; }
  int levels_per_cycle() const { return level_count(bits_); }
  const RealVec& beta() const { return beta_; }
  const PhaseLevels& levels() const { return levels_; }

  RealVec theta() const;      ///< radians in [0, 2*pi)
  ComplexVec phasors() const; ///< e^{j theta_n}

  JammerState with_beta(RealVec beta) const;
  JammerState with_levels(PhaseLevels levels) const;

 private:
  RealVec beta_;
  PhaseLevels levels_;
  int bits_;
};

/// Coefficients (alpha, psi) for which the received power equals
/// |sum_n alpha_n e^{j theta_n} + psi|^2 at fixed magnitudes.
struct ReducedPhaseProblem {
  ComplexVec alpha;
  Complex psi;

  Eigen::Index size() const { return alpha.size(); }
  /// |sum_n alpha_n phasor_n + psi|^2
  double objective(const ComplexVec& phasors) const;
  double objective(const PhaseLevels& levels, int bits) const;
};

/// |(h_r^H diag(beta e^{j theta}) G + h_d^H) omega|^2, evaluated as written.
double received_power(const channel::ChannelRealization& ch, const channel::Beamformer& bf,
                      const JammerState& state);

/// alpha_n = conj(h_r[n]) * beta_n * (G omega)_n and psi = h_d^H omega.
ReducedPhaseProblem reduce_phase_problem(const channel::ChannelRealization& ch,
                                         const channel::Beamformer& bf, const RealVec& beta);

/// Nearest grid level under circular distance; exact ties go to the smaller
/// level index. Inputs may be any finite angle.
PhaseLevels quantize_phase(const RealVec& theta, int bits);

/// Circular distance between two angles, in [0, pi].
double circular_distance(double a, double b);

/// Throws DimensionError unless channel, beamformer and surface sizes agree.
void check_dimensions(const channel::ChannelRealization& ch, const channel::Beamformer& bf,
                      Eigen::Index elements);

}  // namespace irsjam::jammer
