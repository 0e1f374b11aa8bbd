#include "irsjam/jammer.hpp"

#include <cmath>
#include <string>

namespace irsjam::jammer {

namespace {

void check_bits(int bits) {
  if (bits < 1 || bits > kMaxBits) {
    throw DomainError("phase resolution must be 1.." + std::to_string(kMaxBits) + " bits, got " +
                      std::to_string(bits));
  }
}

}  // namespace

int level_count(int bits) {
  check_bits(bits);
  return 1 << bits;
}

double level_angle(int level, int bits) {
  return kTwoPi * static_cast<double>(level) / static_cast<double>(level_count(bits));
}

JammerState::JammerState(RealVec beta, PhaseLevels levels, int bits)
    : beta_(std::move(beta)), levels_(std::move(levels)), bits_(bits) {
  const int count = level_count(bits_);
  numerics::require_size("phase levels", static_cast<Eigen::Index>(levels_.size()), beta_.size());
  for (Eigen::Index n = 0; n < beta_.size(); ++n) {
    if (!(beta_[n] >= 0.0 && beta_[n] <= 1.0)) {
      throw DomainError("reflection magnitude " + std::to_string(n) + " outside [0, 1]: " +
                        std::to_string(beta_[n]));
    }
  }
  for (int k : levels_) {
    if (k < 0 || k >= count) throw DomainError("phase level " + std::to_string(k) + " outside the grid");
  }
}

JammerState JammerState::full_reflection(Eigen::Index elements, int bits) {
  return {RealVec::Ones(elements), PhaseLevels(static_cast<std::size_t>(elements), 0), bits};
}

JammerState JammerState::switched_off(Eigen::Index elements, int bits) {
  return {RealVec::Zero(elements), PhaseLevels(static_cast<std::size_t>(elements), 0), bits};
}

RealVec JammerState::theta() const {
  RealVec out(size());
  for (Eigen::Index n = 0; n < size(); ++n) out[n] = level_angle(levels_[static_cast<std::size_t>(n)], bits_);
  return out;
}

ComplexVec JammerState::phasors() const {
  ComplexVec out(size());
  const RealVec angles = theta();
  for (Eigen::Index n = 0; n < size(); ++n) out[n] = std::polar(1.0, angles[n]);
  return out;
}

JammerState JammerState::with_beta(RealVec beta) const { return {std::move(beta), levels_, bits_}; }

JammerState JammerState::with_levels(PhaseLevels levels) const { return {beta_, std::move(levels), bits_}; }

double ReducedPhaseProblem::objective(const ComplexVec& phasors) const {
  numerics::require_size("phasors", phasors.size(), alpha.size());
  const Complex total = alpha.cwiseProduct(phasors).sum() + psi;
  return std::norm(total);
}

double ReducedPhaseProblem::objective(const PhaseLevels& levels, int bits) const {
  numerics::require_size("phase levels", static_cast<Eigen::Index>(levels.size()), alpha.size());
  const int count = level_count(bits);
  Complex total = psi;
  if (count <= 1024) {
    std::vector<Complex> table(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) table[static_cast<std::size_t>(k)] = std::polar(1.0, level_angle(k, bits));
    for (Eigen::Index n = 0; n < alpha.size(); ++n) {
      total += alpha[n] * table[static_cast<std::size_t>(levels[static_cast<std::size_t>(n)])];
    }
  } else {
    for (Eigen::Index n = 0; n < alpha.size(); ++n) {
      total += alpha[n] * std::polar(1.0, level_angle(levels[static_cast<std::size_t>(n)], bits));
    }
  }
  return std::norm(total);
}

void check_dimensions(const channel::ChannelRealization& ch, const channel::Beamformer& bf,
                      Eigen::Index elements) {
  numerics::require_size("beamformer", bf.omega.size(), ch.antennas());
  numerics::require_size("G rows", ch.g.rows(), ch.elements());
  numerics::require_size("G cols", ch.g.cols(), ch.antennas());
  numerics::require_size("surface elements", elements, ch.elements());
}

double received_power(const channel::ChannelRealization& ch, const channel::Beamformer& bf,
                      const JammerState& state) {
  check_dimensions(ch, bf, state.size());
  // Row vector h_r^H * Gamma * Theta_bar, then times G, plus h_d^H.
  const ComplexVec phasors = state.phasors();
  Eigen::RowVectorXcd reflect(ch.elements());
  for (Eigen::Index n = 0; n < ch.elements(); ++n) {
    reflect[n] = std::conj(ch.h_r[n]) * state.beta()[n] * phasors[n];
  }
  const Eigen::RowVectorXcd row = reflect * ch.g + ch.h_d.adjoint();
  return std::norm((row * bf.omega)(0, 0));
}

ReducedPhaseProblem reduce_phase_problem(const channel::ChannelRealization& ch,
                                         const channel::Beamformer& bf, const RealVec& beta) {
  check_dimensions(ch, bf, beta.size());
  const ComplexVec gw = ch.g * bf.omega;
  ReducedPhaseProblem out;
  out.alpha.resize(beta.size());
  for (Eigen::Index n = 0; n < beta.size(); ++n) out.alpha[n] = std::conj(ch.h_r[n]) * beta[n] * gw[n];
  out.psi = ch.h_d.dot(bf.omega);
  return out;
}

PhaseLevels quantize_phase(const RealVec& theta, int bits) {
  const int count = level_count(bits);
  const double step = kTwoPi / count;
  PhaseLevels out(static_cast<std::size_t>(theta.size()));
  for (Eigen::Index n = 0; n < theta.size(); ++n) {
    if (!std::isfinite(theta[n])) throw DomainError("cannot quantize a non-finite phase");
    double wrapped = std::fmod(theta[n], kTwoPi);
    if (wrapped < 0.0) wrapped += kTwoPi;
    const double position = wrapped / step;
    int lower = static_cast<int>(std::floor(position));
    if (lower >= count) lower = count - 1;
    const double frac = position - lower;
    int pick = lower;
    if (frac > 0.5) {
      pick = lower + 1;
    } else if (frac == 0.5 && lower == count - 1) {
      pick = count;  // tie between L-1 and 0 goes to 0
    }
    out[static_cast<std::size_t>(n)] = pick % count;
  }
  return out;
}

double circular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return d > M_PI ? kTwoPi - d : d;
}

}  // namespace irsjam::jammer
