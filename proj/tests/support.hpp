#pragma once

#include <cmath>
#include <complex>

#include "irsjam/channel.hpp"
#include "irsjam/jammer.hpp"
#include "irsjam/numerics.hpp"

namespace irsjam::testing {

// Received power by explicit summation, written independently of the library.
inline double direct_received_power(const channel::ChannelRealization& ch, const channel::Beamformer& bf,
                                    const RealVec& beta, const RealVec& theta) {
  Complex total{0.0, 0.0};
  for (Eigen::Index m = 0; m < ch.antennas(); ++m) total += std::conj(ch.h_d[m]) * bf.omega[m];
  for (Eigen::Index n = 0; n < ch.elements(); ++n) {
    Complex gw{0.0, 0.0};
    for (Eigen::Index m = 0; m < ch.antennas(); ++m) gw += ch.g(n, m) * bf.omega[m];
    total += std::conj(ch.h_r[n]) * beta[n] * std::polar(1.0, theta[n]) * gw;
  }
  return std::norm(total);
}

inline channel::ChannelRealization unit_scale_channel(numerics::SeededRng& rng, Eigen::Index m, Eigen::Index n) {
  channel::ChannelRealization ch;
  ch.h_d = numerics::sample_complex_gaussian(rng, m);
  ch.h_r = numerics::sample_complex_gaussian(rng, n);
  ch.g.resize(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) ch.g(i, j) = numerics::complex_gaussian(rng);
  return ch;
}

// Minimum of |sum a_n e^{j t_n} + psi|^2 over continuous phases: the largest
// modulus minus the others, floored at zero.
inline double polygon_minimum(const ComplexVec& alpha, Complex psi) {
  double total = std::abs(psi);
  double largest = std::abs(psi);
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    total += std::abs(alpha[i]);
    largest = std::max(largest, std::abs(alpha[i]));
  }
  const double gap = std::max(0.0, 2.0 * largest - total);
  return gap * gap;
}

}  // namespace irsjam::testing
