#include <doctest.h>

#include <cmath>
#include <numbers>

#include "irsjam/errors.hpp"
#include "irsjam/jammer.hpp"
#include "support.hpp"

using namespace irsjam;
using namespace irsjam::jammer;
using numerics::SeededRng;

TEST_CASE("phase grid") {
  CHECK(level_count(1) == 2);
  CHECK(level_count(5) == 32);
  CHECK(level_angle(1, 2) == doctest::Approx(std::numbers::pi / 2));
  CHECK_THROWS_AS(level_count(0), DomainError);
  CHECK_THROWS_AS(level_count(kMaxBits + 1), DomainError);
}

TEST_CASE("JammerState validation") {
  CHECK_THROWS_AS(JammerState(RealVec::Constant(2, 1.5), PhaseLevels{0, 0}, 2), DomainError);
  CHECK_THROWS_AS(JammerState(RealVec::Constant(2, 0.5), PhaseLevels{0, 4}, 2), DomainError);
  CHECK_THROWS_AS(JammerState(RealVec::Constant(2, 0.5), PhaseLevels{0}, 2), DimensionError);
  const JammerState s(RealVec::Constant(2, 0.5), PhaseLevels{1, 3}, 2);
  CHECK(s.theta()[1] == doctest::Approx(3 * std::numbers::pi / 2));
  CHECK(std::abs(s.phasors()[0] - Complex(0.0, 1.0)) < 1e-15);
}

TEST_CASE("received power with the surface switched off") {
  SeededRng rng(1);
  const auto ch = testing::unit_scale_channel(rng, 3, 4);
  const auto bf = channel::uniform_beamformer(3, 2.0);
  const double expected = std::norm(ch.h_d.dot(bf.omega));
  CHECK(received_power(ch, bf, JammerState::switched_off(4, 3)) == doctest::Approx(expected));
}

TEST_CASE("perfect destructive addition") {
  channel::ChannelRealization ch;
  ch.h_d = ComplexVec::Constant(1, Complex(0.5, 0.2));
  ch.h_r = ComplexVec::Constant(1, 1.0);
  ch.g = ComplexMat::Constant(1, 1, -std::conj(ch.h_d[0]));
  const auto bf = channel::uniform_beamformer(1, 1.0);
  CHECK(received_power(ch, bf, JammerState::full_reflection(1, 1)) <= 1e-30);
}

TEST_CASE("received power agrees with direct summation") {
  SeededRng rng(3);
  const auto ch = testing::unit_scale_channel(rng, 4, 9);
  const auto bf = channel::mrt_beamformer(ch.h_d, 1.0);
  for (int t = 0; t < 20; ++t) {
    RealVec beta(9);
    PhaseLevels levels(9);
    for (int n = 0; n < 9; ++n) {
      beta[n] = rng.uniform();
      levels[static_cast<std::size_t>(n)] = static_cast<int>(rng.uniform() * 8);
    }
    const JammerState s(beta, levels, 3);
    const double want = testing::direct_received_power(ch, bf, beta, s.theta());
    CHECK(std::abs(received_power(ch, bf, s) - want) <= 1e-12 * want);
  }
}

TEST_CASE("reduced problem") {
  SUBCASE("beta = 0 removes the reflected terms") {
    SeededRng rng(5);
    const auto ch = testing::unit_scale_channel(rng, 2, 3);
    const auto bf = channel::uniform_beamformer(2, 1.0);
    const auto p = reduce_phase_problem(ch, bf, RealVec::Zero(3));
    CHECK(p.alpha.norm() == 0.0);
    CHECK(p.objective(ComplexVec::Ones(3)) == doctest::Approx(std::norm(p.psi)));
  }
  SUBCASE("hand product") {
    channel::ChannelRealization ch;
    ch.h_d = ComplexVec::Zero(1);
    ch.h_r = ComplexVec::Constant(1, 2.0);
    ch.g = ComplexMat::Constant(1, 1, 0.5);
    channel::Beamformer bf{ComplexVec::Ones(1), 1.0};
    const auto p = reduce_phase_problem(ch, bf, RealVec::Ones(1));
    CHECK(std::abs(p.alpha[0] - Complex(1.0, 0.0)) < 1e-15);
  }
  SUBCASE("equivalence over random phases") {
    SeededRng rng(6);
    const auto ch = testing::unit_scale_channel(rng, 3, 7);
    const auto bf = channel::uniform_beamformer(3, 1.0);
    RealVec beta(7);
    for (int n = 0; n < 7; ++n) beta[n] = rng.uniform();
    const auto p = reduce_phase_problem(ch, bf, beta);
    for (int t = 0; t < 100; ++t) {
      PhaseLevels levels(7);
      for (auto& k : levels) k = static_cast<int>(rng.uniform() * 16);
      const JammerState s(beta, levels, 4);
      const double want = received_power(ch, bf, s);
      CHECK(std::abs(p.objective(s.phasors()) - want) <= 1e-12 * want);
      CHECK(std::abs(p.objective(levels, 4) - want) <= 1e-12 * want);
    }
  }
}

TEST_CASE("quantize_phase examples") {
  RealVec theta(4);
  theta << 1.0, 6.0, std::numbers::pi, -std::numbers::pi / 2;
  const auto q = quantize_phase(theta, 2);
  CHECK(q == PhaseLevels{1, 0, 2, 3});

  RealVec ties(2);
  ties << std::numbers::pi / 4, 7 * std::numbers::pi / 4;
  CHECK(quantize_phase(ties, 2) == PhaseLevels{0, 0});
  RealVec bad(1);
  bad << std::nan("");
  CHECK_THROWS_AS(quantize_phase(bad, 2), DomainError);
}

TEST_CASE("quantization error is at most pi / L") {
  SeededRng rng(77);
  for (int bits = 1; bits <= 6; ++bits) {
    const int count = 2000;
    RealVec theta(count);
    for (int i = 0; i < count; ++i) theta[i] = (rng.uniform() - 0.5) * 8.0 * std::numbers::pi;
    const auto q = quantize_phase(theta, bits);
    const double bound = std::numbers::pi / level_count(bits);
    for (int i = 0; i < count; ++i) {
      CHECK(circular_distance(theta[i], level_angle(q[static_cast<std::size_t>(i)], bits)) <= bound + 1e-12);
    }
  }
}

TEST_CASE("circular distance") {
  CHECK(circular_distance(0.1, kTwoPi - 0.1) == doctest::Approx(0.2));
  CHECK(circular_distance(0.0, std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(circular_distance(1.0, 1.0 + 4 * kTwoPi) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("dimension checks") {
  SeededRng rng(2);
  const auto ch = testing::unit_scale_channel(rng, 2, 3);
  CHECK_THROWS_AS(received_power(ch, channel::uniform_beamformer(3, 1.0), JammerState::full_reflection(3, 1)),
                  DimensionError);
  CHECK_THROWS_AS(received_power(ch, channel::uniform_beamformer(2, 1.0), JammerState::full_reflection(4, 1)),
                  DimensionError);
}
