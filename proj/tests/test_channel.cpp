#include <doctest.h>

#include <cmath>

#include "irsjam/channel.hpp"
#include "irsjam/errors.hpp"

using namespace irsjam;
using namespace irsjam::channel;

TEST_CASE("path gain") {
  const PathLossModel model;
  CHECK(path_gain_linear(1.0, 2.8, model) == doctest::Approx(1e-3));
  CHECK(path_gain_linear(1.0, 3.5, model) == doctest::Approx(1e-3));
  CHECK(path_gain_linear(10.0, 3.5, model) == doctest::Approx(3.1623e-7).epsilon(1e-4));
  PathLossModel unity;
  unity.ref_loss_db = 0.0;
  unity.ref_distance_m = 2.0;
  CHECK(path_gain_linear(2.0, 3.0, unity) == doctest::Approx(1.0));
  CHECK_THROWS_AS(path_gain_linear(0.0, 2.0, model), DomainError);
}

TEST_CASE("default geometry distances") {
  const Geometry g;
  CHECK(g.lt_lr() == doctest::Approx(10.0));
  CHECK(g.lt_irs() == doctest::Approx(std::sqrt(29.0)));
  CHECK(g.irs_lr() == doctest::Approx(std::sqrt(29.0)));
  Geometry bad;
  bad.irs = bad.lr;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("path loss validation") {
  PathLossModel m;
  m.ref_distance_m = 0.0;
  CHECK_THROWS_AS(m.validate(), DomainError);
  PathLossModel low;
  low.exp_direct = 1.5;
  CHECK_NOTHROW(low.validate());
  CHECK(low.warnings().size() == 1);
}

TEST_CASE("realizations are deterministic and nest by element count") {
  const Geometry geom;
  const PathLossModel model;
  const numerics::SeededRng rng(12);
  const auto a = realize_channels(geom, model, 4, 10, rng);
  const auto b = realize_channels(geom, model, 4, 10, rng);
  CHECK(a.h_d == b.h_d);
  CHECK(a.h_r == b.h_r);
  CHECK(a.g == b.g);
  CHECK(a.g.rows() == 10);
  CHECK(a.g.cols() == 4);

  const auto big = realize_channels(geom, model, 4, 20, rng);
  CHECK(big.h_d == a.h_d);
  CHECK(big.h_r.head(10) == a.h_r);
  CHECK(big.g.topRows(10) == a.g);
}

TEST_CASE("scalar realization") {
  const auto ch = realize_channels(Geometry{}, PathLossModel{}, 1, 1, numerics::SeededRng(2));
  CHECK(ch.h_d.size() == 1);
  CHECK(ch.h_r.size() == 1);
  CHECK(std::isfinite(std::abs(ch.g(0, 0))));
  CHECK_THROWS_AS(realize_channels(Geometry{}, PathLossModel{}, 0, 1, numerics::SeededRng(2)), DomainError);
}

TEST_CASE("channel second moments match the path gains") {
  const Geometry geom;
  const PathLossModel model;
  const int draws = 10000;
  const numerics::SeededRng root(2024);
  double direct = 0.0, reflect = 0.0, incident = 0.0;
  for (int t = 0; t < draws; ++t) {
    const auto ch = realize_channels(geom, model, 8, 150, root.split(static_cast<std::uint64_t>(t)));
    direct += ch.h_d.squaredNorm() / 8.0;
    reflect += ch.h_r.squaredNorm() / 150.0;
    incident += ch.g.squaredNorm() / 1200.0;
  }
  CHECK(direct / draws == doctest::Approx(path_gain_linear(10.0, 3.5, model)).epsilon(0.05));
  CHECK(reflect / draws == doctest::Approx(path_gain_linear(std::sqrt(29.0), 2.8, model)).epsilon(0.05));
  CHECK(incident / draws == doctest::Approx(path_gain_linear(std::sqrt(29.0), 2.8, model)).epsilon(0.05));
}

TEST_CASE("MRT beamformer") {
  SUBCASE("basis vector") {
    ComplexVec h = ComplexVec::Zero(3);
    h[0] = 1.0;
    const auto bf = mrt_beamformer(h, 1.0);
    CHECK((bf.omega - h).norm() < 1e-15);
  }
  SUBCASE("phase is preserved") {
    ComplexVec h = ComplexVec::Zero(2);
    h[0] = Complex(1.0, 1.0);
    const auto bf = mrt_beamformer(h, 1.0);
    CHECK(std::abs(bf.omega[0] - Complex(1.0, 1.0) / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(bf.omega[1]) == 0.0);
  }
  SUBCASE("power normalization") {
    numerics::SeededRng rng(4);
    const auto bf = mrt_beamformer(numerics::sample_complex_gaussian(rng, 8), 2.0);
    CHECK(std::abs(bf.omega.squaredNorm() - 2.0) <= 1e-9);
  }
  CHECK_THROWS_AS(mrt_beamformer(ComplexVec::Zero(2), 1.0), DomainError);
}

TEST_CASE("uniform beamformer") {
  const auto bf = uniform_beamformer(8, 1.0);
  CHECK(bf.omega.squaredNorm() == doctest::Approx(1.0));
  CHECK(bf.omega[3] == Complex(std::sqrt(1.0 / 8.0), 0.0));
  CHECK(beamformer_kind_from_string("MRT") == BeamformerKind::kMrt);
  CHECK(beamformer_kind_from_string("uniform") == BeamformerKind::kUniform);
  CHECK_THROWS_AS(beamformer_kind_from_string("zf"), DomainError);
}
