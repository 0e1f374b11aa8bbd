#include <doctest.h>

#include <cmath>

#include "irsjam/errors.hpp"
#include "irsjam/numerics.hpp"

using namespace irsjam;
using numerics::SeededRng;

namespace {

ComplexMat random_hermitian(SeededRng& rng, Eigen::Index n) {
  ComplexMat a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = numerics::complex_gaussian(rng);
  return (a + a.adjoint()) / 2.0;
}

}  // namespace

TEST_CASE("hermitian_eig on the identity") {
  const auto eig = numerics::hermitian_eig(ComplexMat::Identity(2, 2));
  CHECK(eig.values[0] == doctest::Approx(1.0));
  CHECK(eig.values[1] == doctest::Approx(1.0));
  CHECK((eig.vectors.adjoint() * eig.vectors - ComplexMat::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("hermitian_eig sorts descending") {
  ComplexMat a = ComplexMat::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 3.0;
  const auto eig = numerics::hermitian_eig(a);
  CHECK(eig.values[0] == doctest::Approx(3.0));
  CHECK(eig.values[1] == doctest::Approx(1.0));
  CHECK(std::abs(eig.vectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(eig.vectors(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig reconstructs a random matrix") {
  SeededRng rng(42);
  const ComplexMat a = random_hermitian(rng, 5);
  const auto eig = numerics::hermitian_eig(a);
  const ComplexMat back = eig.vectors * eig.values.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  CHECK((back - a).norm() <= 1e-8);
  for (Eigen::Index k = 1; k < 5; ++k) CHECK(eig.values[k - 1] >= eig.values[k]);
}

TEST_CASE("hermitian_part rejects non-square input") {
  CHECK_THROWS_AS(numerics::hermitian_part(ComplexMat::Zero(2, 3)), DimensionError);
}

TEST_CASE("psd_sqrt") {
  SUBCASE("identity") {
    const ComplexMat b = numerics::psd_sqrt(ComplexMat::Identity(3, 3));
    CHECK((b * b.adjoint() - ComplexMat::Identity(3, 3)).norm() < 1e-12);
  }
  SUBCASE("diag(4, 0)") {
    ComplexMat a = ComplexMat::Zero(2, 2);
    a(0, 0) = 4.0;
    const ComplexMat b = numerics::psd_sqrt(a);
    CHECK(b.col(0).norm() == doctest::Approx(2.0));
    CHECK(b.col(1).norm() == doctest::Approx(0.0));
  }
  SUBCASE("rank one") {
    SeededRng rng(8);
    const ComplexVec mu = numerics::sample_complex_gaussian(rng, 6);
    const ComplexMat a = mu * mu.adjoint();
    const ComplexMat b = numerics::psd_sqrt(a);
    CHECK((b * b.adjoint() - a).norm() <= 1e-7);
  }
  SUBCASE("indefinite input") {
    ComplexMat a = ComplexMat::Identity(2, 2);
    a(1, 1) = -1.0;
    CHECK_THROWS_AS(numerics::psd_sqrt(a), DomainError);
  }
  SUBCASE("tiny negative eigenvalues are clamped") {
    ComplexMat a = ComplexMat::Identity(2, 2);
    a(1, 1) = -1e-9;
    const ComplexMat b = numerics::psd_sqrt(a);
    CHECK(b.col(1).norm() == doctest::Approx(0.0));
  }
}

TEST_CASE("seeded streams are reproducible") {
  SeededRng a(3), b(3);
  const ComplexVec x = numerics::sample_complex_gaussian(a, 4);
  const ComplexVec y = numerics::sample_complex_gaussian(b, 4);
  CHECK(x == y);

  SeededRng one(5);
  SeededRng two(5);
  for (int i = 0; i < 17; ++i) two.normal();
  SeededRng c1 = one.split(9), c2 = two.split(9);
  CHECK(c1.normal() == c2.normal());
  CHECK(one.split(1).seed() != one.split(2).seed());
}

TEST_CASE("complex Gaussian moments") {
  SeededRng rng(7);
  const Eigen::Index n = 100000;
  const ComplexVec z = numerics::sample_complex_gaussian(rng, n);
  const Complex mean = z.mean();
  double var = 0.0, var_re = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    var += std::norm(z[i] - mean);
    var_re += std::pow(z[i].real() - mean.real(), 2);
  }
  var /= static_cast<double>(n - 1);
  var_re /= static_cast<double>(n - 1);
  CHECK(std::abs(mean) <= 0.02);
  CHECK(var >= 0.98);
  CHECK(var <= 1.02);
  CHECK(var_re == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("single draws and empty vectors") {
  SeededRng rng(1);
  const ComplexVec one = numerics::sample_complex_gaussian(rng, 1);
  REQUIRE(one.size() == 1);
  CHECK(std::isfinite(one[0].real()));
  CHECK(std::isfinite(one[0].imag()));
  CHECK(numerics::sample_complex_gaussian(rng, 0).size() == 0);
}

TEST_CASE("unit conversions") {
  CHECK(numerics::dbm_to_watts(30.0) == doctest::Approx(1.0));
  CHECK(numerics::dbm_to_watts(-60.0) == doctest::Approx(1e-9));
  CHECK(numerics::watts_to_dbm(1e-3) == doctest::Approx(0.0));
  CHECK(numerics::db_to_linear(-30.0) == doctest::Approx(1e-3));
  CHECK(numerics::linear_to_db(100.0) == doctest::Approx(20.0));
}
