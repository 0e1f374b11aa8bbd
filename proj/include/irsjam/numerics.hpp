#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Dense>

#include "irsjam/errors.hpp"

namespace irsjam {

using Complex = std::complex<double>;
using ComplexVec = Eigen::VectorXcd;
using ComplexMat = Eigen::MatrixXcd;
using RealVec = Eigen::VectorXd;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

namespace numerics {

/// Throws DimensionError unless `got == want`.
void require_size(std::string_view what, Eigen::Index got, Eigen::Index want);

/// (A + A^H) / 2. Throws DimensionError for non-square input.
ComplexMat hermitian_part(const ComplexMat& a);

/// Eigenpairs of a Hermitian matrix, eigenvalues sorted in descending order.
struct HermitianEig {
  RealVec values;
  ComplexMat vectors;  ///< unitary; column k pairs with values[k]
};

/// Eigendecomposition of the Hermitian part of `a`.
HermitianEig hermitian_eig(const ComplexMat& a);

/// Returns B = U * diag(sqrt(lambda)) with B * B^H = A for a Hermitian PSD A.
///
/// Eigenvalues down to -1e-6 * ||A||_2 are treated as rounding noise and
/// clamped to zero; anything more negative raises DomainError.
ComplexMat psd_sqrt(const ComplexMat& a);
ComplexMat psd_sqrt(const HermitianEig& eig);

/// Deterministic random stream that can be split into independent
/// sub-streams by key. A child depends only on the parent's seed and the
/// key, never on how many samples the parent has drawn.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);

  SeededRng split(std::uint64_t key) const;

  std::uint64_t seed() const noexcept { return seed_; }

  double normal();
  double uniform();  ///< in [0, 1)

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// One CN(0, 1) draw: real and imaginary parts are independent N(0, 1/2).
Complex complex_gaussian(SeededRng& rng);

/// n i.i.d. CN(0, 1) entries. n == 0 yields an empty vector.
ComplexVec sample_complex_gaussian(SeededRng& rng, Eigen::Index n);

double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

}  // namespace numerics
}  // namespace irsjam
