#include "irsjam/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace irsjam::numerics {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void require_size(std::string_view what, Eigen::Index got, Eigen::Index want) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": expected size " + std::to_string(want) + ", got " +
                         std::to_string(got));
  }
}

ComplexMat hermitian_part(const ComplexMat& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("hermitian matrix must be square, got " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  }
  return (a + a.adjoint()) * 0.5;
}

HermitianEig hermitian_eig(const ComplexMat& a) {
  const ComplexMat h = hermitian_part(a);
  const Eigen::Index n = h.rows();
  if (n == 0) return {RealVec(0), ComplexMat(0, 0)};

  Eigen::SelfAdjointEigenSolver<ComplexMat> solver(h);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("hermitian eigensolver failed", std::nan(""), 0);
  }
  // Eigen sorts ascending.
  HermitianEig out{solver.eigenvalues().reverse(), solver.eigenvectors().rowwise().reverse()};
  return out;
}

ComplexMat psd_sqrt(const HermitianEig& eig) {
  const Eigen::Index n = eig.values.size();
  if (n == 0) return ComplexMat(0, 0);
  const double scale = eig.values.cwiseAbs().maxCoeff();
  const double min_value = eig.values.minCoeff();
  if (min_value < -1e-6 * scale) {
    throw DomainError("matrix is not positive semidefinite: min eigenvalue " +
                      std::to_string(min_value) + " vs norm " + std::to_string(scale));
  }
  RealVec root(n);
  for (Eigen::Index k = 0; k < n; ++k) root[k] = std::sqrt(std::max(eig.values[k], 0.0));
  return eig.vectors * root.asDiagonal();
}

ComplexMat psd_sqrt(const ComplexMat& a) { return psd_sqrt(hermitian_eig(a)); }

SeededRng::SeededRng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

SeededRng SeededRng::split(std::uint64_t key) const {
  return SeededRng(splitmix64(seed_ ^ splitmix64(key ^ 0x5851f42d4c957f2dULL)));
}

double SeededRng::normal() { return normal_(engine_); }

double SeededRng::uniform() { return uniform_(engine_); }

Complex complex_gaussian(SeededRng& rng) {
  const double re = rng.normal();
  const double im = rng.normal();
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

ComplexVec sample_complex_gaussian(SeededRng& rng, Eigen::Index n) {
  ComplexVec out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = complex_gaussian(rng);
  return out;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

}  // namespace irsjam::numerics
