#pragma once

// Seeded random generation with a fully pinned algorithm so that other
// implementations can reproduce every draw:
//   engine    std::mt19937_64 seeded with the 64-bit seed
//   uniform   (next() >> 11) * 2^-53, in [0, 1)
//   gaussian  one Box-Muller pair per complex entry:
//             r = sqrt(-2 ln(1 - u1)), re = r cos(2 pi u2), im = r sin(2 pi u2)
//   streams   stream k of seed s is seeded with splitmix64(s + (k + 1) * 0x9E3779B97F4A7C15)

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

#include "gqo/operator_core.hpp"

namespace gqo {

inline constexpr std::string_view kRngAlgorithm = "mt19937_64";

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of the independent stream `index` derived from `seed`.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  template <typename Real = double>
  Complex<Real> complex_gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {static_cast<Real>(r * std::cos(theta)), static_cast<Real>(r * std::sin(theta))};
  }

  /// Column-major fill of a rows x cols complex Gaussian (Ginibre) matrix.
  template <typename Real = double>
  ComplexMatrix<Real> ginibre(Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix<Real> g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = complex_gaussian<Real>();
    return g;
  }

  template <typename Real = double>
  StateVector<Real> gaussian_vector(Eigen::Index dim) {
    StateVector<Real> v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = complex_gaussian<Real>();
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

/// Haar-distributed unitary: QR of a Ginibre matrix with R's diagonal phases
/// folded back into Q.
template <typename Real = double>
ComplexMatrix<Real> haar_unitary(Eigen::Index dim, std::uint64_t seed) {
  Rng rng(seed);
  const ComplexMatrix<Real> g = rng.ginibre<Real>(dim, dim);
  Eigen::HouseholderQR<ComplexMatrix<Real>> qr(g);
  ComplexMatrix<Real> q = qr.householderQ() * ComplexMatrix<Real>::Identity(dim, dim);
  const ComplexMatrix<Real>& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Complex<Real> d = r(k, k);
    const Real mag = std::abs(d);
    if (mag > Real(0)) q.col(k) *= d / mag;
  }
  return q;
}

}  // namespace gqo
