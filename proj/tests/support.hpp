#pragma once

// Test-only generators and oracles. The oracles use std::normal_distribution
// and plain Eigen products so they share no code path with the library
// routines they check.

#include <random>
#include <vector>

#include "gqo/gqo.hpp"

namespace gqo::test {

using Cd = std::complex<double>;
using Mat = ComplexMatrixd;
using Vec = StateVectord;

inline Mat diag(std::initializer_list<double> entries) {
  Mat m = Mat::Zero(static_cast<Eigen::Index>(entries.size()), static_cast<Eigen::Index>(entries.size()));
  Eigen::Index k = 0;
  for (double v : entries) m(k, k) = v, ++k;
  return m;
}

inline Vec ket(std::initializer_list<Cd> entries) {
  Vec v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index k = 0;
  for (Cd z : entries) v(k++) = z;
  return v;
}

inline Mat pauli_x() { return (Mat(2, 2) << 0, 1, 1, 0).finished(); }
inline Mat pauli_y() { return (Mat(2, 2) << 0, Cd(0, -1), Cd(0, 1), 0).finished(); }
inline Mat pauli_z() { return (Mat(2, 2) << 1, 0, 0, -1).finished(); }

/// The qubit observable E0 = 2|0><0|, E1 = |1><1|.
inline EffectFamilyd skewed_qubit_family() { return EffectFamilyd({diag({2, 0}), diag({0, 1})}); }

/// Frame {|0>, (|0>+|1>)/sqrt2}.
inline ObliqueFramed skewed_frame() {
  const double h = 1.0 / std::sqrt(2.0);
  return ObliqueFramed({ket({1, 0}), ket({h, h})});
}

class Gen {
 public:
  explicit Gen(unsigned seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }

  Mat matrix(Eigen::Index rows, Eigen::Index cols) {
    Mat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = Cd(normal(), normal());
    return m;
  }

  Vec vector(Eigen::Index dim) { return matrix(dim, 1).col(0); }

  Mat hermitian(Eigen::Index dim) {
    const Mat g = matrix(dim, dim);
    return (g + g.adjoint()) / 2.0;
  }

  /// Unit-trace PSD matrix: a random convex mixture of random pure states.
  Mat density(Eigen::Index dim) {
    Mat rho = Mat::Zero(dim, dim);
    double total = 0;
    for (Eigen::Index k = 0; k < dim + 1; ++k) {
      const Vec v = vector(dim).normalized();
      const double w = uniform() + 1e-3;
      rho += w * v * v.adjoint();
      total += w;
    }
    return rho / total;
  }

  std::vector<Vec> frame_vectors(Eigen::Index dim) {
    for (;;) {
      std::vector<Vec> vs;
      Mat f(dim, dim);
      for (Eigen::Index j = 0; j < dim; ++j) {
        vs.push_back(vector(dim).normalized());
        f.col(j) = vs.back();
      }
      Eigen::JacobiSVD<Mat> svd(f);
      const auto& s = svd.singularValues();
      if (s(0) / s(dim - 1) < 1e4) return vs;
    }
  }

  std::vector<Vec> orthonormal_basis(Eigen::Index dim) {
    Eigen::HouseholderQR<Mat> qr(matrix(dim, dim));
    const Mat q = qr.householderQ() * Mat::Identity(dim, dim);
    std::vector<Vec> out;
    for (Eigen::Index j = 0; j < dim; ++j) out.push_back(q.col(j));
    return out;
  }

  /// E_j = A_j* A_j, rescaled so |E(X)|_F = 1.
  std::vector<Mat> generic_effects(Eigen::Index dim, std::size_t n) {
    std::vector<Mat> es;
    Mat total = Mat::Zero(dim, dim);
    for (std::size_t j = 0; j < n; ++j) {
      const Mat a = matrix(dim, dim);
      es.push_back(a.adjoint() * a);
      total += es.back();
    }
    for (auto& e : es) e /= total.norm();
    return es;
  }

  /// W_j = S^-1/2 A_j* A_j S^-1/2 with S = sum_j A_j* A_j.
  std::vector<Mat> povm_effects(Eigen::Index dim, std::size_t n) {
    const auto raw = generic_effects(dim, n);
    Mat total = Mat::Zero(dim, dim);
    for (const auto& e : raw) total += e;
    Eigen::SelfAdjointEigenSolver<Mat> es(total);
    const Mat inv_sqrt = es.operatorInverseSqrt();
    std::vector<Mat> out;
    for (const auto& e : raw) {
      const Mat w = inv_sqrt * e * inv_sqrt;
      out.push_back((w + w.adjoint()) / 2.0);
    }
    return out;
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Generalized Born probability computed directly from the definition.
inline double oracle_probability(const std::vector<Mat>& effects, const Mat& rho, std::size_t j) {
  Mat total = Mat::Zero(rho.rows(), rho.cols());
  for (const auto& e : effects) total += e;
  return (rho * effects[j]).trace().real() / (rho * total).trace().real();
}

/// Largest midpoint-affinity gap over `pairs` random pairs of densities.
inline double oracle_affinity_gap(const std::vector<Mat>& effects, std::size_t pairs, unsigned seed) {
  Gen gen(seed);
  const Eigen::Index dim = effects.front().rows();
  Mat total = Mat::Zero(dim, dim);
  for (const auto& e : effects) total += e;
  auto probs = [&](const Mat& rho) {
    std::vector<double> p;
    const double den = (rho * total).trace().real();
    for (const auto& e : effects) p.push_back((rho * e).trace().real() / den);
    return p;
  };
  double worst = 0;
  for (std::size_t k = 0; k < pairs; ++k) {
    const Mat a = gen.density(dim), b = gen.density(dim);
    const auto pa = probs(a), pb = probs(b), pm = probs((a + b) / 2.0);
    for (std::size_t j = 0; j < effects.size(); ++j) worst = std::max(worst, std::abs(pm[j] - (pa[j] + pb[j]) / 2));
  }
  return worst;
}

/// Closed-form solution of the 2x2 system [a b; c d] x = r by Cramer's rule.
inline std::array<Cd, 2> cramer2(Cd a, Cd b, Cd c, Cd d, Cd r0, Cd r1) {
  const Cd det = a * d - b * c;
  return {(r0 * d - b * r1) / det, (a * r1 - c * r0) / det};
}

}  // namespace gqo::test
