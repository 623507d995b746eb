#pragma once

// Dense complex linear algebra shared by every other module. All routines are
// templated on the real scalar type; complex entries are std::complex<Real>.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "gqo/error.hpp"

namespace gqo {

template <typename Real>
using Complex = std::complex<Real>;
template <typename Real>
using ComplexMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using StateVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
template <typename Real>
using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

using ComplexMatrixd = ComplexMatrix<double>;
using StateVectord = StateVector<double>;

/// Relative tolerance used by every check that does not receive one.
template <typename Real>
inline constexpr Real kDefaultTol = Real(1e-10);
/// Frames whose column matrix is worse conditioned than this are rejected.
template <typename Real>
inline constexpr Real kMaxFrameCondition = Real(1e8);
/// A vector at or below this norm counts as zero.
template <typename Real>
inline constexpr Real kDegenerateNorm = Real(1e-12);

template <typename Derived>
typename Derived::RealScalar norm_scale(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::RealScalar;
  return std::max(Real(1), a.norm());
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(std::real(a(i, j))) || !std::isfinite(std::imag(a(i, j)))) return false;
  return true;
}

/// Throws unless `a` is a non-empty square matrix of finite entries.
template <typename Derived>
void require_square_finite(const Eigen::MatrixBase<Derived>& a, const std::string& what = "matrix") {
  if (a.rows() == 0 || a.rows() != a.cols())
    throw Error(ErrorCode::NotSquare, what + " must be a non-empty square matrix, got " +
                                          std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  if (!all_finite(a)) throw Error(ErrorCode::NonFinite, what + " has a NaN or infinite entry");
}

template <typename Derived>
void require_nonzero(const Eigen::MatrixBase<Derived>& v, const std::string& what = "state vector") {
  using Real = typename Derived::RealScalar;
  if (v.size() == 0) throw Error(ErrorCode::ZeroVector, what + " is empty");
  if (!all_finite(v)) throw Error(ErrorCode::NonFinite, what + " has a NaN or infinite entry");
  if (!(v.norm() > kDegenerateNorm<Real>))
    throw Error(ErrorCode::ZeroVector, what + " has norm at or below the degenerate threshold");
}

template <typename Derived>
auto adjoint(const Eigen::MatrixBase<Derived>& a) {
  return a.adjoint().eval();
}

template <typename Derived>
typename Derived::Scalar trace(const Eigen::MatrixBase<Derived>& a) {
  return a.trace();
}

/// Hilbert-Schmidt pairing Tr(A* B).
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar hs_inner(const Eigen::MatrixBase<DerivedA>& a,
                                   const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimMismatch, "hs_inner operands differ in shape");
  return a.conjugate().cwiseProduct(b).sum();
}

/// Tr(AB) without forming the product.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar trace_product(const Eigen::MatrixBase<DerivedA>& a,
                                        const Eigen::MatrixBase<DerivedB>& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw Error(ErrorCode::DimMismatch, "trace_product operands differ in shape");
  return a.cwiseProduct(b.transpose()).sum();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a,
                  typename Derived::RealScalar tol = kDefaultTol<typename Derived::RealScalar>) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).norm() <= tol * norm_scale(a);
}

template <typename Real>
struct HermitianEigensystem {
  RealVector<Real> eigenvalues;     // ascending
  ComplexMatrix<Real> eigenvectors; // orthonormal columns

  ComplexMatrix<Real> reconstruct() const {
    return eigenvectors * eigenvalues.template cast<Complex<Real>>().asDiagonal() * eigenvectors.adjoint();
  }

  Real min_eigenvalue() const { return eigenvalues(0); }
  Real max_eigenvalue() const { return eigenvalues(eigenvalues.size() - 1); }
};

/// Eigendecomposition of the Hermitian part (A + A*)/2 once A passes the
/// Hermiticity check.
template <typename Derived>
HermitianEigensystem<typename Derived::RealScalar> eig_hermitian(
    const Eigen::MatrixBase<Derived>& a,
    typename Derived::RealScalar tol = kDefaultTol<typename Derived::RealScalar>) {
  using Real = typename Derived::RealScalar;
  require_square_finite(a, "operator");
  if (!is_hermitian(a, tol)) throw Error(ErrorCode::NotHermitian, "operator is not Hermitian within tolerance");
  const ComplexMatrix<Real> herm = (a + a.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> solver(herm);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

template <typename Derived>
bool is_psd(const Eigen::MatrixBase<Derived>& a,
            typename Derived::RealScalar tol = kDefaultTol<typename Derived::RealScalar>) {
  const auto sys = eig_hermitian(a, tol);
  return sys.min_eigenvalue() >= -tol * norm_scale(a);
}

/// 2-norm condition number; infinite for a singular matrix.
template <typename Derived>
typename Derived::RealScalar condition_number(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::RealScalar;
  Eigen::JacobiSVD<ComplexMatrix<Real>> svd(a.eval());
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return Real(0);
  const Real smallest = sv(sv.size() - 1);
  if (!(smallest > Real(0))) return std::numeric_limits<Real>::infinity();
  return sv(0) / smallest;
}

/// Stacks frame vectors as the columns of a square matrix, rejecting ragged,
/// zero, or nearly dependent families.
template <typename Real>
ComplexMatrix<Real> frame_matrix(std::span<const StateVector<Real>> vectors) {
  const auto dim = static_cast<Eigen::Index>(vectors.size());
  if (dim == 0) throw Error(ErrorCode::SingularFrame, "frame is empty");
  ComplexMatrix<Real> f(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const auto& v = vectors[static_cast<std::size_t>(j)];
    if (v.size() != dim)
      throw Error(ErrorCode::SingularFrame,
                  "frame must have exactly dim vectors of length dim (square system)");
    require_nonzero(v, "frame vector " + std::to_string(j));
    f.col(j) = v;
  }
  const Real cond = condition_number(f);
  if (!(cond <= kMaxFrameCondition<Real>))
    throw Error(ErrorCode::SingularFrame, "frame matrix is rank deficient (condition number " +
                                              std::to_string(static_cast<double>(cond)) + ")");
  return f;
}

/// Coefficients c with psi = sum_j c_j e_j.
template <typename Real>
StateVector<Real> expand_in_frame(std::span<const StateVector<Real>> vectors, const StateVector<Real>& psi) {
  const ComplexMatrix<Real> f = frame_matrix(vectors);
  require_nonzero(psi);
  if (psi.size() != f.rows()) throw Error(ErrorCode::DimMismatch, "state vector does not match frame dimension");
  return f.partialPivLu().solve(psi);
}

template <typename Real>
StateVector<Real> expand_in_frame(const std::vector<StateVector<Real>>& vectors, const StateVector<Real>& psi) {
  return expand_in_frame(std::span<const StateVector<Real>>(vectors), psi);
}

template <typename Real>
ComplexMatrix<Real> identity(Eigen::Index dim) {
  return ComplexMatrix<Real>::Identity(dim, dim);
}

template <typename Real>
StateVector<Real> basis_vector(Eigen::Index dim, Eigen::Index k) {
  StateVector<Real> v = StateVector<Real>::Zero(dim);
  v(k) = Real(1);
  return v;
}

/// Orthonormal basis (under the Hilbert-Schmidt pairing) of the real space of
/// dim x dim Hermitian matrices: the diagonal units E_kk, then for every k < l
/// the pair (E_kl + E_lk)/sqrt2 and i(E_lk - E_kl)/sqrt2.
template <typename Real>
std::vector<ComplexMatrix<Real>> hermitian_basis(Eigen::Index dim) {
  std::vector<ComplexMatrix<Real>> basis;
  basis.reserve(static_cast<std::size_t>(dim * dim));
  for (Eigen::Index k = 0; k < dim; ++k) {
    ComplexMatrix<Real> b = ComplexMatrix<Real>::Zero(dim, dim);
    b(k, k) = Real(1);
    basis.push_back(std::move(b));
  }
  const Real h = Real(1) / std::sqrt(Real(2));
  for (Eigen::Index k = 0; k < dim; ++k) {
    for (Eigen::Index l = k + 1; l < dim; ++l) {
      ComplexMatrix<Real> x = ComplexMatrix<Real>::Zero(dim, dim);
      x(k, l) = h;
      x(l, k) = h;
      basis.push_back(std::move(x));
      ComplexMatrix<Real> y = ComplexMatrix<Real>::Zero(dim, dim);
      y(k, l) = Complex<Real>(0, -h);
      y(l, k) = Complex<Real>(0, h);
      basis.push_back(std::move(y));
    }
  }
  return basis;
}

/// Real coordinates of a Hermitian matrix in hermitian_basis(dim).
template <typename Derived>
RealVector<typename Derived::RealScalar> hermitian_coordinates(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::RealScalar;
  const auto basis = hermitian_basis<Real>(a.rows());
  RealVector<Real> x(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) x(static_cast<Eigen::Index>(i)) = std::real(hs_inner(basis[i], a));
  return x;
}

}  // namespace gqo
