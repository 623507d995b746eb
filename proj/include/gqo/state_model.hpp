#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gqo/operator_core.hpp"
#include "gqo/random.hpp"

namespace gqo {

/// Nonnegative, nonzero operator of finite trace. The stored operator is the
/// Hermitian part of the validated input and its trace is kept as a real.
template <typename Real>
class GeneralizedState {
 public:
  explicit GeneralizedState(const ComplexMatrix<Real>& op, Real tol = kDefaultTol<Real>) {
    require_square_finite(op, "state operator");
    if (!is_hermitian(op, tol)) throw Error(ErrorCode::NotHermitian, "state operator is not Hermitian");
    op_ = (op + op.adjoint()) / Real(2);
    if (!is_psd(op_, tol)) throw Error(ErrorCode::NotPsd, "state operator has a negative eigenvalue");
    const Complex<Real> tr = op.trace();
    if (std::abs(std::imag(tr)) > tol * norm_scale(op))
      throw Error(ErrorCode::InvalidState, "state trace is not real");
    trace_ = std::real(op_.trace());
    if (!(trace_ > kDegenerateNorm<Real> * kDegenerateNorm<Real>))
      throw Error(ErrorCode::InvalidState, "state trace must be strictly positive");
  }

  const ComplexMatrix<Real>& op() const noexcept { return op_; }
  Eigen::Index dim() const noexcept { return op_.rows(); }
  Real trace() const noexcept { return trace_; }

 private:
  ComplexMatrix<Real> op_;
  Real trace_{};
};

/// Generalized state with unit trace.
template <typename Real>
class DensityOperator : public GeneralizedState<Real> {
 public:
  explicit DensityOperator(const ComplexMatrix<Real>& op, Real tol = kDefaultTol<Real>)
      : GeneralizedState<Real>(op, tol) {
    if (std::abs(this->trace() - Real(1)) > tol)
      throw Error(ErrorCode::InvalidState, "density operator must have unit trace");
  }
};

using GeneralizedStated = GeneralizedState<double>;
using DensityOperatord = DensityOperator<double>;

/// rho_psi = psi psi*, trace |psi|^2; psi need not be normalized.
template <typename Real>
GeneralizedState<Real> pure_state(const StateVector<Real>& psi) {
  require_nonzero(psi);
  return GeneralizedState<Real>(psi * psi.adjoint());
}

template <typename Real>
DensityOperator<Real> normalize(const GeneralizedState<Real>& rho) {
  return DensityOperator<Real>(rho.op() / Complex<Real>(rho.trace()));
}

/// G G* / Tr(G G*) with G a dim x dim Ginibre matrix drawn from `seed`.
template <typename Real = double>
DensityOperator<Real> random_density(Eigen::Index dim, std::uint64_t seed) {
  if (dim < 1) throw Error(ErrorCode::DimMismatch, "dimension must be positive");
  Rng rng(seed);
  const ComplexMatrix<Real> g = rng.ginibre<Real>(dim, dim);
  const ComplexMatrix<Real> gg = g * g.adjoint();
  return DensityOperator<Real>(gg / gg.trace());
}

/// The dim^2 pure states |k><k|, then for each k < l the projectors onto
/// (|k> + |l>)/sqrt2 and (|k> + i|l>)/sqrt2. They span the Hermitian matrices.
template <typename Real = double>
std::vector<DensityOperator<Real>> tomographic_frame(Eigen::Index dim) {
  if (dim < 1) throw Error(ErrorCode::DimMismatch, "dimension must be positive");
  std::vector<DensityOperator<Real>> frame;
  frame.reserve(static_cast<std::size_t>(dim * dim));
  for (Eigen::Index k = 0; k < dim; ++k) {
    const StateVector<Real> e = basis_vector<Real>(dim, k);
    frame.emplace_back(e * e.adjoint());
  }
  const Real h = Real(1) / std::sqrt(Real(2));
  for (Eigen::Index k = 0; k < dim; ++k) {
    for (Eigen::Index l = k + 1; l < dim; ++l) {
      StateVector<Real> plus = StateVector<Real>::Zero(dim);
      plus(k) = h;
      plus(l) = h;
      frame.emplace_back(plus * plus.adjoint());
      StateVector<Real> plus_i = StateVector<Real>::Zero(dim);
      plus_i(k) = h;
      plus_i(l) = Complex<Real>(0, h);
      frame.emplace_back(plus_i * plus_i.adjoint());
    }
  }
  return frame;
}

}  // namespace gqo
