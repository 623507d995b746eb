#pragma once

// Transition-probability matrices between observables. Two nondegenerate
// Hermitian observables always give a doubly stochastic matrix; an oblique
// frame measured in a PVM's eigenstates generally does not.

#include "gqo/born_rule.hpp"

namespace gqo {

/// Row-stochastic matrix; row i conditions on outcome i of the preparing observable.
template <typename Real>
class TransitionMatrix {
 public:
  explicit TransitionMatrix(RealMatrix<Real> entries, Real tol = kDefaultTol<Real>) : p_(std::move(entries)) {
    if (p_.rows() == 0 || p_.rows() != p_.cols())
      throw Error(ErrorCode::InvalidTransitionMatrix, "transition matrix must be square and non-empty");
    for (Eigen::Index i = 0; i < p_.rows(); ++i) {
      for (Eigen::Index j = 0; j < p_.cols(); ++j)
        if (!(p_(i, j) >= -tol && p_(i, j) <= Real(1) + tol))
          throw Error(ErrorCode::InvalidTransitionMatrix, "entry outside [0, 1]");
      if (!(std::abs(p_.row(i).sum() - Real(1)) <= tol))
        throw Error(ErrorCode::InvalidTransitionMatrix, "row " + std::to_string(i) + " does not sum to 1");
    }
  }

  const RealMatrix<Real>& entries() const noexcept { return p_; }
  Eigen::Index size() const noexcept { return p_.rows(); }
  RealVector<Real> row_sums() const { return p_.rowwise().sum(); }
  RealVector<Real> column_sums() const { return p_.colwise().sum().transpose(); }

 private:
  RealMatrix<Real> p_;
};

using TransitionMatrixd = TransitionMatrix<double>;

/// p_ij = |<e_i^A, e_j^B>|^2.
template <typename Real>
TransitionMatrix<Real> transition_matrix(const Pvm<Real>& a, const Pvm<Real>& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "observables act on different dimensions");
  return TransitionMatrix<Real>((a.matrix().adjoint() * b.matrix()).cwiseAbs2());
}

/// Row i is the coefficient-form distribution of the frame's outcomes in the
/// i-th eigenstate of `b`.
template <typename Real>
TransitionMatrix<Real> frame_transition(const ObliqueFrame<Real>& a, const Pvm<Real>& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "observables act on different dimensions");
  RealMatrix<Real> p(b.dim(), a.dim());
  for (Eigen::Index i = 0; i < b.dim(); ++i)
    p.row(i) = prob_coeff(a, b.basis()[static_cast<std::size_t>(i)]).probs().transpose();
  return TransitionMatrix<Real>(std::move(p));
}

template <typename Real>
bool is_doubly_stochastic(const TransitionMatrix<Real>& p, Real tol = kDefaultTol<Real>) {
  return ((p.column_sums().array() - Real(1)).abs() <= tol).all();
}

}  // namespace gqo
