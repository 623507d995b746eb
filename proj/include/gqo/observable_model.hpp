#pragma once

// Observables: oblique frames and their projectors, finite effect families
// whose total need not be the identity, POVMs, and nondegenerate PVMs.

#include <charconv>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gqo/operator_core.hpp"

namespace gqo {

using Labels = std::vector<std::string>;

/// Shortest decimal text that reads back as the same double.
inline std::string format_value(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

inline Labels default_labels(std::size_t n) {
  Labels labels;
  labels.reserve(n);
  for (std::size_t j = 0; j < n; ++j) labels.push_back(std::to_string(j));
  return labels;
}

inline void require_distinct_labels(const Labels& labels) {
  const std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) throw Error(ErrorCode::DuplicateLabels, "outcome labels must be distinct");
}

template <typename Real>
void require_distinct_values(const std::vector<Real>& values) {
  const std::set<Real> seen(values.begin(), values.end());
  if (seen.size() != values.size())
    throw Error(ErrorCode::DuplicateValues, "outcome values must be pairwise distinct (nondegenerate spectrum)");
}

template <typename Real>
Labels labels_from_values(const std::vector<Real>& values) {
  Labels labels;
  for (const Real v : values) labels.push_back(format_value(static_cast<double>(v)));
  return labels;
}

/// A basis of normalized, linearly independent, not necessarily orthogonal
/// vectors together with distinct real outcome values.
template <typename Real>
class ObliqueFrame {
 public:
  /// Empty `values` means 0, 1, ..., n-1; empty `labels` means the values
  /// printed in shortest round-trip form.
  explicit ObliqueFrame(std::vector<StateVector<Real>> vectors, std::vector<Real> values = {},
                        Labels labels = {}, Real tol = kDefaultTol<Real>)
      : vectors_(std::move(vectors)), values_(std::move(values)), labels_(std::move(labels)) {
    matrix_ = frame_matrix(std::span<const StateVector<Real>>(vectors_));
    for (std::size_t j = 0; j < vectors_.size(); ++j) {
      if (std::abs(vectors_[j].squaredNorm() - Real(1)) > tol)
        throw Error(ErrorCode::NotNormalized, "frame vector " + std::to_string(j) + " is not normalized");
    }
    if (values_.empty())
      for (std::size_t j = 0; j < vectors_.size(); ++j) values_.push_back(static_cast<Real>(j));
    if (values_.size() != vectors_.size())
      throw Error(ErrorCode::DimMismatch, "frame needs one outcome value per vector");
    require_distinct_values(values_);
    if (labels_.empty()) labels_ = labels_from_values(values_);
    if (labels_.size() != vectors_.size())
      throw Error(ErrorCode::DimMismatch, "frame needs one label per vector");
    require_distinct_labels(labels_);
  }

  Eigen::Index dim() const noexcept { return matrix_.rows(); }
  const std::vector<StateVector<Real>>& vectors() const noexcept { return vectors_; }
  const std::vector<Real>& values() const noexcept { return values_; }
  const Labels& labels() const noexcept { return labels_; }
  /// Frame vectors as columns.
  const ComplexMatrix<Real>& matrix() const noexcept { return matrix_; }
  ComplexMatrix<Real> gram() const { return matrix_.adjoint() * matrix_; }

  /// Dual frame {f_j} as columns, defined by F* D = I so that <e_k, f_j> = delta_jk.
  ComplexMatrix<Real> dual() const {
    return matrix_.adjoint().partialPivLu().solve(identity<Real>(dim()));
  }

  StateVector<Real> coefficients(const StateVector<Real>& psi) const { return expand_in_frame(vectors_, psi); }

 private:
  std::vector<StateVector<Real>> vectors_;
  std::vector<Real> values_;
  Labels labels_;
  ComplexMatrix<Real> matrix_;
};

/// Idempotent, generally non-self-adjoint operator.
template <typename Real>
class ObliqueProjector {
 public:
  explicit ObliqueProjector(ComplexMatrix<Real> op, Real tol = kDefaultTol<Real>) : op_(std::move(op)) {
    require_square_finite(op_, "projector");
    if ((op_ * op_ - op_).norm() > tol * norm_scale(op_))
      throw Error(ErrorCode::NotIdempotent, "projector is not idempotent");
  }

  const ComplexMatrix<Real>& op() const noexcept { return op_; }
  StateVector<Real> operator()(const StateVector<Real>& psi) const { return op_ * psi; }

 private:
  ComplexMatrix<Real> op_;
};

/// Finite family of Hermitian PSD effects whose total E(X) is positive
/// definite. Probabilities of a union of outcomes add, so E(B) for any set of
/// labels B is the sum of its members.
template <typename Real>
class EffectFamily {
 public:
  explicit EffectFamily(const std::vector<ComplexMatrix<Real>>& effects, Labels labels = {},
                        Real tol = kDefaultTol<Real>)
      : labels_(std::move(labels)) {
    if (effects.empty()) throw Error(ErrorCode::InvalidEffectFamily, "effect family is empty");
    const Eigen::Index dim = effects.front().rows();
    effects_.reserve(effects.size());
    for (std::size_t j = 0; j < effects.size(); ++j) {
      const auto& e = effects[j];
      const std::string what = "effect " + std::to_string(j);
      require_square_finite(e, what);
      if (e.rows() != dim) throw Error(ErrorCode::DimMismatch, what + " differs in dimension");
      if (!is_hermitian(e, tol)) throw Error(ErrorCode::NotHermitian, what + " is not Hermitian");
      effects_.push_back((e + e.adjoint()) / Real(2));
      if (!is_psd(effects_.back(), tol)) throw Error(ErrorCode::NotPsd, what + " is not positive semidefinite");
    }
    if (labels_.empty()) labels_ = default_labels(effects_.size());
    if (labels_.size() != effects_.size()) throw Error(ErrorCode::DimMismatch, "need one label per effect");
    require_distinct_labels(labels_);
    total_ = ComplexMatrix<Real>::Zero(dim, dim);
    for (const auto& e : effects_) total_ += e;
    const Real min_eig = eig_hermitian(total_, tol).min_eigenvalue();
    if (!(min_eig > tol * total_.norm()))
      throw Error(ErrorCode::InvalidEffectFamily, "total E(X) must be positive definite");
  }

  std::size_t size() const noexcept { return effects_.size(); }
  Eigen::Index dim() const noexcept { return total_.rows(); }
  const std::vector<ComplexMatrix<Real>>& effects() const noexcept { return effects_; }
  const ComplexMatrix<Real>& effect(std::size_t j) const { return effects_.at(j); }
  const Labels& labels() const noexcept { return labels_; }
  /// E(X), the sum of all effects.
  const ComplexMatrix<Real>& total() const noexcept { return total_; }

  std::size_t index_of(const std::string& label) const {
    for (std::size_t j = 0; j < labels_.size(); ++j)
      if (labels_[j] == label) return j;
    throw Error(ErrorCode::UnknownLabel, "no outcome labelled '" + label + "'");
  }

  EffectFamily scaled(Real c) const {
    std::vector<ComplexMatrix<Real>> out;
    for (const auto& e : effects_) out.push_back(e * c);
    return EffectFamily(out, labels_);
  }

 private:
  std::vector<ComplexMatrix<Real>> effects_;
  Labels labels_;
  ComplexMatrix<Real> total_;
};

/// Effect family whose total is the identity.
template <typename Real>
class Povm : public EffectFamily<Real> {
 public:
  explicit Povm(const std::vector<ComplexMatrix<Real>>& effects, Labels labels = {}, Real tol = kDefaultTol<Real>)
      : EffectFamily<Real>(effects, std::move(labels), tol) {
    if ((this->total() - identity<Real>(this->dim())).norm() > tol)
      throw Error(ErrorCode::NotPovm, "effects do not sum to the identity");
  }

  explicit Povm(const EffectFamily<Real>& family, Real tol = kDefaultTol<Real>)
      : Povm(family.effects(), family.labels(), tol) {}
};

using ObliqueFramed = ObliqueFrame<double>;
using EffectFamilyd = EffectFamily<double>;
using Povmd = Povm<double>;

template <typename Real>
bool is_povm(const EffectFamily<Real>& family, Real tol = kDefaultTol<Real>) {
  return (family.total() - identity<Real>(family.dim())).norm() <= tol;
}

/// Nondegenerate projection-valued measure: an orthonormal eigenbasis with
/// distinct real eigenvalues.
template <typename Real>
class Pvm {
 public:
  Pvm(std::vector<StateVector<Real>> basis, std::vector<Real> values, Labels labels = {},
      Real tol = kDefaultTol<Real>)
      : basis_(std::move(basis)), values_(std::move(values)), labels_(std::move(labels)) {
    if (basis_.empty()) throw Error(ErrorCode::NotOrthonormal, "basis is empty");
    const auto dim = static_cast<Eigen::Index>(basis_.size());
    ComplexMatrix<Real> f(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
      const auto& v = basis_[static_cast<std::size_t>(j)];
      if (v.size() != dim) throw Error(ErrorCode::NotOrthonormal, "basis must contain dim vectors of length dim");
      if (!all_finite(v)) throw Error(ErrorCode::NonFinite, "basis vector has a NaN or infinite entry");
      f.col(j) = v;
    }
    if ((f.adjoint() * f - identity<Real>(dim)).norm() > tol)
      throw Error(ErrorCode::NotOrthonormal, "basis Gram matrix is not the identity");
    if (values_.size() != basis_.size()) throw Error(ErrorCode::DimMismatch, "need one value per basis vector");
    require_distinct_values(values_);
    if (labels_.empty()) labels_ = labels_from_values(values_);
    if (labels_.size() != basis_.size()) throw Error(ErrorCode::DimMismatch, "need one label per basis vector");
    require_distinct_labels(labels_);
    matrix_ = std::move(f);
  }

  Eigen::Index dim() const noexcept { return matrix_.rows(); }
  const std::vector<StateVector<Real>>& basis() const noexcept { return basis_; }
  const std::vector<Real>& values() const noexcept { return values_; }
  const Labels& labels() const noexcept { return labels_; }
  const ComplexMatrix<Real>& matrix() const noexcept { return matrix_; }

  /// The self-adjoint operator sum_j y_j e_j e_j*.
  ComplexMatrix<Real> observable() const {
    ComplexMatrix<Real> a = ComplexMatrix<Real>::Zero(dim(), dim());
    for (std::size_t j = 0; j < basis_.size(); ++j) a += values_[j] * (basis_[j] * basis_[j].adjoint());
    return a;
  }

  Povm<Real> effects() const {
    std::vector<ComplexMatrix<Real>> out;
    for (const auto& e : basis_) out.push_back(e * e.adjoint());
    return Povm<Real>(out, labels_);
  }

  ObliqueFrame<Real> frame() const { return ObliqueFrame<Real>(basis_, values_, labels_); }

 private:
  std::vector<StateVector<Real>> basis_;
  std::vector<Real> values_;
  Labels labels_;
  ComplexMatrix<Real> matrix_;
};

using Pvmd = Pvm<double>;

template <typename Real>
Pvm<Real> pvm_from_orthonormal(std::vector<StateVector<Real>> basis, std::vector<Real> values,
                               Real tol = kDefaultTol<Real>) {
  return Pvm<Real>(std::move(basis), std::move(values), {}, tol);
}

/// pi_j = e_j f_j*, so that pi_j psi = c_j(psi) e_j.
template <typename Real>
std::vector<ObliqueProjector<Real>> frame_projectors(const ObliqueFrame<Real>& frame) {
  const ComplexMatrix<Real> dual = frame.dual();
  std::vector<ObliqueProjector<Real>> out;
  for (Eigen::Index j = 0; j < frame.dim(); ++j)
    out.emplace_back(frame.matrix().col(j) * dual.col(j).adjoint());
  return out;
}

/// M_j = pi_j* pi_j, labelled like the frame.
template <typename Real>
EffectFamily<Real> frame_effects(const ObliqueFrame<Real>& frame) {
  std::vector<ComplexMatrix<Real>> effects;
  for (const auto& pi : frame_projectors(frame)) effects.push_back(pi.op().adjoint() * pi.op());
  return EffectFamily<Real>(effects, frame.labels());
}

/// Sums effects over each block of a partition of the labels. A block's label
/// is its members joined by '|'.
template <typename Real>
EffectFamily<Real> coarse_grain(const EffectFamily<Real>& family, const std::vector<Labels>& partition) {
  std::vector<bool> used(family.size(), false);
  std::vector<ComplexMatrix<Real>> effects;
  Labels labels;
  for (const auto& block : partition) {
    if (block.empty()) throw Error(ErrorCode::InvalidPartition, "partition has an empty block");
    ComplexMatrix<Real> sum = ComplexMatrix<Real>::Zero(family.dim(), family.dim());
    std::string name;
    for (const auto& label : block) {
      std::size_t j = 0;
      try {
        j = family.index_of(label);
      } catch (const Error&) {
        throw Error(ErrorCode::InvalidPartition, "partition mentions unknown label '" + label + "'");
      }
      if (used[j]) throw Error(ErrorCode::InvalidPartition, "label '" + label + "' appears in two blocks");
      used[j] = true;
      sum += family.effect(j);
      name += (name.empty() ? "" : "|") + label;
    }
    effects.push_back(std::move(sum));
    labels.push_back(std::move(name));
  }
  for (std::size_t j = 0; j < used.size(); ++j)
    if (!used[j]) throw Error(ErrorCode::InvalidPartition, "label '" + family.labels()[j] + "' is not covered");
  return EffectFamily<Real>(effects, labels);
}

}  // namespace gqo
