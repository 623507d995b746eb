#pragma once

// Probability maps. For an effect family E and a (generalized) state rho the
// probability of an outcome set B is Tr(rho E(B)) / Tr(rho E(X)); the POVM
// map is the special case E(X) = I on unit-trace states, and the coefficient
// form |c_j|^2 / sum |c|^2 covers pure states measured against an oblique frame.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "gqo/observable_model.hpp"
#include "gqo/random.hpp"
#include "gqo/state_model.hpp"

namespace gqo {

template <typename Real>
class OutcomeDistribution {
 public:
  /// Accepts raw probabilities within [-tol, 1 + tol] summing to 1 within
  /// tol, then clamps into [0, 1] and renormalizes.
  OutcomeDistribution(Labels labels, RealVector<Real> raw, Real tol = kDefaultTol<Real>)
      : labels_(std::move(labels)), probs_(std::move(raw)) {
    if (static_cast<std::size_t>(probs_.size()) != labels_.size())
      throw Error(ErrorCode::DimMismatch, "distribution needs one probability per label");
    for (Eigen::Index j = 0; j < probs_.size(); ++j) {
      const Real p = probs_(j);
      if (!(p >= -tol && p <= Real(1) + tol))
        throw Error(ErrorCode::InvalidDistribution, "probability outside [0, 1]: " + std::to_string(double(p)));
      probs_(j) = std::clamp(p, Real(0), Real(1));
    }
    const Real sum = probs_.sum();
    if (!(std::abs(sum - Real(1)) <= tol))
      throw Error(ErrorCode::InvalidDistribution, "probabilities sum to " + std::to_string(double(sum)));
    probs_ /= sum;
  }

  const Labels& labels() const noexcept { return labels_; }
  const RealVector<Real>& probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return labels_.size(); }
  Real operator[](std::size_t j) const { return probs_(static_cast<Eigen::Index>(j)); }

  Real probability(const std::string& label) const {
    for (std::size_t j = 0; j < labels_.size(); ++j)
      if (labels_[j] == label) return (*this)[j];
    throw Error(ErrorCode::UnknownLabel, "no outcome labelled '" + label + "'");
  }

 private:
  Labels labels_;
  RealVector<Real> probs_;
};

using OutcomeDistributiond = OutcomeDistribution<double>;

/// |c_j(psi)|^2 / sum_k |c_k(psi)|^2 for the expansion psi = sum_j c_j e_j.
template <typename Real>
OutcomeDistribution<Real> prob_coeff(const ObliqueFrame<Real>& frame, const StateVector<Real>& psi) {
  const StateVector<Real> c = frame.coefficients(psi);
  const RealVector<Real> weights = c.cwiseAbs2();
  return OutcomeDistribution<Real>(frame.labels(), weights / weights.sum());
}

/// Tr(rho E(X)); strictly positive for every valid pair.
template <typename Real>
Real born_denominator(const EffectFamily<Real>& family, const GeneralizedState<Real>& rho) {
  if (family.dim() != rho.dim()) throw Error(ErrorCode::DimMismatch, "state and observable dimensions differ");
  const Real den = std::real(trace_product(rho.op(), family.total()));
  const Real floor = std::numeric_limits<Real>::epsilon() * std::numeric_limits<Real>::epsilon() *
                     rho.op().norm() * family.total().norm();
  if (!(den > floor))
    throw Error(ErrorCode::DegenerateDenominator, "Tr(rho E(X)) is not positive; invariants were violated");
  return den;
}

/// Tr(rho E_j) / Tr(rho E(X)), with numerator and denominator taken from the
/// same unnormalized rho.
template <typename Real>
OutcomeDistribution<Real> prob_effects(const EffectFamily<Real>& family, const GeneralizedState<Real>& rho) {
  const Real den = born_denominator(family, rho);
  RealVector<Real> probs(static_cast<Eigen::Index>(family.size()));
  for (std::size_t j = 0; j < family.size(); ++j)
    probs(static_cast<Eigen::Index>(j)) = std::real(trace_product(rho.op(), family.effect(j))) / den;
  return OutcomeDistribution<Real>(family.labels(), probs);
}

/// Tr(rho W_j).
template <typename Real>
OutcomeDistribution<Real> prob_povm(const Povm<Real>& povm, const DensityOperator<Real>& rho) {
  if (povm.dim() != rho.dim()) throw Error(ErrorCode::DimMismatch, "state and observable dimensions differ");
  RealVector<Real> probs(static_cast<Eigen::Index>(povm.size()));
  for (std::size_t j = 0; j < povm.size(); ++j)
    probs(static_cast<Eigen::Index>(j)) = std::real(trace_product(rho.op(), povm.effect(j)));
  return OutcomeDistribution<Real>(povm.labels(), probs);
}

/// Tr(rho E(B)) / Tr(rho E(X)) for the outcome set B.
template <typename Real>
Real event_probability(const EffectFamily<Real>& family, const GeneralizedState<Real>& rho,
                       const std::set<std::string>& event) {
  const Real den = born_denominator(family, rho);
  ComplexMatrix<Real> block = ComplexMatrix<Real>::Zero(family.dim(), family.dim());
  for (const auto& label : event) block += family.effect(family.index_of(label));
  return std::clamp(std::real(trace_product(rho.op(), block)) / den, Real(0), Real(1));
}

/// Counts of `n` i.i.d. outcomes. Each draw takes one uniform u in [0, 1) and
/// picks the first label j (in declared order) with u < cdf_j.
template <typename Real>
std::vector<std::uint64_t> sample_outcomes(const EffectFamily<Real>& family, const GeneralizedState<Real>& rho,
                                           std::uint64_t n, std::uint64_t seed) {
  const auto dist = prob_effects(family, rho);
  std::vector<double> cdf(dist.size());
  double acc = 0.0;
  std::size_t last_support = 0;
  for (std::size_t j = 0; j < dist.size(); ++j) {
    acc += static_cast<double>(dist[j]);
    cdf[j] = acc;
    if (dist[j] > Real(0)) last_support = j;
  }
  std::vector<std::uint64_t> counts(dist.size(), 0);
  Rng rng(seed);
  for (std::uint64_t draw = 0; draw < n; ++draw) {
    const double u = rng.uniform();
    std::size_t j = 0;
    while (j < cdf.size() && !(u < cdf[j])) ++j;
    ++counts[j < cdf.size() ? j : last_support];
  }
  return counts;
}

}  // namespace gqo
