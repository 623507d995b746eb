#pragma once

// Deciding whether the probability map of a generalized observable,
//   rho -> Tr(rho E_j) / Tr(rho E(X)),
// agrees on all density operators with the affine map rho -> Tr(rho W_j) of
// some POVM W.
//
// The candidate W is pinned by linear reconstruction over a spanning set of
// pure states. It is accepted only if it is a POVM and reproduces the map;
// the exact part of that check compares the quadratic form
// Tr(H W_j) Tr(H E(X)) with Tr(H E_j) Tr(H) on a Hermitian basis, which is the
// homogenized identity on the trace-one hyperplane. A rejected candidate is
// backed by an explicit pair of states whose midpoint breaks affinity.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gqo/born_rule.hpp"

namespace gqo {

/// Probabilities for one outcome at two states and at their equal mixture.
template <typename Real>
struct AffinityWitness {
  DensityOperator<Real> first;
  DensityOperator<Real> second;
  DensityOperator<Real> midpoint;
  std::size_t outcome{};
  Real p_first{};
  Real p_second{};
  Real p_midpoint{};

  Real gap() const { return std::abs(p_midpoint - (p_first + p_second) / Real(2)); }
};

enum class CertificateKind { ProbabilityMismatch, NotPsd, NotComplete, PolarizationMismatch };

constexpr std::string_view to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::ProbabilityMismatch: return "ProbabilityMismatch";
    case CertificateKind::NotPsd: return "NotPsd";
    case CertificateKind::NotComplete: return "NotComplete";
    case CertificateKind::PolarizationMismatch: return "PolarizationMismatch";
  }
  return "Unknown";
}

/// First failed check of a candidate. For ProbabilityMismatch `expected` is
/// p_E(j|rho) and `actual` is Tr(rho W_j); for NotPsd `actual` is the minimum
/// eigenvalue; otherwise `actual` is the size of the violation.
template <typename Real>
struct Certificate {
  CertificateKind kind{};
  std::size_t outcome{};
  std::optional<DensityOperator<Real>> state;
  Real expected{};
  Real actual{};
};

template <typename Real>
struct VerificationResult {
  bool ok = false;
  std::optional<Certificate<Real>> certificate;
};

enum class Representability { Representable, NotRepresentable };

constexpr std::string_view to_string(Representability status) {
  return status == Representability::Representable ? "Representable" : "NotRepresentable";
}

template <typename Real>
struct RepresentabilityVerdict {
  Representability status{};
  std::optional<Povm<Real>> povm;
  std::optional<AffinityWitness<Real>> witness;
  std::optional<Certificate<Real>> certificate;
};

template <typename Real>
struct DecideOptions {
  std::uint64_t seed = 0;
  std::size_t verify_trials = 64;
  std::size_t witness_trials = 256;
  /// Candidate eigenvalue, completeness, and agreement tolerance.
  Real tol = Real(1e-9);
  /// Gaps above this certify non-representability; gaps in (tol, significance]
  /// are reported as indeterminate.
  Real significance = Real(1e-6);
};

/// For each outcome j, the unique Hermitian W_j with Tr(rho_m W_j) = p_E(j|rho_m)
/// over every state rho_m of tomographic_frame(dim).
template <typename Real>
std::vector<ComplexMatrix<Real>> reconstruct_candidate(const EffectFamily<Real>& family) {
  const Eigen::Index dim = family.dim();
  const Eigen::Index n = dim * dim;
  const auto probes = tomographic_frame<Real>(dim);
  const auto basis = hermitian_basis<Real>(dim);

  RealMatrix<Real> design(n, n);
  RealMatrix<Real> rhs(n, static_cast<Eigen::Index>(family.size()));
  for (Eigen::Index m = 0; m < n; ++m) {
    const auto& rho = probes[static_cast<std::size_t>(m)];
    for (Eigen::Index a = 0; a < n; ++a)
      design(m, a) = std::real(trace_product(rho.op(), basis[static_cast<std::size_t>(a)]));
    const auto dist = prob_effects(family, rho);
    for (std::size_t j = 0; j < family.size(); ++j) rhs(m, static_cast<Eigen::Index>(j)) = dist[j];
  }

  Eigen::FullPivLU<RealMatrix<Real>> lu(design);
  if (!lu.isInvertible())
    throw Error(ErrorCode::SingularReconstruction, "probe states do not span the Hermitian matrices");
  const RealMatrix<Real> coords = lu.solve(rhs);

  std::vector<ComplexMatrix<Real>> candidate;
  for (std::size_t j = 0; j < family.size(); ++j) {
    ComplexMatrix<Real> w = ComplexMatrix<Real>::Zero(dim, dim);
    for (Eigen::Index a = 0; a < n; ++a)
      w += coords(a, static_cast<Eigen::Index>(j)) * basis[static_cast<std::size_t>(a)];
    candidate.push_back(std::move(w));
  }
  return candidate;
}

/// Checks, in order: agreement with the generalized map at the maximally
/// mixed state, the probe states and `trials` random densities; positivity of
/// every W_j; completeness sum_j W_j = I; and the exact quadratic identity on
/// a Hermitian basis. Returns the first failure.
template <typename Real>
VerificationResult<Real> verify_candidate(const EffectFamily<Real>& family,
                                          const std::vector<ComplexMatrix<Real>>& candidate, std::size_t trials,
                                          std::uint64_t seed, Real tol) {
  const Eigen::Index dim = family.dim();
  if (candidate.size() != family.size())
    throw Error(ErrorCode::DimMismatch, "candidate needs one operator per outcome");
  for (const auto& w : candidate)
    if (w.rows() != dim || w.cols() != dim) throw Error(ErrorCode::DimMismatch, "candidate operator dimension");

  auto agrees = [&](const DensityOperator<Real>& rho) -> std::optional<Certificate<Real>> {
    const auto dist = prob_effects(family, rho);
    for (std::size_t j = 0; j < family.size(); ++j) {
      const Real affine = std::real(trace_product(rho.op(), candidate[j]));
      if (!(std::abs(affine - dist[j]) <= tol))
        return Certificate<Real>{CertificateKind::ProbabilityMismatch, j, rho, dist[j], affine};
    }
    return std::nullopt;
  };

  if (auto c = agrees(DensityOperator<Real>(identity<Real>(dim) / Complex<Real>(Real(dim))))) return {false, c};
  for (const auto& rho : tomographic_frame<Real>(dim))
    if (auto c = agrees(rho)) return {false, c};
  for (std::size_t k = 0; k < trials; ++k)
    if (auto c = agrees(random_density<Real>(dim, stream_seed(seed, k)))) return {false, c};

  ComplexMatrix<Real> sum = ComplexMatrix<Real>::Zero(dim, dim);
  for (std::size_t j = 0; j < candidate.size(); ++j) {
    const auto& w = candidate[j];
    if (!is_hermitian(w, tol)) return {false, Certificate<Real>{CertificateKind::NotPsd, j, std::nullopt, 0, 0}};
    const Real min_eig = eig_hermitian(w, tol).min_eigenvalue();
    if (min_eig < -tol * norm_scale(w))
      return {false, Certificate<Real>{CertificateKind::NotPsd, j, std::nullopt, Real(0), min_eig}};
    sum += w;
  }
  const Real completeness = (sum - identity<Real>(dim)).norm();
  if (!(completeness <= tol))
    return {false, Certificate<Real>{CertificateKind::NotComplete, 0, std::nullopt, Real(0), completeness}};

  // Symmetric bilinear form of H -> Tr(H W_j) Tr(H T) - Tr(H E_j) Tr(H).
  const auto basis = hermitian_basis<Real>(dim);
  const std::size_t nb = basis.size();
  std::vector<Real> tr_total(nb), tr_id(nb);
  for (std::size_t a = 0; a < nb; ++a) {
    tr_total[a] = std::real(trace_product(basis[a], family.total()));
    tr_id[a] = std::real(basis[a].trace());
  }
  for (std::size_t j = 0; j < family.size(); ++j) {
    std::vector<Real> tr_w(nb), tr_e(nb);
    for (std::size_t a = 0; a < nb; ++a) {
      tr_w[a] = std::real(trace_product(basis[a], candidate[j]));
      tr_e[a] = std::real(trace_product(basis[a], family.effect(j)));
    }
    const Real scale = candidate[j].norm() * family.total().norm() + family.effect(j).norm() * std::sqrt(Real(dim));
    for (std::size_t a = 0; a < nb; ++a) {
      for (std::size_t b = a; b < nb; ++b) {
        const Real form = (tr_w[a] * tr_total[b] + tr_w[b] * tr_total[a]) - (tr_e[a] * tr_id[b] + tr_e[b] * tr_id[a]);
        if (!(std::abs(form) <= tol * std::max(Real(1), scale)))
          return {false, Certificate<Real>{CertificateKind::PolarizationMismatch, j, std::nullopt, Real(0), form}};
      }
    }
  }
  return {true, std::nullopt};
}

/// Largest midpoint-affinity gap over pairs of probe states (in frame order)
/// followed by `trials` pairs of random densities. Earlier pairs win ties.
template <typename Real>
AffinityWitness<Real> find_affinity_witness(const EffectFamily<Real>& family, std::size_t trials,
                                            std::uint64_t seed, Real tol = Real(1e-9)) {
  const Eigen::Index dim = family.dim();
  std::optional<AffinityWitness<Real>> best;
  Real best_gap = 0;

  auto consider = [&](const DensityOperator<Real>& a, const DensityOperator<Real>& b) {
    const DensityOperator<Real> mid((a.op() + b.op()) / Complex<Real>(2));
    const auto pa = prob_effects(family, a);
    const auto pb = prob_effects(family, b);
    const auto pm = prob_effects(family, mid);
    for (std::size_t j = 0; j < family.size(); ++j) {
      const Real gap = std::abs(pm[j] - (pa[j] + pb[j]) / Real(2));
      if (gap > best_gap + Real(1e-12) * std::max(Real(1), best_gap)) {
        best_gap = gap;
        best = AffinityWitness<Real>{a, b, mid, j, pa[j], pb[j], pm[j]};
      }
    }
  };

  const auto probes = tomographic_frame<Real>(dim);
  for (std::size_t a = 0; a < probes.size(); ++a)
    for (std::size_t b = a + 1; b < probes.size(); ++b) consider(probes[a], probes[b]);
  for (std::size_t k = 0; k < trials; ++k)
    consider(random_density<Real>(dim, stream_seed(seed, 2 * k)), random_density<Real>(dim, stream_seed(seed, 2 * k + 1)));

  if (!best || !(best_gap > tol))
    throw Error(ErrorCode::NoWitnessFound, "probability map is affine on every tested pair");
  return *best;
}

template <typename Real>
RepresentabilityVerdict<Real> decide(const EffectFamily<Real>& family, const DecideOptions<Real>& options = {}) {
  const auto candidate = reconstruct_candidate(family);
  const auto check = verify_candidate(family, candidate, options.verify_trials, options.seed, options.tol);
  if (check.ok) {
    RepresentabilityVerdict<Real> verdict{Representability::Representable, std::nullopt, std::nullopt, std::nullopt};
    verdict.povm.emplace(candidate, family.labels(), options.tol);
    return verdict;
  }

  std::optional<AffinityWitness<Real>> witness;
  try {
    witness = find_affinity_witness(family, options.witness_trials, options.seed, options.tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoWitnessFound) throw;
  }
  if (!witness || !(witness->gap() > options.significance))
    throw Error(ErrorCode::Indeterminate,
                "candidate POVM failed (" + std::string(to_string(check.certificate->kind)) +
                    ") but the largest affinity gap " +
                    std::to_string(witness ? static_cast<double>(witness->gap()) : 0.0) +
                    " is not significant");
  return {Representability::NotRepresentable, std::nullopt, witness, check.certificate};
}

}  // namespace gqo
