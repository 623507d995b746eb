#include "doctest.h"

#include "support.hpp"

using namespace gqo;
using namespace gqo::test;

TEST_CASE("OutcomeDistribution clamps round-off and rejects real violations") {
  const OutcomeDistributiond d({"a", "b"}, (RealVector<double>(2) << -1e-12, 1 + 1e-12).finished());
  CHECK(d[0] == 0.0);
  CHECK(d[1] == doctest::Approx(1.0));
  CHECK(d.probability("b") == d[1]);
  CHECK_THROWS_AS(OutcomeDistributiond({"a", "b"}, (RealVector<double>(2) << -0.1, 1.1).finished()), Error);
  CHECK_THROWS_AS(OutcomeDistributiond({"a", "b"}, (RealVector<double>(2) << 0.5, 0.6).finished()), Error);
  CHECK_THROWS_AS(d.probability("c"), Error);
}

TEST_CASE("prob_coeff") {
  SUBCASE("orthonormal basis reproduces the ordinary Born rule") {
    Gen gen(31);
    for (int k = 0; k < 50; ++k) {
      const Eigen::Index dim = 1 + k % 4;
      const auto basis = gen.orthonormal_basis(dim);
      const Vec psi = gen.vector(dim).normalized();
      const auto d = prob_coeff(ObliqueFramed(basis), psi);
      for (std::size_t j = 0; j < basis.size(); ++j) CHECK(std::abs(d[j] - std::norm(basis[j].dot(psi))) <= 1e-12);
    }
  }
  SUBCASE("skewed frame, psi = |1>") {
    // |c|^2 = (1, 2) from the Cramer oracle.
    const auto c = cramer2(1, 1 / std::sqrt(2.0), 0, 1 / std::sqrt(2.0), 0, 1);
    const double w0 = std::norm(c[0]), w1 = std::norm(c[1]);
    const auto d = prob_coeff(skewed_frame(), ket({0, 1}));
    CHECK(std::abs(d[0] - w0 / (w0 + w1)) <= 1e-12);
    CHECK(std::abs(d[1] - w1 / (w0 + w1)) <= 1e-12);
    CHECK(std::abs(d[0] - 1.0 / 3.0) <= 1e-12);
    CHECK(std::abs(d[1] - 2.0 / 3.0) <= 1e-12);
  }
  SUBCASE("homogeneous in psi") {
    Gen gen(32);
    const ObliqueFramed frame(gen.frame_vectors(3));
    const Vec psi = gen.vector(3);
    const auto a = prob_coeff(frame, psi), b = prob_coeff(frame, Vec(5.0 * psi));
    CHECK((a.probs() - b.probs()).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(prob_coeff(skewed_frame(), ket({0, 0})), Error);
    CHECK_THROWS_AS(prob_coeff(skewed_frame(), ket({0, 0, 1})), Error);
  }
}

TEST_CASE("prob_effects") {
  const auto e = skewed_qubit_family();
  const auto p1 = prob_effects(e, GeneralizedStated(diag({1, 0})));
  CHECK(std::abs(p1[0] - 1.0) <= 1e-12);
  CHECK(std::abs(p1[1]) <= 1e-12);
  const auto p3 = prob_effects(e, GeneralizedStated(diag({0.5, 0.5})));
  CHECK(std::abs(p3[0] - 2.0 / 3.0) <= 1e-12);
  CHECK(std::abs(p3[1] - 1.0 / 3.0) <= 1e-12);
  CHECK(born_denominator(e, GeneralizedStated(diag({0.5, 0.5}))) == doctest::Approx(1.5));

  CHECK_THROWS_AS(prob_effects(e, GeneralizedStated(diag({1, 0, 0}))), Error);

  Gen gen(33);
  for (int k = 0; k < 100; ++k) {
    const Eigen::Index dim = 1 + k % 4;
    const auto effects = gen.generic_effects(dim, 1 + std::size_t(k % 3));
    const EffectFamilyd fam(effects);
    const Mat rho = gen.density(dim);
    const auto d = prob_effects(fam, GeneralizedStated(rho));
    CHECK(std::abs(d.probs().sum() - 1.0) <= 1e-10);
    for (std::size_t j = 0; j < fam.size(); ++j) CHECK(std::abs(d[j] - oracle_probability(effects, rho, j)) <= 1e-12);
    // Scale invariance in the state and in the observable.
    for (double c : {1e-6, 1.0, 1e6}) {
      const auto ds = prob_effects(fam, GeneralizedStated(c * rho));
      CHECK((ds.probs() - d.probs()).cwiseAbs().maxCoeff() <= 1e-10);
      const auto de = prob_effects(fam.scaled(c), GeneralizedStated(rho));
      CHECK((de.probs() - d.probs()).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("prob_povm agrees with prob_effects on POVMs") {
  const Povmd z({diag({1, 0}), diag({0, 1})});
  const auto d = prob_povm(z, DensityOperatord(diag({0.3, 0.7})));
  CHECK(d[0] == doctest::Approx(0.3));
  CHECK(d[1] == doctest::Approx(0.7));
  const Povmd half({Mat(Mat::Identity(2, 2) / 2.0), Mat(Mat::Identity(2, 2) / 2.0)});
  const auto h = prob_povm(half, random_density(2, 9));
  CHECK(h[0] == doctest::Approx(0.5));

  Gen gen(34);
  double worst = 0;
  for (int k = 0; k < 100; ++k) {
    const Eigen::Index dim = 2 + k % 3;
    const Povmd w(gen.povm_effects(dim, 3));
    const DensityOperatord rho(gen.density(dim));
    const auto a = prob_povm(w, rho), b = prob_effects(w, rho);
    worst = std::max(worst, (a.probs() - b.probs()).cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("event_probability") {
  const auto e = skewed_qubit_family();
  const GeneralizedStated rho3(diag({0.5, 0.5}));
  CHECK(event_probability(e, rho3, {"0", "1"}) == doctest::Approx(1.0));
  CHECK(event_probability(e, rho3, {}) == 0.0);
  CHECK(std::abs(event_probability(e, rho3, {"0"}) - 2.0 / 3.0) <= 1e-12);
  CHECK_THROWS_AS(event_probability(e, rho3, {"2"}), Error);

  Gen gen(35);
  for (int k = 0; k < 30; ++k) {
    const EffectFamilyd fam(gen.generic_effects(3, 4));
    const GeneralizedStated rho(gen.density(3));
    const auto d = prob_effects(fam, rho);
    CHECK(event_probability(fam, rho, {"1", "3"}) == doctest::Approx(d[1] + d[3]).epsilon(1e-12));
    const auto grouped = coarse_grain(fam, {{"1", "3"}, {"0", "2"}});
    CHECK(prob_effects(grouped, rho)[0] == doctest::Approx(d[1] + d[3]).epsilon(1e-12));
  }
}

TEST_CASE("frame coefficient rule equals the effect rule on pure states") {
  Gen gen(36);
  for (int k = 0; k < 100; ++k) {
    const Eigen::Index dim = 1 + k % 4;
    const ObliqueFramed frame(gen.frame_vectors(dim));
    const Vec psi = gen.vector(dim);
    const auto a = prob_coeff(frame, psi);
    const auto b = prob_effects(frame_effects(frame), pure_state(psi));
    CHECK((a.probs() - b.probs()).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("the generalized rule is not affine in the state") {
  const auto e = skewed_qubit_family();
  const double p_a = prob_effects(e, GeneralizedStated(diag({1, 0})))[0];
  const double p_b = prob_effects(e, GeneralizedStated(diag({0, 1})))[0];
  const double p_mid = prob_effects(e, GeneralizedStated(diag({0.5, 0.5})))[0];
  CHECK(std::abs(std::abs(p_mid - (p_a + p_b) / 2) - 1.0 / 6.0) <= 1e-12);
}

TEST_CASE("sample_outcomes") {
  const auto e = skewed_qubit_family();
  const GeneralizedStated rho3(diag({0.5, 0.5}));
  CHECK(sample_outcomes(e, rho3, 0, 1) == std::vector<std::uint64_t>{0, 0});
  CHECK(sample_outcomes(e, GeneralizedStated(diag({1, 0})), 1000, 1) == std::vector<std::uint64_t>{1000, 0});
  CHECK(sample_outcomes(e, GeneralizedStated(diag({0, 1})), 1000, 1) == std::vector<std::uint64_t>{0, 1000});

  const auto a = sample_outcomes(e, rho3, 100000, 2024);
  CHECK(a == sample_outcomes(e, rho3, 100000, 2024));
  CHECK(a[0] + a[1] == 100000);
  const double sigma = std::sqrt((2.0 / 3.0) * (1.0 / 3.0) / 1e5);
  CHECK(std::abs(double(a[0]) / 1e5 - 2.0 / 3.0) <= 3 * sigma);
  CHECK(a != sample_outcomes(e, rho3, 100000, 2025));

  // Inverse-CDF contract replayed by hand.
  std::mt19937_64 engine(77);
  std::vector<std::uint64_t> expected(2, 0);
  for (int k = 0; k < 50; ++k) {
    const double u = double(engine() >> 11) * 0x1.0p-53;
    ++expected[u < 2.0 / 3.0 ? 0 : 1];
  }
  CHECK(sample_outcomes(e, rho3, 50, 77) == expected);
}
