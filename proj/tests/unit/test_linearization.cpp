#include "bracketflow/catalog.hpp"
#include "bracketflow/errors.hpp"
#include "bracketflow/linearization.hpp"
#include "bracketflow/soliton.hpp"
#include "bracketflow/stratification.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace bflow;

namespace {
StratumLabel normalized_label(const BracketTensor& mu) {
  return soliton_label(normalize_soliton(mu, soliton_residual(mu)));
}
}  // namespace

TEST(Linearization, DeltaAdjoint) {
  std::mt19937_64 gen(81);
  const auto mu = testkit::random_solvable(4, gen);
  const Eigen::MatrixXd d = delta(mu);
  EXPECT_LE((delta_adjoint(mu) - d.transpose()).norm(), 1e-12 * d.norm());
}

TEST(Linearization, HalfSoliton) {
  const StratumLabel l = normalized_label(catalog("s3,lambda", {{"lambda", 0.5}}).bracket);
  const BetaDecomposition dec = beta_decomposition(l);
  const LinearizationReport r = L_operator(l.criticalBracket, dec);
  EXPECT_EQ(r.tangentDim, 2);
  EXPECT_EQ(r.kernelDim, 1);
  EXPECT_TRUE(r.kernelMatchesKBetaOrbit);
  EXPECT_LE(r.maxNonzeroEigenvalue, -1e-6);
  EXPECT_LE(r.maxImag, 1e-8);
  EXPECT_LE(r.pSymmetry, 1e-10);
  EXPECT_GE(*std::min_element(r.P_spectrum.begin(), r.P_spectrum.end()), -1e-9);
  EXPECT_EQ(r.pKernelDim, r.derPlusKDim);
  EXPECT_LE(r.commutatorNorm, 1e-9);
  EXPECT_LE(r.pDiscrepancy, 1e-8);
  EXPECT_LE(r.fdDiscrepancy, 1e-6);
}

TEST(Linearization, HeisenbergFive) {
  const StratumLabel l = normalized_label(catalog("heisenberg", {{"dim", 5}}).bracket);
  const LinearizationReport r = L_operator(l.criticalBracket, beta_decomposition(l));
  EXPECT_EQ(r.tangentDim, 5);
  EXPECT_EQ(r.kernelDim, r.kBetaOrbitDim);
  EXPECT_LE(r.maxNonzeroEigenvalue, -1e-6);
  EXPECT_LE(r.fdDiscrepancy, 1e-6);
}

TEST(Linearization, PClosedFormMatchesVariation) {
  const StratumLabel l = normalized_label(catalog("s3',lambda", {{"lambda", 0.3}}).bracket);
  const BetaDecomposition dec = beta_decomposition(l);
  for (const auto& a : dec.sl_beta) {
    const auto lhs = pi_action(P_apply(l.criticalBracket, dec, a), l.criticalBracket);
    const auto rhs = pi_action(generator_variation(l.criticalBracket, dec, a), l.criticalBracket);
    EXPECT_LE((lhs - rhs).norm(), 1e-8);
  }
}

TEST(Linearization, OffGaugeRejected) {
  const StratumLabel l = normalized_label(catalog("h3").bracket);
  std::mt19937_64 gen(82);
  const auto moved = act(testkit::random_gauge(3, gen, 0.8), l.criticalBracket);
  EXPECT_THROW(L_operator(moved, beta_decomposition(l)), GaugeMismatch);
}
