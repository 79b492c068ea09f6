#include "bracketflow/catalog.hpp"
#include "bracketflow/curvature.hpp"
#include "bracketflow/errors.hpp"
#include "bracketflow/soliton.hpp"
#include "bracketflow/stratification.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace bflow;

TEST(Soliton, HeisenbergCertificate) {
  const SolitonCertificate c = soliton_residual(catalog("h3").bracket);
  EXPECT_EQ(c.kind, SolitonKind::NontrivialSoliton);
  EXPECT_NEAR(c.c, -1.5, 1e-12);
  EXPECT_LE((c.D - Eigen::Vector3d(1, 1, 2).asDiagonal().toDenseMatrix()).norm(), 1e-12);
}

TEST(Soliton, Kinds) {
  EXPECT_EQ(soliton_residual(catalog("s3").bracket).kind, SolitonKind::NotSoliton);
  EXPECT_EQ(soliton_residual(catalog("s3',lambda", {{"lambda", 0.3}}).bracket).kind, SolitonKind::Einstein);
  EXPECT_EQ(soliton_residual(catalog("s3,lambda", {{"lambda", 0.5}}).bracket).kind, SolitonKind::NontrivialSoliton);
  EXPECT_EQ(soliton_residual(catalog("heisenberg", {{"dim", 5}}).bracket).kind, SolitonKind::NontrivialSoliton);
}

TEST(Soliton, NormalizedIdentities) {
  for (const auto& e : {catalog("h3"), catalog("s3,lambda", {{"lambda", 0.5}}), catalog("heisenberg", {{"dim", 7}})}) {
    const NormalizedSoliton ns = normalize_soliton(e.bracket, soliton_residual(e.bracket));
    EXPECT_NEAR(curvature_pack(ns.bracket).scalStar, -1.0, 1e-12) << e.name;
    EXPECT_LE(ns.derivationResidual, 1e-10) << e.name;
    EXPECT_GE(ns.minEigenvalue, -1e-10) << e.name;
    EXPECT_LE(ns.imageMismatch, 1e-8) << e.name;
  }
}

TEST(Soliton, NotSolitonRejected) {
  const auto mu = catalog("s3").bracket;
  EXPECT_THROW(normalize_soliton(mu, soliton_residual(mu)), Error);
}

TEST(Soliton, CriticalConstruction) {
  const auto mu = catalog("s3,lambda", {{"lambda", 0.5}}).bracket;
  const NormalizedSoliton ns = normalize_soliton(mu, soliton_residual(mu));
  const CriticalConstruction cc = construct_critical(ns.bracket, ns.beta);
  EXPECT_LE(cc.momentResidual, 1e-8);
  EXPECT_LE(cc.mTransformResidual, 1e-9);
  EXPECT_LE(cc.ricStarTransformResidual, 1e-9);
}

TEST(Soliton, FingerprintInvariance) {
  std::mt19937_64 gen(71);
  const auto mu = testkit::random_solvable(5, gen);
  const auto k = testkit::random_orthogonal(5, gen);
  EXPECT_TRUE(same_orbit_On(fingerprint(mu), fingerprint(act(k, mu))));
  EXPECT_FALSE(same_orbit_On(fingerprint(mu), fingerprint(1.1 * mu)));
  EXPECT_FALSE(std::isfinite(fingerprint_distance(fingerprint(catalog("h3").bracket), fingerprint(catalog("s3").bracket))));
}
