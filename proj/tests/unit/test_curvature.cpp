#include "bracketflow/catalog.hpp"
#include "bracketflow/curvature.hpp"
#include "bracketflow/errors.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

using namespace bflow;

namespace {
double diff(const Endomorphism& a, const Endomorphism& b) { return (a - b).norm(); }
}  // namespace

TEST(Curvature, HeisenbergValues) {
  const auto p = curvature_pack(catalog("h3").bracket);
  EXPECT_LE(diff(p.Ric, Eigen::Vector3d(-0.5, -0.5, 0.5).asDiagonal().toDenseMatrix()), 1e-14);
  EXPECT_LE(p.K.norm(), 1e-15);
  EXPECT_LE(p.H.norm(), 1e-15);
  EXPECT_NEAR(p.scal, -0.5, 1e-15);
  EXPECT_LE(diff(p.RicStar, p.Ric), 1e-15);
}

TEST(Curvature, HyperbolicIsEinstein) {
  const auto p = curvature_pack(catalog("s3,lambda", {{"lambda", 1.0}}).bracket);
  EXPECT_LE(diff(p.Ric, -2.0 * Endomorphism::Identity(3, 3)), 1e-14);
}

TEST(Curvature, FlatE2) { EXPECT_LE(curvature_pack(catalog("e2").bracket).Ric.norm(), 1e-15); }

TEST(Curvature, MomentMapOfHeisenberg) {
  EXPECT_LE(diff(moment_map(catalog("h3").bracket), Eigen::Vector3d(-1, -1, 1).asDiagonal().toDenseMatrix()), 1e-14);
}

TEST(Curvature, ZeroBracketRejected) { EXPECT_THROW(moment_map(BracketTensor(3)), ZeroBracket); }

TEST(Curvature, MatchesKoszulOracle) {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 4;
    const auto mu = testkit::random_solvable(n, gen);
    const Endomorphism o = testkit::oracle_ricci(mu);
    EXPECT_LE(diff(curvature_pack(mu).Ric, o), 1e-9 * std::max(o.norm(), mu.norm_squared())) << "n = " << n;
  }
}

TEST(Curvature, MomentMapTraceAndGradient) {
  std::mt19937_64 gen(32);
  for (int trial = 0; trial < 20; ++trial) {
    const auto mu = testkit::random_antisymmetric(3 + trial % 3, gen);
    const Endomorphism m = moment_map(mu);
    EXPECT_NEAR(m.trace(), -1.0, 1e-12);
    EXPECT_LE((m - m.transpose()).norm(), 1e-14);
    // <m, A> |mu|^2 = <pi(A) mu, mu> for symmetric A
    Endomorphism a = testkit::random_matrix(mu.dim(), gen);
    a = 0.5 * (a + a.transpose());
    EXPECT_NEAR(gl_dot(m, a) * mu.norm_squared(), pi_action(a, mu).dot(mu), 1e-10 * mu.norm_squared() * a.norm());
  }
}

TEST(Curvature, RicStarDropsMeanCurvatureTerm) {
  std::mt19937_64 gen(33);
  const auto mu = testkit::random_solvable(5, gen);
  const auto p = curvature_pack(mu);
  const Endomorphism adh = ad_map(mu, p.H);
  EXPECT_LE(diff(p.Ric, p.RicStar - 0.5 * (adh + adh.transpose())), 1e-12 * mu.norm_squared());
  EXPECT_NEAR(p.scalStar, p.RicStar.trace(), 1e-12 * mu.norm_squared());
}

TEST(Curvature, ScalStarVariation) {
  std::mt19937_64 gen(34);
  const auto mu = testkit::random_solvable(4, gen);
  const Endomorphism a = testkit::random_matrix(4, gen);
  const double eps = 1e-6;
  const Endomorphism ep = (eps * a).exp();
  const Endomorphism em = (-eps * a).exp();
  const double fd = (curvature_pack(act(ep, mu)).scalStar - curvature_pack(act(em, mu)).scalStar) / (2 * eps);
  EXPECT_NEAR(scalstar_first_variation(mu, a), fd, 1e-5 * (1.0 + std::abs(fd)));
}
