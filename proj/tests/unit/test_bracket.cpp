#include "bracketflow/bracket.hpp"
#include "bracketflow/catalog.hpp"
#include "bracketflow/errors.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

using namespace bflow;
using bflow::testkit::random_antisymmetric;
using bflow::testkit::random_gauge;
using bflow::testkit::random_matrix;
using bflow::testkit::random_solvable;

TEST(Bracket, SetKeepsAntisymmetry) {
  BracketTensor mu(3);
  mu.set(0, 1, 2, 2.5);
  EXPECT_EQ(mu(1, 0, 2), -2.5);
  EXPECT_DOUBLE_EQ(mu.norm_squared(), 12.5);
  EXPECT_THROW(mu.set(1, 1, 0, 1.0), DimensionMismatch);
}

TEST(Bracket, HeisenbergNormIsTwo) { EXPECT_DOUBLE_EQ(catalog("h3").bracket.norm_squared(), 2.0); }

TEST(Bracket, BasisElementsAreUnit) {
  const auto e = bracket_basis_element(4, 0, 2, 3);
  EXPECT_NEAR(e.norm(), 1.0, 1e-15);
}

TEST(Bracket, DimensionBounds) {
  EXPECT_THROW(BracketTensor(0), DimensionMismatch);
  EXPECT_THROW(BracketTensor(kMaxDim + 1), DimensionMismatch);
}

TEST(Bracket, JacobiDetectsNonLie) {
  std::mt19937_64 gen(3);
  EXPECT_FALSE(is_lie_bracket(random_antisymmetric(4, gen)));
  EXPECT_TRUE(is_lie_bracket(random_solvable(5, gen)));
  EXPECT_THROW(require_lie(random_antisymmetric(4, gen), "test"), NotALieBracket);
}

TEST(Bracket, ActionComposes) {
  std::mt19937_64 gen(11);
  const auto mu = random_solvable(4, gen);
  const auto g = random_gauge(4, gen);
  const auto h = random_gauge(4, gen);
  const auto lhs = act(h, act(g, mu));
  const auto rhs = act(h * g, mu);
  EXPECT_LE((lhs - rhs).norm(), 1e-10 * rhs.norm());
}

TEST(Bracket, ActionTransportsBracket) {
  std::mt19937_64 gen(12);
  const auto mu = random_solvable(4, gen);
  const auto h = random_gauge(4, gen);
  const auto hmu = act(h, mu);
  const Vector x = Vector::Random(4), y = Vector::Random(4);
  const Vector lhs = hmu.apply(h * x, h * y);
  const Vector rhs = h * mu.apply(x, y);
  EXPECT_LE((lhs - rhs).norm(), 1e-12 * (1.0 + rhs.norm()));
}

TEST(Bracket, SingularGaugeRejected) {
  const auto mu = catalog("h3").bracket;
  Endomorphism h = Endomorphism::Identity(3, 3);
  h(2, 2) = 0.0;
  EXPECT_THROW(act(h, mu), SingularGauge);
}

TEST(Bracket, PiIsDerivativeOfAction) {
  std::mt19937_64 gen(5);
  const auto mu = random_solvable(4, gen);
  const Endomorphism a = random_matrix(4, gen);
  const double eps = 1e-5;
  const Endomorphism ep = (eps * a).exp();
  const Endomorphism em = (-eps * a).exp();
  const BracketTensor fd = (1.0 / (2 * eps)) * (act(ep, mu) - act(em, mu));
  EXPECT_LE((fd - pi_action(a, mu)).norm(), 1e-8 * mu.norm() * a.norm());
}

TEST(Bracket, PiMatrixColumns) {
  std::mt19937_64 gen(6);
  const auto mu = random_solvable(3, gen);
  const Endomorphism a = random_matrix(3, gen);
  Vector flat(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) flat[i * 3 + j] = a(i, j);
  EXPECT_LE((pi_matrix(mu) * flat - pi_action(a, mu).as_vector()).norm(), 1e-12);
  EXPECT_LE((pi_operator(a) * mu.as_vector() - pi_action(a, mu).as_vector()).norm(), 1e-12);
}

TEST(Bracket, AdMapMatchesApply) {
  std::mt19937_64 gen(7);
  const auto mu = random_solvable(5, gen);
  const Vector x = Vector::Random(5), y = Vector::Random(5);
  EXPECT_LE((ad_map(mu, x) * y - mu.apply(x, y)).norm(), 1e-13);
}
