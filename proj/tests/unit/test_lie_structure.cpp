#include "bracketflow/catalog.hpp"
#include "bracketflow/errors.hpp"
#include "bracketflow/lie_structure.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace bflow;

TEST(LieStructure, SeriesOfHeisenberg) {
  const auto mu = catalog("h3").bracket;
  EXPECT_EQ(derived_series(mu), (std::vector<int>{3, 1, 0}));
  EXPECT_EQ(lower_central_series(mu), (std::vector<int>{3, 1, 0}));
  EXPECT_TRUE(is_nilpotent(mu));
}

TEST(LieStructure, S3IsSolvableNotNilpotent) {
  const auto mu = catalog("s3").bracket;
  EXPECT_TRUE(is_solvable(mu));
  EXPECT_FALSE(is_nilpotent(mu));
  const Nilradical nr = nilradical(mu);
  EXPECT_EQ(nr.basis.cols(), 2);
  EXPECT_EQ(nr.rank, 1);
  EXPECT_NEAR(std::abs(nr.complement(0, 0)), 1.0, 1e-12);
}

TEST(LieStructure, NotSolvableRejected) {
  // so(3)
  BracketTensor mu(3);
  mu.set(0, 1, 2, 1.0);
  mu.set(1, 2, 0, 1.0);
  mu.set(2, 0, 1, 1.0);
  EXPECT_FALSE(is_solvable(mu));
  EXPECT_THROW(nilradical(mu), NotSolvable);
}

TEST(LieStructure, DerivationDimensions) {
  EXPECT_EQ(derivation_space(catalog("h3").bracket).size(), 6u);
  EXPECT_EQ(derivation_space(catalog("abelian", {{"dim", 3}}).bracket).size(), 9u);
  // s3: ad of the 2-dim nilradical, ad e1 and the scaling on n
  EXPECT_EQ(derivation_space(catalog("s3").bracket).size(), 4u);
}

TEST(LieStructure, DerivationsAnnihilateBracket) {
  std::mt19937_64 gen(21);
  for (int n = 3; n <= 6; ++n) {
    const auto mu = testkit::random_solvable(n, gen);
    for (const auto& d : derivation_space(mu)) EXPECT_LE(pi_action(d, mu).norm(), 1e-8 * mu.norm());
  }
}

TEST(LieStructure, NilradicalOfRandomExtension) {
  std::mt19937_64 gen(22);
  const auto base = testkit::heisenberg_extension(2, 1, true, gen);
  const auto mu = act(testkit::random_gauge(base.dim(), gen), base);
  const Nilradical nr = nilradical(mu);
  EXPECT_EQ(nr.rank, 1);
  for (Eigen::Index c = 0; c < nr.basis.cols(); ++c) EXPECT_TRUE(is_nilpotent_endomorphism(ad_map(mu, nr.basis.col(c))));
}
