#include "bracketflow/catalog.hpp"
#include "bracketflow/errors.hpp"
#include "bracketflow/flow.hpp"
#include "bracketflow/io.hpp"
#include "bracketflow/stratification.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace bflow;

TEST(Flow, VariantNames) {
  for (auto v : {FlowVariant::Raw, FlowVariant::Gauged, FlowVariant::ScalStarNormalized, FlowVariant::ScalNormalized,
                 FlowVariant::NormalizedUngauged})
    EXPECT_EQ(parse_variant(to_string(v)), v);
  EXPECT_THROW(parse_variant("sideways"), Error);
}

TEST(Flow, HeisenbergClosedForm) {
  FlowSpec spec;
  spec.tEnd = 5.0;
  spec.recordEvery = 0.5;
  const FlowTrajectory traj = integrate(catalog("h3").bracket, spec);
  for (const auto& s : traj.samples) {
    // x' = -3/2 x^3 with x(0) = 1
    EXPECT_NEAR(s.pack.normSq, 2.0 / (1.0 + 3.0 * s.t), 1e-8) << s.t;
  }
  EXPECT_NEAR(traj.samples.back().t, 5.0, 1e-12);
}

TEST(Flow, EinsteinFixedPoint) {
  const auto mu = std::sqrt(0.5) * catalog("s3,lambda", {{"lambda", 1.0}}).bracket;
  const StratumLabel l = stratum_label(mu);
  const auto start = act(l.frame, mu);
  for (auto v : {FlowVariant::Gauged, FlowVariant::ScalStarNormalized, FlowVariant::NormalizedUngauged}) {
    FlowSpec spec;
    spec.variant = v;
    spec.label = l;
    spec.tEnd = 5.0;
    spec.stopOnConvergence = false;
    const FlowTrajectory traj = integrate(start, spec);
    const auto& end = traj.samples.back().mu;
    // the unnormalized gauged flow only fixes the ray of an Einstein bracket
    if (v == FlowVariant::Gauged) {
      EXPECT_LE(((1.0 / end.norm()) * end - (1.0 / start.norm()) * start).norm(), 1e-9) << to_string(v);
    } else {
      EXPECT_LE((end - start).norm(), 1e-9) << to_string(v);
    }
  }
}

TEST(Flow, GaugedNeedsGaugedStart) {
  const auto mu = catalog("s3").bracket;
  const StratumLabel l = stratum_label(mu);
  std::mt19937_64 gen(61);
  FlowSpec spec;
  spec.variant = FlowVariant::Gauged;
  spec.label = l;
  EXPECT_THROW(integrate(act(testkit::random_gauge(3, gen, 0.8), act(l.frame, mu)), spec), GaugeMismatch);
  spec.label.reset();
  EXPECT_THROW(integrate(act(l.frame, mu), spec), Error);
}

TEST(Flow, NormalizationHolds) {
  const auto mu = catalog("s3").bracket;
  const StratumLabel l = stratum_label(mu);
  FlowSpec spec;
  spec.variant = FlowVariant::ScalStarNormalized;
  spec.label = l;
  spec.tEnd = 20.0;
  spec.stopOnConvergence = false;
  const FlowTrajectory traj = integrate(act(l.frame, mu), spec);
  for (const auto& s : traj.samples) EXPECT_NEAR(s.pack.scalStar, -1.0, 1e-7);

  spec.variant = FlowVariant::ScalNormalized;
  const FlowTrajectory t2 = integrate(act(l.frame, mu), spec);
  for (const auto& s : t2.samples) EXPECT_NEAR(s.pack.scal, -1.0, 1e-9);
}

TEST(Flow, GaugeRecoveryReproducesRawSolution) {
  std::mt19937_64 gen(62);
  const auto mu = testkit::random_solvable(4, gen);
  FlowSpec spec;
  spec.tEnd = 3.0;
  spec.recordEvery = 0.01;
  spec.stopOnConvergence = false;
  const FlowTrajectory traj = integrate(mu, spec);
  const GaugePath path = recover_gauge(traj, Endomorphism::Identity(4, 4));
  ASSERT_FALSE(path.t.empty());
  for (std::size_t k = 0; k < path.t.size(); k += 3) {
    const auto moved = act(path.h[k], mu);
    const auto ref = interpolate(traj, path.t[k]);
    EXPECT_LE((moved - ref).norm(), 1e-6 * mu.norm()) << path.t[k];
  }
}

TEST(Flow, InterpolationHitsSamples) {
  std::mt19937_64 gen(63);
  FlowSpec spec;
  spec.tEnd = 2.0;
  const FlowTrajectory traj = integrate(testkit::random_solvable(3, gen), spec);
  const auto& s = traj.samples[7];
  EXPECT_LE((interpolate(traj, s.t) - s.mu).norm(), 1e-12);
}

TEST(Flow, BlowDown) {
  std::mt19937_64 gen(64);
  FlowSpec spec;
  spec.tEnd = 9.0;
  spec.recordEvery = 0.05;
  spec.relTol = 1e-11;
  spec.absTol = 1e-14;
  spec.stopOnConvergence = false;
  const FlowTrajectory traj = integrate(testkit::random_solvable(4, gen), spec);
  EXPECT_LE(blowdown_check(traj, 4.0), 1e-6);
  EXPECT_LE(blowdown_check(traj, 9.0), 1e-6);
}

TEST(Flow, CsvIsDeterministic) {
  FlowSpec spec;
  spec.tEnd = 3.0;
  auto once = [&] {
    std::ostringstream os;
    write_trajectory_csv(os, integrate(catalog("s3").bracket, spec));
    return os.str();
  };
  const std::string a = once();
  EXPECT_EQ(a, once());
  EXPECT_EQ(a.substr(0, a.find('\n')), "t,||mu||,scal,scalstar,f,lyap,cs,typeIII,ricBound,jacobiRes");
}

TEST(Flow, RawCurvatureDecay) {
  FlowSpec spec;
  spec.tEnd = 50.0;
  spec.recordEvery = 1.0;
  const FlowTrajectory traj = integrate(catalog("s3").bracket, spec);
  for (const auto& s : traj.samples) {
    if (s.t < 1.0) continue;
    EXPECT_GT(s.mon.ricBound, 0.1);
    EXPECT_LT(s.mon.typeIII, 2.0);
  }
}
