#pragma once

#include "bracketflow/catalog.hpp"
#include "bracketflow/flow.hpp"
#include "bracketflow/soliton.hpp"
#include "bracketflow/stratification.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace bflow {

/// Random element of Q_beta = G_beta U_beta with positive determinant: identity
/// plus Gaussian noise of size `spread` on the g_beta and u_beta entries.
Endomorphism random_qbeta(const BetaDecomposition& dec, std::mt19937_64& gen, double spread = 0.3);

struct SeedRun {
  std::uint64_t seed = 0;
  Endomorphism h0;
  Termination termination = Termination::ReachedTEnd;
  double tFinal = 0.0;
  SolitonConvergence convergence;
  double ricSpread = 0.0;  // max - min Ricci eigenvalue of the limit
  OrbitFingerprint fingerprint;
  SolitonCertificate certificate;
};

struct UniquenessReport {
  std::string group;
  StratumLabel label;
  std::vector<SeedRun> runs;
  double maxPairwiseDistance = 0.0;
  std::vector<std::uint64_t> failingSeeds;  // runs that did not meet the soliton convergence test
};

struct UniquenessOptions {
  int seeds = 5;
  std::uint64_t seed = 1;
  double tEnd = 100.0;
  double recordEvery = 0.5;
};

/// Scal*-normalized flows from `seeds` random Q_beta gauges of the group's
/// bracket, with pairwise fingerprint comparison of the end states. Throws
/// OutOfRange unless the group is of real type (nilpotent included).
UniquenessReport run_uniqueness_experiment(const CatalogEntry& group, const UniquenessOptions& opts = {});

struct CollapseReport {
  std::string group;
  double tEnd = 0.0;
  double typeIIIMin = 0.0, typeIIIMax = 0.0;  // t |mu|^2 on [1, tEnd]
  double ricBoundMin = 0.0;                   // inf of t |Ric| on [1, tEnd]
  double ricBoundFinal = 0.0;
  std::string verdict;  // "non-collapsed", "collapsed", "flat", "inconclusive"
  Termination termination = Termination::ReachedTEnd;
};

struct CollapseOptions {
  double tEnd = 200.0;
  Endomorphism h0;  // initial gauge; empty means identity
};

/// Raw flow monitors t |mu|^2 and t |Ric| over [1, tEnd].
CollapseReport run_collapse_experiment(const CatalogEntry& group, const CollapseOptions& opts = {});

}  // namespace bflow
