#include "bracketflow/experiments.hpp"

#include "bracketflow/errors.hpp"
#include "bracketflow/lie_structure.hpp"
#include "bracketflow/spectral_type.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <future>

namespace bflow {

Endomorphism random_qbeta(const BetaDecomposition& dec, std::mt19937_64& gen, double spread) {
  const int n = dec.dim();
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    Endomorphism h = Endomorphism::Identity(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (dec.group[i] >= dec.group[j]) h(i, j) += spread * normal(gen);
      }
    if (h.determinant() > 0.1) return h;
  }
}

namespace {

SeedRun run_seed(const BracketTensor& mu, const StratumLabel& label, const BetaDecomposition& dec,
                 std::uint64_t seed, const UniquenessOptions& opts) {
  SeedRun run;
  run.seed = seed;
  std::mt19937_64 gen(seed);
  run.h0 = random_qbeta(dec, gen);
  FlowSpec spec;
  spec.variant = FlowVariant::ScalStarNormalized;
  spec.label = label;
  spec.tEnd = opts.tEnd;
  spec.recordEvery = opts.recordEvery;
  spec.stopOnConvergence = false;
  const FlowTrajectory traj = integrate(act(run.h0, mu), spec);
  run.termination = traj.terminationReason;
  run.tFinal = traj.samples.back().t;
  run.convergence = detect_soliton_convergence(traj);
  const Vector ev = Eigen::SelfAdjointEigenSolver<Endomorphism>(traj.samples.back().pack.Ric).eigenvalues();
  run.ricSpread = ev.maxCoeff() - ev.minCoeff();
  run.fingerprint = fingerprint(run.convergence.limit);
  run.certificate = soliton_residual(run.convergence.limit);
  return run;
}

}  // namespace

UniquenessReport run_uniqueness_experiment(const CatalogEntry& group, const UniquenessOptions& opts) {
  const TypeReport type = classify_type(group.bracket);
  if (type.kind != TypeKind::RealType && type.kind != TypeKind::Nilpotent) {
    throw OutOfRange(group.name + " is not of real type (" + to_string(type.kind) + ")");
  }
  if (opts.seeds < 1) throw OutOfRange("need at least one seed");
  UniquenessReport rep;
  rep.group = group.name;
  rep.label = stratum_label(group.bracket);
  const BracketTensor mu = act(rep.label.frame, group.bracket);
  const BetaDecomposition dec = beta_decomposition(rep.label);
  if (!check_gauged(mu, dec).inVgeq0) throw GaugeMismatch("catalog bracket is not gauged in its label frame");

  std::vector<std::future<SeedRun>> jobs;
  for (int s = 0; s < opts.seeds; ++s) {
    const std::uint64_t seed = opts.seed * 1000003ULL + static_cast<std::uint64_t>(s);
    jobs.push_back(std::async(std::launch::async, run_seed, std::cref(mu), std::cref(rep.label), std::cref(dec),
                              seed, std::cref(opts)));
  }
  for (auto& j : jobs) rep.runs.push_back(j.get());

  for (std::size_t a = 0; a < rep.runs.size(); ++a) {
    if (!rep.runs[a].convergence.converged) rep.failingSeeds.push_back(rep.runs[a].seed);
    for (std::size_t b = a + 1; b < rep.runs.size(); ++b) {
      rep.maxPairwiseDistance =
          std::max(rep.maxPairwiseDistance, fingerprint_distance(rep.runs[a].fingerprint, rep.runs[b].fingerprint));
    }
  }
  return rep;
}

CollapseReport run_collapse_experiment(const CatalogEntry& group, const CollapseOptions& opts) {
  if (!is_solvable(group.bracket)) throw NotSolvable(group.name + " is not solvable");
  if (!(opts.tEnd > 1.0)) throw OutOfRange("collapse window needs tEnd > 1");
  CollapseReport rep;
  rep.group = group.name;
  rep.tEnd = opts.tEnd;
  const BracketTensor mu0 = opts.h0.size() ? act(opts.h0, group.bracket) : group.bracket;

  FlowSpec spec;
  spec.variant = FlowVariant::Raw;
  spec.tEnd = opts.tEnd;
  spec.recordEvery = 0.5;
  spec.stopOnConvergence = false;
  const FlowTrajectory traj = integrate(mu0, spec);
  rep.termination = traj.terminationReason;

  bool first = true;
  double lateMax = 0.0, earlyMax = 0.0;
  for (const auto& s : traj.samples) {
    if (s.t < 1.0) continue;
    if (first) {
      rep.typeIIIMin = rep.typeIIIMax = s.mon.typeIII;
      rep.ricBoundMin = s.mon.ricBound;
      first = false;
    }
    rep.typeIIIMin = std::min(rep.typeIIIMin, s.mon.typeIII);
    rep.typeIIIMax = std::max(rep.typeIIIMax, s.mon.typeIII);
    rep.ricBoundMin = std::min(rep.ricBoundMin, s.mon.ricBound);
    double& bucket = s.t <= 0.5 * opts.tEnd ? earlyMax : lateMax;
    bucket = std::max(bucket, s.mon.typeIII);
  }
  rep.ricBoundFinal = traj.samples.back().mon.ricBound;

  if (traj.samples.front().pack.Ric.norm() <= kFlatTol * (1.0 + traj.samples.front().pack.normSq)) {
    rep.verdict = "flat";
  } else if (rep.ricBoundFinal < 1e-3) {
    rep.verdict = "collapsed";
  } else if (rep.ricBoundMin >= 1e-3 && lateMax <= 2.0 * earlyMax) {
    rep.verdict = "non-collapsed";
  } else {
    rep.verdict = "inconclusive";
  }
  return rep;
}

}  // namespace bflow
