#pragma once

#include "bracketflow/bracket.hpp"
#include "bracketflow/curvature.hpp"
#include "bracketflow/stratification.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bflow {

inline constexpr double kDriftTol = 1e-7;
inline constexpr double kConvTol = 1e-10;
inline constexpr double kFTol = 1e-8;
inline constexpr int kConvWindow = 10;

/// Raw:                mu' = -pi(Ric) mu
/// Gauged:             mu' = -pi((Ric*)_q) mu
/// ScalStarNormalized: nu' = -pi((Ric*)_q + |Ric*|^2 Id) nu, scal* = -1
/// ScalNormalized:     ScalStarNormalized rescaled afterwards to scal = -1
/// NormalizedUngauged: nu' = -pi(Ric + |Ric*|^2 Id) nu, scal* = -1
enum class FlowVariant { Raw, Gauged, ScalStarNormalized, ScalNormalized, NormalizedUngauged };

std::string to_string(FlowVariant v);
FlowVariant parse_variant(const std::string& s);

enum class Termination { ReachedTEnd, Converged, Diverged, StepFailure };
std::string to_string(Termination t);

struct FlowSpec {
  FlowVariant variant = FlowVariant::Raw;
  std::optional<StratumLabel> label;  // required for the gauged variants; used by monitors otherwise
  double tEnd = 10.0;
  double relTol = 1e-9;
  double absTol = 1e-12;
  long maxSteps = 1'000'000;
  double recordEvery = 0.1;
  bool stopOnConvergence = true;
};

struct Monitors {
  double f = 0.0;                  // |Ric*_nu|^2 - <Ric*_nu, beta> at scal*(nu) = -1
  double lyapunovIntegrand = 0.0;  // |Ric*|^2 + scal* <Ric*, beta>
  double csEstimate = 0.0;         // <Ric*, beta> - |scal*| |beta|^2
  double typeIII = 0.0;            // t |mu|^2
  double ricBound = 0.0;           // t |Ric|
  double jacobiRes = 0.0;
  double fieldNorm = 0.0;          // |d mu / dt|
};

struct FlowSample {
  double t = 0.0;
  BracketTensor mu;
  CurvaturePack pack;
  Monitors mon;
};

struct FlowTrajectory {
  FlowVariant variant = FlowVariant::Raw;
  std::optional<StratumLabel> label;
  std::vector<FlowSample> samples;
  Termination terminationReason = Termination::ReachedTEnd;
  std::string message;
  long steps = 0;
  long renormalizations = 0;
  double maxDrift = 0.0;  // max |scal* + 1| seen after accepted steps, before renormalization
};

/// The endomorphism B of the variant's vector field mu' = -pi(B) mu.
/// dec is required for the gauged variants.
Endomorphism flow_generator(FlowVariant v, const CurvaturePack& p, const BetaDecomposition* dec);

/// -pi(B) mu for the given variant.
BracketTensor flow_field(FlowVariant v, const BracketTensor& mu, const BetaDecomposition* dec);

/// Monitor values at (t, mu); the beta-dependent ones are NaN without beta.
Monitors compute_monitors(double t, const BracketTensor& mu, const CurvaturePack& p, const Endomorphism* beta);

/// Adaptive Dormand-Prince integration with projection, Jacobi and divergence
/// checks between accepted steps. Samples are taken at multiples of recordEvery.
/// Throws NotALieBracket, GaugeMismatch (gauged variants need mu0 in V_{>=0}).
FlowTrajectory integrate(const BracketTensor& mu0, const FlowSpec& spec);

struct GaugePath {
  std::vector<double> t;
  std::vector<Endomorphism> h;
  std::vector<double> det;
  std::vector<double> norm;
};

/// Solves h' = -B(mu(t)) h, h(0) = h0, along the stored samples; mu(t) between
/// samples is the cubic Hermite interpolant. Throws InterpolationGap when two
/// consecutive samples differ by more than half the bracket norm.
GaugePath recover_gauge(const FlowTrajectory& traj, const Endomorphism& h0);

/// GL-invariant increment |h(t2) h(t1)^-1 - Id|.
double gauge_increment(const GaugePath& path, double t1, double t2);

/// | |mu_s(1)| - sqrt(s) |mu(s)| |, mu_s started from sqrt(s) mu(0). Raw trajectories only.
/// Throws OutOfRange.
double blowdown_check(const FlowTrajectory& traj, double s);

struct SolitonConvergence {
  bool converged = false;
  double fTail = 0.0;
  double cauchy = 0.0;
  BracketTensor limit;
};

/// Trailing-window test: max f <= kFTol and |nu(end) - nu(end - window)| small.
SolitonConvergence detect_soliton_convergence(const FlowTrajectory& traj, double cauchyTol = 1e-6);

/// Cubic Hermite interpolation of mu at time t from the trajectory samples.
BracketTensor interpolate(const FlowTrajectory& traj, double t);

}  // namespace bflow
