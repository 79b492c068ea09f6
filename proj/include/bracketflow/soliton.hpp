#pragma once

#include "bracketflow/bracket.hpp"
#include "bracketflow/curvature.hpp"
#include "bracketflow/stratification.hpp"

#include <string>
#include <vector>

namespace bflow {

enum class SolitonKind { Einstein, NontrivialSoliton, NotSoliton };
std::string to_string(SolitonKind k);

struct SolitonCertificate {
  double c = 0.0;
  Endomorphism D;
  double residual = 0.0;  // |Ric - c Id - D|
  SolitonKind kind = SolitonKind::NotSoliton;
  bool normalized = false;  // scal* = -1 within kDriftTol
  double solTol = 0.0;
};

/// Least-squares fit of Ric over c Id + Der(mu). Throws ZeroBracket.
SolitonCertificate soliton_residual(const BracketTensor& mu);

struct NormalizedSoliton {
  BracketTensor bracket;  // scal* = -1
  Endomorphism beta;      // Ric* of the normalized bracket
  Endomorphism betaPlus;  // beta + |beta|^2 Id
  double derivationResidual = 0.0;  // |pi(beta+) mu|
  double minEigenvalue = 0.0;       // smallest eigenvalue of beta+
  double imageMismatch = 0.0;       // distance between image(beta+) and the nilradical
};

/// Rescales to scal* = -1 and verifies that beta+ = Ric* + |Ric*|^2 Id is a
/// positive semidefinite derivation whose image is the nilradical.
/// Throws IdentityViolation naming the failed clause.
NormalizedSoliton normalize_soliton(const BracketTensor& mu, const SolitonCertificate& cert);

/// Stratum label of a normalized soliton, taking beta = Ric*; the label's
/// criticalBracket is the soliton itself moved to the frame where beta is diagonal.
StratumLabel soliton_label(const NormalizedSoliton& sol);

struct CriticalConstruction {
  Endomorphism h;
  BracketTensor bracket;     // h . mu
  double momentResidual = 0.0;   // |m(h mu) - beta|
  double mTransformResidual = 0.0;      // |M_{h mu} - h^-t M_mu h^-1|
  double ricStarTransformResidual = 0.0;  // |Ric*_{h mu} - h^-t Ric*_mu h^-1|
};

/// h = sqrt(Id - K_mu / (2 |beta|^2)) and h . mu, which is a critical point of
/// |m|^2 with m = beta. Throws NotPositiveDefinite.
CriticalConstruction construct_critical(const BracketTensor& mu, const Endomorphism& beta);

struct OrbitFingerprint {
  Vector ricEigs;
  Vector ricStarEigs;
  Vector momentEigs;
  double scal = 0.0;
  double scalStar = 0.0;
  double norm = 0.0;
  int nilradicalDim = 0;
  std::vector<int> derivedSeries;
};

OrbitFingerprint fingerprint(const BracketTensor& mu);

/// Largest componentwise difference of the real entries; infinity when the
/// integer entries differ.
double fingerprint_distance(const OrbitFingerprint& a, const OrbitFingerprint& b);

/// Necessary condition for mu2 in O(n) . mu1.
bool same_orbit_On(const OrbitFingerprint& a, const OrbitFingerprint& b, double tol = 1e-6);

}  // namespace bflow
