#include "bracketflow/soliton.hpp"

#include "bracketflow/errors.hpp"
#include "bracketflow/flow.hpp"
#include "bracketflow/lie_structure.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace bflow {

std::string to_string(SolitonKind k) {
  switch (k) {
    case SolitonKind::Einstein: return "Einstein";
    case SolitonKind::NontrivialSoliton: return "NontrivialSoliton";
    case SolitonKind::NotSoliton: return "NotSoliton";
  }
  return "?";
}

SolitonCertificate soliton_residual(const BracketTensor& mu) {
  if (mu.is_zero()) throw ZeroBracket("soliton_residual needs mu != 0");
  const CurvaturePack p = curvature_pack(mu);
  const int n = mu.dim();
  const std::vector<Endomorphism> der = derivation_space(mu);

  Eigen::MatrixXd cols(n * n, static_cast<Eigen::Index>(der.size()) + 1);
  const Endomorphism id = Endomorphism::Identity(n, n);
  cols.col(0) = Eigen::Map<const Vector>(id.data(), n * n);
  for (std::size_t k = 0; k < der.size(); ++k) {
    cols.col(static_cast<Eigen::Index>(k) + 1) = Eigen::Map<const Vector>(der[k].data(), n * n);
  }
  const Vector rhs = Eigen::Map<const Vector>(p.Ric.data(), n * n);
  const Vector coef = cols.completeOrthogonalDecomposition().solve(rhs);

  SolitonCertificate cert;
  cert.c = coef[0];
  cert.D = Endomorphism::Zero(n, n);
  for (std::size_t k = 0; k < der.size(); ++k) cert.D += coef[static_cast<Eigen::Index>(k) + 1] * der[k];
  cert.residual = (p.Ric - cert.c * id - cert.D).norm();
  cert.solTol = 1e-8 * (1.0 + p.Ric.norm());
  if (cert.residual > cert.solTol) {
    cert.kind = SolitonKind::NotSoliton;
  } else {
    cert.kind = cert.D.norm() <= cert.solTol ? SolitonKind::Einstein : SolitonKind::NontrivialSoliton;
  }
  cert.normalized = std::abs(p.scalStar + 1.0) <= kDriftTol;
  return cert;
}

NormalizedSoliton normalize_soliton(const BracketTensor& mu, const SolitonCertificate& cert) {
  if (cert.kind == SolitonKind::NotSoliton) throw IdentityViolation("input is not a solvsoliton");
  const double ss = curvature_pack(mu).scalStar;
  if (!(ss < 0.0)) throw IdentityViolation("scal* must be negative, got " + std::to_string(ss));

  NormalizedSoliton out;
  out.bracket = std::abs(ss + 1.0) <= 1e-14 ? mu : (1.0 / std::sqrt(-ss)) * mu;
  const int n = mu.dim();
  const CurvaturePack p = curvature_pack_unchecked(out.bracket);
  out.beta = p.RicStar;
  out.betaPlus = p.RicStar + p.RicStar.squaredNorm() * Endomorphism::Identity(n, n);

  const double tol = 1e-8 * (1.0 + out.bracket.norm_squared());
  out.derivationResidual = pi_action(out.betaPlus, out.bracket).norm();
  if (out.derivationResidual > tol) {
    throw IdentityViolation("beta+ is not a derivation (residual " + std::to_string(out.derivationResidual) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Endomorphism> es(0.5 * (out.betaPlus + out.betaPlus.transpose()));
  out.minEigenvalue = es.eigenvalues().minCoeff();
  if (out.minEigenvalue < -1e-8) {
    throw IdentityViolation("beta+ is not positive semidefinite (min eigenvalue " +
                            std::to_string(out.minEigenvalue) + ")");
  }
  // image of beta+ against the nilradical, compared through orthogonal projectors
  const Eigen::MatrixXd img = orthonormal_span(out.betaPlus, 1e-6);
  const Nilradical nr = nilradical(out.bracket);
  out.imageMismatch = (img * img.transpose() - nr.basis * nr.basis.transpose()).norm();
  if (img.cols() != nr.basis.cols() || out.imageMismatch > 1e-6) {
    throw IdentityViolation("image of beta+ is not the nilradical (mismatch " + std::to_string(out.imageMismatch) +
                            ")");
  }
  return out;
}

StratumLabel soliton_label(const NormalizedSoliton& sol) { return canonical_label(sol.beta, sol.bracket); }

CriticalConstruction construct_critical(const BracketTensor& mu, const Endomorphism& beta) {
  const int n = mu.dim();
  const CurvaturePack p = curvature_pack(mu);
  const double bsq = beta.squaredNorm();
  const Endomorphism rhs = Endomorphism::Identity(n, n) - p.K / (2.0 * bsq);
  Eigen::SelfAdjointEigenSolver<Endomorphism> es(0.5 * (rhs + rhs.transpose()));
  if (!(es.eigenvalues().minCoeff() > 0.0)) {
    throw NotPositiveDefinite("Id - K/(2|beta|^2) has eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
  }
  CriticalConstruction out;
  out.h = es.operatorSqrt();
  out.bracket = act(out.h, mu);
  out.momentResidual = (moment_map(out.bracket) - beta).norm();

  const Endomorphism hinv = out.h.inverse();
  const CurvaturePack q = curvature_pack_unchecked(out.bracket);
  out.mTransformResidual = (q.M - hinv.transpose() * p.M * hinv).norm();
  out.ricStarTransformResidual = (q.RicStar - hinv.transpose() * p.RicStar * hinv).norm();
  return out;
}

OrbitFingerprint fingerprint(const BracketTensor& mu) {
  OrbitFingerprint f;
  const CurvaturePack p = curvature_pack(mu);
  auto eigs = [](const Endomorphism& a) -> Vector {
    return Eigen::SelfAdjointEigenSolver<Endomorphism>(0.5 * (a + a.transpose()), Eigen::EigenvaluesOnly).eigenvalues();
  };
  f.ricEigs = eigs(p.Ric);
  f.ricStarEigs = eigs(p.RicStar);
  f.momentEigs = mu.is_zero() ? Vector::Zero(mu.dim()) : Vector(eigs(moment_map(mu)));
  f.scal = p.scal;
  f.scalStar = p.scalStar;
  f.norm = std::sqrt(p.normSq);
  f.derivedSeries = derived_series(mu);
  f.nilradicalDim = is_solvable(mu) ? static_cast<int>(nilradical(mu).basis.cols()) : -1;
  return f;
}

double fingerprint_distance(const OrbitFingerprint& a, const OrbitFingerprint& b) {
  if (a.nilradicalDim != b.nilradicalDim || a.derivedSeries != b.derivedSeries ||
      a.ricEigs.size() != b.ricEigs.size()) {
    return std::numeric_limits<double>::infinity();
  }
  double d = 0.0;
  d = std::max(d, (a.ricEigs - b.ricEigs).cwiseAbs().maxCoeff());
  d = std::max(d, (a.ricStarEigs - b.ricStarEigs).cwiseAbs().maxCoeff());
  d = std::max(d, (a.momentEigs - b.momentEigs).cwiseAbs().maxCoeff());
  d = std::max({d, std::abs(a.scal - b.scal), std::abs(a.scalStar - b.scalStar), std::abs(a.norm - b.norm)});
  return d;
}

bool same_orbit_On(const OrbitFingerprint& a, const OrbitFingerprint& b, double tol) {
  return fingerprint_distance(a, b) <= tol;
}

}  // namespace bflow
