#include "bracketflow/linearization.hpp"

#include "bracketflow/curvature.hpp"
#include "bracketflow/errors.hpp"
#include "bracketflow/flow.hpp"
#include "bracketflow/lie_structure.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace bflow {

namespace {

Vector flat(const Endomorphism& a) { return Eigen::Map<const Vector>(a.data(), a.size()); }

// gl(s) coordinates use a*n + b for E_ab, matching pi_matrix.
Endomorphism from_gl_coords(const Vector& v, int n) {
  Endomorphism a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = v[i * n + j];
  return a;
}

Eigen::MatrixXd basis_matrix(const std::vector<Endomorphism>& b, int n) {
  Eigen::MatrixXd m(n * n, static_cast<Eigen::Index>(b.size()));
  for (std::size_t k = 0; k < b.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = flat(b[k]);
  return m;
}

}  // namespace

Eigen::MatrixXd delta(const BracketTensor& mu) { return -pi_matrix(mu); }

Eigen::MatrixXd delta_adjoint(const BracketTensor& mu) { return delta(mu).transpose(); }

Endomorphism apply_delta_adjoint(const BracketTensor& mu, const BracketTensor& v) {
  return from_gl_coords(delta_adjoint(mu) * v.as_vector(), mu.dim());
}

Endomorphism P_apply(const BracketTensor& mu, const BetaDecomposition& dec, const Endomorphism& a) {
  const Endomorphism ah = project_onto(a, dec.h_beta);
  const Endomorphism au = project_onto(a, dec.u_beta);
  const Endomorphism k = killing_form(mu);
  auto dtd = [&](const Endomorphism& x) {
    BracketTensor d = pi_action(x, mu);
    d *= -1.0;
    return apply_delta_adjoint(mu, d);
  };
  const Endomorphism s = dtd(ah);
  Endomorphism out = 0.25 * (s + s.transpose()) + 0.5 * (ah.transpose() * k + k * ah);
  out += 0.5 * dtd(au);
  return out;
}

Endomorphism generator_variation(const BracketTensor& mu, const BetaDecomposition& dec, const Endomorphism& a) {
  const BracketTensor v = pi_action(a, mu);
  const int n = mu.dim();
  auto gen = [&](const BracketTensor& b) {
    const CurvaturePack p = curvature_pack_unchecked(b);
    return Endomorphism(project_qbeta(p.RicStar, dec) + p.RicStar.squaredNorm() * Endomorphism::Identity(n, n));
  };
  // the |Ric*|^2 term is quartic, so use a small symmetric step for it
  const double eps = 1e-4;
  return (gen(mu + eps * v) - gen(mu - eps * v)) / (2.0 * eps);
}

Eigen::MatrixXd P_operator(const BracketTensor& mu, const BetaDecomposition& dec) {
  const auto m = static_cast<Eigen::Index>(dec.sl_beta.size());
  Eigen::MatrixXd p(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const Endomorphism pa = P_apply(mu, dec, dec.sl_beta[static_cast<std::size_t>(j)]);
    for (Eigen::Index i = 0; i < m; ++i) p(i, j) = gl_dot(dec.sl_beta[static_cast<std::size_t>(i)], pa);
  }
  return p;
}

LinearizationReport L_operator(const BracketTensor& mu, const BetaDecomposition& dec, double fdStep) {
  const int n = mu.dim();
  if (dec.dim() != n) throw DimensionMismatch("decomposition and bracket dimensions differ");
  {
    const GaugeCheck g = check_gauged(mu, dec);
    const double rest = std::hypot(g.negComponentNorm, g.posComponentNorm);
    if (!g.inVgeq0 || rest > 1e-8 * mu.norm()) {
      throw GaugeMismatch("bracket is not in V_0 of its beta+ grading (off-V_0 norm " + std::to_string(rest) + ")");
    }
  }
  LinearizationReport rep;
  const Endomorphism bplus = Endomorphism(dec.bPlus.asDiagonal());
  const auto& sl = dec.sl_beta;
  const auto m = static_cast<Eigen::Index>(sl.size());

  // P on sl_beta
  const Eigen::MatrixXd p = P_operator(mu, dec);
  rep.pSymmetry = (p - p.transpose()).norm();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> pes(0.5 * (p + p.transpose()));
  const Vector pev = pes.eigenvalues();
  rep.P_spectrum.assign(pev.data(), pev.data() + pev.size());
  const double pscale = std::max(1.0, pev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < pev.size(); ++i) {
    if (std::abs(pev[i]) <= kKernelTol * pscale) ++rep.pKernelDim;
  }
  Vector adEig(m);
  for (Eigen::Index i = 0; i < m; ++i) adEig[i] = dec.sl_adEig[static_cast<std::size_t>(i)];
  rep.commutatorNorm = (p * adEig.asDiagonal() - adEig.asDiagonal() * p).norm();

  // closed form against the variation of the generator, compared after pi(.) mu
  for (Eigen::Index j = 0; j < m; ++j) {
    const Endomorphism a = sl[static_cast<std::size_t>(j)];
    const BracketTensor diff = pi_action(P_apply(mu, dec, a) - generator_variation(mu, dec, a), mu);
    rep.pDiscrepancy = std::max(rep.pDiscrepancy, diff.norm());
  }

  // (Der + k_beta) cap sl_beta against ker P
  std::vector<Endomorphism> dk = derivation_space(mu);
  std::vector<Endomorphism> kbeta;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (dec.group[i] != dec.group[j]) continue;
      Endomorphism e = Endomorphism::Zero(n, n);
      e(i, j) = 1.0 / std::sqrt(2.0);
      e(j, i) = -1.0 / std::sqrt(2.0);
      kbeta.push_back(e);
    }
  dk.insert(dk.end(), kbeta.begin(), kbeta.end());
  const Eigen::MatrixXd slm = basis_matrix(sl, n);
  const Eigen::MatrixXd w = orthonormal_span(basis_matrix(dk, n), kRankTol);
  const Eigen::MatrixXd outside = (Eigen::MatrixXd::Identity(n * n, n * n) - w * w.transpose()) * slm;
  const Eigen::MatrixXd inter = slm * null_space(outside, 1e-8, 1.0);  // coordinates in gl(s)
  rep.derPlusKDim = static_cast<int>(inter.cols());
  const Eigen::MatrixXd pker = slm * pes.eigenvectors().leftCols(rep.pKernelDim);
  auto containment = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.cols() == 0) return 0.0;
    const Eigen::MatrixXd ob = orthonormal_span(b, 1e-10);
    return (a - ob * (ob.transpose() * a)).norm();
  };
  rep.pKernelResidual = std::max(containment(pker, inter), containment(inter, pker));

  // tangent space T = pi(sl_beta) mu
  Eigen::MatrixXd dsl(static_cast<Eigen::Index>(mu.size()), m);
  for (Eigen::Index j = 0; j < m; ++j) dsl.col(j) = pi_action(sl[static_cast<std::size_t>(j)], mu).as_vector();
  Eigen::MatrixXd u, coeffs;
  if (m > 0) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(dsl, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& s = svd.singularValues();
    int r = 0;
    while (r < s.size() && s[r] > kRankTol * std::max(s[0], mu.norm())) ++r;
    rep.tangentDim = r;
    u = svd.matrixU().leftCols(r);
    coeffs = svd.matrixV().leftCols(r) * Vector(s.head(r).cwiseInverse()).asDiagonal();
    if (r > 0) {
      rep.minRetainedSingular = s[r - 1];
      rep.rankDeficiencyWarning = s[r - 1] < 1e-6 * s[0];
    }
  }
  const int r = rep.tangentDim;
  const BetaDecomposition* decp = &dec;
  Eigen::MatrixXd lt(r, r), fd(r, r);
  double off = 0.0;
  for (int i = 0; i < r; ++i) {
    Endomorphism a = Endomorphism::Zero(n, n);
    for (Eigen::Index j = 0; j < m; ++j) a += coeffs(j, i) * sl[static_cast<std::size_t>(j)];
    const Endomorphism gen = P_apply(mu, dec, a) + (bplus * a - a * bplus);
    const Vector li = -pi_action(gen, mu).as_vector();
    lt.col(i) = u.transpose() * li;

    const BracketTensor ui = BracketTensor::from_vector(n, u.col(i));
    const BracketTensor fp = flow_field(FlowVariant::ScalStarNormalized, mu + fdStep * ui, decp);
    const BracketTensor fm = flow_field(FlowVariant::ScalStarNormalized, mu - fdStep * ui, decp);
    const Vector jf = (fp - fm).as_vector() / (2.0 * fdStep);
    fd.col(i) = u.transpose() * jf;
    off = std::max(off, (jf - u * fd.col(i)).norm());
  }
  rep.fdOffTangent = off;
  rep.fdDiscrepancy = r > 0 ? (lt - fd).cwiseAbs().maxCoeff() : 0.0;

  if (r > 0) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(lt);
    const Eigen::VectorXcd ev = es.eigenvalues();
    rep.maxNonzeroEigenvalue = -std::numeric_limits<double>::infinity();
    const double escale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      rep.eigenvalues.push_back(ev[i].real());
      rep.maxImag = std::max(rep.maxImag, std::abs(ev[i].imag()));
      if (std::abs(ev[i]) <= kKernelTol * escale) {
        ++rep.kernelDim;
      } else {
        rep.maxNonzeroEigenvalue = std::max(rep.maxNonzeroEigenvalue, ev[i].real());
      }
    }
    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end());
    if (rep.kernelDim == r) rep.maxNonzeroEigenvalue = 0.0;
  }

  // pi(k_beta) mu against ker L
  Eigen::MatrixXd korb(static_cast<Eigen::Index>(mu.size()), static_cast<Eigen::Index>(kbeta.size()));
  for (std::size_t k = 0; k < kbeta.size(); ++k) korb.col(static_cast<Eigen::Index>(k)) = pi_action(kbeta[k], mu).as_vector();
  const Eigen::MatrixXd korbBasis = orthonormal_span(korb, kRankTol, mu.norm());
  rep.kBetaOrbitDim = static_cast<int>(korbBasis.cols());
  Eigen::MatrixXd lker(static_cast<Eigen::Index>(mu.size()), 0);
  if (r > 0 && rep.kernelDim > 0) {
    const Eigen::MatrixXd nk = null_space(lt, kKernelTol, 1.0);
    lker = u * nk;
  }
  rep.kernelOrbitResidual = std::max(containment(lker, korbBasis), containment(korbBasis, lker));
  rep.kernelMatchesKBetaOrbit = rep.kernelDim == rep.kBetaOrbitDim && rep.kernelOrbitResidual <= 1e-6;

  Eigen::SelfAdjointEigenSolver<Endomorphism> kes(killing_form(mu));
  const Vector kev = kes.eigenvalues().cwiseAbs();
  double kmax = kev.maxCoeff(), kmin = kmax;
  for (Eigen::Index i = 0; i < kev.size(); ++i) {
    if (kev[i] > 1e-10 * std::max(kmax, 1e-300)) kmin = std::min(kmin, kev[i]);
  }
  rep.killingCondition = kmax > 0.0 ? kmax / kmin : 1.0;
  return rep;
}

}  // namespace bflow
