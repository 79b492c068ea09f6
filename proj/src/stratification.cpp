#include "bracketflow/stratification.hpp"

#include "bracketflow/curvature.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace bflow {

namespace {

double energy(const BracketTensor& nu) { return moment_map(nu).squaredNorm(); }

// -pi(m) nu + |m|^2 nu on a unit-norm nu.
BracketTensor descent_direction(const BracketTensor& nu, double* e, Endomorphism* m_out = nullptr) {
  const Endomorphism m = moment_map(nu);
  const double msq = m.squaredNorm();
  if (e) *e = msq;
  if (m_out) *m_out = m;
  BracketTensor d = pi_action(m, nu);
  d *= -1.0;
  d += msq * nu;
  return d;
}

std::vector<Multiplicity> cluster(std::vector<double> v, double tol) {
  std::sort(v.begin(), v.end());
  std::vector<Multiplicity> out;
  std::vector<double> acc;
  auto flush = [&]() {
    if (acc.empty()) return;
    double s = 0.0;
    for (double x : acc) s += x;
    out.emplace_back(s / static_cast<double>(acc.size()), static_cast<int>(acc.size()));
    acc.clear();
  };
  for (double x : v) {
    if (!acc.empty() && x - acc.back() > tol) flush();
    acc.push_back(x);
  }
  flush();
  return out;
}

}  // namespace

GradientFlowResult energy_gradient_flow(const BracketTensor& mu0, const GradientFlowOptions& opts) {
  const double scale = mu0.norm();
  if (!(scale > 0.0)) throw ZeroBracket("energy_gradient_flow needs mu0 != 0");
  BracketTensor nu = (1.0 / scale) * mu0;

  GradientFlowResult out;
  double e0 = 0.0;
  BracketTensor d = descent_direction(nu, &e0);
  double res = d.norm();
  double step = 0.1;
  const double eps = 8.0 * std::numeric_limits<double>::epsilon();

  long k = 0;
  for (; k < opts.maxSteps && res > opts.critTol; ++k) {
    step = std::min(2.0 * step, 1.0);
    BracketTensor next;
    double e1 = 0.0;
    for (;;) {
      next = nu + step * d;
      next *= 1.0 / next.norm();
      e1 = energy(next);
      if (e1 <= e0 - 1e-4 * step * res * res) break;
      // Near a critical point the Armijo decrease falls below roundoff in E.
      if (e1 - e0 <= eps * e0 && step < 1e-3) break;
      step *= 0.5;
      if (step < 1e-30) break;
    }
    out.maxEnergyIncrease = std::max(out.maxEnergyIncrease, e1 - e0);
    nu = std::move(next);
    d = descent_direction(nu, &e0);
    res = d.norm();
  }

  out.critical = scale * nu;
  out.residual = res;
  out.steps = k;
  out.energy = e0;
  if (res > opts.critTol) {
    throw MaxStepsExceeded("energy gradient flow stopped at residual " + std::to_string(res), out);
  }
  return out;
}

StratumLabel canonical_label(const Endomorphism& m_value, const BracketTensor& critical) {
  const int n = static_cast<int>(m_value.rows());
  Eigen::SelfAdjointEigenSolver<Endomorphism> es(0.5 * (m_value + m_value.transpose()));
  Vector ev = es.eigenvalues();
  // snap clusters to their mean so the gradings are exact
  for (int i = 0; i < n;) {
    int j = i + 1;
    while (j < n && ev[j] - ev[j - 1] <= kEigTol) ++j;
    const double mean = ev.segment(i, j - i).mean();
    ev.segment(i, j - i).setConstant(mean);
    i = j;
  }
  StratumLabel lab;
  lab.beta = ev.asDiagonal();
  lab.betaPlus = lab.beta + lab.beta.squaredNorm() * Endomorphism::Identity(n, n);
  lab.frame = es.eigenvectors().transpose();
  lab.criticalBracket = act(lab.frame, critical);

  const Vector bp = lab.betaPlus.diagonal();
  std::vector<double> ad, pi;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ad.push_back(bp[i] - bp[j]);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) pi.push_back(bp[k] - bp[i] - bp[j]);
  lab.adEigs = cluster(ad, kEigTol);
  lab.piEigs = cluster(pi, kEigTol);
  return lab;
}

StratumLabel stratum_label(const BracketTensor& mu0, const GradientFlowOptions& opts) {
  const GradientFlowResult gf = energy_gradient_flow(mu0, opts);
  StratumLabel lab = canonical_label(moment_map(gf.critical), gf.critical);
  lab.residual = gf.residual;
  return lab;
}

bool same_label(const StratumLabel& a, const StratumLabel& b, double tol) {
  if (a.beta.rows() != b.beta.rows()) return false;
  return (a.beta.diagonal() - b.beta.diagonal()).cwiseAbs().maxCoeff() <= tol;
}

BetaDecomposition beta_decomposition(const Endomorphism& beta) {
  const int n = static_cast<int>(beta.rows());
  if (beta.cols() != n) throw NonCanonicalBeta("beta must be square");
  const Endomorphism off = beta - Endomorphism(beta.diagonal().asDiagonal());
  const double bscale = std::max(1.0, beta.norm());
  if (off.norm() > 1e-12 * bscale) throw NonCanonicalBeta("beta is not diagonal");
  for (int i = 1; i < n; ++i) {
    if (beta(i, i) < beta(i - 1, i - 1) - 1e-12 * bscale) throw NonCanonicalBeta("beta diagonal is not sorted");
  }

  BetaDecomposition dec;
  dec.b = beta.diagonal();
  dec.bPlus = dec.b + Vector::Constant(n, dec.b.squaredNorm());
  dec.group.assign(static_cast<std::size_t>(n), 0);
  for (int i = 1; i < n; ++i) dec.group[i] = dec.group[i - 1] + (dec.b[i] - dec.b[i - 1] > kEigTol ? 1 : 0);

  auto unit = [n](int i, int j) {
    Endomorphism e = Endomorphism::Zero(n, n);
    e(i, j) = 1.0;
    return e;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (dec.group[i] == dec.group[j]) {
        dec.g_beta.push_back(unit(i, j));
      } else if (dec.group[i] > dec.group[j]) {
        dec.u_beta.push_back(unit(i, j));
        dec.k_u_beta.push_back((unit(i, j) - unit(j, i)) / std::sqrt(2.0));
      }
    }

  // h_beta: g_beta minus its beta direction, orthonormalized
  const Endomorphism bhat = beta / beta.norm();
  Eigen::MatrixXd cols(n * n, static_cast<Eigen::Index>(dec.g_beta.size()));
  for (std::size_t c = 0; c < dec.g_beta.size(); ++c) {
    Endomorphism a = dec.g_beta[c] - gl_dot(dec.g_beta[c], bhat) * bhat;
    cols.col(static_cast<Eigen::Index>(c)) = Eigen::Map<const Vector>(a.data(), n * n);
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(cols, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  for (Eigen::Index c = 0; c < s.size(); ++c) {
    if (s[c] <= 1e-10 * s[0]) break;
    Vector v = svd.matrixU().col(c);
    dec.h_beta.push_back(Eigen::Map<const Endomorphism>(v.data(), n, n));
  }

  dec.sl_beta = dec.h_beta;
  dec.sl_adEig.assign(dec.h_beta.size(), 0.0);
  for (const auto& e : dec.u_beta) {
    Eigen::Index i = 0, j = 0;
    e.cwiseAbs().maxCoeff(&i, &j);
    dec.sl_beta.push_back(e);
    dec.sl_adEig.push_back(dec.bPlus[i] - dec.bPlus[j]);
  }

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double r = dec.bPlus[k] - dec.bPlus[i] - dec.bPlus[j];
        auto it = std::find_if(dec.V_grading.begin(), dec.V_grading.end(),
                               [&](const GradedComponent& g) { return std::abs(g.r - r) <= kEigTol; });
        if (it == dec.V_grading.end()) {
          dec.V_grading.push_back({r, {}});
          it = dec.V_grading.end() - 1;
        }
        it->entries.push_back({i, j, k});
      }
  std::sort(dec.V_grading.begin(), dec.V_grading.end(),
            [](const GradedComponent& a, const GradedComponent& b) { return a.r < b.r; });
  return dec;
}

BetaDecomposition beta_decomposition(const StratumLabel& label) { return beta_decomposition(label.beta); }

Endomorphism project_qbeta(const Endomorphism& a, const BetaDecomposition& dec) {
  const int n = dec.dim();
  Endomorphism q = Endomorphism::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (dec.group[i] == dec.group[j]) {
        q(i, j) = a(i, j);
      } else if (dec.group[i] > dec.group[j]) {
        q(i, j) = a(i, j) + a(j, i);
      }
    }
  return q;
}

Endomorphism project_onto(const Endomorphism& a, const std::vector<Endomorphism>& basis) {
  Endomorphism out = Endomorphism::Zero(a.rows(), a.cols());
  for (const auto& e : basis) out += gl_dot(a, e) * e;
  return out;
}

namespace {

double component_sq(const BracketTensor& mu, const GradedComponent& g) {
  double s = 0.0;
  for (const auto& e : g.entries) {
    const double v = mu(e[0], e[1], e[2]);
    s += 2.0 * v * v;  // both orderings of the pair
  }
  return s;
}

}  // namespace

GaugeCheck check_gauged(const BracketTensor& mu, const BetaDecomposition& dec) {
  if (mu.dim() != dec.dim()) throw DimensionMismatch("bracket and beta dimensions differ");
  GaugeCheck out;
  double neg = 0.0, zero = 0.0, pos = 0.0;
  for (const auto& g : dec.V_grading) {
    if (g.r < -kEigTol) neg += component_sq(mu, g);
    else if (g.r <= kEigTol) zero += component_sq(mu, g);
    else pos += component_sq(mu, g);
  }
  out.posComponentNorm = std::sqrt(pos);
  out.negComponentNorm = std::sqrt(neg);
  out.v0ComponentNorm = std::sqrt(zero);
  out.inVgeq0 = out.negComponentNorm <= kGaugeTol * mu.norm();
  return out;
}

GaugeCheck check_gauged(const BracketTensor& mu, const StratumLabel& label) {
  return check_gauged(mu, beta_decomposition(label));
}

double graded_component_norm(const BracketTensor& mu, const BetaDecomposition& dec, double r) {
  for (const auto& g : dec.V_grading) {
    if (std::abs(g.r - r) <= kEigTol) return std::sqrt(component_sq(mu, g));
  }
  return 0.0;
}

}  // namespace bflow
