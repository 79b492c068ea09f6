#include "bracketflow/lie_structure.hpp"

#include "bracketflow/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <random>

namespace bflow {

Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& vectors, double rel_tol, double floor) {
  const auto n = vectors.rows();
  if (vectors.cols() == 0) return Eigen::MatrixXd(n, 0);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(vectors, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s[0] : 0.0;
  const double thresh = rel_tol * std::max(smax, floor);
  int r = 0;
  while (r < s.size() && s[r] > thresh) ++r;
  return svd.matrixU().leftCols(r);
}

Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& basis, int n) {
  if (basis.cols() == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  return q.rightCols(n - basis.cols());
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double rel_tol, double floor) {
  const auto cols = m.cols();
  if (m.rows() == 0) return Eigen::MatrixXd::Identity(cols, cols);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s[0] : 0.0;
  int r = 0;
  while (r < s.size() && s[r] > rel_tol * std::max(smax, floor)) ++r;
  return svd.matrixV().rightCols(cols - r);
}

namespace {

Eigen::MatrixXd bracket_products(const BracketTensor& mu, const Eigen::MatrixXd& left, const Eigen::MatrixXd& right,
                                 bool upper_only) {
  std::vector<Vector> cols;
  for (Eigen::Index a = 0; a < left.cols(); ++a) {
    for (Eigen::Index b = upper_only ? a + 1 : 0; b < right.cols(); ++b) {
      cols.push_back(mu.apply(left.col(a), right.col(b)));
    }
  }
  Eigen::MatrixXd m(mu.dim(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t t = 0; t < cols.size(); ++t) m.col(static_cast<Eigen::Index>(t)) = cols[t];
  return m;
}

}  // namespace

std::vector<int> derived_series(const BracketTensor& mu) {
  require_lie(mu, "derived_series");
  const int n = mu.dim();
  std::vector<int> dims{n};
  Eigen::MatrixXd cur = Eigen::MatrixXd::Identity(n, n);
  const double scale = mu.norm();
  while (cur.cols() > 0) {
    Eigen::MatrixXd next = orthonormal_span(bracket_products(mu, cur, cur, true), kRankTol, scale);
    dims.push_back(static_cast<int>(next.cols()));
    if (next.cols() == cur.cols()) break;
    cur = std::move(next);
  }
  return dims;
}

std::vector<int> lower_central_series(const BracketTensor& mu) {
  require_lie(mu, "lower_central_series");
  const int n = mu.dim();
  std::vector<int> dims{n};
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd cur = id;
  const double scale = mu.norm();
  while (cur.cols() > 0) {
    Eigen::MatrixXd next = orthonormal_span(bracket_products(mu, id, cur, false), kRankTol, scale);
    dims.push_back(static_cast<int>(next.cols()));
    if (next.cols() == cur.cols()) break;
    cur = std::move(next);
  }
  return dims;
}

bool is_solvable(const BracketTensor& mu) { return derived_series(mu).back() == 0; }
bool is_nilpotent(const BracketTensor& mu) { return lower_central_series(mu).back() == 0; }

bool is_nilpotent_endomorphism(const Endomorphism& a, double tol) {
  const double na = a.norm();
  if (na == 0.0) return true;
  const Endomorphism u = a / na;
  Endomorphism p = u;
  for (Eigen::Index k = 1; k < a.rows(); ++k) p = p * u;
  return p.norm() <= tol;
}

Nilradical nilradical(const BracketTensor& mu) {
  require_lie(mu, "nilradical");
  if (!is_solvable(mu)) throw NotSolvable("nilradical requires a solvable bracket");
  const int n = mu.dim();
  Nilradical out;
  if (is_nilpotent(mu)) {
    out.basis = Eigen::MatrixXd::Identity(n, n);
    out.complement = Eigen::MatrixXd(n, 0);
    out.rank = 0;
    return out;
  }

  const std::vector<Endomorphism> ads = ad_basis(mu);
  double ad_scale = 0.0;
  for (const auto& a : ads) ad_scale = std::max(ad_scale, a.norm());

  std::mt19937_64 gen(0x5eed'2a11ULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Vector> rows;

  for (int attempt = 0; attempt < 6; ++attempt) {
    for (int probe = 0; probe < 3; ++probe) {
      Vector x0(n);
      for (int i = 0; i < n; ++i) x0[i] = normal(gen);
      const Endomorphism a = ad_map(mu, x0);
      const double rho = a.eigenvalues().cwiseAbs().maxCoeff();
      if (!(rho > 1e-12 * std::max(ad_scale, 1e-300))) continue;
      const Endomorphism unit = a / rho;
      Endomorphism power = Endomorphism::Identity(n, n);
      for (int k = 0; k < n; ++k) {
        Vector row(n);
        for (int i = 0; i < n; ++i) row[i] = (ads[static_cast<std::size_t>(i)] * power).trace();
        rows.push_back(row);
        power = power * unit;
      }
    }
    Eigen::MatrixXd t(static_cast<Eigen::Index>(rows.size()), n);
    for (std::size_t r = 0; r < rows.size(); ++r) t.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
    Eigen::MatrixXd cand = null_space(t, kRankTol);

    bool ok = cand.cols() < n;
    for (Eigen::Index c = 0; ok && c < cand.cols(); ++c) {
      ok = is_nilpotent_endomorphism(ad_map(mu, cand.col(c)));
    }
    if (ok) {
      // ideal check: mu(e_i, nilradical) stays in the nilradical
      const Eigen::MatrixXd proj_out = Eigen::MatrixXd::Identity(n, n) - cand * cand.transpose();
      for (int i = 0; ok && i < n; ++i) {
        const Eigen::MatrixXd img = ads[static_cast<std::size_t>(i)] * cand;
        ok = (proj_out * img).norm() <= kRankTol * std::max(1.0, ad_scale);
      }
    }
    if (ok) {
      out.basis = cand;
      out.complement = orthogonal_complement(cand, n);
      out.rank = static_cast<int>(out.complement.cols());
      return out;
    }
  }
  throw NonConvergence("nilradical: root functionals did not isolate a nilpotent ideal");
}

std::vector<Endomorphism> derivation_space(const BracketTensor& mu) {
  const int n = mu.dim();
  const Eigen::MatrixXd ns = null_space(pi_matrix(mu), kRankTol);
  std::vector<Endomorphism> out;
  out.reserve(static_cast<std::size_t>(ns.cols()));
  for (Eigen::Index c = 0; c < ns.cols(); ++c) {
    Endomorphism a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = ns(i * n + j, c);
    out.push_back(std::move(a));
  }
  return out;
}

double distance_to_span(const Endomorphism& a, const std::vector<Endomorphism>& basis) {
  Endomorphism r = a;
  for (const auto& b : basis) r -= gl_dot(r, b) * b;
  return r.norm();
}

}  // namespace bflow
