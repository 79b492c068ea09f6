#include "bracketflow/curvature.hpp"

#include "bracketflow/errors.hpp"

namespace bflow {

Endomorphism moment_map(const BracketTensor& mu) {
  const double nsq = mu.norm_squared();
  if (!(nsq > 0.0)) throw ZeroBracket("moment map is undefined at mu = 0");
  const int n = mu.dim();
  // <pi(E_ab) mu, mu> for every a, b; m is the symmetric part.
  Endomorphism g = Endomorphism::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double v = mu(i, j, k);
        if (v == 0.0) continue;
        for (int p = 0; p < n; ++p) {
          g(k, p) += v * mu(i, j, p);
          g(p, i) -= v * mu(p, j, k);
          g(p, j) -= v * mu(i, p, k);
        }
      }
  return 0.5 * (g + g.transpose()) / nsq;
}

Endomorphism moment_part(const BracketTensor& mu) {
  const int n = mu.dim();
  Endomorphism m = Endomorphism::Zero(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) {
      double a = 0.0, b = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          a += mu(x, i, j) * mu(y, i, j);
          b += mu(i, j, x) * mu(i, j, y);
        }
      m(x, y) = m(y, x) = -0.5 * a + 0.25 * b;
    }
  return m;
}

Endomorphism killing_form(const BracketTensor& mu) {
  const int n = mu.dim();
  Endomorphism k = Endomorphism::Zero(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) {
      double s = 0.0;
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) s += mu(x, j, l) * mu(y, l, j);
      k(x, y) = k(y, x) = s;
    }
  return k;
}

Vector mean_curvature_vector(const BracketTensor& mu) {
  const int n = mu.dim();
  Vector h = Vector::Zero(n);
  for (int x = 0; x < n; ++x)
    for (int j = 0; j < n; ++j) h[x] += mu(x, j, j);
  return h;
}

CurvaturePack curvature_pack_unchecked(const BracketTensor& mu) {
  const int n = mu.dim();
  CurvaturePack p;
  p.normSq = mu.norm_squared();
  p.M = moment_part(mu);
  p.K = killing_form(mu);
  p.H = mean_curvature_vector(mu);
  const Endomorphism adh = ad_map(mu, p.H);
  p.RicStar = p.M - 0.5 * p.K;
  p.Ric = p.RicStar - 0.5 * (adh + adh.transpose());
  p.scal = p.Ric.trace();
  p.scalStar = p.RicStar.trace();
  if (p.normSq == 0.0) {
    p.M.setZero(n, n);
    p.K.setZero(n, n);
  }
  return p;
}

CurvaturePack curvature_pack(const BracketTensor& mu) {
  require_lie(mu, "curvature_pack");
  return curvature_pack_unchecked(mu);
}

double scalstar_first_variation(const BracketTensor& mu, const Endomorphism& a) {
  return -2.0 * gl_dot(curvature_pack(mu).RicStar, a);
}

}  // namespace bflow
