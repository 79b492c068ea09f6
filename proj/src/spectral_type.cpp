#include "bracketflow/spectral_type.hpp"

#include "bracketflow/curvature.hpp"
#include "bracketflow/errors.hpp"
#include "bracketflow/lie_structure.hpp"

#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

namespace bflow {

std::string to_string(TypeKind k) {
  switch (k) {
    case TypeKind::RealType: return "RealType";
    case TypeKind::ImaginaryType: return "ImaginaryType";
    case TypeKind::MixedNonReal: return "MixedNonReal";
    case TypeKind::Nilpotent: return "Nilpotent";
    case TypeKind::Abelian: return "Abelian";
  }
  return "?";
}

namespace {

// Orthonormal basis adapted to s > n = C^0 > C^1 > ... (lower central series
// of the nilradical). Each C^k is invariant under every ad x, so ad x is block
// triangular in this basis and its spectrum is the union of the diagonal
// blocks. On s/n and on the quotients of the series, ad of a nilradical
// element is exactly zero, which the full eigensolver would only resolve to
// about sqrt(eps).
struct AdFlag {
  Eigen::MatrixXd q;
  std::vector<Eigen::Index> blocks;  // block sizes in column order
};

AdFlag ad_flag(const BracketTensor& mu) {
  const int n = mu.dim();
  AdFlag f;
  Nilradical nr;
  try {
    nr = nilradical(mu);
  } catch (const Error&) {
    f.q = Eigen::MatrixXd::Identity(n, n);
    f.blocks = {n};
    return f;
  }
  std::vector<Eigen::MatrixXd> parts;
  if (nr.complement.cols() > 0) parts.push_back(nr.complement);
  Eigen::MatrixXd level = nr.basis;
  while (level.cols() > 0) {
    Eigen::MatrixXd images(n, nr.basis.cols() * level.cols());
    Eigen::Index c = 0;
    for (Eigen::Index a = 0; a < nr.basis.cols(); ++a)
      for (Eigen::Index b = 0; b < level.cols(); ++b) images.col(c++) = mu.apply(nr.basis.col(a), level.col(b));
    const Eigen::MatrixXd next = orthonormal_span(images, kRankTol, mu.norm());
    // part of level orthogonal to next
    const Eigen::MatrixXd proj = level - next * (next.transpose() * level);
    Eigen::MatrixXd piece = orthonormal_span(proj, kRankTol, 1.0);
    if (piece.cols() == 0) {
      parts.push_back(level);
      break;
    }
    parts.push_back(piece);
    level = next;
  }
  Eigen::Index total = 0;
  for (const auto& p : parts) total += p.cols();
  if (total != n) {
    f.q = Eigen::MatrixXd::Identity(n, n);
    f.blocks = {n};
    return f;
  }
  f.q.resize(n, n);
  Eigen::Index c = 0;
  for (const auto& p : parts) {
    f.q.middleCols(c, p.cols()) = p;
    f.blocks.push_back(p.cols());
    c += p.cols();
  }
  return f;
}

Eigen::VectorXcd ad_spectrum(const BracketTensor& mu, const AdFlag& f, const Vector& x) {
  const Eigen::MatrixXd a = f.q.transpose() * ad_map(mu, x) * f.q;
  Eigen::VectorXcd out(a.rows());
  Eigen::Index c = 0;
  for (Eigen::Index b : f.blocks) {
    out.segment(c, b) = a.block(c, c, b, b).eigenvalues();
    c += b;
  }
  return out;
}

double phi_in(const BracketTensor& mu, const AdFlag& f, const Vector& x) {
  if (x.isZero(0.0)) return 0.0;
  return ad_spectrum(mu, f, x).real().cwiseAbs().maxCoeff();
}

}  // namespace

double phi(const BracketTensor& mu, const Vector& x) { return phi_in(mu, ad_flag(mu), x); }

double psi(const BracketTensor& mu, const Vector& x) {
  if (x.isZero(0.0)) return 0.0;
  return ad_spectrum(mu, ad_flag(mu), x).cwiseAbs().maxCoeff();
}

namespace {

// Directions on the unit sphere of R^d from a fixed generator.
std::vector<Vector> sphere_grid(int d, std::size_t count) {
  std::vector<Vector> out;
  if (d == 1) {
    out.push_back(Vector::Ones(1));
    return out;
  }
  std::mt19937_64 gen(0x9e3779b97f4a7c15ULL + static_cast<unsigned>(d));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < d; ++i) out.push_back(Vector::Unit(d, i));
  while (out.size() < count) {
    Vector v(d);
    for (int i = 0; i < d; ++i) v[i] = normal(gen);
    const double nv = v.norm();
    if (nv > 1e-8) out.push_back(v / nv);
  }
  return out;
}

struct SphereObjective {
  const BracketTensor* mu;
  const Eigen::MatrixXd* frame;
  const AdFlag* flag;
};

double nm_objective(const gsl_vector* x, void* params) {
  const auto* p = static_cast<const SphereObjective*>(params);
  const auto d = p->frame->cols();
  Vector y(d);
  for (Eigen::Index i = 0; i < d; ++i) y[i] = gsl_vector_get(x, static_cast<std::size_t>(i));
  const double ny = y.norm();
  if (ny < 1e-12) return 1e300;
  return phi_in(*p->mu, *p->flag, (*p->frame) * (y / ny));
}

std::pair<double, Vector> nelder_mead(const SphereObjective& obj, const Vector& start) {
  const auto d = static_cast<std::size_t>(start.size());
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, d);
  gsl_vector* x = gsl_vector_alloc(d);
  gsl_vector* step = gsl_vector_alloc(d);
  for (std::size_t i = 0; i < d; ++i) {
    gsl_vector_set(x, i, start[static_cast<Eigen::Index>(i)]);
    gsl_vector_set(step, i, 0.1);
  }
  gsl_multimin_function f{&nm_objective, d, const_cast<SphereObjective*>(&obj)};
  gsl_multimin_fminimizer_set(s, &f, x, step);
  for (int iter = 0; iter < 2000; ++iter) {
    if (gsl_multimin_fminimizer_iterate(s) != 0) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-9) == GSL_SUCCESS) break;
  }
  Vector y(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) y[static_cast<Eigen::Index>(i)] = gsl_vector_get(s->x, i);
  const double val = s->fval;
  gsl_vector_free(step);
  gsl_vector_free(x);
  gsl_multimin_fminimizer_free(s);
  return {val, y / y.norm()};
}

}  // namespace

SigmaResult sigma_a(const BracketTensor& mu) {
  const Nilradical nr = nilradical(mu);
  if (nr.rank == 0) throw NilpotentInput("sigma_a needs a non-nilpotent bracket");
  const int d = nr.rank;
  const Eigen::MatrixXd& frame = nr.complement;
  const auto grid = sphere_grid(d, static_cast<std::size_t>(64) << d);
  const AdFlag flag = ad_flag(mu);

  std::vector<std::pair<double, std::size_t>> vals;
  vals.reserve(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) vals.emplace_back(phi_in(mu, flag, frame * grid[g]), g);
  std::sort(vals.begin(), vals.end());

  SigmaResult best{vals.front().first, frame * grid[vals.front().second]};
  if (d == 1) return best;
  SphereObjective obj{&mu, &frame, &flag};
  const std::size_t starts = std::min<std::size_t>(4, vals.size());
  for (std::size_t s = 0; s < starts; ++s) {
    auto [v, y] = nelder_mead(obj, grid[vals[s].second]);
    if (v < best.value) best = {v, frame * y};
  }
  return best;
}

TypeReport classify_type(const BracketTensor& mu) {
  TypeReport rep;
  if (mu.is_zero()) {
    require_lie(mu, "classify_type");
    rep.kind = TypeKind::Abelian;
    return rep;
  }
  const Nilradical nr = nilradical(mu);
  rep.rank = nr.rank;
  if (nr.rank == 0) {
    rep.kind = TypeKind::Nilpotent;
    return rep;
  }
  const SigmaResult s = sigma_a(mu);
  rep.sigma_a = s.value;
  rep.witness = s.witness;
  if (s.value > kSigmaThreshold) {
    rep.kind = TypeKind::RealType;
    return rep;
  }
  const int n = mu.dim();
  const auto grid = sphere_grid(n, std::min<std::size_t>(static_cast<std::size_t>(64) << std::min(n, 6), 4096));
  const AdFlag flag = ad_flag(mu);
  bool imaginary = true;
  for (const auto& x : grid) {
    if (phi_in(mu, flag, x) > kSigmaThreshold) {
      imaginary = false;
      break;
    }
  }
  rep.kind = imaginary ? TypeKind::ImaginaryType : TypeKind::MixedNonReal;
  rep.sampled = imaginary;
  return rep;
}

bool is_flat_bracket(const BracketTensor& mu) {
  if (!is_solvable(mu)) throw NotSolvable("is_flat_bracket requires a solvable bracket");
  const CurvaturePack p = curvature_pack_unchecked(mu);
  return p.Ric.norm() <= kFlatTol * (1.0 + p.normSq);
}

}  // namespace bflow
