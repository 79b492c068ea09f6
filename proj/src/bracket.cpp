#include "bracketflow/bracket.hpp"

#include "bracketflow/errors.hpp"

#include <cmath>
#include <string>

namespace bflow {

BracketTensor::BracketTensor(int dim) : n_(dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw DimensionMismatch("bracket dimension must be in [1, " + std::to_string(kMaxDim) +
                            "], got " + std::to_string(dim));
  }
  c_.assign(static_cast<std::size_t>(dim) * dim * dim, 0.0);
}

void BracketTensor::set(int i, int j, int k, double v) {
  if (i == j) {
    if (v != 0.0) throw DimensionMismatch("diagonal bracket entries must vanish");
    return;
  }
  c_[index(i, j, k)] = v;
  c_[index(j, i, k)] = -v;
}

void BracketTensor::add(int i, int j, int k, double v) {
  if (i == j) return;
  c_[index(i, j, k)] += v;
  c_[index(j, i, k)] -= v;
}

Vector BracketTensor::apply(const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& y) const {
  Vector out = Vector::Zero(n_);
  for (int i = 0; i < n_; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < n_; ++j) {
      const double w = x[i] * y[j];
      if (w == 0.0) continue;
      for (int k = 0; k < n_; ++k) out[k] += w * (*this)(i, j, k);
    }
  }
  return out;
}

double BracketTensor::dot(const BracketTensor& other) const {
  if (other.n_ != n_) throw DimensionMismatch("bracket dimensions differ");
  double s = 0.0;
  for (std::size_t t = 0; t < c_.size(); ++t) s += c_[t] * other.c_[t];
  return s;
}

double BracketTensor::norm() const { return std::sqrt(norm_squared()); }

bool BracketTensor::is_zero(double tol) const {
  for (double v : c_) {
    if (std::abs(v) > tol) return false;
  }
  return true;
}

Vector BracketTensor::as_vector() const {
  return Eigen::Map<const Vector>(c_.data(), static_cast<Eigen::Index>(c_.size()));
}

BracketTensor BracketTensor::from_vector(int dim, const Eigen::Ref<const Vector>& v) {
  BracketTensor out(dim);
  if (static_cast<std::size_t>(v.size()) != out.c_.size()) throw DimensionMismatch("vector size does not match n^3");
  for (std::size_t t = 0; t < out.c_.size(); ++t) out.c_[t] = v[static_cast<Eigen::Index>(t)];
  return out;
}

void BracketTensor::antisymmetrize() {
  for (int i = 0; i < n_; ++i) {
    for (int k = 0; k < n_; ++k) c_[index(i, i, k)] = 0.0;
    for (int j = i + 1; j < n_; ++j) {
      for (int k = 0; k < n_; ++k) {
        const double a = 0.5 * (c_[index(i, j, k)] - c_[index(j, i, k)]);
        c_[index(i, j, k)] = a;
        c_[index(j, i, k)] = -a;
      }
    }
  }
}

BracketTensor& BracketTensor::operator+=(const BracketTensor& o) {
  if (o.n_ != n_) throw DimensionMismatch("bracket dimensions differ");
  for (std::size_t t = 0; t < c_.size(); ++t) c_[t] += o.c_[t];
  return *this;
}

BracketTensor& BracketTensor::operator-=(const BracketTensor& o) {
  if (o.n_ != n_) throw DimensionMismatch("bracket dimensions differ");
  for (std::size_t t = 0; t < c_.size(); ++t) c_[t] -= o.c_[t];
  return *this;
}

BracketTensor& BracketTensor::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

BracketTensor bracket_basis_element(int n, int i, int j, int k) {
  BracketTensor e(n);
  e.set(i, j, k, 1.0 / std::sqrt(2.0));
  return e;
}

double jacobi_residual(const BracketTensor& mu) {
  const int n = mu.dim();
  double sum = 0.0;
  std::vector<double> cyc(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        std::fill(cyc.begin(), cyc.end(), 0.0);
        for (int m = 0; m < n; ++m) {
          const double a = mu(i, j, m);
          const double b = mu(j, l, m);
          const double c = mu(l, i, m);
          if (a == 0.0 && b == 0.0 && c == 0.0) continue;
          for (int k = 0; k < n; ++k) cyc[k] += a * mu(m, l, k) + b * mu(m, i, k) + c * mu(m, j, k);
        }
        for (double v : cyc) sum += v * v;
      }
    }
  }
  return std::sqrt(sum);
}

double jacobi_tolerance(const BracketTensor& mu) { return 1e-10 * (1.0 + mu.norm_squared()); }

bool is_lie_bracket(const BracketTensor& mu) { return jacobi_residual(mu) <= jacobi_tolerance(mu); }

void require_lie(const BracketTensor& mu, const char* where) {
  const double r = jacobi_residual(mu);
  if (r > jacobi_tolerance(mu)) {
    throw NotALieBracket(std::string(where) + ": Jacobi residual " + std::to_string(r) + " exceeds tolerance");
  }
}

BracketTensor act(const Endomorphism& h, const BracketTensor& mu) {
  const int n = mu.dim();
  if (h.rows() != n || h.cols() != n) throw DimensionMismatch("gauge has wrong shape");
  Eigen::PartialPivLU<Endomorphism> lu(h);
  const double det = lu.determinant();
  const double scale = std::pow(h.norm() / std::sqrt(static_cast<double>(n)), n);
  if (!(std::abs(det) > 1e-12 * scale)) throw SingularGauge("|det h| = " + std::to_string(std::abs(det)));
  return act(h, lu.inverse(), mu);
}

BracketTensor act(const Endomorphism& h, const Endomorphism& hinv, const BracketTensor& mu) {
  const int n = mu.dim();
  if (h.rows() != n || h.cols() != n || hinv.rows() != n || hinv.cols() != n) {
    throw DimensionMismatch("gauge has wrong shape");
  }

  // out(i,j,k) = sum h(k,l) c(a,b,l) hinv(a,i) hinv(b,j), contracted one index at a time.
  std::vector<double> t1(mu.size(), 0.0), t2(mu.size(), 0.0);
  auto at = [n](int i, int j, int k) { return (static_cast<std::size_t>(i) * n + j) * n + k; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int l = 0; l < n; ++l) {
        const double v = mu(a, b, l);
        if (v == 0.0) continue;
        for (int i = 0; i < n; ++i) t1[at(i, b, l)] += hinv(a, i) * v;
      }
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < n; ++b)
      for (int l = 0; l < n; ++l) {
        const double v = t1[at(i, b, l)];
        if (v == 0.0) continue;
        for (int j = 0; j < n; ++j) t2[at(i, j, l)] += hinv(b, j) * v;
      }
  BracketTensor out(n);
  auto& o = out.data();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const double v = t2[at(i, j, l)];
        if (v == 0.0) continue;
        for (int k = 0; k < n; ++k) o[at(i, j, k)] += h(k, l) * v;
      }
  out.antisymmetrize();
  return out;
}

BracketTensor pi_action(const Endomorphism& a, const BracketTensor& mu) {
  const int n = mu.dim();
  if (a.rows() != n || a.cols() != n) throw DimensionMismatch("endomorphism has wrong shape");
  BracketTensor out(n);
  auto& o = out.data();
  auto at = [n](int i, int j, int k) { return (static_cast<std::size_t>(i) * n + j) * n + k; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int p = 0; p < n; ++p) {
          s += a(k, p) * mu(i, j, p);
          s -= a(p, i) * mu(p, j, k);
          s -= a(p, j) * mu(i, p, k);
        }
        o[at(i, j, k)] = s;
      }
    }
  }
  return out;
}

Endomorphism ad_map(const BracketTensor& mu, const Eigen::Ref<const Vector>& x) {
  const int n = mu.dim();
  if (x.size() != n) throw DimensionMismatch("vector has wrong size");
  Endomorphism ad = Endomorphism::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) ad(k, j) += x[i] * mu(i, j, k);
  }
  return ad;
}

std::vector<Endomorphism> ad_basis(const BracketTensor& mu) {
  const int n = mu.dim();
  std::vector<Endomorphism> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(ad_map(mu, Vector::Unit(n, i)));
  return out;
}

Eigen::MatrixXd pi_matrix(const BracketTensor& mu) {
  const int n = mu.dim();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(mu.size()), n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Endomorphism e = Endomorphism::Zero(n, n);
      e(a, b) = 1.0;
      m.col(a * n + b) = pi_action(e, mu).as_vector();
    }
  }
  return m;
}

Eigen::MatrixXd pi_operator(const Endomorphism& a) {
  const int n = static_cast<int>(a.rows());
  const int big = n * n * n;
  Eigen::MatrixXd op(big, big);
  for (int t = 0; t < big; ++t) {
    BracketTensor e(n);
    e.data()[static_cast<std::size_t>(t)] = 1.0;
    op.col(t) = pi_action(a, e).as_vector();
  }
  return op;
}

}  // namespace bflow
