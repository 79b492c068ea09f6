#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace bflow {

/// Real n x n matrix acting on the underlying vector space.
using Endomorphism = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr int kMaxDim = 16;

/// Structure constants of a skew-symmetric bilinear map mu on R^n:
///   mu(e_i, e_j) = sum_k c(i,j,k) e_k.
///
/// Storage is dense over all ordered pairs (i,j); set() keeps the
/// antisymmetry c(i,j,k) = -c(j,i,k). The inner product sums over all
/// ordered pairs, so the bracket mu(e1,e2) = e3 has squared norm 2.
class BracketTensor {
 public:
  BracketTensor() = default;
  explicit BracketTensor(int dim);

  int dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return c_.size(); }

  double operator()(int i, int j, int k) const { return c_[index(i, j, k)]; }

  /// Sets c(i,j,k) = v and c(j,i,k) = -v. Requires i != j.
  void set(int i, int j, int k, double v);
  /// Adds v to c(i,j,k) and -v to c(j,i,k).
  void add(int i, int j, int k, double v);

  /// mu(x, y) for arbitrary vectors.
  Vector apply(const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& y) const;

  double dot(const BracketTensor& other) const;
  double norm_squared() const { return dot(*this); }
  double norm() const;
  bool is_zero(double tol = 0.0) const;

  /// Flattened view (index = (i*n + j)*n + k); used for linear algebra on V(s).
  const std::vector<double>& data() const noexcept { return c_; }
  std::vector<double>& data() noexcept { return c_; }
  Vector as_vector() const;
  static BracketTensor from_vector(int dim, const Eigen::Ref<const Vector>& v);

  /// Replaces the stored tensor by its antisymmetric part (c - c^T)/2 in (i,j).
  void antisymmetrize();

  BracketTensor& operator+=(const BracketTensor& o);
  BracketTensor& operator-=(const BracketTensor& o);
  BracketTensor& operator*=(double s);

  friend BracketTensor operator+(BracketTensor a, const BracketTensor& b) { return a += b; }
  friend BracketTensor operator-(BracketTensor a, const BracketTensor& b) { return a -= b; }
  friend BracketTensor operator*(double s, BracketTensor a) { return a *= s; }
  friend BracketTensor operator*(BracketTensor a, double s) { return a *= s; }
  friend BracketTensor operator-(BracketTensor a) { return a *= -1.0; }

  bool operator==(const BracketTensor& o) const = default;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }

  int n_ = 0;
  std::vector<double> c_;
};

/// Dimension of V(s) = Lambda^2 s^* (x) s.
inline int bracket_space_dim(int n) { return n * n * (n - 1) / 2; }

/// Orthonormal basis element of V(s) for the pair i<j and output k:
/// c(i,j,k) = -c(j,i,k) = 1/sqrt(2).
BracketTensor bracket_basis_element(int n, int i, int j, int k);

/// Frobenius inner product tr(A B^T) on gl(s).
inline double gl_dot(const Endomorphism& a, const Endomorphism& b) { return (a.array() * b.array()).sum(); }

/// Euclidean norm of the cyclic Jacobi sum over all ordered basis triples.
double jacobi_residual(const BracketTensor& mu);

/// Default Jacobi tolerance 1e-10 (1 + |mu|^2).
double jacobi_tolerance(const BracketTensor& mu);

bool is_lie_bracket(const BracketTensor& mu);

/// Throws NotALieBracket when the Jacobi residual exceeds the tolerance.
void require_lie(const BracketTensor& mu, const char* where);

/// Change-of-basis action (h . mu)(x,y) = h mu(h^{-1}x, h^{-1}y).
/// Throws SingularGauge when |det h| <= 1e-12 (|h|_F / sqrt n)^n.
BracketTensor act(const Endomorphism& h, const BracketTensor& mu);
/// Same action with h^{-1} supplied by the caller; no conditioning check.
BracketTensor act(const Endomorphism& h, const Endomorphism& hinv, const BracketTensor& mu);

/// Infinitesimal representation (pi(A) mu)(x,y) = A mu(x,y) - mu(Ax,y) - mu(x,Ay).
BracketTensor pi_action(const Endomorphism& a, const BracketTensor& mu);

/// ad_mu(X): Y -> mu(X, Y).
Endomorphism ad_map(const BracketTensor& mu, const Eigen::Ref<const Vector>& x);

/// ad_mu(e_i) for every basis vector.
std::vector<Endomorphism> ad_basis(const BracketTensor& mu);

/// Dense n^3 x n^2 matrix of A -> pi(A) mu, columns indexed by (a*n + b) for E_ab.
Eigen::MatrixXd pi_matrix(const BracketTensor& mu);

/// Matrix of the linear map pi(A) on V(s), acting on flattened tensors.
Eigen::MatrixXd pi_operator(const Endomorphism& a);

}  // namespace bflow
