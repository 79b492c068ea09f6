#include "oracles.hpp"

#include <Eigen/QR>

#include <vector>

namespace bflow::testkit {

Endomorphism oracle_ricci(const BracketTensor& mu) {
  const int n = mu.dim();
  // nabla[i](k, j) = <nabla_{e_i} e_j, e_k> = 1/2 (c_ij^k - c_jk^i + c_ki^j)
  std::vector<Eigen::MatrixXd> nabla(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) nabla[i](k, j) = 0.5 * (mu(i, j, k) - mu(j, k, i) + mu(k, i, j));

  Endomorphism ric = Endomorphism::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Eigen::MatrixXd r = nabla[a] * nabla[b] - nabla[b] * nabla[a];
      for (int c = 0; c < n; ++c) r -= mu(a, b, c) * nabla[c];
      // Ric(e_b, e_d) += <R(e_a, e_b) e_d, e_a>
      for (int d = 0; d < n; ++d) ric(b, d) += r(a, d);
    }
  }
  return ric;
}

Endomorphism random_matrix(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Endomorphism g(n, n);
  for (Eigen::Index t = 0; t < g.size(); ++t) g.data()[t] = normal(gen);
  return g;
}

Endomorphism random_gauge(int n, std::mt19937_64& gen, double spread, double min_det) {
  for (;;) {
    Endomorphism h = Endomorphism::Identity(n, n) + spread * random_matrix(n, gen);
    if (h.determinant() > min_det) return h;
  }
}

Endomorphism random_orthogonal(int n, std::mt19937_64& gen) {
  Eigen::HouseholderQR<Endomorphism> qr(random_matrix(n, gen));
  return qr.householderQ() * Endomorphism::Identity(n, n);
}

BracketTensor random_antisymmetric(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  BracketTensor mu(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) mu.set(i, j, k, normal(gen));
  return mu;
}

BracketTensor heisenberg_extension(int k, int m, bool extended, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> unif(-1.0, 2.0);
  const int off = extended ? 1 : 0;
  const int n = off + 2 * k + 1 + m;
  BracketTensor mu(n);
  const int z = off + 2 * k;
  for (int i = 0; i < k; ++i) mu.set(off + i, off + k + i, z, 1.0);
  if (extended) {
    // diagonal derivation: p_i + q_i = r on the Heisenberg part, free on R^m
    const double r = unif(gen) + 1.5;
    for (int i = 0; i < k; ++i) {
      const double p = unif(gen);
      mu.set(0, off + i, off + i, p);
      mu.set(0, off + k + i, off + k + i, r - p);
    }
    mu.set(0, z, z, r);
    for (int i = z + 1; i < n; ++i) mu.set(0, i, i, unif(gen));
  }
  return mu;
}

BracketTensor random_solvable(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> family(0, 3);
  BracketTensor mu(n);
  int f = family(gen);
  if (n < 4 && f == 2) f = 0;
  switch (f) {
    case 0: {
      mu = BracketTensor(n);
      const Endomorphism a = random_matrix(n - 1, gen);
      for (int j = 0; j < n - 1; ++j)
        for (int k = 0; k < n - 1; ++k) mu.set(0, j + 1, k + 1, a(k, j));
      break;
    }
    case 1: {
      // R^r acting on R^(n-r) by commuting matrices P D_i P^-1
      const int r = n >= 4 ? 2 : 1;
      const int m = n - r;
      const Endomorphism p = random_gauge(m, gen, 0.5, 0.3);
      const Endomorphism pinv = p.inverse();
      for (int i = 0; i < r; ++i) {
        Vector d(m);
        for (int t = 0; t < m; ++t) d[t] = normal(gen);
        const Endomorphism a = p * d.asDiagonal() * pinv;
        for (int j = 0; j < m; ++j)
          for (int k = 0; k < m; ++k) mu.set(i, r + j, r + k, a(k, j));
      }
      break;
    }
    case 2: {
      const int k = (n - 2) / 2;
      mu = heisenberg_extension(k, n - 2 - 2 * k, true, gen);
      break;
    }
    default: {
      const int k = (n - 1) / 2;
      mu = heisenberg_extension(k, n - 1 - 2 * k, false, gen);
      break;
    }
  }
  return act(random_gauge(n, gen), mu);
}

}  // namespace bflow::testkit
