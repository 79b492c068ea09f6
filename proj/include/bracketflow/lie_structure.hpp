#pragma once

#include "bracketflow/bracket.hpp"

#include <vector>

namespace bflow {

inline constexpr double kRankTol = 1e-8;
inline constexpr double kNilpTol = 1e-8;

/// Orthonormal basis (as columns) of the column span of `vectors`; singular
/// values at or below rel_tol * max(sigma_max, floor) are dropped.
Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& vectors, double rel_tol = kRankTol, double floor = 0.0);

/// Orthonormal basis of the orthogonal complement of span(basis) in R^n.
Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& basis, int n);

/// Orthonormal basis of the right null space of `m`: singular values at or
/// below rel_tol * max(sigma_max, floor) count as zero.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double rel_tol = kRankTol, double floor = 0.0);

/// Dimensions of the derived series s = s^0 > s^1 = mu(s,s) > ... ending at
/// 0 or at the first repeat.
std::vector<int> derived_series(const BracketTensor& mu);
std::vector<int> lower_central_series(const BracketTensor& mu);
bool is_solvable(const BracketTensor& mu);
bool is_nilpotent(const BracketTensor& mu);

/// ad X nilpotent, decided by |(ad X)^n| <= tol |ad X|^n.
bool is_nilpotent_endomorphism(const Endomorphism& a, double tol = kNilpTol);

struct Nilradical {
  Eigen::MatrixXd basis;      // n x dim(nilradical), orthonormal columns
  Eigen::MatrixXd complement; // n x rank, orthonormal columns
  int rank = 0;               // codimension of the nilradical
};

/// Nilradical {X : ad X nilpotent} of a solvable Lie bracket.
///
/// The roots of a solvable algebra are linear functionals that vanish on the
/// nilradical. For a generic X0, tr(ad Y (ad X0)^k) = sum_r lambda_r(Y)
/// lambda_r(X0)^k, so the common kernel of these functionals over several
/// X0 and k = 0..n-1 is exactly the nilradical. The result is verified to be
/// an ideal of nilpotent elements.
Nilradical nilradical(const BracketTensor& mu);

/// Orthonormal basis (Frobenius) of Der(mu) = {A : pi(A) mu = 0}; each
/// element is returned as an n x n matrix.
std::vector<Endomorphism> derivation_space(const BracketTensor& mu);

/// Distance from A to span(basis) in the Frobenius norm; basis assumed orthonormal.
double distance_to_span(const Endomorphism& a, const std::vector<Endomorphism>& basis);

}  // namespace bflow
