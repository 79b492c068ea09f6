#pragma once

#include "bracketflow/bracket.hpp"
#include "bracketflow/stratification.hpp"

#include <vector>

namespace bflow {

inline constexpr double kImagTol = 1e-8;
inline constexpr double kKernelTol = 1e-8;

/// delta(A) = -pi(A) mu as an n^3 x n^2 matrix (columns a*n + b for E_ab).
Eigen::MatrixXd delta(const BracketTensor& mu);
/// The transpose map V(s) -> gl(s), <delta(A), v> = <A, delta^t(v)>.
Eigen::MatrixXd delta_adjoint(const BracketTensor& mu);
Endomorphism apply_delta_adjoint(const BracketTensor& mu, const BracketTensor& v);

/// P(A) = 1/2 (S(delta^t delta A) + A^t K + K A) for A in h_beta and
/// 1/2 delta^t delta A for A in u_beta, extended linearly; S is the symmetric part.
Endomorphism P_apply(const BracketTensor& mu, const BetaDecomposition& dec, const Endomorphism& a);

/// Derivative of the generator (Ric*)_q + |Ric*|^2 Id along pi(A) mu. Ric* is
/// quadratic in mu, so the central difference with unit step is exact.
Endomorphism generator_variation(const BracketTensor& mu, const BetaDecomposition& dec, const Endomorphism& a);

/// Matrix of P in the sl_beta basis of dec.
Eigen::MatrixXd P_operator(const BracketTensor& mu, const BetaDecomposition& dec);

struct LinearizationReport {
  int tangentDim = 0;
  std::vector<double> eigenvalues;   // real parts, ascending
  double maxImag = 0.0;
  double maxNonzeroEigenvalue = 0.0; // largest real part among eigenvalues above kKernelTol in modulus
  int kernelDim = 0;
  int kBetaOrbitDim = 0;             // dim pi(k_beta) mu
  bool kernelMatchesKBetaOrbit = false;
  double kernelOrbitResidual = 0.0;  // mutual containment of ker L and pi(k_beta) mu
  std::vector<double> P_spectrum;
  double pSymmetry = 0.0;            // |P - P^t|
  int pKernelDim = 0;
  int derPlusKDim = 0;               // dim (Der + k_beta) cap sl_beta
  double pKernelResidual = 0.0;
  double commutatorNorm = 0.0;       // |[P, ad beta+]| on sl_beta
  double pDiscrepancy = 0.0;         // closed form against the generator variation, through pi(.) mu
  double fdDiscrepancy = 0.0;        // L against central differences of the flow field
  double fdOffTangent = 0.0;         // component of the differenced field outside T
  double minRetainedSingular = 0.0;
  bool rankDeficiencyWarning = false;
  double killingCondition = 0.0;     // condition number of K on its support
};

/// Linearization of the scal*-normalized gauged flow at a normalized soliton in
/// canonical frame (beta = Ric* diagonal). Throws GaugeMismatch when mu is not
/// in V_0 of its beta+ grading.
LinearizationReport L_operator(const BracketTensor& mu, const BetaDecomposition& dec, double fdStep = 1e-5);

}  // namespace bflow
