#pragma once

#include "bracketflow/bracket.hpp"
#include "bracketflow/errors.hpp"

#include <array>
#include <utility>
#include <vector>

namespace bflow {

inline constexpr double kCritTol = 1e-9;
inline constexpr double kEigTol = 1e-6;
inline constexpr double kGaugeTol = 1e-8;
inline constexpr double kLabelTol = 1e-6;

struct GradientFlowOptions {
  double critTol = kCritTol;
  long maxSteps = 1'000'000;
};

struct GradientFlowResult {
  BracketTensor critical;      // same norm as the input
  double residual = 0.0;       // criticality residual of the unit-norm bracket
  long steps = 0;
  double energy = 0.0;         // |m|^2 at the end
  double maxEnergyIncrease = 0.0;
};

/// Thrown when the gradient flow runs out of steps; carries the last iterate.
class MaxStepsExceeded : public Error {
 public:
  MaxStepsExceeded(const std::string& what, GradientFlowResult partial)
      : Error("MaxStepsExceeded", what, ErrorClass::NonConvergence), partial_(std::move(partial)) {}
  const GradientFlowResult& partial() const noexcept { return partial_; }

 private:
  GradientFlowResult partial_;
};

/// Negative gradient flow of |m(mu)|^2 on the sphere through mu0, by steepest
/// descent along -pi(m) mu + |m|^2 mu with Armijo backtracking.
GradientFlowResult energy_gradient_flow(const BracketTensor& mu0, const GradientFlowOptions& opts = {});

/// Eigenvalue r with multiplicity.
using Multiplicity = std::pair<double, int>;

struct StratumLabel {
  Endomorphism beta;       // diagonal, nondecreasing, tr = -1
  Endomorphism betaPlus;   // beta + |beta|^2 Id
  std::vector<Multiplicity> adEigs;  // ad(beta+) on gl(s)
  std::vector<Multiplicity> piEigs;  // pi(beta+) on V(s)
  BracketTensor criticalBracket;     // limit of the gradient flow in the canonical frame
  Endomorphism frame;      // orthogonal k with k m(mu_C) k^t = beta; apply to brackets via act(k, .)
  double residual = 0.0;

  double beta_norm_sq() const { return beta.squaredNorm(); }
};

/// Label from a symmetric critical value and its critical bracket: diagonalizes,
/// sorts ascending, snaps clustered eigenvalues to their mean, and moves the
/// bracket into the new frame.
StratumLabel canonical_label(const Endomorphism& m_value, const BracketTensor& critical);

/// Runs energy_gradient_flow and canonicalizes m(mu_C).
StratumLabel stratum_label(const BracketTensor& mu0, const GradientFlowOptions& opts = {});

/// Equal iff the sorted beta eigenvalues agree within tol.
bool same_label(const StratumLabel& a, const StratumLabel& b, double tol = kLabelTol);

struct GradedComponent {
  double r = 0.0;
  std::vector<std::array<int, 3>> entries;  // (i, j, k) with i < j, 0-based
};

struct BetaDecomposition {
  Vector b;                             // diagonal of beta
  Vector bPlus;                         // diagonal of beta+
  std::vector<int> group;               // eigenvalue cluster of each coordinate
  std::vector<Endomorphism> g_beta;
  std::vector<Endomorphism> u_beta;
  std::vector<Endomorphism> k_u_beta;
  std::vector<Endomorphism> h_beta;
  std::vector<Endomorphism> sl_beta;    // h_beta then u_beta
  std::vector<double> sl_adEig;         // ad(beta+) eigenvalue of each sl_beta element
  std::vector<GradedComponent> V_grading;

  int dim() const { return static_cast<int>(b.size()); }
};

/// Gradings attached to a diagonal sorted beta. Throws NonCanonicalBeta.
BetaDecomposition beta_decomposition(const Endomorphism& beta);
BetaDecomposition beta_decomposition(const StratumLabel& label);

/// A_q = A_g + A_u + (A_{u^t})^t: projection onto q_beta along k_{u_beta}.
Endomorphism project_qbeta(const Endomorphism& a, const BetaDecomposition& dec);

/// Orthogonal projection onto span(basis) of an orthonormal family.
Endomorphism project_onto(const Endomorphism& a, const std::vector<Endomorphism>& basis);

struct GaugeCheck {
  bool inVgeq0 = false;
  double v0ComponentNorm = 0.0;
  double negComponentNorm = 0.0;
  double posComponentNorm = 0.0;
};

/// Norms of the pi(beta+)-graded pieces of mu.
GaugeCheck check_gauged(const BracketTensor& mu, const BetaDecomposition& dec);
GaugeCheck check_gauged(const BracketTensor& mu, const StratumLabel& label);

/// Norm of the V_r component of mu, r matched within kEigTol.
double graded_component_norm(const BracketTensor& mu, const BetaDecomposition& dec, double r);

}  // namespace bflow
