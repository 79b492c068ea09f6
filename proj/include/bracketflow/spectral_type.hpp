#pragma once

#include "bracketflow/bracket.hpp"

#include <string>

namespace bflow {

inline constexpr double kSigmaThreshold = 1e-7;
inline constexpr double kFlatTol = 1e-10;

enum class TypeKind { RealType, ImaginaryType, MixedNonReal, Nilpotent, Abelian };

std::string to_string(TypeKind k);

struct TypeReport {
  TypeKind kind = TypeKind::Abelian;
  double sigma_a = 0.0;
  Vector witness;       // unit vector of a realizing sigma_a (empty when rank = 0)
  int rank = 0;
  bool sampled = false; // ImaginaryType is only established on sampled directions
};

/// max |Re lambda| and max |lambda| over the spectrum of ad_mu(X).
double phi(const BracketTensor& mu, const Vector& x);
double psi(const BracketTensor& mu, const Vector& x);

struct SigmaResult {
  double value = 0.0;
  Vector witness;
};

/// Minimum of phi over the unit sphere of a = (nilradical)^perp: a
/// deterministic grid of 64 * 2^dim(a) directions, then Nelder-Mead from the
/// best few grid points. Throws NotSolvable or NilpotentInput.
SigmaResult sigma_a(const BracketTensor& mu);

TypeReport classify_type(const BracketTensor& mu);

/// |Ric| <= kFlatTol (1 + |mu|^2). Throws NotSolvable.
bool is_flat_bracket(const BracketTensor& mu);

}  // namespace bflow
