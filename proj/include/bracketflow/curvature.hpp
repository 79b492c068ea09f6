#pragma once

#include "bracketflow/bracket.hpp"

namespace bflow {

/// Ricci-level curvature data of the left-invariant metric encoded by mu.
struct CurvaturePack {
  Endomorphism M;         // moment-map part, M = m(mu) |mu|^2 / 4
  Endomorphism K;         // Killing form, <K X, Y> = tr(ad X ad Y)
  Vector H;               // mean curvature vector, <H, X> = tr ad X
  Endomorphism Ric;
  Endomorphism RicStar;   // M - K/2
  double scal = 0.0;
  double scalStar = 0.0;
  double normSq = 0.0;
};

/// m(mu) with <m(mu), a> = <pi(a) mu, mu> / |mu|^2 for symmetric a.
/// Throws ZeroBracket for mu = 0.
Endomorphism moment_map(const BracketTensor& mu);

/// Componentwise M_mu:
///   M(x,y) = -1/2 sum_{ij} c(x,i,j) c(y,i,j) + 1/4 sum_{ij} c(i,j,x) c(i,j,y).
Endomorphism moment_part(const BracketTensor& mu);
Endomorphism killing_form(const BracketTensor& mu);
Vector mean_curvature_vector(const BracketTensor& mu);

/// Ric = M - K/2 - (ad H + (ad H)^t)/2. Throws NotALieBracket.
CurvaturePack curvature_pack(const BracketTensor& mu);
/// Same, without the Jacobi check; used inside integrators that check separately.
CurvaturePack curvature_pack_unchecked(const BracketTensor& mu);

/// -2 <Ric*_mu, A>: derivative of scal* along pi(A) mu.
double scalstar_first_variation(const BracketTensor& mu, const Endomorphism& a);

}  // namespace bflow
