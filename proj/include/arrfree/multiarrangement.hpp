#pragma once

#include <vector>

#include "arrfree/arrangement.hpp"
#include "arrfree/derivation.hpp"
#include "arrfree/lattice.hpp"

namespace arrfree {

/// Restriction A^H together with the Ziegler multiplicity m^H(X) =
/// #{L in A \ {H} : L cap H = X}. |m^H| = |A| - 1 by construction.
struct ZieglerRestriction {
  Restriction rest;
  Multiplicity mult;
};

ZieglerRestriction ziegler_restrict(const Arrangement& a, std::uint32_t h);

/// A multiarrangement projected onto coordinates of the span of its forms.
struct EssentialMulti {
  Arrangement arr;
  Multiplicity mult;
};

/// Essentialization of a rank-2 (multi)arrangement to two variables via the
/// echelon basis of the span of its forms. Throws when the rank is not 2.
EssentialMulti essentialize_rank2(const Arrangement& a, const Multiplicity& m);

/// Exponents (d1 <= d2) of a rank-2 multiarrangement, certified by a Saito
/// pair whose determinant is a nonzero constant times Q(A,m).
struct Exp2Result {
  int d1 = 0;
  int d2 = 0;
  SaitoCertificate cert;
};
Exp2Result exp2(const Arrangement& a, const Multiplicity& m);

/// Second Betti number of a multiarrangement via the local-global formula:
/// sum over codim-2 flats of d1(X)*d2(X) for the localized rank-2
/// multiarrangement.
Int b2_multi(const Arrangement& a, const Multiplicity& m);

}  // namespace arrfree
