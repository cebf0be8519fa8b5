#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "arrfree/arrangement.hpp"
#include "arrfree/matrix.hpp"
#include "arrfree/polynomial.hpp"

namespace arrfree {

/// Intersection subspace of an arrangement. `eqs` is the canonical reduced
/// echelon basis of the space of linear forms vanishing on the flat, so flat
/// equality is matrix equality. `contains` lists exactly the hyperplane
/// indices whose form lies in that row space.
struct Flat {
  std::uint32_t id = 0;
  ScalarMatrix eqs;
  int codim = 0;
  std::vector<std::uint32_t> contains;
  Int mobius = 0;
};

/// The poset L(A), grouped by codimension. Flats are ordered by codimension,
/// then lexicographically by canonical matrix; ids follow that order.
class FlatLattice {
 public:
  const std::vector<Flat>& flats() const { return flats_; }
  const Flat& flat(std::uint32_t id) const { return flats_[id]; }
  std::size_t size() const { return flats_.size(); }

  /// Flat ids per codimension level; levels()[0] == {top}.
  const std::vector<std::vector<std::uint32_t>>& levels() const { return levels_; }
  int max_codim() const { return static_cast<int>(levels_.size()) - 1; }

  std::optional<std::uint32_t> find(const ScalarMatrix& canonical_eqs) const;

  /// Number of hyperplanes of the underlying arrangement.
  std::size_t hyperplane_count() const { return nhyp_; }

 private:
  friend std::shared_ptr<const FlatLattice> build_lattice(const Arrangement&);
  friend void lattice_cache_load(const nlohmann::json&);
  std::vector<Flat> flats_;
  std::vector<std::vector<std::uint32_t>> levels_;
  std::size_t nhyp_ = 0;
};

/// Builds L(A) level by level and fills in the Moebius function.
std::shared_ptr<const FlatLattice> build_lattice(const Arrangement& a);

/// Memoized per canonical arrangement within the process.
std::shared_ptr<const FlatLattice> lattice_of(const Arrangement& a);
void lattice_cache_clear();
std::size_t lattice_cache_size();

/// Serialization of the whole in-process cache, for the CLI persistence flag.
nlohmann::json lattice_cache_dump();
void lattice_cache_load(const nlohmann::json& j);

IntPolynomial charpoly(const Arrangement& a);

/// chi(A;t)/(t-1); requires A nonempty. The division is exact by theory and
/// asserted here.
IntPolynomial chi0(const Arrangement& a);

/// Unsigned coefficients (b_0, ..., b_l) of chi with the alternating-sign
/// convention stripped.
std::vector<Int> betti(const Arrangement& a);
/// Same for chi0; requires A nonempty.
std::vector<Int> betti0(const Arrangement& a);

Int b2(const Arrangement& a);
Int b2_0(const Arrangement& a);

/// Sub-arrangement of the hyperplanes containing a flat, plus the index map
/// back into the parent arrangement.
struct Localized {
  Arrangement arr;
  std::vector<std::uint32_t> indices;
};
Localized localize(const Arrangement& a, const Flat& x);

/// Restriction A^H in coordinates on H, with the trace map: for each
/// restricted hyperplane, the parent indices (excluding H) tracing onto it.
struct Restriction {
  Arrangement arr;
  std::vector<std::vector<std::uint32_t>> traces;
  std::uint32_t source = 0;
};
Restriction restrict_to(const Arrangement& a, std::uint32_t h);

/// chi(A') - chi(A^H) == chi(A), exactly. Requires A nonempty.
bool deletion_restriction_check(const Arrangement& a, std::uint32_t h);

/// Number of points of GF(q)^l avoiding every hyperplane, by enumeration.
/// Requires a rational arrangement whose lattice is preserved mod q and
/// q^l within the enumeration budget (10^8 points).
Int charpoly_pointcount(const Arrangement& a, std::uint64_t q);

nlohmann::json lattice_to_json(const FlatLattice& lat);

}  // namespace arrfree
