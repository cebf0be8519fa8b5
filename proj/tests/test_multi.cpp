#include <doctest.h>

#include <random>

#include "arrfree/catalog.hpp"
#include "arrfree/derivation.hpp"
#include "arrfree/error.hpp"
#include "arrfree/multiarrangement.hpp"

using namespace arrfree;

namespace {

Arrangement from_text(const std::string& t) { return parse_arrangement(t).arrangement; }

}  // namespace

TEST_CASE("ziegler restriction fixtures") {
  const Arrangement boolean3 = catalog_get("boolean", {.dim = 3}).arr;
  const ZieglerRestriction z1 = ziegler_restrict(boolean3, 0);
  CHECK(z1.rest.arr.size() == 2);
  CHECK(z1.mult.all_ones());

  const Arrangement braid3 = catalog_get("braid", {.dim = 3}).arr;
  const ZieglerRestriction z2 = ziegler_restrict(braid3, 0);
  CHECK(z2.rest.arr.size() == 1);
  CHECK(z2.mult[0] == 2);

  const Arrangement er = catalog_get("edelman_reiner").arr;
  const ZieglerRestriction z3 = ziegler_restrict(er, 20);
  CHECK(z3.rest.arr.size() == 15);
  CHECK(z3.mult.total() == 20);
}

TEST_CASE("|m^H| = |A| - 1 on random instances") {
  for (int trial = 0; trial < 30; ++trial) {
    const Field field = (trial % 2 == 0) ? Field::rationals() : Field::prime(11);
    const Arrangement a = random_arrangement(100 + trial, 3, 2 + trial % 6, field);
    for (std::uint32_t h = 0; h < a.size(); ++h) {
      CHECK(ziegler_restrict(a, h).mult.total() == static_cast<long long>(a.size()) - 1);
    }
  }
}

TEST_CASE("exp2: decomposable pair") {
  const Arrangement a = from_text("dim 2 over Q\n1 0\n0 1\n");
  const Exp2Result e = exp2(a, Multiplicity({3, 2}));
  CHECK(e.d1 == 2);
  CHECK(e.d2 == 3);
  std::string why;
  const EssentialMulti em = essentialize_rank2(a, Multiplicity({3, 2}));
  CHECK(verify_certificate(em.arr, em.mult, e.cert, &why));
}

TEST_CASE("exp2: three simple lines and their double version") {
  const Arrangement a = from_text("dim 2 over Q\n1 0\n0 1\n1 1\n");
  const Exp2Result e1 = exp2(a, Multiplicity::ones(3));
  CHECK(e1.d1 == 1);
  CHECK(e1.d2 == 2);
  const Exp2Result e2 = exp2(a, Multiplicity({2, 2, 2}));
  CHECK(e2.d1 == 3);
  CHECK(e2.d2 == 3);
  const EssentialMulti em = essentialize_rank2(a, Multiplicity({2, 2, 2}));
  CHECK(verify_certificate(em.arr, em.mult, e2.cert));
}

TEST_CASE("exp2: single hyperplane edge case") {
  const Arrangement a = from_text("dim 2 over Q\n1 0\n");
  const Exp2Result e = exp2(a, Multiplicity({4}));
  CHECK(e.d1 == 0);
  CHECK(e.d2 == 4);
}

TEST_CASE("exp2 requires rank 2") {
  const Arrangement rank3 = catalog_get("boolean", {.dim = 3}).arr;
  CHECK_THROWS_AS(exp2(rank3, Multiplicity::ones(3)), Error);
}

TEST_CASE("exp2 degree sum and GL2 invariance") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    const Field field = (trial % 2 == 0) ? Field::rationals() : Field::prime(13);
    const Arrangement a = random_arrangement(600 + trial, 2, 1 + trial % 4, field);
    std::vector<int> mv;
    for (std::size_t i = 0; i < a.size(); ++i) mv.push_back(1 + static_cast<int>(rng() % 3));
    const Multiplicity m(mv);
    const Exp2Result e = exp2(a, m);
    CHECK(e.d1 + e.d2 == m.total());
    CHECK(e.d1 <= e.d2);

    // Invertible change of the two coordinates: alpha -> T^t alpha.
    long t00, t01, t10, t11;
    do {
      t00 = static_cast<long>(rng() % 5) - 2;
      t01 = static_cast<long>(rng() % 5) - 2;
      t10 = static_cast<long>(rng() % 5) - 2;
      t11 = static_cast<long>(rng() % 5) - 2;
    } while (t00 * t11 - t01 * t10 == 0);
    std::vector<LinearForm> transformed;
    std::vector<int> mv2;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const LinearForm& f = a.form(i);
      std::vector<Int> c = {t00 * f[0] + t10 * f[1], t01 * f[0] + t11 * f[1]};
      LinearForm g = LinearForm::canonical(field, std::move(c));
      bool dup = false;
      for (std::size_t j = 0; j < transformed.size(); ++j) {
        if (transformed[j] == g) dup = true;
      }
      if (dup) continue;  // transform is injective on distinct forms; paranoia only
      transformed.push_back(std::move(g));
      mv2.push_back(mv[i]);
    }
    REQUIRE(transformed.size() == a.size());
    const Exp2Result e2 = exp2(Arrangement(field, 2, transformed), Multiplicity(mv2));
    CHECK(e.d1 == e2.d1);
    CHECK(e.d2 == e2.d2);
  }
}

TEST_CASE("b2_multi with multiplicity one matches the lattice b2") {
  for (int trial = 0; trial < 20; ++trial) {
    const Field field = (trial % 2 == 0) ? Field::rationals() : Field::prime(101);
    const int l = 3 + trial % 2;
    const Arrangement a = random_arrangement(7000 + trial, l, 3 + trial % 5, field);
    CHECK(b2_multi(a, Multiplicity::ones(a.size())) == b2(a));
  }
}

TEST_CASE("b2_multi fixtures") {
  // Ziegler restriction of Edelman-Reiner carries b2 = 150 = b2_0 of the parent.
  const Arrangement er = catalog_get("edelman_reiner").arr;
  const ZieglerRestriction zer = ziegler_restrict(er, 20);
  CHECK(b2_multi(zer.rest.arr, zer.mult) == 150);

  // Rank-1 base has no codim-2 flats.
  const Arrangement braid3 = catalog_get("braid", {.dim = 3}).arr;
  const ZieglerRestriction zb = ziegler_restrict(braid3, 0);
  CHECK(b2_multi(zb.rest.arr, zb.mult) == 0);
}

TEST_CASE("Yoshinaga inequality b2_0 >= b2 of the Ziegler restriction") {
  for (int trial = 0; trial < 20; ++trial) {
    const Field field = (trial % 2 == 0) ? Field::rationals() : Field::prime(11);
    const int l = 3 + trial % 2;
    const Arrangement a = random_arrangement(7100 + trial, l, 3 + trial % 5, field);
    for (std::uint32_t h = 0; h < a.size(); ++h) {
      const ZieglerRestriction zr = ziegler_restrict(a, h);
      CHECK(b2_0(a) >= b2_multi(zr.rest.arr, zr.mult));
    }
  }
}

TEST_CASE("Ziegler theorem consistency in rank 3: exp(A^H, m^H) = (d2, d3)") {
  // For certified free rank-3 arrangements with exponents (1, d2, d3), the
  // Ziegler restriction is free with exactly those exponents.
  const Arrangement pentagon = catalog_get("pentagon_cone").arr;
  for (std::uint32_t h = 0; h < pentagon.size(); ++h) {
    const ZieglerRestriction zr = ziegler_restrict(pentagon, h);
    const Exp2Result e = exp2(zr.rest.arr, zr.mult);
    CHECK(e.d1 == 5);
    CHECK(e.d2 == 5);
  }
  const Arrangement braid4 = catalog_get("braid", {.dim = 4}).arr;
  const ZieglerRestriction zb = ziegler_restrict(braid4, 0);
  const Exp2Result eb = exp2(zb.rest.arr, zb.mult);
  CHECK(eb.d1 == 2);
  CHECK(eb.d2 == 3);
}
