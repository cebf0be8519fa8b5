#include "arrfree/catalog.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "arrfree/error.hpp"
#include "arrfree/lattice.hpp"

namespace arrfree {

namespace {

std::vector<Int> unit(int l, int i) {
  std::vector<Int> v(static_cast<std::size_t>(l), Int(0));
  v[static_cast<std::size_t>(i)] = 1;
  return v;
}

Arrangement boolean_arrangement(int l) {
  std::vector<LinearForm> forms;
  const Field q = Field::rationals();
  for (int i = 0; i < l; ++i) forms.push_back(LinearForm::canonical(q, unit(l, i)));
  return Arrangement(q, l, std::move(forms));
}

Arrangement braid_arrangement(int l) {
  std::vector<LinearForm> forms;
  const Field q = Field::rationals();
  for (int i = 0; i < l; ++i) {
    for (int j = i + 1; j < l; ++j) {
      std::vector<Int> v(static_cast<std::size_t>(l), Int(0));
      v[static_cast<std::size_t>(i)] = 1;
      v[static_cast<std::size_t>(j)] = -1;
      forms.push_back(LinearForm::canonical(q, std::move(v)));
    }
  }
  return Arrangement(q, l, std::move(forms));
}

// 21 hyperplanes in K^5: the coordinates plus all x1 +- x2 +- x3 +- x4 +- x5.
// Sign tuples run with +1 before -1, so the all-minus form has index 20.
Arrangement edelman_reiner_arrangement() {
  const Field q = Field::rationals();
  std::vector<LinearForm> forms;
  for (int i = 0; i < 5; ++i) forms.push_back(LinearForm::canonical(q, unit(5, i)));
  for (int s = 0; s < 16; ++s) {
    std::vector<Int> v(5, Int(1));
    for (int k = 0; k < 4; ++k) {
      if (s & (1 << (3 - k))) v[static_cast<std::size_t>(k + 1)] = -1;
    }
    forms.push_back(LinearForm::canonical(q, std::move(v)));
  }
  return Arrangement(q, 5, std::move(forms));
}

// 13 hyperplanes in K^5 (coordinates x0..x4): the linear factors of
// (x1^2-x0^2)...(x4^2-x0^2), the four differences, and x0 last.
Arrangement dipasquale_arrangement() {
  const Field q = Field::rationals();
  std::vector<LinearForm> forms;
  for (int i = 1; i <= 4; ++i) {
    for (int sign : {-1, +1}) {
      std::vector<Int> v(5, Int(0));
      v[static_cast<std::size_t>(i)] = 1;
      v[0] = sign;
      forms.push_back(LinearForm::canonical(q, std::move(v)));
    }
  }
  const auto pair_form = [&](int i, int j, int cj) {
    std::vector<Int> v(5, Int(0));
    v[static_cast<std::size_t>(i)] = 1;
    v[static_cast<std::size_t>(j)] = cj;
    return LinearForm::canonical(q, std::move(v));
  };
  forms.push_back(pair_form(1, 2, -1));
  forms.push_back(pair_form(2, 3, -1));
  forms.push_back(pair_form(3, 4, -1));
  forms.push_back(pair_form(1, 4, +1));
  forms.push_back(LinearForm::canonical(q, unit(5, 0)));
  return Arrangement(q, 5, std::move(forms));
}

// Cone over the edges and diagonals of an affine-regular pentagon, realized
// over GF(p) with a square root of 5. The parallelism constraints force
// 4 s^2 + 2 s - 1 = 0, i.e. s = (sqrt(5) - 1) / 4.
Arrangement pentagon_cone_arrangement(std::uint64_t p) {
  if (p % 5 != 1 && p % 5 != 4) {
    throw Error(errc::precondition, "pentagon cone needs p = +-1 (mod 5)");
  }
  const Field f = Field::prime(p);
  std::uint64_t sqrt5 = 0;
  if (!sqrt_mod(5 % p, p, sqrt5)) {
    throw Error(errc::precondition, "5 is not a square mod " + std::to_string(p));
  }
  const std::uint64_t s = mul_mod((sqrt5 + p - 1) % p, inv_mod(4 % p, p), p);
  if (s == 0) throw Error(errc::precondition, "degenerate pentagon realization");
  const std::uint64_t h = 1;
  const std::uint64_t cap = mul_mod(h, inv_mod(mul_mod(2, s, p), p), p);  // h / (2s)
  const std::uint64_t half = inv_mod(2 % p, p);
  struct Pt {
    std::uint64_t x, y;
  };
  const std::vector<Pt> v = {{0, 0},
                             {1, 0},
                             {(1 + s) % p, h},
                             {half, cap},
                             {(p - s) % p, h}};
  std::vector<LinearForm> forms;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i + 1; j < 5; ++j) {
      const auto& a = v[i];
      const auto& b = v[j];
      // Projective line through the affine points a and b.
      const std::uint64_t cx = (b.y + p - a.y) % p;
      const std::uint64_t cy = (a.x + p - b.x) % p;
      const std::uint64_t cz =
          (mul_mod(a.y, b.x, p) + p - mul_mod(a.x, b.y, p)) % p;
      forms.push_back(LinearForm::canonical(
          f, {Int(std::to_string(cx)), Int(std::to_string(cy)), Int(std::to_string(cz))}));
    }
  }
  forms.push_back(LinearForm::canonical(f, {Int(0), Int(0), Int(1)}));  // line at infinity
  return Arrangement(f, 3, std::move(forms));
}

void pentagon_sanity(const Arrangement& a) {
  if (a.size() != 11) throw Error(errc::precondition, "pentagon realization degenerated");
  const auto lat = lattice_of(a);
  if (lat->max_codim() < 2) throw Error(errc::precondition, "pentagon realization degenerated");
  std::map<std::size_t, int> profile;  // |contains| -> count on level 2
  for (std::uint32_t id : lat->levels()[2]) {
    profile[lat->flat(id).contains.size()] += 1;
  }
  const std::map<std::size_t, int> expected = {{4, 5}, {3, 5}, {2, 10}};
  if (profile != expected) {
    throw Error(errc::precondition, "pentagon level-2 fingerprint mismatch");
  }
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

}  // namespace

Arrangement random_arrangement(std::uint64_t seed, int dim, int n, const Field& field,
                               int coeff_range) {
  std::mt19937_64 rng(seed);
  std::vector<LinearForm> forms;
  int attempts = 0;
  while (static_cast<int>(forms.size()) < n) {
    if (++attempts > 1000 * (n + 1)) {
      throw Error(errc::internal, "random arrangement generation stalled");
    }
    std::vector<Int> v(static_cast<std::size_t>(dim));
    bool zero = true;
    for (int i = 0; i < dim; ++i) {
      long c;
      if (field.is_rational()) {
        c = static_cast<long>(draw(rng, 2 * static_cast<std::uint64_t>(coeff_range) + 1)) -
            coeff_range;
      } else {
        c = static_cast<long>(draw(rng, field.modulus()));
      }
      if (c != 0) zero = false;
      v[static_cast<std::size_t>(i)] = c;
    }
    if (zero) continue;
    LinearForm f = LinearForm::canonical(field, std::move(v));
    const bool dup = std::any_of(forms.begin(), forms.end(),
                                 [&](const LinearForm& g) { return g == f; });
    if (!dup) forms.push_back(std::move(f));
  }
  return Arrangement(field, dim, std::move(forms));
}

CatalogEntry catalog_get(const std::string& name, const CatalogParams& params) {
  if (name == "boolean") {
    const int l = params.dim > 0 ? params.dim : 3;
    CatalogEntry e{name, "coordinate hyperplanes of K^l", boolean_arrangement(l), {}};
    if (e.arr.size() != static_cast<std::size_t>(l)) throw Error(errc::internal, "catalog sanity");
    return e;
  }
  if (name == "braid") {
    const int l = params.dim > 0 ? params.dim : 4;
    CatalogEntry e{name, "braid arrangement x_i - x_j in K^l", braid_arrangement(l), {}};
    if (e.arr.size() != static_cast<std::size_t>(l * (l - 1) / 2)) {
      throw Error(errc::internal, "catalog sanity");
    }
    return e;
  }
  if (name == "edelman_reiner") {
    CatalogEntry e{name, "coordinates plus the 16 sign forms x1 +- x2 +- x3 +- x4 +- x5",
                   edelman_reiner_arrangement(),
                   {{"restriction_hyperplane", 20}}};
    if (e.arr.size() != 21) throw Error(errc::internal, "catalog sanity");
    return e;
  }
  if (name == "dipasquale") {
    CatalogEntry e{name, "the 13 linear factors of the DiPasquale counterexample product",
                   dipasquale_arrangement(),
                   {{"restriction_hyperplane", 12}}};
    if (e.arr.size() != 13) throw Error(errc::internal, "catalog sanity");
    return e;
  }
  if (name == "pentagon_cone") {
    const std::uint64_t p = params.prime ? params.prime : 11;
    CatalogEntry e{name, "cone over the edges and diagonals of a regular pentagon, over GF(p)",
                   pentagon_cone_arrangement(p),
                   {{"prime", p}}};
    pentagon_sanity(e.arr);
    return e;
  }
  if (name == "generic") {
    const int l = params.dim > 0 ? params.dim : 3;
    const int n = params.count > 0 ? params.count : 2 * l;
    const Field f = params.rational ? Field::rationals() : Field::prime(params.prime ? params.prime : 101);
    CatalogEntry e{name, "seeded pseudo-random arrangement",
                   random_arrangement(params.seed, l, n, f),
                   {{"seed", params.seed}}};
    return e;
  }
  throw Error(errc::parse, "unknown catalog entry: " + name);
}

std::vector<std::pair<std::string, std::string>> catalog_list() {
  return {
      {"boolean", "coordinate hyperplanes of K^l (--dim)"},
      {"braid", "braid arrangement x_i - x_j in K^l (--dim)"},
      {"edelman_reiner", "21 hyperplanes in K^5: coordinates plus all x1 +- x2 +- x3 +- x4 +- x5"},
      {"dipasquale", "13 hyperplanes in K^5: the DiPasquale restriction counterexample"},
      {"pentagon_cone", "11 lines in K^3 over GF(p), p = +-1 mod 5 (--prime, default 11)"},
      {"generic", "seeded pseudo-random arrangement (--dim, --count, --seed, --prime for GF)"},
  };
}

}  // namespace arrfree
