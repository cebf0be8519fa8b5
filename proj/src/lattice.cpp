#include "arrfree/lattice.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "arrfree/error.hpp"

namespace arrfree {

namespace {

bool subset_of(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<std::uint32_t> contains_of(const Arrangement& a, const RrefResult& r) {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (in_row_space(r, form_to_row(a.field(), a.form(i)))) {
      out.push_back(static_cast<std::uint32_t>(i));
    }
  }
  return out;
}

void fill_mobius(std::vector<Flat>& flats, const std::vector<std::vector<std::uint32_t>>& levels) {
  for (const auto& level : levels) {
    for (std::uint32_t id : level) {
      Flat& x = flats[id];
      if (x.codim == 0) {
        x.mobius = 1;
        continue;
      }
      Int acc = 0;
      for (const Flat& y : flats) {
        if (y.codim >= x.codim) break;  // flats ordered by codim
        if (subset_of(y.contains, x.contains)) acc += y.mobius;
      }
      x.mobius = -acc;
    }
  }
}

}  // namespace

std::optional<std::uint32_t> FlatLattice::find(const ScalarMatrix& canonical_eqs) const {
  const std::string key = matrix_key(canonical_eqs);
  for (const Flat& f : flats_) {
    if (matrix_key(f.eqs) == key) return f.id;
  }
  return std::nullopt;
}

std::shared_ptr<const FlatLattice> build_lattice(const Arrangement& a) {
  auto lat = std::make_shared<FlatLattice>();
  lat->nhyp_ = a.size();
  const std::size_t dim = static_cast<std::size_t>(a.dim());

  std::vector<Flat> flats;
  Flat top;
  top.eqs = ScalarMatrix{a.field(), dim, {}};
  top.codim = 0;
  flats.push_back(top);

  // Level-by-level: intersect each flat of the previous level with every
  // hyperplane not already containing it, canonicalize, deduplicate.
  std::vector<std::uint32_t> prev = {0};
  std::vector<std::vector<std::uint32_t>> levels = {{0}};
  while (!prev.empty()) {
    std::map<std::string, std::uint32_t> seen;
    std::vector<std::uint32_t> next;
    for (std::uint32_t xid : prev) {
      // Index-based loop: `flats` grows inside, references would dangle.
      for (std::size_t h = 0; h < a.size(); ++h) {
        if (std::binary_search(flats[xid].contains.begin(), flats[xid].contains.end(),
                               static_cast<std::uint32_t>(h))) {
          continue;
        }
        const RrefResult rr =
            rref(stacked(flats[xid].eqs, form_to_row(a.field(), a.form(h))));
        const std::string key = matrix_key(rr.reduced);
        if (seen.count(key)) continue;
        Flat f;
        f.eqs = rr.reduced;
        f.codim = static_cast<int>(rr.pivots.size());
        f.contains = contains_of(a, rr);
        const std::uint32_t id = static_cast<std::uint32_t>(flats.size());
        seen.emplace(key, id);
        flats.push_back(std::move(f));
        next.push_back(id);
      }
    }
    if (next.empty()) break;
    levels.push_back(next);
    prev = std::move(next);
  }

  // Canonical order: by codim, then matrix key. Ids follow that order.
  std::vector<std::uint32_t> order(flats.size());
  for (std::uint32_t i = 0; i < flats.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    if (flats[x].codim != flats[y].codim) return flats[x].codim < flats[y].codim;
    return matrix_key(flats[x].eqs) < matrix_key(flats[y].eqs);
  });
  std::vector<Flat> sorted;
  sorted.reserve(flats.size());
  std::vector<std::vector<std::uint32_t>> new_levels(levels.size());
  for (std::uint32_t rank_pos = 0; rank_pos < order.size(); ++rank_pos) {
    Flat f = std::move(flats[order[rank_pos]]);
    f.id = rank_pos;
    new_levels[static_cast<std::size_t>(f.codim)].push_back(rank_pos);
    sorted.push_back(std::move(f));
  }

  fill_mobius(sorted, new_levels);
  lat->flats_ = std::move(sorted);
  lat->levels_ = std::move(new_levels);
  return lat;
}

namespace {

std::mutex cache_mutex;
std::unordered_map<std::string, std::shared_ptr<const FlatLattice>>& cache_map() {
  static std::unordered_map<std::string, std::shared_ptr<const FlatLattice>> m;
  return m;
}
// Arrangement text is kept alongside so the cache can be persisted.
std::unordered_map<std::string, std::string>& cache_text_map() {
  static std::unordered_map<std::string, std::string> m;
  return m;
}

}  // namespace

std::shared_ptr<const FlatLattice> lattice_of(const Arrangement& a) {
  const std::string key = a.canonical_key();
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache_map().find(key);
    if (it != cache_map().end()) return it->second;
  }
  auto lat = build_lattice(a);
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache_map().emplace(key, lat);
  cache_text_map().emplace(key, a.text());
  return lat;
}

void lattice_cache_clear() {
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache_map().clear();
  cache_text_map().clear();
}

std::size_t lattice_cache_size() {
  std::lock_guard<std::mutex> lock(cache_mutex);
  return cache_map().size();
}

void lattice_cache_preload(const Arrangement& a, std::shared_ptr<const FlatLattice> lat) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache_map().emplace(a.canonical_key(), std::move(lat));
  cache_text_map().emplace(a.canonical_key(), a.text());
}

nlohmann::json lattice_cache_dump() {
  std::lock_guard<std::mutex> lock(cache_mutex);
  nlohmann::json out = nlohmann::json::array();
  std::vector<std::string> keys;
  for (const auto& [k, v] : cache_map()) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  for (const std::string& k : keys) {
    nlohmann::json entry;
    entry["arrangement"] = cache_text_map().at(k);
    entry["lattice"] = lattice_to_json(*cache_map().at(k));
    out.push_back(std::move(entry));
  }
  return out;
}

void lattice_cache_load(const nlohmann::json& j) {
  for (const auto& entry : j) {
    const ParsedArrangement pa = parse_arrangement(entry.at("arrangement").get<std::string>());
    const Arrangement& a = pa.arrangement;
    auto lat = std::make_shared<FlatLattice>();
    lat->nhyp_ = a.size();
    int maxc = 0;
    for (const auto& fj : entry.at("lattice").at("flats")) {
      Flat f;
      f.id = fj.at("id").get<std::uint32_t>();
      f.codim = fj.at("codim").get<int>();
      f.contains = fj.at("contains").get<std::vector<std::uint32_t>>();
      f.mobius = int_from_json(fj.at("mobius"));
      f.eqs = rref(forms_matrix(a, f.contains)).reduced;
      if (static_cast<int>(f.eqs.rows.size()) != f.codim) {
        throw Error(errc::parse, "lattice cache entry inconsistent");
      }
      maxc = std::max(maxc, f.codim);
      lat->flats_.push_back(std::move(f));
    }
    lat->levels_.assign(static_cast<std::size_t>(maxc) + 1, {});
    for (const Flat& f : lat->flats_) {
      lat->levels_[static_cast<std::size_t>(f.codim)].push_back(f.id);
    }
    lattice_cache_preload(a, std::move(lat));
  }
}

IntPolynomial charpoly(const Arrangement& a) {
  const auto lat = lattice_of(a);
  std::vector<Int> coeffs(static_cast<std::size_t>(a.dim()) + 1, Int(0));
  for (const Flat& f : lat->flats()) {
    coeffs[static_cast<std::size_t>(a.dim() - f.codim)] += f.mobius;
  }
  return IntPolynomial(std::move(coeffs));
}

IntPolynomial chi0(const Arrangement& a) {
  if (a.is_empty()) throw Error(errc::precondition, "chi0 requires a nonempty arrangement");
  const IntPolynomial chi = charpoly(a);
  const auto dm = chi.divmod_monic(IntPolynomial({Int(-1), Int(1)}));
  if (!dm.rem.is_zero()) throw Error(errc::internal, "chi not divisible by t-1");
  return dm.quot;
}

namespace {
std::vector<Int> unsigned_coeffs(const IntPolynomial& p, int top_degree) {
  std::vector<Int> b(static_cast<std::size_t>(top_degree) + 1, Int(0));
  for (int i = 0; i <= top_degree; ++i) {
    Int c = p.coeff(static_cast<std::size_t>(top_degree - i));
    b[static_cast<std::size_t>(i)] = (i % 2 == 0) ? c : -c;
  }
  return b;
}
}  // namespace

std::vector<Int> betti(const Arrangement& a) { return unsigned_coeffs(charpoly(a), a.dim()); }

std::vector<Int> betti0(const Arrangement& a) { return unsigned_coeffs(chi0(a), a.dim() - 1); }

Int b2(const Arrangement& a) {
  if (a.dim() < 2) return 0;
  return betti(a)[2];
}

Int b2_0(const Arrangement& a) {
  if (a.dim() < 3) return 0;
  return betti0(a)[2];
}

Localized localize(const Arrangement& a, const Flat& x) {
  const auto lat = lattice_of(a);
  const auto id = lat->find(x.eqs);
  if (!id) throw Error(errc::precondition, "flat does not belong to the arrangement");
  const Flat& fx = lat->flat(*id);
  return Localized{a.subarrangement(fx.contains), fx.contains};
}

Restriction restrict_to(const Arrangement& a, std::uint32_t h) {
  if (a.is_empty()) throw Error(errc::precondition, "restriction of empty arrangement");
  if (h >= a.size()) throw Error(errc::index, "hyperplane index out of range");
  if (a.dim() < 2) throw Error(errc::precondition, "restriction needs ambient dimension >= 2");
  const LinearForm& alpha = a.form(h);
  const std::size_t p = alpha.pivot();
  const Int& cp = alpha[p];
  // Basis of H: b_j = cp*e_j - c_j*e_p for j != p, ascending j. The trace of
  // a form beta on H has coordinates beta(b_j).
  std::vector<LinearForm> forms;
  std::vector<std::vector<std::uint32_t>> traces;
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == h) continue;
    const LinearForm& beta = a.form(i);
    std::vector<Int> row;
    row.reserve(static_cast<std::size_t>(a.dim()) - 1);
    for (std::size_t j = 0; j < static_cast<std::size_t>(a.dim()); ++j) {
      if (j == p) continue;
      row.push_back(cp * beta[j] - alpha[j] * beta[p]);
    }
    LinearForm tr = LinearForm::canonical(a.field(), std::move(row));
    const std::string key = tr.str();
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(key, forms.size());
      forms.push_back(std::move(tr));
      traces.push_back({static_cast<std::uint32_t>(i)});
    } else {
      traces[it->second].push_back(static_cast<std::uint32_t>(i));
    }
  }
  return Restriction{Arrangement(a.field(), a.dim() - 1, std::move(forms)), std::move(traces), h};
}

bool deletion_restriction_check(const Arrangement& a, std::uint32_t h) {
  if (a.is_empty()) throw Error(errc::precondition, "needs a nonempty arrangement");
  const IntPolynomial lhs = charpoly(a);
  const IntPolynomial rhs = charpoly(a.deleted(h)) - charpoly(restrict_to(a, h).arr);
  return lhs == rhs;
}

namespace {

bool same_lattice_mod_q(const FlatLattice& over_q, const FlatLattice& mod_p) {
  if (over_q.levels().size() != mod_p.levels().size()) return false;
  for (std::size_t lvl = 0; lvl < over_q.levels().size(); ++lvl) {
    if (over_q.levels()[lvl].size() != mod_p.levels()[lvl].size()) return false;
    // Full combinatorial identity: same family of contains-sets per level.
    std::vector<std::vector<std::uint32_t>> fa, fb;
    for (std::uint32_t id : over_q.levels()[lvl]) fa.push_back(over_q.flat(id).contains);
    for (std::uint32_t id : mod_p.levels()[lvl]) fb.push_back(mod_p.flat(id).contains);
    std::sort(fa.begin(), fa.end());
    std::sort(fb.begin(), fb.end());
    if (fa != fb) return false;
  }
  return true;
}

}  // namespace

Int charpoly_pointcount(const Arrangement& a, std::uint64_t q) {
  if (!a.field().is_rational()) {
    throw Error(errc::precondition, "point count oracle needs a rational arrangement");
  }
  const Field fq = Field::prime(q);
  const std::size_t l = static_cast<std::size_t>(a.dim());
  double budget = 1.0;
  for (std::size_t i = 0; i < l; ++i) budget *= static_cast<double>(q);
  if (budget > 1e8) throw Error(errc::budget, "q^l exceeds the enumeration budget");

  // The reduction mod q must preserve the combinatorics.
  std::vector<LinearForm> red;
  for (const LinearForm& f : a.forms()) {
    std::vector<Int> c = f.coeffs();
    bool zero = true;
    for (Int& x : c) {
      x %= static_cast<long>(q);
      if (x != 0) zero = false;
    }
    if (zero) throw Error(errc::degenerate, "a hyperplane vanishes mod q");
    red.push_back(LinearForm::canonical(fq, std::move(c)));
  }
  for (std::size_t i = 0; i < red.size(); ++i) {
    for (std::size_t j = i + 1; j < red.size(); ++j) {
      if (red[i] == red[j]) throw Error(errc::degenerate, "hyperplanes collide mod q");
    }
  }
  const Arrangement aq(fq, a.dim(), red);
  if (!same_lattice_mod_q(*lattice_of(a), *lattice_of(aq))) {
    throw Error(errc::degenerate, "intersection lattice degenerates mod q");
  }

  // Odometer enumeration with incremental form values.
  const std::size_t n = a.size();
  std::vector<std::vector<std::uint64_t>> cf(n, std::vector<std::uint64_t>(l));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < l; ++j) {
      Int c = a.form(i)[j] % static_cast<long>(q);
      if (c < 0) c += static_cast<long>(q);
      cf[i][j] = mpz_get_ui(c.get_mpz_t());
    }
  }
  std::vector<std::uint64_t> x(l, 0), val(n, 0);
  std::size_t zeros = n;
  Int count = 0;
  const auto bump = [&](std::size_t pos) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t before = val[i];
      std::uint64_t v = before + cf[i][pos];
      if (v >= q) v -= q;
      val[i] = v;
      if (before == 0 && v != 0) --zeros;
      if (before != 0 && v == 0) ++zeros;
    }
  };
  while (true) {
    if (zeros == 0 || n == 0) ++count;
    std::size_t pos = l;
    while (pos > 0) {
      --pos;
      ++x[pos];
      bump(pos);  // adding c once also undoes a wrap of q-1 increments
      if (x[pos] < q) break;
      x[pos] = 0;
      if (pos == 0) return count;
    }
  }
}

nlohmann::json lattice_to_json(const FlatLattice& lat) {
  nlohmann::json flats = nlohmann::json::array();
  for (const Flat& f : lat.flats()) {
    nlohmann::json fj;
    fj["id"] = f.id;
    fj["codim"] = f.codim;
    fj["contains"] = f.contains;
    fj["mobius"] = int_to_json(f.mobius);
    flats.push_back(std::move(fj));
  }
  nlohmann::json j;
  j["flats"] = std::move(flats);
  nlohmann::json lvl = nlohmann::json::array();
  for (const auto& level : lat.levels()) lvl.push_back(level.size());
  j["level_sizes"] = std::move(lvl);
  return j;
}

}  // namespace arrfree
