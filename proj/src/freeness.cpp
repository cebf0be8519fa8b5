#include "arrfree/freeness.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "arrfree/derivation.hpp"
#include "arrfree/error.hpp"

namespace arrfree {

namespace {

nlohmann::json step_to_json(const CertStep& s) {
  nlohmann::json j;
  j["rule"] = s.rule;
  j["data"] = s.data;
  nlohmann::json ch = nlohmann::json::array();
  for (const CertStep& c : s.children) ch.push_back(step_to_json(c));
  j["children"] = std::move(ch);
  return j;
}

std::vector<int> axiom_exponents(const Arrangement& a) {
  const int r = a.rank();
  std::vector<int> exps(static_cast<std::size_t>(a.dim()), 0);
  if (r >= 1) exps[static_cast<std::size_t>(a.dim()) - 1] = r == 1 ? 1 : static_cast<int>(a.size()) - 1;
  if (r == 2) exps[static_cast<std::size_t>(a.dim()) - 2] = 1;
  std::sort(exps.begin(), exps.end());
  return exps;
}

void assert_terao_consistency(const Arrangement& a, const std::vector<int>& exps) {
  std::vector<Int> roots;
  for (int e : exps) roots.emplace_back(e);
  if (charpoly(a) != IntPolynomial::from_roots(roots)) {
    throw Error(errc::internal, "Free verdict inconsistent with characteristic polynomial");
  }
}

FreenessVerdict make_free(const Arrangement& a, std::vector<int> exps, CertStep step) {
  std::sort(exps.begin(), exps.end());
  assert_terao_consistency(a, exps);
  FreenessVerdict v;
  v.status = FreeStatus::Free;
  v.exponents = std::move(exps);
  v.certificate = std::move(step);
  return v;
}

}  // namespace

nlohmann::json verdict_to_json(const FreenessVerdict& v) {
  nlohmann::json j;
  switch (v.status) {
    case FreeStatus::Free:
      j["status"] = "free";
      j["exponents"] = v.exponents;
      j["certificate"] = step_to_json(v.certificate);
      break;
    case FreeStatus::NotFree:
      j["status"] = "not_free";
      j["witness"] = v.witness;
      break;
    case FreeStatus::Unknown:
      j["status"] = "unknown";
      j["reason"] = v.reason;
      break;
  }
  return j;
}

std::optional<std::vector<int>> terao_necessary(const Arrangement& a) {
  IntPolynomial poly = charpoly(a);
  std::vector<int> roots;
  while (poly.degree() > 0) {
    const Int c0 = poly.coeff(0);
    int found = -1;
    if (c0 == 0) {
      found = 0;
    } else {
      // Any nonnegative integer root divides the constant term; when the
      // polynomial splits over nonnegative integers, every root is bounded
      // by the root sum -coeff(deg-1).
      const Int bound = -poly.coeff(static_cast<std::size_t>(poly.degree()) - 1);
      if (bound < 1) return std::nullopt;
      for (Int r = 1; r <= bound; ++r) {
        if (c0 % r != 0) continue;
        if (poly(r) == 0) {
          found = static_cast<int>(mpz_get_si(r.get_mpz_t()));
          break;
        }
      }
      if (found < 0) return std::nullopt;
    }
    roots.push_back(found);
    const auto dm = poly.divmod_monic(IntPolynomial({Int(-found), Int(1)}));
    if (!dm.rem.is_zero()) throw Error(errc::internal, "deflation by a root left a remainder");
    poly = dm.quot;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace {

// Multiset difference a \ b when b is contained in a; nullopt otherwise.
std::optional<std::vector<int>> multiset_minus(std::vector<int> a, const std::vector<int>& b) {
  for (int x : b) {
    auto it = std::find(a.begin(), a.end(), x);
    if (it == a.end()) return std::nullopt;
    a.erase(it);
  }
  return a;
}

}  // namespace

std::optional<AdditionDeletionTriple> addition_deletion_infer(
    std::optional<std::vector<int>> full, std::optional<std::vector<int>> deleted,
    std::optional<std::vector<int>> restricted) {
  const int given = (full ? 1 : 0) + (deleted ? 1 : 0) + (restricted ? 1 : 0);
  if (given != 2) throw Error(errc::precondition, "exactly two exponent tuples must be given");
  const auto sorted = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto done = [&](std::vector<int> f, std::vector<int> d, std::vector<int> r) {
    return AdditionDeletionTriple{sorted(std::move(f)), sorted(std::move(d)), sorted(std::move(r))};
  };
  if (full && restricted) {
    if (full->size() != restricted->size() + 1) return std::nullopt;
    const auto rest = multiset_minus(sorted(*full), sorted(*restricted));
    if (!rest || rest->size() != 1) return std::nullopt;
    const int dl = rest->front();
    if (dl < 1) return std::nullopt;
    std::vector<int> del = *restricted;
    del.push_back(dl - 1);
    return done(*full, std::move(del), *restricted);
  }
  if (deleted && restricted) {
    if (deleted->size() != restricted->size() + 1) return std::nullopt;
    const auto rest = multiset_minus(sorted(*deleted), sorted(*restricted));
    if (!rest || rest->size() != 1) return std::nullopt;
    const int dl = rest->front() + 1;
    std::vector<int> f = *restricted;
    f.push_back(dl);
    return done(std::move(f), *deleted, *restricted);
  }
  // full and deleted: find d with full \ {d} == deleted \ {d-1}.
  if (full->size() != deleted->size()) return std::nullopt;
  const std::vector<int> f = sorted(*full);
  const std::vector<int> d = sorted(*deleted);
  std::vector<int> tried;
  for (int cand : f) {
    if (std::find(tried.begin(), tried.end(), cand) != tried.end()) continue;
    tried.push_back(cand);
    auto lhs = multiset_minus(f, {cand});
    auto rhs = multiset_minus(d, {cand - 1});
    if (lhs && rhs && *lhs == *rhs) return done(f, d, *lhs);
  }
  return std::nullopt;
}

B2Equality b2_equality(const Arrangement& a, std::uint32_t h) {
  if (a.is_empty()) throw Error(errc::precondition, "b2 equality needs a nonempty arrangement");
  if (h >= a.size()) throw Error(errc::index, "hyperplane index out of range");
  B2Equality out;
  out.lhs = b2(a);
  if (a.dim() == 1) {
    out.rhs = 0;
  } else {
    const Restriction r = restrict_to(a, h);
    const Int nr(static_cast<long>(r.arr.size()));
    out.rhs = b2(r.arr) + nr * (Int(static_cast<long>(a.size())) - nr);
  }
  if (out.lhs < out.rhs) throw Error(errc::internal, "b2 inequality violated");
  out.holds = (out.lhs == out.rhs);
  return out;
}

namespace {

void require_free(const FreenessVerdict& v) {
  if (v.status != FreeStatus::Free) {
    throw Error(errc::precondition, "criterion requires a Free verdict for the arrangement");
  }
}

// Parent indices of the localization A_X for a flat X of A^H: H itself plus
// every hyperplane tracing into the contains-set of X.
std::vector<std::uint32_t> parent_localization(const Restriction& r, std::uint32_t h,
                                               const Flat& x) {
  std::vector<std::uint32_t> ids = {h};
  for (std::uint32_t t : x.contains) {
    for (std::uint32_t orig : r.traces[t]) ids.push_back(orig);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

CriterionResult deletable(const Arrangement& a, std::uint32_t h, const FreenessVerdict& freeness,
                          bool include_center) {
  require_free(freeness);
  if (h >= a.size()) throw Error(errc::index, "hyperplane index out of range");
  CriterionResult res;
  if (a.dim() == 1 || a.size() == 1) return res;  // deletion leaves a free arrangement
  const Restriction r = restrict_to(a, h);
  const auto lat = lattice_of(r.arr);
  for (const Flat& x : lat->flats()) {
    if (x.codim < 2) continue;
    if (!include_center && x.codim > a.dim() - 2) continue;
    const IntPolynomial chi_rest = charpoly(r.arr.subarrangement(x.contains));
    const IntPolynomial chi_loc = charpoly(a.subarrangement(parent_localization(r, h, x)));
    if (!poly_divides(chi_rest, chi_loc)) {
      res.ok = false;
      res.witness = x;
      res.detail = {{"flat", x.id},
                    {"codim_in_V", x.codim + 1},
                    {"contains", x.contains},
                    {"chi_restriction_localized", poly_to_json(chi_rest)},
                    {"chi_localized", poly_to_json(chi_loc)}};
      return res;
    }
  }
  return res;
}

CriterionResult local_b2_criterion(const Arrangement& a, std::uint32_t h,
                                   const FreenessVerdict& freeness) {
  require_free(freeness);
  if (h >= a.size()) throw Error(errc::index, "hyperplane index out of range");
  CriterionResult res;
  if (a.dim() == 1 || a.size() == 1) return res;
  const Restriction r = restrict_to(a, h);
  const auto lat = lattice_of(r.arr);
  for (const Flat& x : lat->flats()) {
    const Arrangement ax = a.subarrangement(parent_localization(r, h, x));
    const Arrangement ahx = r.arr.subarrangement(x.contains);
    const Int na(static_cast<long>(ax.size()));
    const Int nr(static_cast<long>(ahx.size()));
    const Int lhs = b2(ax);
    const Int rhs = b2(ahx) + nr * (na - nr);
    if (lhs < rhs) throw Error(errc::internal, "b2 inequality violated");
    const bool eq = (lhs == rhs);
    const bool root = (charpoly(ax)(na - nr) == 0);
    if (!eq || !root) {
      res.ok = false;
      res.witness = x;
      res.detail = {{"flat", x.id},
                    {"codim_in_V", x.codim + 1},
                    {"contains", x.contains},
                    {"b2_equality_holds", eq},
                    {"root_condition_holds", root},
                    {"b2_lhs", int_to_json(lhs)},
                    {"b2_rhs", int_to_json(rhs)},
                    {"root_candidate", int_to_json(na - nr)}};
      return res;
    }
  }
  return res;
}

FreenessVerdict division_free(const Arrangement& a) {
  const int r = a.rank();
  if (r <= 2) {
    CertStep step{"Axiom-l<=2", {{"rank", r}, {"hyperplanes", a.size()}}, {}};
    return make_free(a, axiom_exponents(a), std::move(step));
  }
  const IntPolynomial chi_a = charpoly(a);
  for (std::uint32_t h = 0; h < a.size(); ++h) {
    if (!b2_equality(a, h).holds) continue;
    const Restriction rest = restrict_to(a, h);
    const IntPolynomial chi_h = charpoly(rest.arr);
    if (!poly_divides(chi_h, chi_a)) continue;
    const FreenessVerdict sub = division_free(rest.arr);
    if (sub.status != FreeStatus::Free) continue;
    std::vector<int> exps = sub.exponents;
    exps.push_back(static_cast<int>(a.size() - rest.arr.size()));
    CertStep step{"Division",
                  {{"hyperplane", h}, {"new_exponent", a.size() - rest.arr.size()}},
                  {sub.certificate}};
    return make_free(a, std::move(exps), std::move(step));
  }
  FreenessVerdict v;
  v.status = FreeStatus::Unknown;
  v.reason = "no hyperplane satisfies the b2-equality with a divisible, recursively free restriction";
  return v;
}

FreenessVerdict yoshinaga3_free(const Arrangement& a) {
  if (a.rank() != 3) throw Error(errc::precondition, "Yoshinaga test needs essential rank 3");
  const std::uint32_t h = 0;
  const Int b20 = b2_0(a);
  const ZieglerRestriction zr = ziegler_restrict(a, h);
  const Exp2Result e2 = exp2(zr.rest.arr, zr.mult);
  const Int b2zr = Int(e2.d1) * Int(e2.d2);
  if (b20 < b2zr) throw Error(errc::internal, "Yoshinaga inequality violated");
  if (b20 == b2zr) {
    std::vector<int> exps(static_cast<std::size_t>(a.dim()) - 3, 0);
    exps.push_back(1);
    exps.push_back(e2.d1);
    exps.push_back(e2.d2);
    CertStep rank2{"Rank2",
                   {{"exponents", std::vector<int>{e2.d1, e2.d2}},
                    {"certificate", certificate_to_json(e2.cert)}},
                   {}};
    CertStep step{"Yoshinaga3",
                  {{"hyperplane", h}, {"b2_0", int_to_json(b20)}, {"b2_ziegler", int_to_json(b2zr)}},
                  {rank2}};
    return make_free(a, std::move(exps), std::move(step));
  }
  FreenessVerdict v;
  v.status = FreeStatus::NotFree;
  v.witness = {{"kind", "yoshinaga-b2-mismatch"},
               {"hyperplane", h},
               {"b2_0", int_to_json(b20)},
               {"b2_ziegler", int_to_json(b2zr)}};
  return v;
}

FreenessVerdict decide_freeness(const Arrangement& a, int budget) {
  const auto terao = terao_necessary(a);
  if (!terao) {
    FreenessVerdict v;
    v.status = FreeStatus::NotFree;
    v.witness = {{"kind", "charpoly-does-not-split"}, {"chi", poly_to_json(charpoly(a))}};
    return v;
  }
  const int r = a.rank();
  if (r <= 2) {
    CertStep step{"Axiom-l<=2", {{"rank", r}, {"hyperplanes", a.size()}}, {}};
    return make_free(a, axiom_exponents(a), std::move(step));
  }
  if (r == 3) return yoshinaga3_free(a);
  const FreenessVerdict div = division_free(a);
  if (div.status == FreeStatus::Free) return div;
  int cap = 0;
  for (int e : *terao) cap = std::max(cap, e);
  if (budget >= 0) cap = std::min(cap, budget);
  try {
    const auto cert = saito_search(a, Multiplicity::ones(a.size()), cap);
    if (cert) {
      if (cert->exponents != *terao) {
        throw Error(errc::internal, "Saito exponents disagree with Terao factorization");
      }
      CertStep step{"Saito", {{"certificate", certificate_to_json(*cert)}}, {}};
      return make_free(a, cert->exponents, std::move(step));
    }
  } catch (const Error& e) {
    if (e.code() != errc::budget) throw;
    FreenessVerdict v;
    v.status = FreeStatus::Unknown;
    v.reason = std::string("oracle budget exceeded: ") + e.what();
    return v;
  }
  FreenessVerdict v;
  v.status = FreeStatus::Unknown;
  v.reason = "division theorem found no chain and the Saito search was inconclusive within budget " +
             std::to_string(cap);
  return v;
}

namespace {

bool deletable_core(const Arrangement& a, std::uint32_t h) {
  FreenessVerdict assume;
  assume.status = FreeStatus::Free;
  // Exponents are irrelevant for the criterion; freeness of intermediate
  // arrangements is maintained inductively along the search.
  return deletable(a, h, assume, true).ok;
}

}  // namespace

FreenessVerdict deletion_verdict(const Arrangement& a, std::uint32_t h,
                                 const FreenessVerdict& freeness) {
  require_free(freeness);
  if (!deletable(a, h, freeness, true).ok) {
    throw Error(errc::precondition, "hyperplane fails the deletion criterion");
  }
  const int removed = static_cast<int>(a.size() - restrict_to(a, h).arr.size());
  std::vector<int> exps = freeness.exponents;
  auto it = std::find(exps.begin(), exps.end(), removed);
  if (it == exps.end()) {
    throw Error(errc::internal, "|A| - |A^H| missing from exp(A) despite deletability");
  }
  *it = removed - 1;
  CertStep step{"Inductive",
                {{"parent", a.text()}, {"hyperplane", h}, {"removed_exponent", removed}},
                {freeness.certificate}};
  return make_free(a.deleted(h), std::move(exps), std::move(step));
}

FiltrationResult free_filtration(const Arrangement& a, const FreenessVerdict& freeness) {
  require_free(freeness);
  FiltrationResult out;
  std::map<std::vector<std::uint32_t>, std::optional<std::vector<std::uint32_t>>> memo;
  std::function<std::optional<std::vector<std::uint32_t>>(const Arrangement&,
                                                          const std::vector<std::uint32_t>&)>
      dfs = [&](const Arrangement& cur,
                const std::vector<std::uint32_t>& live) -> std::optional<std::vector<std::uint32_t>> {
    if (live.empty()) return std::vector<std::uint32_t>{};
    auto it = memo.find(live);
    if (it != memo.end()) {
      ++out.memo_hits;
      return it->second;
    }
    ++out.nodes;
    std::optional<std::vector<std::uint32_t>> best;
    for (std::uint32_t k = 0; k < live.size(); ++k) {
      if (!deletable_core(cur, k)) continue;
      std::vector<std::uint32_t> rest = live;
      rest.erase(rest.begin() + k);
      const auto sub = dfs(cur.deleted(k), rest);
      if (sub) {
        best = std::vector<std::uint32_t>{live[k]};
        best->insert(best->end(), sub->begin(), sub->end());
        break;  // ascending scan: first complete chain is the canonical one
      }
    }
    memo.emplace(live, best);
    return best;
  };
  std::vector<std::uint32_t> all(a.size());
  for (std::uint32_t i = 0; i < a.size(); ++i) all[i] = i;
  out.chain = dfs(a, all);
  return out;
}

namespace {

bool replay_step(const Arrangement& a, const std::vector<int>& exps, const CertStep& step,
                 std::string* why);

bool fail_replay(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

bool replay_axiom(const Arrangement& a, const std::vector<int>& exps, std::string* why) {
  if (a.rank() > 2) return fail_replay(why, "axiom applied to rank > 2");
  std::vector<int> expect = axiom_exponents(a);
  if (exps != expect) return fail_replay(why, "axiom exponents mismatch");
  return true;
}

bool replay_division(const Arrangement& a, const std::vector<int>& exps, const CertStep& step,
                     std::string* why) {
  const std::uint32_t h = step.data.at("hyperplane").get<std::uint32_t>();
  if (h >= a.size()) return fail_replay(why, "division hyperplane out of range");
  if (!b2_equality(a, h).holds) return fail_replay(why, "division step: b2-equality fails");
  const Restriction r = restrict_to(a, h);
  if (!poly_divides(charpoly(r.arr), charpoly(a))) {
    return fail_replay(why, "division step: divisibility fails");
  }
  if (step.children.size() != 1) return fail_replay(why, "division step needs one child");
  std::vector<int> sub_exps = exps;
  const int extra = static_cast<int>(a.size() - r.arr.size());
  auto it = std::find(sub_exps.begin(), sub_exps.end(), extra);
  if (it == sub_exps.end()) return fail_replay(why, "division exponent not present");
  sub_exps.erase(it);
  return replay_step(r.arr, sub_exps, step.children[0], why);
}

bool replay_yoshinaga(const Arrangement& a, const std::vector<int>& exps, const CertStep& step,
                      std::string* why) {
  if (a.rank() != 3) return fail_replay(why, "Yoshinaga step on rank != 3");
  const std::uint32_t h = step.data.at("hyperplane").get<std::uint32_t>();
  const ZieglerRestriction zr = ziegler_restrict(a, h);
  const Exp2Result e2 = exp2(zr.rest.arr, zr.mult);
  if (b2_0(a) != Int(e2.d1) * Int(e2.d2)) {
    return fail_replay(why, "Yoshinaga equality fails on replay");
  }
  std::vector<int> expect(static_cast<std::size_t>(a.dim()) - 3, 0);
  expect.push_back(1);
  expect.push_back(e2.d1);
  expect.push_back(e2.d2);
  std::sort(expect.begin(), expect.end());
  if (exps != expect) return fail_replay(why, "Yoshinaga exponents mismatch");
  // The rank-2 child certificate replays against the essentialized Ziegler
  // restriction.
  if (step.children.size() != 1 || step.children[0].rule != "Rank2") {
    return fail_replay(why, "Yoshinaga step needs a Rank2 child");
  }
  const EssentialMulti em = essentialize_rank2(zr.rest.arr, zr.mult);
  const SaitoCertificate cert = certificate_from_json(
      em.arr.field(), 2, step.children[0].data.at("certificate"));
  std::string sub;
  if (!verify_certificate(em.arr, em.mult, cert, &sub)) {
    return fail_replay(why, "Rank2 certificate: " + sub);
  }
  return true;
}

bool replay_inductive(const Arrangement& a, const std::vector<int>& exps, const CertStep& step,
                      std::string* why) {
  const ParsedArrangement parent = parse_arrangement(step.data.at("parent").get<std::string>());
  const std::uint32_t h = step.data.at("hyperplane").get<std::uint32_t>();
  if (h >= parent.arrangement.size()) return fail_replay(why, "inductive hyperplane out of range");
  if (parent.arrangement.deleted(h).canonical_key() != a.canonical_key()) {
    return fail_replay(why, "inductive step parent does not delete to this arrangement");
  }
  const int removed = step.data.at("removed_exponent").get<int>();
  std::vector<int> parent_exps = exps;
  auto it = std::find(parent_exps.begin(), parent_exps.end(), removed - 1);
  if (it == parent_exps.end()) return fail_replay(why, "inductive exponent shape mismatch");
  *it = removed;
  std::sort(parent_exps.begin(), parent_exps.end());
  if (step.children.size() != 1) return fail_replay(why, "inductive step needs one child");
  if (!replay_step(parent.arrangement, parent_exps, step.children[0], why)) return false;
  FreenessVerdict pv;
  pv.status = FreeStatus::Free;
  pv.exponents = parent_exps;
  if (!deletable(parent.arrangement, h, pv, true).ok) {
    return fail_replay(why, "inductive step: deletion criterion fails on replay");
  }
  return true;
}

bool replay_saito(const Arrangement& a, const std::vector<int>& exps, const CertStep& step,
                  std::string* why) {
  const SaitoCertificate cert =
      certificate_from_json(a.field(), a.dim(), step.data.at("certificate"));
  if (cert.exponents != exps) return fail_replay(why, "Saito exponents mismatch");
  std::string sub;
  if (!verify_certificate(a, Multiplicity::ones(a.size()), cert, &sub)) {
    return fail_replay(why, "Saito certificate: " + sub);
  }
  return true;
}

bool replay_step(const Arrangement& a, const std::vector<int>& exps, const CertStep& step,
                 std::string* why) {
  if (step.rule == "Axiom-l<=2") return replay_axiom(a, exps, why);
  if (step.rule == "Division") return replay_division(a, exps, step, why);
  if (step.rule == "Yoshinaga3") return replay_yoshinaga(a, exps, step, why);
  if (step.rule == "Saito") return replay_saito(a, exps, step, why);
  if (step.rule == "Inductive") return replay_inductive(a, exps, step, why);
  return fail_replay(why, "unknown certificate rule: " + step.rule);
}

}  // namespace

bool replay_verdict(const Arrangement& a, const FreenessVerdict& v, std::string* why) {
  if (v.status != FreeStatus::Free) return fail_replay(why, "only Free verdicts replay");
  long long sum = 0;
  for (int e : v.exponents) sum += e;
  if (sum != static_cast<long long>(a.size())) {
    return fail_replay(why, "exponent sum differs from |A|");
  }
  std::vector<Int> roots;
  for (int e : v.exponents) roots.emplace_back(e);
  if (charpoly(a) != IntPolynomial::from_roots(roots)) {
    return fail_replay(why, "Terao factorization fails for claimed exponents");
  }
  return replay_step(a, v.exponents, v.certificate, why);
}

}  // namespace arrfree
