#include <doctest.h>

#include <algorithm>

#include "arrfree/catalog.hpp"
#include "arrfree/error.hpp"
#include "arrfree/freeness.hpp"

using namespace arrfree;

namespace {

Arrangement from_text(const std::string& t) { return parse_arrangement(t).arrangement; }

FreenessVerdict assume_free(std::vector<int> exps = {}) {
  FreenessVerdict v;
  v.status = FreeStatus::Free;
  v.exponents = std::move(exps);
  return v;
}

}  // namespace

TEST_CASE("terao_necessary fixtures") {
  const Arrangement er = catalog_get("edelman_reiner").arr;
  CHECK(terao_necessary(er) == std::vector<int>{1, 5, 5, 5, 5});

  // The restriction does not factor: chi0 = (t-4)(t^2-10t+26).
  const Arrangement r = restrict_to(er, 20).arr;
  CHECK_FALSE(terao_necessary(r).has_value());
  const IntPolynomial quad({Int(26), Int(-10), Int(1)});
  CHECK(chi0(r) == IntPolynomial({Int(-4), Int(1)}) * quad);

  CHECK(terao_necessary(catalog_get("boolean", {.dim = 4}).arr) ==
        std::vector<int>{1, 1, 1, 1});
  CHECK(terao_necessary(Arrangement::empty(Field::rationals(), 3)) ==
        std::vector<int>{0, 0, 0});
  CHECK(terao_necessary(catalog_get("braid", {.dim = 4}).arr) ==
        std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("addition_deletion_infer") {
  using V = std::vector<int>;
  // exp(A) and exp(A'') determine exp(A').
  auto t1 = addition_deletion_infer(V{1, 5, 5, 5, 5}, std::nullopt, V{1, 5, 5, 5});
  REQUIRE(t1.has_value());
  CHECK(t1->deleted == V{1, 4, 5, 5, 5});
  // exp(A') and exp(A'') determine exp(A).
  auto t2 = addition_deletion_infer(std::nullopt, V{1, 1}, V{1});
  REQUIRE(t2.has_value());
  CHECK(t2->full == V{1, 2});
  // Incompatible shapes.
  CHECK_FALSE(addition_deletion_infer(V{1, 5, 5, 5, 5}, std::nullopt, V{1, 4, 4, 4}).has_value());
  // exp(A) and exp(A') determine exp(A'').
  auto t3 = addition_deletion_infer(V{1, 5, 5, 5, 5}, V{1, 4, 5, 5, 5}, std::nullopt);
  REQUIRE(t3.has_value());
  CHECK(t3->restricted == V{1, 5, 5, 5});
  CHECK_FALSE(addition_deletion_infer(V{1, 2}, V{1, 2}, std::nullopt).has_value());
  CHECK_THROWS_AS(addition_deletion_infer(V{1}, V{1}, V{1}), Error);
}

TEST_CASE("b2_equality fixtures") {
  const Arrangement er = catalog_get("edelman_reiner").arr;
  const B2Equality e = b2_equality(er, 20);
  CHECK(e.holds);
  CHECK(e.lhs == 170);
  CHECK(e.rhs == 170);  // 80 + 15 * 6

  const Arrangement boolean3 = catalog_get("boolean", {.dim = 3}).arr;
  for (std::uint32_t h = 0; h < 3; ++h) {
    const B2Equality b = b2_equality(boolean3, h);
    CHECK(b.holds);
    CHECK(b.lhs == 3);
  }

  const Arrangement generic3 = from_text("dim 3 over Q\n1 0 0\n0 1 0\n0 0 1\n");
  CHECK(b2_equality(generic3, 0).holds);
}

TEST_CASE("deletable on boolean and braid") {
  const Arrangement boolean3 = catalog_get("boolean", {.dim = 3}).arr;
  for (std::uint32_t h = 0; h < boolean3.size(); ++h) {
    CHECK(deletable(boolean3, h, assume_free()).ok);
  }
  const Arrangement braid = catalog_get("braid", {.dim = 4}).arr;
  for (std::uint32_t h = 0; h < braid.size(); ++h) {
    CHECK(deletable(braid, h, assume_free()).ok);
    // Soundness spot check: the deletion really is free, certified by Saito.
    const FreenessVerdict v = decide_freeness(braid.deleted(h));
    CHECK(v.status == FreeStatus::Free);
  }
}

TEST_CASE("deletable requires a Free verdict") {
  FreenessVerdict unknown;
  CHECK_THROWS_AS(deletable(catalog_get("boolean", {.dim = 3}).arr, 0, unknown), Error);
  CHECK_THROWS_AS(free_filtration(catalog_get("boolean", {.dim = 3}).arr, unknown), Error);
}

TEST_CASE("pentagon cone: no hyperplane is deletable, in both criteria") {
  const Arrangement pentagon = catalog_get("pentagon_cone").arr;
  const FreenessVerdict v = decide_freeness(pentagon);
  REQUIRE(v.status == FreeStatus::Free);
  for (std::uint32_t h = 0; h < pentagon.size(); ++h) {
    const CriterionResult d = deletable(pentagon, h, v);
    const CriterionResult l = local_b2_criterion(pentagon, h, v);
    CHECK_FALSE(d.ok);
    CHECK_FALSE(l.ok);
    REQUIRE(d.witness.has_value());
  }
}

TEST_CASE("Edelman-Reiner: center divisibility fails but only at the center") {
  const Arrangement er = catalog_get("edelman_reiner").arr;
  const FreenessVerdict v = assume_free({1, 5, 5, 5, 5});
  const CriterionResult d = deletable(er, 20, v);
  const CriterionResult l = local_b2_criterion(er, 20, v);
  CHECK_FALSE(d.ok);
  CHECK_FALSE(l.ok);
  CHECK(d.detail.at("codim_in_V").get<int>() == 5);
  // The truncated comparison range misses exactly this failure.
  CHECK(deletable(er, 20, v, /*include_center=*/false).ok);
  // The local witness is the root condition, not the b2-equality.
  CHECK(l.detail.at("b2_equality_holds").get<bool>());
  CHECK_FALSE(l.detail.at("root_condition_holds").get<bool>());
}

TEST_CASE("division_free fixtures") {
  const FreenessVerdict b = division_free(catalog_get("boolean", {.dim = 4}).arr);
  CHECK(b.status == FreeStatus::Free);
  CHECK(b.exponents == std::vector<int>{1, 1, 1, 1});

  const FreenessVerdict br = division_free(catalog_get("braid", {.dim = 4}).arr);
  CHECK(br.status == FreeStatus::Free);
  CHECK(br.exponents == std::vector<int>{0, 1, 2, 3});

  // Edelman-Reiner has no division chain (no H with both the b2-equality and
  // divisibility); Unknown is the documented outcome and never NotFree.
  const FreenessVerdict er = division_free(catalog_get("edelman_reiner").arr);
  CHECK(er.status != FreeStatus::NotFree);
  if (er.status == FreeStatus::Free) CHECK(er.exponents == std::vector<int>{1, 5, 5, 5, 5});

  const FreenessVerdict dp = division_free(catalog_get("dipasquale").arr);
  CHECK(dp.status == FreeStatus::Free);
  CHECK(dp.exponents == std::vector<int>{1, 3, 3, 3, 3});
}

TEST_CASE("yoshinaga3_free fixtures") {
  const FreenessVerdict p = yoshinaga3_free(catalog_get("pentagon_cone").arr);
  CHECK(p.status == FreeStatus::Free);
  CHECK(p.exponents == std::vector<int>{1, 5, 5});

  const FreenessVerdict br = yoshinaga3_free(catalog_get("braid", {.dim = 4}).arr);
  CHECK(br.status == FreeStatus::Free);
  CHECK(br.exponents == std::vector<int>{0, 1, 2, 3});

  // Four planes of K^3 in general position are not free.
  const Arrangement generic4 = from_text("dim 3 over Q\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n");
  const FreenessVerdict g = yoshinaga3_free(generic4);
  CHECK(g.status == FreeStatus::NotFree);
  CHECK(g.witness.at("kind") == "yoshinaga-b2-mismatch");

  CHECK_THROWS_AS(yoshinaga3_free(catalog_get("boolean", {.dim = 2}).arr), Error);
}

TEST_CASE("decide_freeness fixtures") {
  const Arrangement er = catalog_get("edelman_reiner").arr;
  const FreenessVerdict not_free = decide_freeness(restrict_to(er, 20).arr);
  CHECK(not_free.status == FreeStatus::NotFree);
  CHECK(not_free.witness.at("kind") == "charpoly-does-not-split");

  const FreenessVerdict dp = decide_freeness(catalog_get("dipasquale").arr);
  CHECK(dp.status == FreeStatus::Free);
  CHECK(dp.exponents == std::vector<int>{1, 3, 3, 3, 3});

  const FreenessVerdict empty = decide_freeness(Arrangement::empty(Field::prime(11), 4));
  CHECK(empty.status == FreeStatus::Free);
  CHECK(empty.exponents == std::vector<int>{0, 0, 0, 0});

  // Rank-2 braid in K^3 essentializes to exponents (0, 1, 2).
  const FreenessVerdict b3 = decide_freeness(catalog_get("braid", {.dim = 3}).arr);
  CHECK(b3.status == FreeStatus::Free);
  CHECK(b3.exponents == std::vector<int>{0, 1, 2});
}

TEST_CASE("free verdicts replay") {
  std::string why;
  const Arrangement dp = catalog_get("dipasquale").arr;
  CHECK(replay_verdict(dp, decide_freeness(dp), &why));

  const Arrangement pentagon = catalog_get("pentagon_cone").arr;
  CHECK(replay_verdict(pentagon, decide_freeness(pentagon), &why));

  const Arrangement boolean4 = catalog_get("boolean", {.dim = 4}).arr;
  CHECK(replay_verdict(boolean4, decide_freeness(boolean4), &why));

  const Arrangement braid4 = catalog_get("braid", {.dim = 4}).arr;
  CHECK(replay_verdict(braid4, decide_freeness(braid4), &why));

  // A tampered verdict fails replay.
  FreenessVerdict forged = decide_freeness(boolean4);
  forged.exponents = {0, 1, 1, 2};
  CHECK_FALSE(replay_verdict(boolean4, forged, &why));
}

TEST_CASE("free_filtration fixtures") {
  const Arrangement boolean3 = catalog_get("boolean", {.dim = 3}).arr;
  const FiltrationResult fb = free_filtration(boolean3, decide_freeness(boolean3));
  REQUIRE(fb.chain.has_value());
  CHECK(fb.chain->size() == 3);

  const Arrangement braid = catalog_get("braid", {.dim = 4}).arr;
  const FreenessVerdict v = decide_freeness(braid);
  const FiltrationResult f = free_filtration(braid, v);
  REQUIRE(f.chain.has_value());
  CHECK(f.chain->size() == 6);

  // Replay: every prefix deletion passes the deletion criterion; the
  // inductively constructed verdicts replay end-to-end and agree with the
  // oracle's own decision.
  Arrangement cur = braid;
  FreenessVerdict cur_v = v;
  for (std::uint32_t orig : *f.chain) {
    const auto pos = cur.index_of(braid.form(orig));
    REQUIRE(pos.has_value());
    CHECK(deletable(cur, static_cast<std::uint32_t>(*pos), cur_v).ok);
    const FreenessVerdict next = deletion_verdict(cur, static_cast<std::uint32_t>(*pos), cur_v);
    cur = cur.deleted(*pos);
    CHECK(next.certificate.rule == "Inductive");
    std::string why;
    CHECK(replay_verdict(cur, next, &why));
    CHECK(decide_freeness(cur).exponents == next.exponents);
    cur_v = next;
  }
  CHECK(cur.is_empty());

  const Arrangement pentagon = catalog_get("pentagon_cone").arr;
  const FiltrationResult fp = free_filtration(pentagon, decide_freeness(pentagon));
  CHECK_FALSE(fp.chain.has_value());
}

TEST_CASE("filtration memoization reports stats deterministically") {
  const Arrangement braid = catalog_get("braid", {.dim = 4}).arr;
  const FreenessVerdict v = decide_freeness(braid);
  const FiltrationResult a = free_filtration(braid, v);
  const FiltrationResult b = free_filtration(braid, v);
  CHECK(a.chain == b.chain);
  CHECK(a.nodes == b.nodes);
  CHECK(a.memo_hits == b.memo_hits);
}

TEST_CASE("deletable implies the addition-deletion exponent pattern") {
  const Arrangement braid = catalog_get("braid", {.dim = 4}).arr;
  const FreenessVerdict v = decide_freeness(braid);
  REQUIRE(v.status == FreeStatus::Free);
  for (std::uint32_t h = 0; h < braid.size(); ++h) {
    if (!deletable(braid, h, v).ok) continue;
    const FreenessVerdict vd = decide_freeness(braid.deleted(h));
    REQUIRE(vd.status == FreeStatus::Free);
    const auto triple = addition_deletion_infer(v.exponents, vd.exponents, std::nullopt);
    CHECK(triple.has_value());
    const int removed = static_cast<int>(braid.size() - restrict_to(braid, h).arr.size());
    CHECK(std::count(v.exponents.begin(), v.exponents.end(), removed) > 0);
  }
}

TEST_CASE("verdict JSON carries certificates and witnesses") {
  const auto free_j = verdict_to_json(decide_freeness(catalog_get("pentagon_cone").arr));
  CHECK(free_j.at("status") == "free");
  CHECK(free_j.at("certificate").at("rule") == "Yoshinaga3");

  const Arrangement generic4 = from_text("dim 3 over Q\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n");
  const auto nf_j = verdict_to_json(decide_freeness(generic4));
  CHECK(nf_j.at("status") == "not_free");
}

TEST_CASE("one-dimensional and tiny arrangements go end to end") {
  const Arrangement line = from_text("dim 1 over Q\n1\n");
  const FreenessVerdict v = decide_freeness(line);
  CHECK(v.status == FreeStatus::Free);
  CHECK(v.exponents == std::vector<int>{1});
  CHECK(charpoly(line) == IntPolynomial({Int(-1), Int(1)}));
  CHECK(deletable(line, 0, v).ok);
  const FiltrationResult f = free_filtration(line, v);
  REQUIRE(f.chain.has_value());
  CHECK(*f.chain == std::vector<std::uint32_t>{0});
  std::string why;
  CHECK(replay_verdict(line, v, &why));
}

TEST_CASE("GF(2) arrangements work through the pipeline") {
  const Arrangement a = from_text("dim 3 over GF(2)\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n");
  CHECK(charpoly(a)(Int(1)) == 0);
  const FreenessVerdict v = decide_freeness(a);
  // Four planes, rank 3 over GF(2): the Yoshinaga test decides it exactly.
  CHECK((v.status == FreeStatus::Free || v.status == FreeStatus::NotFree));
  if (v.status == FreeStatus::Free) {
    std::string why;
    CHECK(replay_verdict(a, v, &why));
  }
}

TEST_CASE("decide_freeness reports Unknown when the Saito budget is too low") {
  const Arrangement er = catalog_get("edelman_reiner").arr;
  const FreenessVerdict v = decide_freeness(er, 2);
  CHECK(v.status == FreeStatus::Unknown);
  CHECK(v.reason.find("budget") != std::string::npos);
}

TEST_CASE("pentagon cone realizations across admissible primes") {
  for (std::uint64_t p : {11ULL, 19ULL, 29ULL, 31ULL, 41ULL, 61ULL}) {
    CatalogParams params;
    params.prime = p;
    const Arrangement a = catalog_get("pentagon_cone", params).arr;
    CHECK(a.size() == 11);
    const FreenessVerdict v = yoshinaga3_free(a);
    CHECK(v.status == FreeStatus::Free);
    CHECK(v.exponents == std::vector<int>{1, 5, 5});
    CHECK(charpoly(a) == IntPolynomial::from_roots({1, 5, 5}));
  }
  CatalogParams bad;
  bad.prime = 7;  // 7 is not +-1 mod 5
  CHECK_THROWS_AS(catalog_get("pentagon_cone", bad), Error);
}
