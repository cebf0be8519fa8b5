// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Where a criterion pins a runtime bound, the bound is enforced.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "arrfree/catalog.hpp"
#include "arrfree/derivation.hpp"
#include "arrfree/error.hpp"
#include "arrfree/freeness.hpp"
#include "arrfree/fuzz.hpp"
#include "arrfree/lattice.hpp"
#include "arrfree/multiarrangement.hpp"

using namespace arrfree;

namespace {

int failures = 0;

#define ACCEPT_CHECK(cond, what)                                      \
  do {                                                                \
    if (!(cond)) {                                                    \
      throw Error("acceptance", std::string("check failed: ") + what); \
    }                                                                 \
  } while (0)

void criterion(int number, const std::string& label, double time_limit_s,
               const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string error;
  try {
    body();
  } catch (const std::exception& e) {
    error = e.what();
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (error.empty() && time_limit_s > 0 && elapsed > time_limit_s) {
    std::ostringstream ss;
    ss << "runtime " << elapsed << "s exceeds the " << time_limit_s << "s bound";
    error = ss.str();
  }
  if (error.empty()) {
    std::cout << "[PASS] criterion " << number << ": " << label << " (" << elapsed << "s)\n";
  } else {
    std::cout << "[FAIL] criterion " << number << ": " << label << " - " << error << "\n";
    ++failures;
  }
}

// Free-biased corpus for criteria 5-7: random arrangements mixed with
// graphic (braid subset) and near-pencil constructions, over Q and GF(101).
struct CorpusEntry {
  Arrangement arr;
  std::vector<int> exponents;  // oracle-certified
};

std::vector<CorpusEntry> certified_corpus(std::size_t want, int* generated_out) {
  std::vector<CorpusEntry> corpus;
  std::mt19937_64 rng(20240809);
  int generated = 0;
  const Field f101 = Field::prime(101);
  while (corpus.size() < want && generated < 4000) {
    ++generated;
    const int strategy = generated % 3;
    const Field& field = (generated % 4 == 0) ? Field::rationals() : f101;
    const int l = 3 + static_cast<int>(rng() % 2);
    std::vector<LinearForm> forms;
    try {
      if (strategy == 0) {
        // Plain random (mostly rejected by the Terao filter).
        const int n = 3 + static_cast<int>(rng() % 6);
        forms = random_arrangement(rng(), l, n, field).forms();
      } else if (strategy == 1) {
        // Random subset of the braid arrangement: graphic, frequently free.
        const Arrangement braid = [&] {
          std::vector<LinearForm> bf;
          for (int i = 0; i < l; ++i) {
            for (int j = i + 1; j < l; ++j) {
              std::vector<Int> v(static_cast<std::size_t>(l), Int(0));
              v[static_cast<std::size_t>(i)] = 1;
              v[static_cast<std::size_t>(j)] = -1;
              bf.push_back(LinearForm::canonical(field, std::move(v)));
            }
          }
          for (int i = 0; i < l && bf.size() < 8; ++i) {
            std::vector<Int> v(static_cast<std::size_t>(l), Int(0));
            v[static_cast<std::size_t>(i)] = 1;
            bf.push_back(LinearForm::canonical(field, std::move(v)));
          }
          return Arrangement(field, l, std::move(bf));
        }();
        for (std::size_t i = 0; i < braid.size(); ++i) {
          if (rng() % 3 != 0) forms.push_back(braid.form(i));
        }
      } else {
        // Near-pencil: a pencil through a common codim-2 flat plus extras.
        const int k = 2 + static_cast<int>(rng() % 4);
        for (int i = 0; i < k; ++i) {
          std::vector<Int> v(static_cast<std::size_t>(l), Int(0));
          v[0] = 1;
          v[1] = static_cast<long>(i);
          forms.push_back(LinearForm::canonical(field, std::move(v)));
        }
        std::vector<Int> v(static_cast<std::size_t>(l), Int(0));
        v[1] = 1;
        forms.push_back(LinearForm::canonical(field, std::move(v)));
        if (l == 4 || rng() % 2 == 0) {
          std::vector<Int> w(static_cast<std::size_t>(l), Int(0));
          w[static_cast<std::size_t>(l - 1)] = 1;
          forms.push_back(LinearForm::canonical(field, std::move(w)));
        }
      }
      // Deduplicate while preserving order.
      std::vector<LinearForm> uniq;
      for (const LinearForm& g : forms) {
        bool dup = false;
        for (const LinearForm& u : uniq) {
          if (u == g) dup = true;
        }
        if (!dup) uniq.push_back(g);
      }
      if (uniq.empty() || uniq.size() > 8) continue;
      const Arrangement a(field, l, std::move(uniq));
      const auto terao = terao_necessary(a);
      if (!terao) continue;
      int cap = 0;
      for (int e : *terao) cap = std::max(cap, e);
      const auto cert = saito_search(a, Multiplicity::ones(a.size()), cap);
      if (!cert) continue;
      corpus.push_back(CorpusEntry{a, cert->exponents});
    } catch (const Error&) {
      continue;
    }
  }
  if (generated_out) *generated_out = generated;
  return corpus;
}

std::vector<int> shape_after_deletion(std::vector<int> exps, int removed) {
  auto it = std::find(exps.begin(), exps.end(), removed);
  if (it == exps.end()) return {};
  *it = removed - 1;
  std::sort(exps.begin(), exps.end());
  return exps;
}

}  // namespace

int main() {
  std::vector<CorpusEntry> corpus;
  int corpus_generated = 0;

  criterion(1, "Edelman-Reiner suite (Example values, Saito certificate)", 60.0, [&] {
    const Arrangement er = catalog_get("edelman_reiner").arr;
    ACCEPT_CHECK(charpoly(er) == IntPolynomial::from_roots({1, 5, 5, 5, 5}),
                 "chi(A) = (t-1)(t-5)^4");
    ACCEPT_CHECK(b2_0(er) == 150, "b2_0(A) = 150");
    const Restriction rest = restrict_to(er, 20);
    ACCEPT_CHECK(b2(rest.arr) == 80, "b2(A^H) = 80");
    const B2Equality eq = b2_equality(er, 20);
    ACCEPT_CHECK(eq.holds && eq.lhs == 170 && eq.rhs == 80 + 15 * 6,
                 "b2-equality 170 = 80 + 15*6");
    ACCEPT_CHECK(!terao_necessary(rest.arr).has_value(), "terao_necessary(A^H) = None");
    ACCEPT_CHECK(decide_freeness(rest.arr).status == FreeStatus::NotFree, "A^H not free");
    const IntPolynomial chi0_rest = chi0(rest.arr);
    const IntPolynomial expected =
        IntPolynomial({Int(-4), Int(1)}) * IntPolynomial({Int(26), Int(-10), Int(1)});
    ACCEPT_CHECK(chi0_rest == expected, "chi0(A^H) = (t-4)(t^2-10t+26)");
    const auto cert = saito_search(er, Multiplicity::ones(21), 5);
    ACCEPT_CHECK(cert.has_value(), "Saito search succeeds at cap 5");
    ACCEPT_CHECK(cert->exponents == std::vector<int>({1, 5, 5, 5, 5}), "exp(A) = (1,5,5,5,5)");
    ACCEPT_CHECK(verify_certificate(er, Multiplicity::ones(21), *cert), "certificate replays");
  });

  criterion(2, "DiPasquale suite (Saito certificate, Terao consistency)", 300.0, [&] {
    const Arrangement dp = catalog_get("dipasquale").arr;
    const auto cert = saito_search(dp, Multiplicity::ones(13), 3);
    ACCEPT_CHECK(cert.has_value(), "Saito search succeeds at cap 3");
    ACCEPT_CHECK(cert->exponents == std::vector<int>({1, 3, 3, 3, 3}), "exp(A) = (1,3,3,3,3)");
    ACCEPT_CHECK(verify_certificate(dp, Multiplicity::ones(13), *cert), "certificate replays");
    ACCEPT_CHECK(charpoly(dp) == IntPolynomial::from_roots({1, 3, 3, 3, 3}),
                 "chi(A) = (t-1)(t-3)^4 from the lattice");
  });

  criterion(3, "pentagon cone (Yoshinaga freeness, no free filtration)", 30.0, [&] {
    const Arrangement p = catalog_get("pentagon_cone").arr;
    const FreenessVerdict v = yoshinaga3_free(p);
    ACCEPT_CHECK(v.status == FreeStatus::Free, "yoshinaga3_free returns Free");
    ACCEPT_CHECK(v.exponents == std::vector<int>({1, 5, 5}), "exponents (1,5,5)");
    const FiltrationResult f = free_filtration(p, v);
    ACCEPT_CHECK(!f.chain.has_value(), "free_filtration returns None");
  });

  criterion(4, "braid K^4 (dual-route charpoly, filtration, Saito exponents)", 0, [&] {
    const Arrangement braid = catalog_get("braid", {.dim = 4}).arr;
    const IntPolynomial chi = charpoly(braid);
    ACCEPT_CHECK(chi == IntPolynomial::from_roots({0, 1, 2, 3}), "chi = t(t-1)(t-2)(t-3)");
    int agreeing = 0;
    for (std::uint64_t q : {5ULL, 7ULL, 11ULL}) {
      ACCEPT_CHECK(charpoly_pointcount(braid, q) == chi(Int(static_cast<long>(q))),
                   "point count at q agrees");
      ++agreeing;
    }
    ACCEPT_CHECK(agreeing == 3, "three admissible primes");
    const FreenessVerdict v = decide_freeness(braid);
    ACCEPT_CHECK(v.status == FreeStatus::Free, "braid is free");
    const FiltrationResult f = free_filtration(braid, v);
    ACCEPT_CHECK(f.chain.has_value() && f.chain->size() == 6, "length-6 chain");
    Arrangement cur = braid;
    FreenessVerdict cur_v = v;
    for (std::uint32_t orig : *f.chain) {
      const auto pos = cur.index_of(braid.form(orig));
      ACCEPT_CHECK(pos.has_value(), "chain entry present");
      ACCEPT_CHECK(deletable(cur, static_cast<std::uint32_t>(*pos), cur_v).ok,
                   "chain step passes deletable");
      cur = cur.deleted(*pos);
      cur_v.status = FreeStatus::Free;  // maintained inductively by the deletion theorem
    }
    const auto cert = saito_search(braid, Multiplicity::ones(6), 3);
    ACCEPT_CHECK(cert.has_value() && cert->exponents == std::vector<int>({0, 1, 2, 3}),
                 "Saito certifies (0,1,2,3)");
  });

  criterion(5, "deletable <=> local b2 criterion on >= 200 certified arrangements", 0, [&] {
    corpus = certified_corpus(200, &corpus_generated);
    ACCEPT_CHECK(corpus.size() >= 200, "collected >= 200 oracle-certified instances (got " +
                                           std::to_string(corpus.size()) + ")");
    long long comparisons = 0;
    for (const CorpusEntry& e : corpus) {
      FreenessVerdict v;
      v.status = FreeStatus::Free;
      v.exponents = e.exponents;
      for (std::uint32_t h = 0; h < e.arr.size(); ++h) {
        const bool d = deletable(e.arr, h, v).ok;
        const bool l = local_b2_criterion(e.arr, h, v).ok;
        ACCEPT_CHECK(d == l, "criteria agree on (A, H)");
        ++comparisons;
      }
    }
    ACCEPT_CHECK(comparisons >= 200, "comparison count");
  });

  criterion(6, "theorem-level property suites, zero violations", 0, [&] {
    int total_failures = 0;
    int total_cases = 0;
    for (const std::string profile :
         {"l=3:3,n=3:8,field=Q", "l=3:4,n=3:8,field=GF(101)", "l=4:4,n=4:8,field=Q"}) {
      const FuzzReport r = run_fuzz(7, 70, FuzzProfile::parse(profile));
      total_failures += r.failures;
      total_cases += r.cases;
      for (const std::string& line : r.failure_lines) std::cout << "    " << line << "\n";
    }
    ACCEPT_CHECK(total_cases >= 200, "fuzz corpus size");
    ACCEPT_CHECK(total_failures == 0, "no invariant violations");
  });

  criterion(7, "soundness: deletable implies the deletion stays free, with the addition-deletion shape", 0, [&] {
    if (corpus.empty()) corpus = certified_corpus(200, &corpus_generated);
    int deletions_checked = 0;
    for (const CorpusEntry& e : corpus) {
      FreenessVerdict v;
      v.status = FreeStatus::Free;
      v.exponents = e.exponents;
      for (std::uint32_t h = 0; h < e.arr.size(); ++h) {
        if (!deletable(e.arr, h, v).ok) continue;
        const FreenessVerdict vd = decide_freeness(e.arr.deleted(h));
        ACCEPT_CHECK(vd.status != FreeStatus::NotFree, "deletion is never NotFree");
        if (vd.status == FreeStatus::Free) {
          const int removed =
              static_cast<int>(e.arr.size() - restrict_to(e.arr, h).arr.size());
          const std::vector<int> expect = shape_after_deletion(e.exponents, removed);
          ACCEPT_CHECK(!expect.empty(), "|A| - |A^H| appears in exp(A)");
          ACCEPT_CHECK(vd.exponents == expect, "exp(A') follows the addition-deletion shape");
          ++deletions_checked;
        }
      }
    }
    ACCEPT_CHECK(deletions_checked > 100, "enough deletable pairs exercised (got " +
                                              std::to_string(deletions_checked) + ")");
  });

  std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed\n"
                              : "ACCEPTANCE: " + std::to_string(failures) + " criteria failed\n");
  return failures == 0 ? 0 : 1;
}
