#include "arrfree/fuzz.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <thread>

#include "arrfree/catalog.hpp"
#include "arrfree/derivation.hpp"
#include "arrfree/error.hpp"
#include "arrfree/freeness.hpp"
#include "arrfree/lattice.hpp"
#include "arrfree/multiarrangement.hpp"

namespace arrfree {

FuzzProfile FuzzProfile::parse(const std::string& text) {
  FuzzProfile p;
  if (text.empty()) return p;
  std::stringstream ss(text);
  std::string item;
  const auto parse_range = [](const std::string& v, int& lo, int& hi) {
    const auto colon = v.find(':');
    if (colon == std::string::npos) {
      lo = hi = std::stoi(v);
    } else {
      lo = std::stoi(v.substr(0, colon));
      hi = std::stoi(v.substr(colon + 1));
    }
    if (lo < 1 || hi < lo) throw Error(errc::parse, "bad range in fuzz profile");
  };
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(errc::parse, "bad fuzz profile item: " + item);
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    if (key == "l") {
      parse_range(val, p.lmin, p.lmax);
    } else if (key == "n") {
      parse_range(val, p.nmin, p.nmax);
    } else if (key == "field") {
      p.field = Field::from_name(val);
    } else {
      throw Error(errc::parse, "unknown fuzz profile key: " + key);
    }
  }
  return p;
}

std::string FuzzProfile::str() const {
  return "l=" + std::to_string(lmin) + ":" + std::to_string(lmax) + ",n=" + std::to_string(nmin) +
         ":" + std::to_string(nmax) + ",field=" + field.name();
}

namespace {

std::uint64_t case_seed(std::uint64_t seed, int index) {
  return fnv1a(std::to_string(seed) + "#" + std::to_string(index));
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

nlohmann::json count_stat(int n) { return n; }

}  // namespace

Arrangement fuzz_case(std::uint64_t seed, int index, const FuzzProfile& profile) {
  std::mt19937_64 rng(case_seed(seed, index));
  const int l = profile.lmin + static_cast<int>(draw(rng, static_cast<std::uint64_t>(
                                                             profile.lmax - profile.lmin + 1)));
  const int n = profile.nmin + static_cast<int>(draw(rng, static_cast<std::uint64_t>(
                                                             profile.nmax - profile.nmin + 1)));
  return random_arrangement(rng(), l, n, profile.field, 2);
}

namespace {

struct CaseOutcome {
  bool failed = false;
  std::string failure_line;
  int certified_free = 0;
  int pointcount_checks = 0;
};

CaseOutcome run_single_case(std::uint64_t seed, int i, const FuzzProfile& profile) {
  CaseOutcome outcome;
  int& certified_free = outcome.certified_free;
  int& pointcount_checks = outcome.pointcount_checks;
  const std::string repro = "fuzz --seed " + std::to_string(seed) + " --count 1 --index " +
                            std::to_string(i) + " --profile \"" + profile.str() + "\"";
  {
    try {
      const Arrangement a = fuzz_case(seed, i, profile);
      std::mt19937_64 rng(case_seed(seed, i) ^ 0x9e3779b97f4a7c15ULL);

      // Deletion-restriction identity and b2 inequality at every hyperplane.
      for (std::uint32_t h = 0; h < a.size(); ++h) {
        if (!deletion_restriction_check(a, h)) {
          throw Error(errc::internal, "deletion-restriction identity failed");
        }
        b2_equality(a, h);  // asserts the b2 inequality internally
      }

      // Point-count oracle agreement at 3 admissible primes.
      if (a.field().is_rational()) {
        const IntPolynomial chi = charpoly(a);
        int found = 0;
        for (std::uint64_t q : {5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL,
                                37ULL, 41ULL, 43ULL}) {
          if (found == 3) break;
          double pts = 1;
          for (int k = 0; k < a.dim(); ++k) pts *= static_cast<double>(q);
          if (pts > 2e5) break;
          try {
            const Int cnt = charpoly_pointcount(a, q);
            if (chi(Int(static_cast<long>(q))) != cnt) {
              throw Error(errc::internal, "point count disagrees with chi(q)");
            }
            ++found;
            ++pointcount_checks;
          } catch (const Error& e) {
            if (e.code() != errc::degenerate) throw;
          }
        }
      }

      // Yoshinaga inequality and Euler memberships on a sampled hyperplane.
      if (!euler_membership(a)) throw Error(errc::internal, "Euler membership failed");
      {
        const std::uint32_t h = static_cast<std::uint32_t>(draw(rng, a.size()));
        const ZieglerRestriction zr = ziegler_restrict(a, h);
        if (a.dim() >= 3) {
          if (b2_0(a) < b2_multi(zr.rest.arr, zr.mult)) {
            throw Error(errc::internal, "Yoshinaga inequality failed");
          }
        }
        if (!euler_multi_membership(zr.rest.arr, zr.mult)) {
          throw Error(errc::internal, "theta_E^H membership failed");
        }
      }

      // exp2 degree sums over the codim-2 flats, under a random multiplicity.
      {
        std::vector<int> mv;
        for (std::size_t k = 0; k < a.size(); ++k) {
          mv.push_back(1 + static_cast<int>(draw(rng, 3)));
        }
        const Multiplicity m(mv);
        const auto lat = lattice_of(a);
        if (lat->max_codim() >= 2) {
          for (std::uint32_t id : lat->levels()[2]) {
            const Flat& x = lat->flat(id);
            std::vector<int> lm;
            for (std::uint32_t t : x.contains) lm.push_back(m[t]);
            long long total = 0;
            for (int v : lm) total += v;
            const Exp2Result e = exp2(a.subarrangement(x.contains), Multiplicity(lm));
            if (e.d1 + e.d2 != total) {
              throw Error(errc::internal, "exp2 degree sum failed");
            }
          }
        }

        // Monotonicity of graded dimensions under multiplicity increase.
        std::vector<int> mv2 = mv;
        mv2[static_cast<std::size_t>(draw(rng, mv2.size()))] += 1 + static_cast<int>(draw(rng, 2));
        const Multiplicity m2(mv2);
        for (int d = 0; d <= 2; ++d) {
          if (graded_dim(a, m2, d) > graded_dim(a, m, d)) {
            throw Error(errc::internal, "graded dimension monotonicity failed");
          }
        }
      }

      // Criterion equivalence on oracle-certified free instances.
      {
        const auto terao = terao_necessary(a);
        if (terao) {
          int cap = 0;
          for (int e : *terao) cap = std::max(cap, e);
          const auto cert = saito_search(a, Multiplicity::ones(a.size()), cap);
          if (cert) {
            ++certified_free;
            if (cert->exponents != *terao) {
              throw Error(errc::internal, "Saito exponents disagree with Terao roots");
            }
            FreenessVerdict v;
            v.status = FreeStatus::Free;
            v.exponents = cert->exponents;
            for (std::uint32_t h = 0; h < a.size(); ++h) {
              const bool d1 = deletable(a, h, v).ok;
              const bool d2 = local_b2_criterion(a, h, v).ok;
              if (d1 != d2) {
                throw Error(errc::internal, "deletable and local b2 criterion disagree");
              }
            }
          }
        }
      }
    } catch (const Error& e) {
      outcome.failed = true;
      outcome.failure_line = repro + "  # " + e.code() + ": " + e.what();
    }
  }
  return outcome;
}

}  // namespace

FuzzReport run_fuzz(std::uint64_t seed, int count, const FuzzProfile& profile, int first_index,
                    int jobs) {
  // Cases are generated from (seed, index) alone, so they are independent
  // and the report is identical for every parallelism degree.
  if (jobs <= 0) {
    jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    jobs = std::min(jobs, 8);
  }
  jobs = std::min(jobs, std::max(count, 1));
  std::vector<CaseOutcome> outcomes(static_cast<std::size_t>(std::max(count, 0)));
  if (jobs <= 1 || count <= 1) {
    for (int k = 0; k < count; ++k) {
      outcomes[static_cast<std::size_t>(k)] = run_single_case(seed, first_index + k, profile);
    }
  } else {
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        for (int k = w; k < count; k += jobs) {
          outcomes[static_cast<std::size_t>(k)] = run_single_case(seed, first_index + k, profile);
        }
      });
    }
    for (std::thread& t : workers) t.join();
  }
  FuzzReport report;
  int certified_free = 0;
  int pointcount_checks = 0;
  for (const CaseOutcome& o : outcomes) {
    ++report.cases;
    certified_free += o.certified_free;
    pointcount_checks += o.pointcount_checks;
    if (o.failed) {
      ++report.failures;
      report.failure_lines.push_back(o.failure_line);
    }
  }
  report.stats = {{"certified_free", count_stat(certified_free)},
                  {"pointcount_checks", count_stat(pointcount_checks)}};
  return report;
}

nlohmann::json FuzzReport::to_json() const {
  return {{"cases", cases},
          {"failures", failures},
          {"failure_lines", failure_lines},
          {"stats", stats}};
}

}  // namespace arrfree
