#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arrfree/arrangement.hpp"

namespace arrfree {

/// Fuzz profile: ambient dimension range, hyperplane count range, field.
/// Text form: "l=3:4,n=3:8,field=Q" or "field=GF(101)".
struct FuzzProfile {
  int lmin = 3;
  int lmax = 3;
  int nmin = 3;
  int nmax = 8;
  Field field = Field::rationals();

  static FuzzProfile parse(const std::string& text);
  std::string str() const;
};

struct FuzzReport {
  int cases = 0;
  int failures = 0;
  std::vector<std::string> failure_lines;  // reproducer per failure
  nlohmann::json stats;

  nlohmann::json to_json() const;
};

/// Runs the theorem-level invariant suite on `count` random arrangements:
/// deletion-restriction, b2 inequality, point-count agreement (rational
/// instances), Yoshinaga inequality, exp2 degree sums, graded-dimension
/// monotonicity, Euler memberships, and deletable/local-b2 agreement on
/// oracle-certified instances. Case i is generated from seed and i alone, so
/// single cases replay independently and runs are identical for every
/// parallelism degree (jobs = 0 picks a hardware-based default).
FuzzReport run_fuzz(std::uint64_t seed, int count, const FuzzProfile& profile,
                    int first_index = 0, int jobs = 0);

/// Regenerates one case of a run (for reproducers).
Arrangement fuzz_case(std::uint64_t seed, int index, const FuzzProfile& profile);

}  // namespace arrfree
