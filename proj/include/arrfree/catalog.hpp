#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arrfree/arrangement.hpp"

namespace arrfree {

struct CatalogEntry {
  std::string name;
  std::string description;
  Arrangement arr;
  nlohmann::json notes;  // e.g. distinguished hyperplane indices
};

struct CatalogParams {
  int dim = 0;           // boolean/braid/generic
  int count = 0;         // generic
  std::uint64_t seed = 1;
  std::uint64_t prime = 0;  // pentagon_cone (0 = default 11); generic field
  bool rational = true;     // generic field choice
};

/// Named arrangements. Every entry re-checks its recorded sanity conditions
/// (hyperplane counts; the pentagon realization additionally checks its
/// level-2 fingerprint) before being returned.
CatalogEntry catalog_get(const std::string& name, const CatalogParams& params = {});

std::vector<std::pair<std::string, std::string>> catalog_list();

/// Uniformly drawn canonical arrangement with n distinct hyperplanes;
/// deterministic for a given seed (bounded draws use modulo reduction, not
/// distribution objects).
Arrangement random_arrangement(std::uint64_t seed, int dim, int n, const Field& field,
                               int coeff_range = 3);

}  // namespace arrfree
