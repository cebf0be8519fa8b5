#include "arrfree/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "arrfree/catalog.hpp"
#include "arrfree/derivation.hpp"
#include "arrfree/error.hpp"
#include "arrfree/freeness.hpp"
#include "arrfree/fuzz.hpp"
#include "arrfree/lattice.hpp"
#include "arrfree/multiarrangement.hpp"

namespace arrfree {

namespace {

using nlohmann::json;

struct GlobalOpts {
  std::string input;
  std::string catalog;
  bool as_json = false;
  std::string cache_file;
  // Catalog parameters.
  int dim = 0;
  int count = 0;
  std::uint64_t seed = 1;
  std::uint64_t prime = 0;
  std::string gen_field = "Q";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParsedArrangement load_arrangement(const GlobalOpts& g) {
  if (!g.input.empty() && !g.catalog.empty()) {
    throw Error(errc::parse, "give either --input or --catalog, not both");
  }
  if (!g.input.empty()) {
    const std::string text = read_file(g.input);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
      return arrangement_from_json(json::parse(text));
    }
    return parse_arrangement(text);
  }
  if (!g.catalog.empty()) {
    CatalogParams params;
    params.dim = g.dim;
    params.count = g.count;
    params.seed = g.seed;
    params.prime = g.prime;
    params.rational = (g.gen_field == "Q");
    if (!params.rational && params.prime == 0) {
      params.prime = Field::from_name(g.gen_field).modulus();
    }
    const CatalogEntry e = catalog_get(g.catalog, params);
    return ParsedArrangement{e.arr, std::nullopt};
  }
  throw Error(errc::parse, "an arrangement source is required (--input or --catalog)");
}

Multiplicity mult_or_ones(const ParsedArrangement& pa) {
  if (pa.multiplicity) return *pa.multiplicity;
  return Multiplicity::ones(pa.arrangement.size());
}

json arrangement_json(const ParsedArrangement& pa) {
  return pa.arrangement.to_json(pa.multiplicity ? &*pa.multiplicity : nullptr);
}

FreenessVerdict decide_or_fail(const Arrangement& a, int budget) {
  const FreenessVerdict v = decide_freeness(a, budget);
  if (v.status != FreeStatus::Free) {
    throw Error(errc::precondition,
                "arrangement is not certified free (status: " +
                    std::string(v.status == FreeStatus::NotFree ? "not_free" : "unknown") + ")");
  }
  return v;
}

json criterion_json(const CriterionResult& r) {
  json j;
  j["holds"] = r.ok;
  if (!r.ok) j["witness"] = r.detail;
  return j;
}

struct CacheGuard {
  std::string path;
  ~CacheGuard() {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (out) out << lattice_cache_dump().dump(2) << "\n";
  }
};

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const Error& e) {
    err << json({{"error", e.code()}, {"message", e.what()}}).dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << json({{"error", "internal"}, {"message", e.what()}}).dump() << "\n";
    return 2;
  }
}

namespace {

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact combinatorics and freeness certificates for central hyperplane arrangements",
               "arrfree"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOpts g;
  app.add_option("--input", g.input, "arrangement file (text format or JSON)");
  app.add_option("--catalog", g.catalog, "built-in arrangement name (see `catalog list`)");
  app.add_flag("--json", g.as_json, "JSON output");
  app.add_option("--lattice-cache", g.cache_file, "load/save the lattice cache at this path");
  app.add_option("--dim", g.dim, "catalog parameter: ambient dimension");
  app.add_option("--count", g.count, "catalog parameter: hyperplane count (generic)");
  app.add_option("--seed", g.seed, "catalog parameter: RNG seed (generic)");
  app.add_option("--prime", g.prime, "catalog parameter: prime modulus");
  app.add_option("--field", g.gen_field, "catalog parameter: Q or GF(p) (generic)");

  int ret = 0;

  auto* cmd_parse = app.add_subcommand("parse", "parse and canonicalize an arrangement");
  cmd_parse->callback([&] {
    const auto pa = load_arrangement(g);
    if (g.as_json) {
      out << arrangement_json(pa).dump(2) << "\n";
    } else {
      out << pa.arrangement.text(pa.multiplicity ? &*pa.multiplicity : nullptr);
    }
  });

  auto* cmd_lattice = app.add_subcommand("lattice", "intersection lattice dump");
  cmd_lattice->callback([&] {
    const auto pa = load_arrangement(g);
    out << lattice_to_json(*lattice_of(pa.arrangement)).dump(2) << "\n";
  });

  auto* cmd_charpoly = app.add_subcommand("charpoly", "characteristic polynomial");
  cmd_charpoly->callback([&] {
    const auto pa = load_arrangement(g);
    const IntPolynomial chi = charpoly(pa.arrangement);
    if (g.as_json) {
      json j;
      j["chi"] = poly_to_json(chi);
      j["betti"] = json::array();
      for (const Int& b : betti(pa.arrangement)) j["betti"].push_back(int_to_json(b));
      if (!pa.arrangement.is_empty()) {
        j["chi0"] = poly_to_json(chi0(pa.arrangement));
      }
      out << j.dump(2) << "\n";
    } else {
      out << poly_to_json(chi).dump() << "\n";
    }
  });

  int opt_h = 0;
  auto* cmd_restrict = app.add_subcommand("restrict", "restriction A^H with trace map");
  cmd_restrict->add_option("-H,--hyperplane", opt_h, "hyperplane index")->required();
  cmd_restrict->callback([&] {
    const auto pa = load_arrangement(g);
    const Restriction r = restrict_to(pa.arrangement, static_cast<std::uint32_t>(opt_h));
    if (g.as_json) {
      json j;
      j["arrangement"] = r.arr.to_json();
      j["traces"] = r.traces;
      j["source"] = r.source;
      out << j.dump(2) << "\n";
    } else {
      out << r.arr.text();
    }
  });

  int opt_flat = 0;
  auto* cmd_localize = app.add_subcommand("localize", "localization A_X at a lattice flat");
  cmd_localize->add_option("--flat", opt_flat, "flat id (see `lattice`)")->required();
  cmd_localize->callback([&] {
    const auto pa = load_arrangement(g);
    const auto lat = lattice_of(pa.arrangement);
    if (opt_flat < 0 || static_cast<std::size_t>(opt_flat) >= lat->size()) {
      throw Error(errc::index, "flat id out of range");
    }
    const Localized loc = localize(pa.arrangement, lat->flat(static_cast<std::uint32_t>(opt_flat)));
    if (g.as_json) {
      json j;
      j["arrangement"] = loc.arr.to_json();
      j["indices"] = loc.indices;
      out << j.dump(2) << "\n";
    } else {
      out << loc.arr.text();
    }
  });

  auto* cmd_ziegler = app.add_subcommand("ziegler", "Ziegler restriction (A^H, m^H)");
  cmd_ziegler->add_option("-H,--hyperplane", opt_h, "hyperplane index")->required();
  cmd_ziegler->callback([&] {
    const auto pa = load_arrangement(g);
    const ZieglerRestriction zr = ziegler_restrict(pa.arrangement, static_cast<std::uint32_t>(opt_h));
    json j;
    j["arrangement"] = zr.rest.arr.to_json(&zr.mult);
    j["traces"] = zr.rest.traces;
    j["source"] = zr.rest.source;
    j["total_multiplicity"] = zr.mult.total();
    out << j.dump(2) << "\n";
  });

  auto* cmd_exp2 = app.add_subcommand("exp2", "exponents of a rank-2 multiarrangement");
  cmd_exp2->callback([&] {
    const auto pa = load_arrangement(g);
    const Exp2Result e = exp2(pa.arrangement, mult_or_ones(pa));
    if (g.as_json) {
      json j;
      j["exponents"] = std::vector<int>{e.d1, e.d2};
      j["certificate"] = certificate_to_json(e.cert);
      out << j.dump(2) << "\n";
    } else {
      out << e.d1 << " " << e.d2 << "\n";
    }
  });

  auto* cmd_b2eq = app.add_subcommand("b2eq", "b2 equality test for a hyperplane");
  cmd_b2eq->add_option("-H,--hyperplane", opt_h, "hyperplane index")->required();
  cmd_b2eq->callback([&] {
    const auto pa = load_arrangement(g);
    const B2Equality e = b2_equality(pa.arrangement, static_cast<std::uint32_t>(opt_h));
    json j;
    j["holds"] = e.holds;
    j["lhs"] = int_to_json(e.lhs);
    j["rhs"] = int_to_json(e.rhs);
    out << j.dump(g.as_json ? 2 : -1) << "\n";
    if (!e.holds) ret = 1;
  });

  int opt_budget = -1;
  bool opt_center = true;
  auto* cmd_deletable = app.add_subcommand("deletable", "deletion criterion for a hyperplane");
  cmd_deletable->add_option("-H,--hyperplane", opt_h, "hyperplane index")->required();
  cmd_deletable->add_flag("--strict-center,!--no-strict-center", opt_center,
                          "include the full-codimension center flat (default on; disabling "
                          "gives the truncated comparison range)");
  cmd_deletable->add_option("--budget", opt_budget, "oracle degree budget for the freeness check");
  cmd_deletable->callback([&] {
    const auto pa = load_arrangement(g);
    const FreenessVerdict v = decide_or_fail(pa.arrangement, opt_budget);
    const CriterionResult r =
        deletable(pa.arrangement, static_cast<std::uint32_t>(opt_h), v, opt_center);
    json j = criterion_json(r);
    j["criterion"] = "deletable";
    j["strict_center"] = opt_center;
    out << j.dump(g.as_json ? 2 : -1) << "\n";
    if (!r.ok) ret = 1;
  });

  auto* cmd_divide = app.add_subcommand("divide-check", "does chi(A^H) divide chi(A)?");
  cmd_divide->add_option("-H,--hyperplane", opt_h, "hyperplane index")->required();
  cmd_divide->callback([&] {
    const auto pa = load_arrangement(g);
    const Restriction r = restrict_to(pa.arrangement, static_cast<std::uint32_t>(opt_h));
    const bool ok = poly_divides(charpoly(r.arr), charpoly(pa.arrangement));
    json j;
    j["divides"] = ok;
    j["chi"] = poly_to_json(charpoly(pa.arrangement));
    j["chi_restriction"] = poly_to_json(charpoly(r.arr));
    out << j.dump(g.as_json ? 2 : -1) << "\n";
    if (!ok) ret = 1;
  });

  auto* cmd_filtration = app.add_subcommand("filtration", "search for a free filtration");
  cmd_filtration->add_option("--budget", opt_budget, "oracle degree budget for the freeness check");
  cmd_filtration->callback([&] {
    const auto pa = load_arrangement(g);
    const FreenessVerdict v = decide_or_fail(pa.arrangement, opt_budget);
    const FiltrationResult f = free_filtration(pa.arrangement, v);
    json j;
    j["filtration"] = f.chain ? json(*f.chain) : json(nullptr);
    j["nodes"] = f.nodes;
    j["memo_hits"] = f.memo_hits;
    out << j.dump(g.as_json ? 2 : -1) << "\n";
    if (!f.chain) ret = 1;
  });

  auto* cmd_free = app.add_subcommand("free", "freeness decision with certificate");
  cmd_free->add_option("--budget", opt_budget, "Saito search degree budget");
  cmd_free->callback([&] {
    const auto pa = load_arrangement(g);
    const FreenessVerdict v = decide_freeness(pa.arrangement, opt_budget);
    out << verdict_to_json(v).dump(g.as_json ? 2 : -1) << "\n";
    if (v.status != FreeStatus::Free) ret = 1;
  });

  int opt_maxdeg = -1;
  std::string opt_verify;
  auto* cmd_oracle = app.add_subcommand("oracle", "graded derivation-module oracle");
  cmd_oracle->add_option("--max-degree", opt_maxdeg, "table and search cap");
  cmd_oracle->add_option("--verify", opt_verify, "replay a certificate file");
  cmd_oracle->callback([&] {
    if (!opt_verify.empty()) {
      const json file = json::parse(read_file(opt_verify));
      const ParsedArrangement pa = parse_arrangement(file.at("arrangement").get<std::string>());
      const Multiplicity m = mult_or_ones(pa);
      const SaitoCertificate cert = certificate_from_json(
          pa.arrangement.field(), pa.arrangement.dim(), file.at("certificate"));
      std::string why;
      const bool ok = verify_certificate(pa.arrangement, m, cert, &why);
      json j;
      j["valid"] = ok;
      if (!ok) j["reason"] = why;
      out << j.dump(g.as_json ? 2 : -1) << "\n";
      if (!ok) ret = 1;
      return;
    }
    if (opt_maxdeg < 0) throw Error(errc::parse, "oracle needs --max-degree or --verify");
    const auto pa = load_arrangement(g);
    const Multiplicity m = mult_or_ones(pa);
    json j;
    json dims = json::array();
    for (int d = 0; d <= opt_maxdeg; ++d) {
      dims.push_back({{"degree", d}, {"dim", graded_dim(pa.arrangement, m, d)}});
    }
    j["graded_dims"] = std::move(dims);
    const auto cert = saito_search(pa.arrangement, m, opt_maxdeg);
    if (cert) {
      j["certificate"] = certificate_to_json(*cert);
      j["arrangement"] = pa.arrangement.text(&m);
    } else {
      j["certificate"] = nullptr;
    }
    out << j.dump(2) << "\n";
  });

  std::string opt_name;
  auto* cmd_catalog = app.add_subcommand("catalog", "built-in arrangements");
  auto* cat_list = cmd_catalog->add_subcommand("list", "list catalog entries");
  cat_list->callback([&] {
    if (g.as_json) {
      json j = json::array();
      for (const auto& [name, desc] : catalog_list()) {
        j.push_back({{"name", name}, {"description", desc}});
      }
      out << j.dump(2) << "\n";
    } else {
      for (const auto& [name, desc] : catalog_list()) out << name << "  -  " << desc << "\n";
    }
  });
  auto* cat_show = cmd_catalog->add_subcommand("show", "materialize one entry");
  cat_show->add_option("name", opt_name, "entry name")->required();
  cat_show->callback([&] {
    CatalogParams params;
    params.dim = g.dim;
    params.count = g.count;
    params.seed = g.seed;
    params.prime = g.prime;
    params.rational = (g.gen_field == "Q");
    if (!params.rational && params.prime == 0) {
      params.prime = Field::from_name(g.gen_field).modulus();
    }
    const CatalogEntry e = catalog_get(opt_name, params);
    if (g.as_json) {
      json j;
      j["name"] = e.name;
      j["description"] = e.description;
      j["arrangement"] = e.arr.to_json();
      j["notes"] = e.notes;
      out << j.dump(2) << "\n";
    } else {
      out << e.arr.text();
    }
  });
  cmd_catalog->require_subcommand(1);

  std::uint64_t fz_seed = 1;
  int fz_count = 100;
  int fz_index = 0;
  int fz_jobs = 0;
  std::string fz_profile;
  auto* cmd_fuzz = app.add_subcommand("fuzz", "randomized theorem-level invariant suite");
  cmd_fuzz->add_option("--seed", fz_seed, "base seed");
  cmd_fuzz->add_option("--count", fz_count, "number of cases");
  cmd_fuzz->add_option("--index", fz_index, "first case index (reproducers)");
  cmd_fuzz->add_option("--jobs", fz_jobs, "worker threads (0 = auto); the report is identical "
                                          "for every setting");
  cmd_fuzz->add_option("--profile", fz_profile, "e.g. l=3:4,n=3:8,field=GF(101)");
  cmd_fuzz->callback([&] {
    const FuzzProfile profile = FuzzProfile::parse(fz_profile);
    const FuzzReport report = run_fuzz(fz_seed, fz_count, profile, fz_index, fz_jobs);
    if (g.as_json) {
      out << report.to_json().dump(2) << "\n";
    } else {
      out << "cases: " << report.cases << " failures: " << report.failures << "\n";
      for (const std::string& line : report.failure_lines) out << line << "\n";
    }
    if (report.failures > 0) ret = 1;
  });

  // Callbacks run at the end of parse(), so the cache must be primed first.
  CacheGuard guard;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--lattice-cache") {
      guard.path = args[i + 1];
      std::ifstream in(guard.path, std::ios::binary);
      if (in) {
        std::ostringstream ss;
        ss << in.rdbuf();
        if (!ss.str().empty()) lattice_cache_load(json::parse(ss.str()));
      }
      break;
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e, out, err);  // --help and friends
    }
    throw Error(errc::parse, e.what());
  }

  return ret;
}

}  // namespace

}  // namespace arrfree
