#include "arrfree/arrangement.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "arrfree/error.hpp"
#include "arrfree/matrix.hpp"

namespace arrfree {

LinearForm LinearForm::canonical(const Field& f, std::vector<Int> raw) {
  if (raw.empty()) throw Error(errc::parse, "empty coefficient vector");
  if (f.is_rational()) {
    Int g = 0;
    for (const Int& c : raw) g = gcd(g, c);
    if (g == 0) throw Error(errc::parse, "zero linear form");
    for (Int& c : raw) c = div_exact(c, g);
    for (const Int& c : raw) {
      if (c != 0) {
        if (c < 0) {
          for (Int& x : raw) x = -x;
        }
        break;
      }
    }
    return LinearForm(std::move(raw));
  }
  const std::uint64_t p = f.modulus();
  const Int pz(std::to_string(p));
  for (Int& c : raw) {
    c %= pz;
    if (c < 0) c += pz;
  }
  std::size_t piv = raw.size();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] != 0) {
      piv = i;
      break;
    }
  }
  if (piv == raw.size()) throw Error(errc::parse, "zero linear form");
  const std::uint64_t inv = inv_mod(mpz_get_ui(raw[piv].get_mpz_t()), p);
  for (Int& c : raw) {
    const std::uint64_t v = mul_mod(mpz_get_ui(c.get_mpz_t()), inv, p);
    c = Int(std::to_string(v));
  }
  return LinearForm(std::move(raw));
}

std::size_t LinearForm::pivot() const {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != 0) return i;
  }
  throw Error(errc::internal, "zero form has no pivot");
}

std::string LinearForm::str() const {
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += " ";
    s += c_[i].get_str();
  }
  return s;
}

Multiplicity::Multiplicity(std::vector<int> values) : v_(std::move(values)) {
  for (int m : v_) {
    if (m < 1) throw Error(errc::parse, "multiplicity must be >= 1");
  }
}

long long Multiplicity::total() const {
  long long t = 0;
  for (int m : v_) t += m;
  return t;
}

bool Multiplicity::all_ones() const {
  return std::all_of(v_.begin(), v_.end(), [](int m) { return m == 1; });
}

Arrangement::Arrangement(Field field, int dim, std::vector<LinearForm> hyperplanes)
    : field_(field), dim_(dim), hs_(std::move(hyperplanes)) {
  if (dim_ < 1) throw Error(errc::parse, "ambient dimension must be >= 1");
  for (std::size_t i = 0; i < hs_.size(); ++i) {
    if (static_cast<int>(hs_[i].dim()) != dim_) {
      throw Error(errc::parse, "form dimension mismatch");
    }
    for (std::size_t j = i + 1; j < hs_.size(); ++j) {
      if (hs_[i] == hs_[j]) throw Error(errc::parse, "duplicate hyperplane");
    }
  }
}

const LinearForm& Arrangement::form(std::size_t i) const {
  if (i >= hs_.size()) throw Error(errc::index, "hyperplane index out of range");
  return hs_[i];
}

std::optional<std::size_t> Arrangement::index_of(const LinearForm& f) const {
  for (std::size_t i = 0; i < hs_.size(); ++i) {
    if (hs_[i] == f) return i;
  }
  return std::nullopt;
}

Arrangement Arrangement::deleted(std::size_t h) const {
  if (h >= hs_.size()) throw Error(errc::index, "hyperplane index out of range");
  std::vector<LinearForm> rest;
  rest.reserve(hs_.size() - 1);
  for (std::size_t i = 0; i < hs_.size(); ++i) {
    if (i != h) rest.push_back(hs_[i]);
  }
  return Arrangement(field_, dim_, std::move(rest));
}

Arrangement Arrangement::subarrangement(const std::vector<std::uint32_t>& indices) const {
  std::vector<LinearForm> sel;
  sel.reserve(indices.size());
  for (std::uint32_t i : indices) sel.push_back(form(i));
  return Arrangement(field_, dim_, std::move(sel));
}

int Arrangement::rank() const { return static_cast<int>(rank_of(forms_matrix(*this))); }

std::string Arrangement::canonical_key() const {
  std::string s = field_.name() + ";" + std::to_string(dim_) + ";";
  for (const LinearForm& f : hs_) s += f.str() + ";";
  return s;
}

std::string Arrangement::text(const Multiplicity* mult) const {
  if (mult && mult->size() != hs_.size()) {
    throw Error(errc::internal, "multiplicity size mismatch");
  }
  std::string s = "dim " + std::to_string(dim_) + " over " + field_.name() + "\n";
  for (std::size_t i = 0; i < hs_.size(); ++i) {
    s += hs_[i].str();
    if (mult) s += " * " + std::to_string((*mult)[i]);
    s += "\n";
  }
  return s;
}

nlohmann::json Arrangement::to_json(const Multiplicity* mult) const {
  nlohmann::json j;
  j["dim"] = dim_;
  j["field"] = field_.name();
  nlohmann::json rows = nlohmann::json::array();
  for (const LinearForm& f : hs_) {
    nlohmann::json row = nlohmann::json::array();
    for (const Int& c : f.coeffs()) row.push_back(int_to_json(c));
    rows.push_back(std::move(row));
  }
  j["hyperplanes"] = std::move(rows);
  if (mult) {
    if (mult->size() != hs_.size()) throw Error(errc::internal, "multiplicity size mismatch");
    j["multiplicities"] = mult->values();
  }
  return j;
}

namespace {

ParsedArrangement assemble(Field field, int dim,
                           std::vector<std::pair<LinearForm, int>> rows, bool has_mult) {
  std::vector<LinearForm> forms;
  std::vector<int> mults;
  for (auto& [form, m] : rows) {
    bool merged = false;
    for (std::size_t i = 0; i < forms.size(); ++i) {
      if (forms[i] == form) {
        if (!has_mult) throw Error(errc::parse, "duplicate hyperplane in simple arrangement");
        mults[i] += m;
        merged = true;
        break;
      }
    }
    if (!merged) {
      forms.push_back(std::move(form));
      mults.push_back(m);
    }
  }
  ParsedArrangement out{Arrangement(field, dim, std::move(forms)), std::nullopt};
  if (has_mult) out.multiplicity = Multiplicity(std::move(mults));
  return out;
}

}  // namespace

ParsedArrangement parse_arrangement(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  Field field = Field::rationals();
  int dim = 0;
  std::vector<std::pair<LinearForm, int>> rows;
  bool has_mult = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string where = " (line " + std::to_string(lineno) + ")";
    if (!have_header) {
      if (tok.size() != 4 || tok[0] != "dim" || tok[2] != "over") {
        throw Error(errc::parse, "expected header 'dim <l> over <field>'" + where);
      }
      try {
        dim = std::stoi(tok[1]);
      } catch (const std::exception&) {
        throw Error(errc::parse, "bad dimension" + where);
      }
      if (dim < 1) throw Error(errc::parse, "dimension must be >= 1" + where);
      field = Field::from_name(tok[3]);
      have_header = true;
      continue;
    }
    int mult = 1;
    std::size_t ncoef = tok.size();
    if (ncoef >= 2 && tok[ncoef - 2] == "*") {
      try {
        mult = std::stoi(tok[ncoef - 1]);
      } catch (const std::exception&) {
        throw Error(errc::parse, "bad multiplicity" + where);
      }
      if (mult < 1) throw Error(errc::parse, "multiplicity must be >= 1" + where);
      has_mult = true;
      ncoef -= 2;
    }
    if (static_cast<int>(ncoef) != dim) {
      throw Error(errc::parse, "expected " + std::to_string(dim) + " coefficients" + where);
    }
    std::vector<Int> coeffs;
    coeffs.reserve(ncoef);
    for (std::size_t i = 0; i < ncoef; ++i) {
      try {
        coeffs.emplace_back(tok[i]);
      } catch (const std::exception&) {
        throw Error(errc::parse, "bad coefficient '" + tok[i] + "'" + where);
      }
    }
    rows.emplace_back(LinearForm::canonical(field, std::move(coeffs)), mult);
  }
  if (!have_header) throw Error(errc::parse, "missing header line");
  return assemble(field, dim, std::move(rows), has_mult);
}

ParsedArrangement arrangement_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(errc::parse, "arrangement JSON must be an object");
  if (!j.contains("dim") || !j.contains("field") || !j.contains("hyperplanes")) {
    throw Error(errc::parse, "arrangement JSON needs dim, field, hyperplanes");
  }
  const int dim = j.at("dim").get<int>();
  const Field field = Field::from_name(j.at("field").get<std::string>());
  std::vector<std::pair<LinearForm, int>> rows;
  const bool has_mult = j.contains("multiplicities");
  std::vector<int> mults;
  if (has_mult) mults = j.at("multiplicities").get<std::vector<int>>();
  const auto& hs = j.at("hyperplanes");
  if (has_mult && mults.size() != hs.size()) {
    throw Error(errc::parse, "multiplicities length mismatch");
  }
  std::size_t k = 0;
  for (const auto& row : hs) {
    std::vector<Int> coeffs;
    for (const auto& c : row) coeffs.push_back(int_from_json(c));
    if (static_cast<int>(coeffs.size()) != dim) {
      throw Error(errc::parse, "hyperplane row has wrong length");
    }
    rows.emplace_back(LinearForm::canonical(field, std::move(coeffs)),
                      has_mult ? mults[k] : 1);
    ++k;
  }
  return assemble(field, dim, std::move(rows), has_mult);
}

}  // namespace arrfree
