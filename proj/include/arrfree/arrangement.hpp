#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "arrfree/numeric.hpp"
#include "arrfree/scalar.hpp"

namespace arrfree {

/// Nonzero linear form alpha = sum c_i x_i in canonical scaling:
/// over Q the entries are coprime integers with positive first nonzero entry;
/// over GF(p) the entries lie in [0, p) with first nonzero entry 1.
class LinearForm {
 public:
  static LinearForm canonical(const Field& f, std::vector<Int> raw);

  std::size_t dim() const { return c_.size(); }
  const std::vector<Int>& coeffs() const { return c_; }
  const Int& operator[](std::size_t i) const { return c_[i]; }

  /// Index of the first nonzero coefficient.
  std::size_t pivot() const;

  bool operator==(const LinearForm& o) const { return c_ == o.c_; }
  bool operator<(const LinearForm& o) const { return c_ < o.c_; }

  std::string str() const;

 private:
  explicit LinearForm(std::vector<Int> c) : c_(std::move(c)) {}
  std::vector<Int> c_;
};

/// Positive integer multiplicity per hyperplane, aligned with the
/// arrangement's hyperplane order.
class Multiplicity {
 public:
  Multiplicity() = default;
  explicit Multiplicity(std::vector<int> values);

  static Multiplicity ones(std::size_t n) { return Multiplicity(std::vector<int>(n, 1)); }

  std::size_t size() const { return v_.size(); }
  int operator[](std::size_t i) const { return v_[i]; }
  const std::vector<int>& values() const { return v_; }
  long long total() const;
  bool all_ones() const;

  bool operator==(const Multiplicity& o) const { return v_ == o.v_; }

 private:
  std::vector<int> v_;
};

/// Central arrangement: ambient dimension plus an ordered, duplicate-free
/// list of canonical linear forms. Immutable after construction.
class Arrangement {
 public:
  Arrangement(Field field, int dim, std::vector<LinearForm> hyperplanes);

  static Arrangement empty(Field field, int dim) { return Arrangement(field, dim, {}); }

  const Field& field() const { return field_; }
  int dim() const { return dim_; }
  std::size_t size() const { return hs_.size(); }
  bool is_empty() const { return hs_.empty(); }
  const LinearForm& form(std::size_t i) const;
  const std::vector<LinearForm>& forms() const { return hs_; }

  /// Index of the given canonical form, if present.
  std::optional<std::size_t> index_of(const LinearForm& f) const;

  /// Arrangement with hyperplane h removed, order of the rest preserved.
  Arrangement deleted(std::size_t h) const;

  /// Sub-arrangement of the given (sorted, in-range) indices.
  Arrangement subarrangement(const std::vector<std::uint32_t>& indices) const;

  /// Rank of the coefficient matrix of all forms.
  int rank() const;

  /// Deterministic serialization; equal arrangements (same order) share keys.
  std::string canonical_key() const;

  /// Text file format. When mult is present every row carries "* m".
  std::string text(const Multiplicity* mult = nullptr) const;

  nlohmann::json to_json(const Multiplicity* mult = nullptr) const;

 private:
  Field field_;
  int dim_;
  std::vector<LinearForm> hs_;
};

struct ParsedArrangement {
  Arrangement arrangement;
  std::optional<Multiplicity> multiplicity;
};

/// Parses the text file format:
///   dim <l> over <Q | GF(p)>
///   c_1 ... c_l [* m]
/// '#' starts a comment. Duplicate canonical forms are an error unless some
/// row carries a multiplicity mark, in which case duplicates merge by summing
/// multiplicities.
ParsedArrangement parse_arrangement(const std::string& text);

ParsedArrangement arrangement_from_json(const nlohmann::json& j);

}  // namespace arrfree
