#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "arrfree/numeric.hpp"

namespace arrfree {

struct PolyDivMod;

/// Univariate polynomial in t over Z, coefficients lowest degree first with
/// trailing zeros trimmed. The zero polynomial has an empty coefficient list.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Int> coeffs);

  static IntPolynomial constant(Int c);
  static IntPolynomial t_power(std::size_t k);  // t^k
  /// Monic product of (t - r) over the given roots.
  static IntPolynomial from_roots(const std::vector<Int>& roots);

  bool is_zero() const { return c_.empty(); }
  /// Degree of the zero polynomial is reported as -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Int>& coeffs() const { return c_; }
  Int coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Int(0); }
  Int leading() const;
  bool is_monic() const { return !is_zero() && leading() == 1; }

  Int operator()(const Int& t) const;

  IntPolynomial operator+(const IntPolynomial& o) const;
  IntPolynomial operator-(const IntPolynomial& o) const;
  IntPolynomial operator*(const IntPolynomial& o) const;
  IntPolynomial operator-() const;
  bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }
  bool operator!=(const IntPolynomial& o) const { return !(*this == o); }

  /// Quotient and remainder by a monic divisor; exact integer arithmetic.
  PolyDivMod divmod_monic(const IntPolynomial& divisor) const;

  std::string str(const std::string& var = "t") const;

 private:
  std::vector<Int> c_;
  void trim();
};

struct PolyDivMod {
  IntPolynomial quot;
  IntPolynomial rem;
};

/// True iff q is an exact multiple of p over Q[t] (rational quotient allowed).
/// Throws on zero p.
bool poly_divides(const IntPolynomial& p, const IntPolynomial& q);

nlohmann::json poly_to_json(const IntPolynomial& p);
IntPolynomial poly_from_json(const nlohmann::json& j);

}  // namespace arrfree
