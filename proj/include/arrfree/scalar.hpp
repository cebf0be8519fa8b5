#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "arrfree/numeric.hpp"

namespace arrfree {

/// Base field descriptor: the rationals or a prime field GF(p), p < 2^62.
class Field {
 public:
  enum class Kind { Rationals, Prime };

  static Field rationals() { return Field(Kind::Rationals, 0); }

  /// Checks primality by trial division and the 2^62 modulus cap.
  static Field prime(std::uint64_t p);

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::Rationals; }
  std::uint64_t modulus() const { return p_; }

  /// "Q" or "GF(p)", as used by the file format.
  std::string name() const;
  static Field from_name(const std::string& name);

  bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
  bool operator!=(const Field& o) const { return !(*this == o); }

 private:
  friend class Scalar;
  Field(Kind k, std::uint64_t p) : kind_(k), p_(p) {}
  static Field prime_unchecked(std::uint64_t p) { return Field(Kind::Prime, p); }

  Kind kind_;
  std::uint64_t p_;
};

/// Exact field element: a reduced rational with positive denominator, or a
/// prime-field residue tagged with its modulus. Arithmetic between elements
/// of different fields throws Error("field-mismatch").
class Scalar {
 public:
  Scalar() : v_(Rat{0, 1}) {}

  static Scalar rational(Int num, Int den = 1);
  static Scalar residue(std::uint64_t value, std::uint64_t p);

  /// Embeds an integer into the given field.
  static Scalar of(const Field& f, const Int& value);
  static Scalar zero(const Field& f) { return of(f, 0); }
  static Scalar one(const Field& f) { return of(f, 1); }

  Field field() const;
  bool is_zero() const;
  bool is_one() const;

  /// Rational accessors; throw on prime-field values.
  const Int& num() const;
  const Int& den() const;
  bool is_integer() const;

  /// Prime-field accessor; throws on rationals.
  std::uint64_t value() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar inverse() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Total order used for deterministic tie-breaking; not a field order.
  bool operator<(const Scalar& o) const;

  std::string str() const;

 private:
  struct Rat {
    Int num;
    Int den;  // > 0, gcd(num, den) = 1
  };
  struct Mod {
    std::uint64_t value;  // in [0, p)
    std::uint64_t p;
  };

  explicit Scalar(Rat r) : v_(std::move(r)) {}
  explicit Scalar(Mod m) : v_(m) {}
  const Rat& rat() const;
  const Mod& mod() const;
  void check_same_field(const Scalar& o) const;

  std::variant<Rat, Mod> v_;
};

}  // namespace arrfree
