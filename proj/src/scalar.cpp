#include "arrfree/scalar.hpp"

#include "arrfree/error.hpp"

namespace arrfree {

Field Field::prime(std::uint64_t p) {
  if (p >= (1ULL << 62)) throw Error(errc::parse, "modulus must be < 2^62");
  if (!is_prime_u64(p)) throw Error(errc::parse, "modulus " + std::to_string(p) + " is not prime");
  return Field(Kind::Prime, p);
}

std::string Field::name() const {
  if (is_rational()) return "Q";
  return "GF(" + std::to_string(p_) + ")";
}

Field Field::from_name(const std::string& name) {
  if (name == "Q") return rationals();
  if (name.size() > 4 && name.substr(0, 3) == "GF(" && name.back() == ')') {
    const std::string inner = name.substr(3, name.size() - 4);
    if (inner.empty() || inner.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(errc::parse, "bad field name: " + name);
    }
    return prime(std::stoull(inner));
  }
  throw Error(errc::parse, "bad field name: " + name);
}

Scalar Scalar::rational(Int num, Int den) {
  if (den == 0) throw Error(errc::internal, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Int g = gcd(num, den);
  if (g > 1) {
    num = div_exact(num, g);
    den = div_exact(den, g);
  }
  return Scalar(Rat{std::move(num), std::move(den)});
}

Scalar Scalar::residue(std::uint64_t value, std::uint64_t p) {
  return Scalar(Mod{value % p, p});
}

Scalar Scalar::of(const Field& f, const Int& value) {
  if (f.is_rational()) return rational(value);
  Int r = value % Int(std::to_string(f.modulus()));
  if (r < 0) r += Int(std::to_string(f.modulus()));
  return residue(mpz_get_ui(r.get_mpz_t()), f.modulus());
}

Field Scalar::field() const {
  if (std::holds_alternative<Rat>(v_)) return Field::rationals();
  return Field::prime_unchecked(std::get<Mod>(v_).p);
}

const Scalar::Rat& Scalar::rat() const {
  if (!std::holds_alternative<Rat>(v_)) throw Error(errc::field_mismatch, "expected rational");
  return std::get<Rat>(v_);
}

const Scalar::Mod& Scalar::mod() const {
  if (!std::holds_alternative<Mod>(v_)) throw Error(errc::field_mismatch, "expected prime-field value");
  return std::get<Mod>(v_);
}

void Scalar::check_same_field(const Scalar& o) const {
  if (v_.index() != o.v_.index()) throw Error(errc::field_mismatch, "mixed-field arithmetic");
  if (std::holds_alternative<Mod>(v_) && std::get<Mod>(v_).p != std::get<Mod>(o.v_).p) {
    throw Error(errc::field_mismatch, "mixed moduli");
  }
}

bool Scalar::is_zero() const {
  if (std::holds_alternative<Rat>(v_)) return std::get<Rat>(v_).num == 0;
  return std::get<Mod>(v_).value == 0;
}

bool Scalar::is_one() const {
  if (std::holds_alternative<Rat>(v_)) {
    const Rat& r = std::get<Rat>(v_);
    return r.num == 1 && r.den == 1;
  }
  return std::get<Mod>(v_).value == 1;
}

const Int& Scalar::num() const { return rat().num; }
const Int& Scalar::den() const { return rat().den; }
bool Scalar::is_integer() const { return rat().den == 1; }
std::uint64_t Scalar::value() const { return mod().value; }

Scalar Scalar::operator-() const {
  if (std::holds_alternative<Rat>(v_)) {
    const Rat& r = std::get<Rat>(v_);
    return Scalar(Rat{-r.num, r.den});
  }
  const Mod& m = std::get<Mod>(v_);
  return Scalar(Mod{m.value == 0 ? 0 : m.p - m.value, m.p});
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  if (std::holds_alternative<Rat>(v_)) {
    const Rat& a = std::get<Rat>(v_);
    const Rat& b = std::get<Rat>(o.v_);
    return rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  const Mod& a = std::get<Mod>(v_);
  const Mod& b = std::get<Mod>(o.v_);
  std::uint64_t s = a.value + b.value;  // p < 2^62, no overflow
  if (s >= a.p) s -= a.p;
  return Scalar(Mod{s, a.p});
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  if (std::holds_alternative<Rat>(v_)) {
    const Rat& a = std::get<Rat>(v_);
    const Rat& b = std::get<Rat>(o.v_);
    return rational(a.num * b.num, a.den * b.den);
  }
  const Mod& a = std::get<Mod>(v_);
  const Mod& b = std::get<Mod>(o.v_);
  return Scalar(Mod{mul_mod(a.value, b.value, a.p), a.p});
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(errc::internal, "inverse of zero");
  if (std::holds_alternative<Rat>(v_)) {
    const Rat& r = std::get<Rat>(v_);
    return rational(r.den, r.num);
  }
  const Mod& m = std::get<Mod>(v_);
  return Scalar(Mod{inv_mod(m.value, m.p), m.p});
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
  if (v_.index() != o.v_.index()) return false;
  if (std::holds_alternative<Rat>(v_)) {
    const Rat& a = std::get<Rat>(v_);
    const Rat& b = std::get<Rat>(o.v_);
    return a.num == b.num && a.den == b.den;
  }
  const Mod& a = std::get<Mod>(v_);
  const Mod& b = std::get<Mod>(o.v_);
  return a.p == b.p && a.value == b.value;
}

bool Scalar::operator<(const Scalar& o) const {
  if (v_.index() != o.v_.index()) return v_.index() < o.v_.index();
  if (std::holds_alternative<Rat>(v_)) {
    const Rat& a = std::get<Rat>(v_);
    const Rat& b = std::get<Rat>(o.v_);
    return cmp(a.num * b.den, b.num * a.den) < 0;
  }
  const Mod& a = std::get<Mod>(v_);
  const Mod& b = std::get<Mod>(o.v_);
  if (a.p != b.p) return a.p < b.p;
  return a.value < b.value;
}

std::string Scalar::str() const {
  if (std::holds_alternative<Rat>(v_)) {
    const Rat& r = std::get<Rat>(v_);
    if (r.den == 1) return r.num.get_str();
    return r.num.get_str() + "/" + r.den.get_str();
  }
  return std::to_string(std::get<Mod>(v_).value);
}

}  // namespace arrfree
