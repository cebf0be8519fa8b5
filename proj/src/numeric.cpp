#include "arrfree/numeric.hpp"

#include <nlohmann/json.hpp>

#include "arrfree/error.hpp"

namespace arrfree {

Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int div_exact(const Int& a, const Int& b) {
  if (b == 0) throw Error(errc::internal, "division by zero");
  Int q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (r != 0) throw Error(errc::internal, "inexact integer division");
  return q;
}

bool fits_int64(const Int& v) {
  static const Int lo = Int("-9223372036854775808");
  static const Int hi = Int("9223372036854775807");
  return v >= lo && v <= hi;
}

nlohmann::json int_to_json(const Int& v) {
  if (fits_int64(v)) {
    return nlohmann::json(static_cast<std::int64_t>(mpz_get_si(v.get_mpz_t())));
  }
  return nlohmann::json(v.get_str());
}

Int int_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Int(j.get<std::string>());
  if (j.is_number_integer()) return Int(std::to_string(j.get<std::int64_t>()));
  throw Error(errc::parse, "expected integer value in JSON");
}

bool is_prime_u64(std::uint64_t p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0 || p % 3 == 0) return false;
  for (std::uint64_t d = 5; d <= p / d; d += 6) {
    if (p % d == 0 || p % (d + 2) == 0) return false;
  }
  return true;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw Error(errc::internal, "inverse of zero");
  return pow_mod(a % p, p - 2, p);
}

bool sqrt_mod(std::uint64_t a, std::uint64_t p, std::uint64_t& root) {
  a %= p;
  if (a == 0) {
    root = 0;
    return true;
  }
  if (p == 2) {
    root = a;
    return true;
  }
  if (pow_mod(a, (p - 1) / 2, p) != 1) return false;
  if (p % 4 == 3) {
    root = pow_mod(a, (p + 1) / 4, p);
    return true;
  }
  // Tonelli-Shanks.
  std::uint64_t q = p - 1, s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::uint64_t z = 2;
  while (pow_mod(z, (p - 1) / 2, p) == 1) ++z;
  std::uint64_t m = s;
  std::uint64_t c = pow_mod(z, q, p);
  std::uint64_t t = pow_mod(a, q, p);
  std::uint64_t r = pow_mod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mul_mod(tt, tt, p);
      ++i;
      if (i == m) return false;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
    m = i;
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    r = mul_mod(r, b, p);
  }
  root = r;
  return true;
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

}  // namespace arrfree
