#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace arrfree {

/// Arbitrary-precision integer. All exact arithmetic in the library bottoms
/// out here.
using Int = mpz_class;

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

/// Exact quotient; throws Error("internal") if b does not divide a.
Int div_exact(const Int& a, const Int& b);

bool fits_int64(const Int& v);

/// JSON encoding of a big integer: a number when it fits in int64, else a
/// decimal string. Deterministic function of the value.
nlohmann::json int_to_json(const Int& v);
Int int_from_json(const nlohmann::json& j);

/// Deterministic primality check by trial division (suitable for p < 2^62).
bool is_prime_u64(std::uint64_t p);

/// Square root mod an odd prime via Tonelli-Shanks. Returns false when a is
/// a non-residue.
bool sqrt_mod(std::uint64_t a, std::uint64_t p, std::uint64_t& root);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);

/// FNV-1a over a byte string, used for content hashes in certificates.
std::uint64_t fnv1a(const std::string& data);
std::string hex64(std::uint64_t v);

}  // namespace arrfree
